import pytest

from conic_ldpc import create_app, socketio

SHORT_RUN = {"snr": "8", "min_trials": 64, "max_trials": 64}


@pytest.fixture
def client():
    app = create_app({"TESTING": True})
    socketio_client = socketio.test_client(app)
    yield socketio_client
    socketio_client.disconnect()


def test_connect(client):
    client.connect()
    assert client.is_connected() is True


def test_simulate(client):
    client.emit("simulate", {"family": 1, "q": 4, **SHORT_RUN})
    received = client.get_received()
    assert received[0]["name"] == "task"
    assert received[0]["args"][0] == {"status": "running"}
    assert received[1]["name"] == "point"
    point = received[1]["args"][0]
    assert point["eb_n0_db"] == 8.0
    assert point["trials"] == 64
    assert received[2]["name"] == "task"
    assert received[2]["args"][0] == {"status": "done"}


def test_simulate_gallager(client):
    client.emit("simulate", {"gallager": "n=60,row=5,col=3", **SHORT_RUN})
    names = [message["name"] for message in client.get_received()]
    assert names == ["task", "point", "task"]


def test_simulate_failure(client):
    client.emit("simulate", {"family": 1, "q": 6, **SHORT_RUN})
    received = client.get_received()
    assert received[1]["name"] == "task"
    assert received[1]["args"][0]["status"] == "failed"
    assert "6" in received[1]["args"][0]["message"]


def test_simulate_needs_one_source(client):
    client.emit("simulate", {"family": 1, "q": 4, "gallager": "n=60,row=5,col=3"})
    received = client.get_received()
    assert received[1]["args"][0]["status"] == "failed"
    assert "matrix source" in received[1]["args"][0]["message"]
