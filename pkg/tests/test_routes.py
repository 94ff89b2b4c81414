import pytest

from conic_ldpc import create_app
from conic_ldpc.parser import read_alist
from conic_ldpc.utils import build_code, matrix_hash

STATUS_CODE_OK = 200
STATUS_CODE_BAD_REQUEST = 400


@pytest.fixture
def client():
    app = create_app({"TESTING": True})
    with app.test_client() as client:
        yield client


def test_code_summary(client):
    response = client.get("/api/codes/2/4")
    assert response.status_code == STATUS_CODE_OK
    data = response.get_json()
    assert data["family"] == 2
    assert data["n"] == 48
    assert data["n_checks"] == 64
    assert data["hash"] == matrix_hash(build_code(2, 4)[1])


def test_alist_download(client):
    response = client.get("/api/codes/1/4/alist")
    assert response.status_code == STATUS_CODE_OK
    assert response.mimetype == "text/plain"
    assert "c1_4.alist" in response.headers["Content-Disposition"]
    assert read_alist(response.get_data(as_text=True)) == build_code(1, 4)[1]


def test_analyze(client):
    response = client.get("/api/codes/1/5/analyze?checks=girth,cycles6")
    assert response.status_code == STATUS_CODE_OK
    data = response.get_json()
    assert [entry["check"] for entry in data["entries"]] == ["girth", "cycles6"]
    assert data["entries"][1]["value"] == 0
    assert data["matches"] is True


def test_analyze_default_checks(client):
    data = client.get("/api/codes/3/4/analyze").get_json()
    assert [entry["check"] for entry in data["entries"]] == ["counts", "girth", "rank"]


@pytest.mark.parametrize(
    "url",
    [
        "/api/codes/1/6",
        "/api/codes/4/5",
        "/api/codes/1/5/analyze?checks=diameter",
        "/api/codes/1/5/analyze?checks=Girth",
    ],
)
def test_user_errors(client, url):
    response = client.get(url)
    assert response.status_code == STATUS_CODE_BAD_REQUEST
    assert response.get_json()["error"]
