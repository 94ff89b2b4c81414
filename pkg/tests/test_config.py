import pytest

from conic_ldpc.config import (
    DEFAULT_BATCH_SIZE,
    DEFAULT_MAX_ITER,
    DEFAULT_THREADS,
    Settings,
    load_settings,
)
from conic_ldpc.exceptions import ConfigError


def test_defaults():
    assert load_settings({}) == Settings(
        DEFAULT_THREADS, DEFAULT_BATCH_SIZE, DEFAULT_MAX_ITER
    )


def test_environment_overrides():
    settings = load_settings(
        {
            "CONIC_LDPC_THREADS": "4",
            "CONIC_LDPC_BATCH_SIZE": " 128 ",
            "CONIC_LDPC_MAX_ITER": "",
        }
    )
    assert settings == Settings(threads=4, batch_size=128, max_iter=DEFAULT_MAX_ITER)


def test_reads_process_environment(monkeypatch):
    monkeypatch.setenv("CONIC_LDPC_MAX_ITER", "500")
    assert load_settings().max_iter == 500


@pytest.mark.parametrize("raw", ["zero", "0", "-3", "1.5"])
def test_invalid_values(raw):
    with pytest.raises(ConfigError) as err:
        load_settings({"CONIC_LDPC_THREADS": raw})
    assert "CONIC_LDPC_THREADS" in err.value.message
