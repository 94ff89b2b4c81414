import os
from collections.abc import Mapping
from dataclasses import dataclass

from .exceptions import ConfigError

ENV_PREFIX = "CONIC_LDPC"
DEFAULT_THREADS = 1
DEFAULT_BATCH_SIZE = 64
DEFAULT_MAX_ITER = 50


@dataclass(frozen=True)
class Settings:
    """Process-wide tuning knobs read from the environment.

    Args:
        threads (int): Worker threads for simulation batches and distance search.
        batch_size (int): Frames decoded together by the vectorized decoder.
        max_iter (int): Default iteration cap of the sum-product decoder.
    """

    threads: int = DEFAULT_THREADS
    batch_size: int = DEFAULT_BATCH_SIZE
    max_iter: int = DEFAULT_MAX_ITER


def _positive_int(environ: Mapping[str, str], key: str, default: int) -> int:
    name = f"{ENV_PREFIX}_{key}"
    raw = environ.get(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError as err:
        raise ConfigError(raw, name, "not an integer") from err
    if value < 1:
        raise ConfigError(raw, name, "must be at least 1")
    return value


def load_settings(environ: Mapping[str, str] | None = None) -> Settings:
    """Reads settings from ``CONIC_LDPC_*`` environment variables.

    Args:
        environ (Mapping[str, str] | None): Environment to read, ``os.environ``
            when omitted.

    Returns:
        Settings: The resolved settings.
    """
    environ = os.environ if environ is None else environ
    return Settings(
        threads=_positive_int(environ, "THREADS", DEFAULT_THREADS),
        batch_size=_positive_int(environ, "BATCH_SIZE", DEFAULT_BATCH_SIZE),
        max_iter=_positive_int(environ, "MAX_ITER", DEFAULT_MAX_ITER),
    )
