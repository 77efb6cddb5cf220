import logging
import os
from functools import lru_cache

from dotenv import load_dotenv
from pydantic import BaseModel, ConfigDict

from .errors import InvalidInputError
from .models import Truncation

# Load environment variables
load_dotenv()


class EngineSettings(BaseModel):
    model_config = ConfigDict(frozen=True)

    window: Truncation
    iso_window: Truncation
    kac_bound: int
    level_cap: int
    seed: int
    memo_size: int
    log_level: str


def _int_env(name: str, default: str) -> int:
    raw = os.getenv(name, default)
    try:
        return int(raw)
    except ValueError as exc:
        raise InvalidInputError(f"{name} must be an integer, got {raw!r}") from exc


@lru_cache(maxsize=1)
def get_settings() -> EngineSettings:
    """Read the engine settings from the environment (and ``.env``) once."""
    settings = EngineSettings(
        window=Truncation.parse(os.getenv("VIRASORO_WINDOW", "6,4,6")),
        iso_window=Truncation.parse(os.getenv("VIRASORO_ISO_WINDOW", "4,4,5")),
        kac_bound=_int_env("VIRASORO_KAC_BOUND", "200"),
        level_cap=_int_env("VIRASORO_LEVEL_CAP", "8"),
        seed=_int_env("VIRASORO_SEED", "20240601"),
        memo_size=_int_env("VIRASORO_MEMO_SIZE", "200000"),
        log_level=os.getenv("LOG_LEVEL", "INFO").upper(),
    )
    if settings.kac_bound < 1 or settings.level_cap < 1 or settings.memo_size < 1:
        raise InvalidInputError("VIRASORO_KAC_BOUND, VIRASORO_LEVEL_CAP and VIRASORO_MEMO_SIZE must be positive")
    return settings


def configure_logging(level: str | None = None) -> None:
    """Configure root logging for an entry point."""
    logging.basicConfig(
        level=getattr(logging, level or get_settings().log_level, logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
