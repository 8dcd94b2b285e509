import os
from dataclasses import dataclass
from typing import Callable, Optional, TypeVar

from dotenv import load_dotenv
from loguru import logger

TRUTHY = {"1", "true", "yes", "on"}

T = TypeVar("T")


@dataclass(frozen=True)
class Settings:
    tol: float = 1e-9
    seed: int = 0
    verbose: bool = False
    log_file: Optional[str] = None


def _parse(name: str, cast: Callable[[str], T], default: T) -> T:
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        return cast(raw)
    except ValueError:
        logger.warning(f"{name}={raw!r} invalido, usando {default!r}")
        return default


def load_settings() -> Settings:
    """Le as configuracoes do ambiente (e de um `.env`, se existir)."""
    load_dotenv()
    return Settings(
        tol=_parse("QUASIHERM_TOL", float, Settings.tol),
        seed=_parse("QUASIHERM_SEED", int, Settings.seed),
        verbose=os.getenv("QUASIHERM_VERBOSE", "").strip().lower() in TRUTHY,
        log_file=os.getenv("QUASIHERM_LOG_FILE") or None,
    )
