import os
from dataclasses import dataclass
from typing import Optional

from dotenv import load_dotenv

load_dotenv()


def _int_env(key: str, default: int) -> int:
    raw = os.getenv(key)
    if raw is None or raw.strip() == '':
        return default
    try:
        return int(raw)
    except ValueError:
        return default


@dataclass(frozen=True)
class Settings:
    log_level: str
    log_dir: Optional[str]
    max_workers: int
    seed: int
    max_degree: int


def load_settings() -> Settings:
    return Settings(
        log_level=os.getenv('SUPERSYM_LOG_LEVEL', 'WARNING').upper(),
        log_dir=os.getenv('SUPERSYM_LOG_DIR') or None,
        max_workers=max(1, _int_env('SUPERSYM_MAX_WORKERS', 4)),
        seed=_int_env('SUPERSYM_SEED', 0),
        max_degree=max(1, _int_env('SUPERSYM_MAX_DEGREE', 3)),
    )


settings = load_settings()
