import os
from typing import Optional
from pydantic_settings import BaseSettings, SettingsConfigDict
from dotenv import load_dotenv

load_dotenv()


class Settings(BaseSettings):
    """Application settings and configuration."""

    model_config = SettingsConfigDict(
        case_sensitive=True,
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
        env_ignore_empty=True,
    )

    # Application Settings
    STAGE: str = os.getenv("STAGE", "local")
    LOG_LEVEL: str = os.getenv("LOG_LEVEL", "WARNING").upper()
    LOG_FILE: str = os.getenv("LOG_FILE", "")

    # Checking harness
    # unset means randomized runs must name their seed
    DEFAULT_SEED: Optional[int] = int(os.environ["DEFAULT_SEED"]) if os.getenv("DEFAULT_SEED") else None
    DEFAULT_SAMPLES: int = int(os.getenv("DEFAULT_SAMPLES", "200"))
    LAW_CASES: int = int(os.getenv("LAW_CASES", "10000"))
    MAX_WORKERS: int = int(os.getenv("MAX_WORKERS", "4"))

    # Universe guards
    TIMED_UNIVERSE_LIMIT: int = int(os.getenv("TIMED_UNIVERSE_LIMIT", "64"))
    MAX_BINDINGS: int = int(os.getenv("MAX_BINDINGS", "4000000"))
    UNIVERSE_CACHE_SIZE: int = int(os.getenv("UNIVERSE_CACHE_SIZE", "32"))

    # Reports
    REPORT_SCHEMA: int = 1


# Create settings instance
settings = Settings()
