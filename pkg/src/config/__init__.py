from pathlib import Path
from typing import Literal

from dotenv import load_dotenv
from pydantic import Field, ValidationError
from pydantic_settings import BaseSettings, SettingsConfigDict

from src.exceptions import ConfigurationError

load_dotenv()


class Settings(BaseSettings):
    """Runtime settings, read from the environment (and a local .env file)."""

    model_config = SettingsConfigDict(case_sensitive=False, extra="ignore", frozen=True)

    LOG_LEVEL: Literal["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"] = "WARNING"
    LOG_FORMAT: Literal["text", "json"] = "text"
    LOG_FILE: Path | None = None

    # Quasi-Monte Carlo oracle
    VIRIAL_SEED: int = Field(default=42, ge=0)
    MC_SAMPLES: int = Field(default=2**16, ge=16)
    MC_SHARDS: int = Field(default=8, ge=2)

    # Adaptive quadrature
    QUAD_TOL: float = Field(default=1e-10, gt=0.0, lt=1e-2)
    QUAD_MAX_DEPTH: int = Field(default=40, ge=5, le=60)

    SWEEP_WORKERS: int = Field(default=1, ge=1, le=64)


def load_config() -> Settings:
    try:
        return Settings()
    except ValidationError as e:
        fields = sorted({str(err["loc"][0]) for err in e.errors() if err["loc"]})
        raise ConfigurationError(f"Invalid environment variables: {fields}") from e


AppConfig = load_config()
