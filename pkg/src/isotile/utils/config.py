"""Application configuration using pydantic-settings."""

from functools import lru_cache

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    """Application settings loaded from environment variables.

    Attributes:
        oracle_level: Supertile depth used when deriving the crossing table
        default_seed: Seed decoration string used by ``gen``
        crossing_table_path: Crossing table file overriding the packaged table
        svg_unit: Pixels per lattice unit in SVG output
        log_level: Minimum level of structured log events
    """

    oracle_level: int = Field(default=8, ge=8)
    default_seed: str = "GR-G+R-"
    crossing_table_path: str = ""
    svg_unit: int = Field(default=24, gt=0)
    log_level: str = "warning"

    @field_validator("svg_unit")
    @classmethod
    def require_even_unit(cls, v: int) -> int:
        if v % 2:
            raise ValueError("svg_unit must be even")
        return v

    @field_validator("log_level")
    @classmethod
    def normalize_level(cls, v: str) -> str:
        level = v.strip().lower()
        if level not in {"debug", "info", "warning", "error", "critical"}:
            raise ValueError(f"Unknown log level {v!r}")
        return level

    model_config = SettingsConfigDict(
        env_prefix="ISOTILE_",
        env_file=".env",
        env_file_encoding="utf-8",
        case_sensitive=False,
    )


@lru_cache
def get_settings() -> Settings:
    """Get cached application settings.

    Returns:
        Settings instance loaded from environment

    Note:
        Settings are cached for performance. Use get_settings.cache_clear()
        to reload settings in tests.
    """
    return Settings()
