"""
Configuration settings for Mass Growth Lab
"""
from typing import Optional

from dotenv import load_dotenv
from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

# Load environment variables from .env file
load_dotenv()


class Settings(BaseSettings):
    """Application settings with environment variable support (prefix MGL_)"""

    model_config = SettingsConfigDict(
        env_prefix="MGL_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    # Representations
    field_characteristic: int = Field(default=2)
    enumeration_cap: int = Field(default=8)  # total dimension
    enumeration_hard_limit: int = Field(default=12)

    # Growth estimation
    n_max: int = Field(default=200)
    seed: int = Field(default=20240601)
    float_tolerance: float = Field(default=1e-9)
    growth_gap_tolerance: float = Field(default=0.02)
    sandwich_tolerance: float = Field(default=0.05)

    # Spectral radius
    spectral_exact_cap: int = Field(default=8)
    power_iteration_max_steps: int = Field(default=10000)
    power_iteration_tolerance: float = Field(default=1e-12)

    # Corpus checks
    max_workers: int = Field(default=4)

    # Logging
    log_level: str = Field(default="INFO")
    log_file: str = Field(default="logs/mass_growth_lab.log")
    enable_file_logging: bool = Field(default=False)

    # Output
    output_directory: str = Field(default="output")

    @field_validator("field_characteristic")
    @classmethod
    def _prime_characteristic(cls, value: int) -> int:
        if value < 2 or any(value % d == 0 for d in range(2, int(value ** 0.5) + 1)):
            raise ValueError(f"field characteristic must be prime, got {value}")
        return value

    @field_validator("enumeration_cap", "enumeration_hard_limit", "n_max", "max_workers")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 1:
            raise ValueError("must be positive")
        return value


_settings_instance: Optional[Settings] = None


def get_settings() -> Settings:
    global _settings_instance
    if _settings_instance is None:
        _settings_instance = Settings()
    return _settings_instance


def reset_settings():
    """Drop the cached settings so the next call re-reads the environment"""
    global _settings_instance
    _settings_instance = None
