import pytest
from pydantic import ValidationError

from src.config.settings import Settings, get_settings, reset_settings


def test_defaults():
    settings = get_settings()
    assert settings.seed == 20240601
    assert settings.n_max == 200
    assert settings.enumeration_cap == 8
    assert settings.enumeration_hard_limit == 12
    assert settings.sandwich_tolerance == 0.05
    assert settings.growth_gap_tolerance == 0.02
    assert get_settings() is settings


def test_environment_override(monkeypatch):
    monkeypatch.setenv("MGL_N_MAX", "64")
    monkeypatch.setenv("MGL_FIELD_CHARACTERISTIC", "3")
    reset_settings()
    settings = get_settings()
    assert settings.n_max == 64
    assert settings.field_characteristic == 3


def test_validation():
    with pytest.raises(ValidationError):
        Settings(field_characteristic=4)
    with pytest.raises(ValidationError):
        Settings(enumeration_cap=0)
