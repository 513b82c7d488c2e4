"""Runtime settings.

``GyrofuzzSettings`` is a pydantic-settings model: explicitly configured
values beat ``GYROFUZZ_<NAME>`` environment variables, which beat the field
defaults. Modules read the process-wide ``settings``; it is built on first
access and rebuilt after every ``configure()``.
"""
from contextlib import contextmanager
from fractions import Fraction
from typing import Annotated, Any, Dict, Optional, Tuple

from pydantic import Field, PositiveFloat, PositiveInt, ValidationError, field_validator
from pydantic_settings import BaseSettings, NoDecode, SettingsConfigDict

from .exceptions import ConfigurationError

ENV_PREFIX = "GYROFUZZ_"


def _fraction(value) -> Fraction:
    if isinstance(value, float):
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def fraction_tuple(raw) -> tuple:
    """``"1/4, 1"`` or any iterable of numbers as a tuple of Fractions."""
    if isinstance(raw, str):
        raw = [part for part in raw.split(",") if part.strip()]
    return tuple(_fraction(value) for value in raw)


class GyrofuzzSettings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix=ENV_PREFIX,
        extra="forbid",
        frozen=True,
        arbitrary_types_allowed=True,
    )

    SEED: int = Field(0, ge=0)
    SAMPLES: PositiveInt = 1000
    T_GRID: Annotated[Tuple[Fraction, ...], NoDecode] = (
        Fraction(1, 4),
        Fraction(1, 2),
        Fraction(1),
        Fraction(2),
        Fraction(4),
    )
    FLOAT_TOLERANCE: PositiveFloat = 1e-9
    ROOT_TOLERANCE: Fraction = Fraction(1, 2**20)
    CONTAINMENT_PAIRS: PositiveInt = 1000
    # working precision cap, in decimal digits, for deciding exact signs
    REAL_MAX_DIGITS: PositiveInt = 1000
    LOG_LEVEL: str = "WARNING"

    @field_validator("T_GRID", mode="before")
    @classmethod
    def _parse_grid(cls, value):
        grid = fraction_tuple(value)
        if not grid or any(t <= 0 for t in grid):
            raise ValueError("t grid values must be positive")
        return grid

    @field_validator("ROOT_TOLERANCE", mode="before")
    @classmethod
    def _parse_root_tolerance(cls, value):
        tolerance = _fraction(value)
        if tolerance <= 0:
            raise ValueError("must be positive")
        return tolerance

    @field_validator("LOG_LEVEL", mode="before")
    @classmethod
    def _upper(cls, value):
        return str(value).upper()


DEFAULTS = {name: field.default for name, field in GyrofuzzSettings.model_fields.items()}


def _build(options: Dict[str, Any]) -> GyrofuzzSettings:
    try:
        return GyrofuzzSettings(**options)
    except ValidationError as exc:
        raise ConfigurationError(f"invalid settings: {exc}") from exc
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigurationError(f"invalid {ENV_PREFIX}* environment value: {exc}") from exc


class Settings:
    def __init__(self):
        self._configured: Dict[str, Any] = {}
        self._wrapped: Optional[GyrofuzzSettings] = None

    def configure(self, **options):
        merged = {**self._configured, **options}
        self._wrapped = _build(merged)
        self._configured = merged

    def reset(self):
        self._configured = {}
        self._wrapped = None

    @contextmanager
    def override(self, **options):
        """Temporarily configure ``options``; earlier values come back on exit."""
        saved = dict(self._configured)
        self.configure(**options)
        try:
            yield self
        finally:
            self._configured = saved
            self._wrapped = None

    @property
    def configured(self) -> bool:
        return bool(self._configured)

    def __getattr__(self, name):
        if name.startswith("_"):
            raise AttributeError(name)
        if self._wrapped is None:
            self._wrapped = _build(self._configured)
        return getattr(self._wrapped, name)


settings = Settings()
