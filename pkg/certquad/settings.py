"""
certquad Settings
Validated command-line input for the sweep, compare, integrate and check commands
"""

import math
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from certquad.profile import Family, SingularityProfile

MethodName = Literal["se-new", "de-new", "se-existing", "de-existing"]


class RangeSpec(BaseModel):
    """n values lo, lo+step, ..., up to and including hi."""

    model_config = ConfigDict(frozen=True)

    lo: int = Field(ge=1)
    hi: int = Field(ge=1)
    step: int = Field(default=1, ge=1)

    @model_validator(mode="after")
    def _ordered(self):
        if self.hi < self.lo:
            raise ValueError(f"range end {self.hi} is below its start {self.lo}")
        return self

    @classmethod
    def from_text(cls, text: str) -> "RangeSpec":
        parts = text.split(":")
        try:
            numbers = [int(part) for part in parts]
        except ValueError:
            raise ValueError(f"Failed to parse range '{text}': expected N or LO:HI:STEP integers")
        if len(numbers) == 1:
            return cls(lo=numbers[0], hi=numbers[0])
        if len(numbers) == 3:
            return cls(lo=numbers[0], hi=numbers[1], step=numbers[2])
        raise ValueError(f"Failed to parse range '{text}': expected N or LO:HI:STEP")

    @property
    def is_single(self) -> bool:
        return self.lo == self.hi

    def values(self) -> List[int]:
        return list(range(self.lo, self.hi + 1, self.step))


def parse_interval(text: str) -> Optional[float]:
    """'0:T' -> T, '0:inf' -> None. Only intervals starting at 0 are supported."""
    parts = text.split(":")
    if len(parts) != 2:
        raise ValueError(f"Failed to parse interval '{text}': expected LO:HI")
    try:
        lo = float(parts[0])
        hi = float(parts[1])
    except ValueError:
        raise ValueError(f"Failed to parse interval '{text}': bounds must be decimal numbers or inf")
    if lo != 0.0:
        raise ValueError(f"Interval must start at 0, got {parts[0]!r}")
    if math.isinf(hi) and hi > 0:
        return None
    if not (math.isfinite(hi) and hi > 0):
        raise ValueError(f"Interval end must be positive, got {parts[1]!r}")
    return hi


class ProblemSettings(BaseModel):
    """Where the integrand comes from: a built-in example or an expression plus its profile."""

    example: Optional[int] = None
    expr: Optional[str] = None
    interval: Optional[str] = None
    decay: Optional[Literal["alg", "exp"]] = None
    K: Optional[float] = Field(default=None, gt=0)
    alpha: Optional[float] = Field(default=None, gt=0)
    beta: Optional[float] = Field(default=None, gt=0)
    d: Optional[float] = Field(default=None, gt=0)

    @field_validator("interval")
    @classmethod
    def _interval_parses(cls, value):
        if value is not None:
            parse_interval(value)
        return value

    @model_validator(mode="after")
    def _one_source(self):
        profile_flags = [self.K, self.alpha, self.beta, self.d, self.interval, self.decay]
        if (self.example is None) == (self.expr is None):
            raise ValueError("exactly one of --example and --expr is required")
        if self.example is not None:
            if any(flag is not None for flag in profile_flags):
                raise ValueError("--interval, --decay, --K, --alpha, --beta and --d only apply to --expr")
            return self
        missing = [name for name in ("K", "alpha", "beta", "d", "interval") if getattr(self, name) is None]
        if missing:
            raise ValueError(f"--expr needs {', '.join('--' + name for name in missing)}")
        T = parse_interval(self.interval)
        if T is None and self.decay is None:
            raise ValueError("--interval 0:inf needs --decay alg|exp")
        if T is not None and self.decay is not None:
            raise ValueError("--decay only applies to --interval 0:inf")
        return self

    def family_and_length(self) -> Tuple[Family, Optional[float]]:
        T = parse_interval(self.interval)
        if T is not None:
            return Family.FINITE, T
        return (Family.SEMI_ALG if self.decay == "alg" else Family.SEMI_EXP), None

    def profile(self) -> SingularityProfile:
        family, T = self.family_and_length()
        return SingularityProfile(K=self.K, alpha=self.alpha, beta=self.beta, d=self.d, family=family, T=T)


class SweepSettings(ProblemSettings):
    method: Optional[MethodName] = None
    n: RangeSpec
    out: Optional[str] = None
    refined: bool = False

    @field_validator("n", mode="before")
    @classmethod
    def _range_from_text(cls, value):
        if isinstance(value, str):
            return RangeSpec.from_text(value)
        return value


class CheckSettings(BaseModel):
    samples: int = Field(default=100_000, ge=1)
    seed: int = 42
    out: Optional[str] = None
