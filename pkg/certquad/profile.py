"""
certquad Singularity Profiles
The constants (K, alpha, beta, d) and interval family a certified bound is computed from
"""

import math
from enum import Enum
from typing import Optional

from pydantic import BaseModel, ConfigDict, field_validator, model_validator


class Family(str, Enum):
    FINITE = "finite"
    SEMI_ALG = "semi-alg"
    SEMI_EXP = "semi-exp"


class Scheme(str, Enum):
    SE = "se"
    DE = "de"


class SingularityProfile(BaseModel):
    """Analyticity/decay constants of an integrand.

    K bounds |f| against the family's model function, alpha and beta are the
    endpoint exponents, d is the strip half-width and T the length of a
    finite interval (None on (0, inf)).
    """

    model_config = ConfigDict(frozen=True)

    K: float
    alpha: float
    beta: float
    d: float
    family: Family
    T: Optional[float] = None

    @field_validator("K", "alpha", "beta", "d")
    @classmethod
    def _positive(cls, value: float, info):
        if not (math.isfinite(value) and value > 0):
            raise ValueError(f"{info.field_name} must be a finite positive number, got {value!r}")
        return value

    @model_validator(mode="after")
    def _interval_matches_family(self):
        if self.family is Family.FINITE:
            if self.T is None or not (math.isfinite(self.T) and self.T > 0):
                raise ValueError(f"finite profile needs an interval length T > 0, got {self.T!r}")
        elif self.T is not None:
            raise ValueError(f"{self.family.value} profile is on (0, inf) and takes no T, got {self.T!r}")
        if self.d >= math.pi:
            raise ValueError(f"strip half-width d must be below pi, got {self.d!r}")
        return self

    @property
    def mu(self) -> float:
        return min(self.alpha, self.beta)

    def scaled(self, factor: float) -> "SingularityProfile":
        """Same profile with K multiplied by `factor`."""
        return self.model_copy(update={"K": self.K * factor})
