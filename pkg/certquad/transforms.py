"""
certquad Transforms
SE/DE variable transformations evaluated in logistic/softplus form
"""

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

_HALF_PI = math.pi / 2.0
_LOG_PI = math.log(math.pi)
_LOG_HALF_PI = math.log(_HALF_PI)

# below this, log(log1p(e^u)) is taken from its series in e^u
_LOG_SOFTPLUS_SERIES = -18.0


class MapTag(Enum):
    SE_FINITE = "se-finite"
    DE_FINITE = "de-finite"
    SE_ALG = "se-alg"
    DE_ALG = "de-alg"
    SE_EXP = "se-exp"
    DE_EXP = "de-exp"

    @property
    def is_finite(self) -> bool:
        return self in (MapTag.SE_FINITE, MapTag.DE_FINITE)

    @property
    def is_de(self) -> bool:
        return self in (MapTag.DE_FINITE, MapTag.DE_ALG, MapTag.DE_EXP)


@dataclass(frozen=True)
class MapKind:
    """One of the six transformations; finite maps carry the interval length T."""

    tag: MapTag
    T: Optional[float] = None

    def __post_init__(self):
        if self.tag.is_finite:
            if self.T is None or not (math.isfinite(self.T) and self.T > 0):
                raise ValueError(f"{self.tag.value} map needs a finite interval length T > 0, got {self.T!r}")
        elif self.T is not None:
            raise ValueError(f"{self.tag.value} map takes no interval length, got T={self.T!r}")

    @classmethod
    def se_finite(cls, T: float) -> "MapKind":
        return cls(MapTag.SE_FINITE, float(T))

    @classmethod
    def de_finite(cls, T: float) -> "MapKind":
        return cls(MapTag.DE_FINITE, float(T))


@dataclass(frozen=True)
class MapPoint:
    """A transformed abscissa: t = map(x), its derivative and analytic logs."""

    x: float
    t: float
    t_complement: Optional[float]
    weight: float
    log_t: float
    log_weight: float


def saturating_exp(u: float) -> float:
    try:
        return math.exp(u)
    except OverflowError:
        return math.inf


def _sinh(x: float) -> float:
    try:
        return math.sinh(x)
    except OverflowError:
        return math.copysign(math.inf, x)


def _cosh(x: float) -> float:
    try:
        return math.cosh(x)
    except OverflowError:
        return math.inf


def softplus(u: float) -> float:
    """log(1 + e^u) without overflow."""
    if u > 0:
        return u + math.log1p(math.exp(-u))
    return math.log1p(math.exp(u))


def logistic(u: float) -> float:
    """1/(1 + e^{-u}); only ever exponentiates a non-positive number."""
    if u >= 0:
        return 1.0 / (1.0 + math.exp(-u))
    e = math.exp(u)
    return e / (1.0 + e)


def log_softplus(u: float) -> float:
    """log(log(1 + e^u)), accurate where log1p(e^u) is close to e^u."""
    if u > _LOG_SOFTPLUS_SERIES:
        return math.log(softplus(u))
    e = math.exp(u)
    return u + math.log1p(e * (e / 3.0 - 0.5))


def log_cosh(x: float) -> float:
    ax = abs(x)
    return ax + math.log1p(math.exp(-2.0 * ax)) - math.log(2.0)


def _finite_weight(direct: float, log_weight: float) -> float:
    if math.isnan(direct):
        # inf * 0 once sinh/cosh saturate; the true weight is below any double
        return 0.0 if math.isnan(log_weight) else saturating_exp(log_weight)
    return direct


def map_point(kind: MapKind, x: float) -> MapPoint:
    """Evaluate the transformation of `kind` at x.

    t and T - t both come from logistic forms so each keeps full relative
    accuracy near its own endpoint; log t is returned analytically.
    """
    tag = kind.tag

    if tag is MapTag.SE_FINITE or tag is MapTag.DE_FINITE:
        T = kind.T
        if tag is MapTag.SE_FINITE:
            u = x
            log_jac = 0.0
            jac = 1.0
        else:
            u = math.pi * _sinh(x)
            log_jac = _LOG_PI + log_cosh(x)
            jac = math.pi * _cosh(x)
        s_pos = logistic(u)
        s_neg = logistic(-u)
        log_weight = math.log(T) - softplus(u) - softplus(-u) + log_jac
        weight = _finite_weight(T * s_pos * s_neg * jac, log_weight)
        return MapPoint(
            x=x,
            t=T * s_pos,
            t_complement=T * s_neg,
            weight=weight,
            log_t=math.log(T) - softplus(-u),
            log_weight=log_weight,
        )

    if tag is MapTag.SE_ALG:
        t = saturating_exp(x)
        return MapPoint(x=x, t=t, t_complement=None, weight=t, log_t=x, log_weight=x)

    if tag is MapTag.DE_ALG:
        s = _HALF_PI * _sinh(x)
        t = saturating_exp(s)
        log_weight = _LOG_HALF_PI + log_cosh(x) + s
        weight = _finite_weight(_HALF_PI * _cosh(x) * t, log_weight)
        return MapPoint(x=x, t=t, t_complement=None, weight=weight, log_t=s, log_weight=log_weight)

    if tag is MapTag.SE_EXP:
        return MapPoint(
            x=x,
            t=softplus(x),
            t_complement=None,
            weight=logistic(x),
            log_t=log_softplus(x),
            log_weight=-softplus(-x),
        )

    if tag is MapTag.DE_EXP:
        u = math.pi * _sinh(x)
        log_weight = _LOG_PI + log_cosh(x) - softplus(-u)
        weight = _finite_weight(math.pi * _cosh(x) * logistic(u), log_weight)
        return MapPoint(
            x=x,
            t=softplus(u),
            t_complement=None,
            weight=weight,
            log_t=log_softplus(u),
            log_weight=log_weight,
        )

    raise ValueError(f"Unknown map tag: {tag!r}")
