"""
certquad Problems
Built-in test integrals with exact values and certified profiles, plus expression-backed problems
"""

import math
from dataclasses import dataclass, field
from typing import Callable, Dict, Optional, Tuple

from certquad.errors import UnknownExample
from certquad.expression import evaluate, parse
from certquad.log import get_logger
from certquad.profile import Family, Scheme, SingularityProfile
from certquad.transforms import MapPoint, saturating_exp, softplus

# 17 significant digits, checked against mpmath (mp.catalan, mp.euler) in the test suite
CATALAN = 0.91596559417721901
EULER_GAMMA = 0.57721566490153286

logger = get_logger("Problems")

Integrand = Callable[[MapPoint], float]
LogIntegrand = Callable[[MapPoint], Tuple[float, float]]


@dataclass(frozen=True, eq=False)
class Problem:
    """An integrand over (0, T) or (0, inf) with its singularity profiles.

    profiles maps each scheme to the profile its bounds are computed from.
    With log_weighted set, integrand returns f(t) and the engine multiplies
    by the analytic log t. log_integrand, when present, returns
    (sign, log|value|) of the complete integrand, log factor included.
    """

    label: str
    integrand: Integrand
    family: Family
    profiles: Dict[Scheme, SingularityProfile] = field(default_factory=dict)
    T: Optional[float] = None
    exact: Optional[float] = None
    log_weighted: bool = False
    log_integrand: Optional[LogIntegrand] = None
    source: Optional[str] = None

    def __post_init__(self):
        if (self.family is Family.FINITE) != (self.T is not None):
            raise ValueError(f"Problem '{self.label}': T={self.T!r} does not fit the {self.family.value} family")
        for scheme, profile in self.profiles.items():
            if profile.family is not self.family or profile.T != self.T:
                raise ValueError(f"Problem '{self.label}': {scheme.value} profile does not match the problem interval")
        if self.exact is not None and not math.isfinite(self.exact):
            raise ValueError(f"Problem '{self.label}': exact value must be finite, got {self.exact!r}")

    def profile_for(self, method) -> Optional[SingularityProfile]:
        return self.profiles.get(method.scheme)


def _signed_log_of_log(log_t: float) -> Tuple[float, float]:
    if log_t == 0.0:
        return 0.0, -math.inf
    return math.copysign(1.0, log_t), math.log(abs(log_t))


def _example_1() -> Problem:
    # log t / (1 + t) on (0, 1)
    se = SingularityProfile(K=1.0 + math.e, alpha=1.0, beta=1.0, d=3.0, family=Family.FINITE, T=1.0)
    de = SingularityProfile(K=3.0 * math.sqrt(2.0), alpha=1.0, beta=1.0, d=math.pi / 3.0, family=Family.FINITE, T=1.0)
    return Problem(
        label="example-1",
        integrand=lambda p: p.log_t / (1.0 + p.t),
        family=Family.FINITE,
        profiles={Scheme.SE: se, Scheme.DE: de},
        T=1.0,
        exact=-(math.pi**2) / 12.0,
        source="log(t)/(1+t)",
    )


def _example_2_direct(p: MapPoint) -> float:
    # t underflows to 0 before log t does; the engine then falls back to the log form
    if p.t == 0.0:
        return -math.inf
    return p.log_t / (math.sqrt(p.t) * (1.0 + p.t))


def _example_2_log_abs(p: MapPoint) -> float:
    # log|log t / (sqrt(t) (1 + t))|
    return math.log(abs(p.log_t)) - p.log_t / 2.0 - math.log1p(p.t)


def _example_2() -> Problem:
    # log t / (sqrt(t) (1 + t)) on (0, 1)
    se = SingularityProfile(K=1.0 + math.e, alpha=0.5, beta=1.0, d=3.0, family=Family.FINITE, T=1.0)
    de = SingularityProfile(K=3.0 * math.sqrt(2.0), alpha=0.5, beta=1.0, d=math.pi / 3.0, family=Family.FINITE, T=1.0)

    def log_integrand(p: MapPoint) -> Tuple[float, float]:
        if p.log_t == 0.0:
            return 0.0, -math.inf
        return -1.0, _example_2_log_abs(p)

    return Problem(
        label="example-2",
        integrand=_example_2_direct,
        family=Family.FINITE,
        profiles={Scheme.SE: se, Scheme.DE: de},
        T=1.0,
        exact=-4.0 * CATALAN,
        log_integrand=log_integrand,
        source="log(t)/(sqrt(t)*(1+t))",
    )


def _example_3_log_f(log_t: float) -> float:
    # log(t^(-1/3) / (1 + t^2))
    return -log_t / 3.0 - softplus(2.0 * log_t)


def _example_3() -> Problem:
    # t^(-1/3) log t / (1 + t^2) on (0, inf), algebraic decay
    profile = SingularityProfile(K=1.0, alpha=2.0 / 3.0, beta=4.0 / 3.0, d=1.5, family=Family.SEMI_ALG)

    def log_integrand(p: MapPoint) -> Tuple[float, float]:
        sign, log_abs_log = _signed_log_of_log(p.log_t)
        return sign, _example_3_log_f(p.log_t) + log_abs_log

    return Problem(
        label="example-3",
        integrand=lambda p: saturating_exp(_example_3_log_f(p.log_t)),
        family=Family.SEMI_ALG,
        profiles={Scheme.SE: profile, Scheme.DE: profile},
        exact=-(math.pi**2) / 6.0,
        log_weighted=True,
        log_integrand=log_integrand,
        source="log(t)/(t^(1/3)*(1+t^2))",
    )


def _example_4_log_f(p: MapPoint) -> float:
    # log(e^(-t) / sqrt(t))
    return -p.t - p.log_t / 2.0


def _example_4() -> Problem:
    # e^(-t) log t / sqrt(t) on (0, inf), exponential decay
    se = SingularityProfile(K=2.0 * math.pi / 3.0, alpha=0.5, beta=1.0, d=3.0, family=Family.SEMI_EXP)
    de = SingularityProfile(K=2.0 * math.pi / 3.0, alpha=0.5, beta=1.0, d=1.5, family=Family.SEMI_EXP)

    def log_integrand(p: MapPoint) -> Tuple[float, float]:
        sign, log_abs_log = _signed_log_of_log(p.log_t)
        return sign, _example_4_log_f(p) + log_abs_log

    return Problem(
        label="example-4",
        integrand=lambda p: saturating_exp(_example_4_log_f(p)),
        family=Family.SEMI_EXP,
        profiles={Scheme.SE: se, Scheme.DE: de},
        exact=-math.sqrt(math.pi) * (EULER_GAMMA + 2.0 * math.log(2.0)),
        log_weighted=True,
        log_integrand=log_integrand,
        source="exp(-t)*log(t)/sqrt(t)",
    )


BUILTINS = {1: _example_1, 2: _example_2, 3: _example_3, 4: _example_4}


def builtin(example_id: int) -> Problem:
    factory = BUILTINS.get(example_id)
    if factory is None:
        raise UnknownExample(f"Example '{example_id}' not found.")
    return factory()


def from_expression(
    src: str,
    profile: SingularityProfile,
    family: Optional[Family] = None,
    T: Optional[float] = None,
    exact: Optional[float] = None,
    label: Optional[str] = None,
) -> Problem:
    """Problem whose integrand is the expression `src` in t.

    The one profile serves both schemes. Nothing checks that the integrand
    actually satisfies it, so the bound is only as good as the profile.
    """
    family = profile.family if family is None else family
    T = profile.T if T is None else float(T)
    if family is not profile.family or T != profile.T:
        raise ValueError(f"Interval ({family.value}, T={T!r}) does not match the profile's")

    try:
        expr = parse(src)
    except ValueError as e:
        logger.debug(f"Failed to parse integrand expression {src!r}: {e}")
        raise

    return Problem(
        label=label or src,
        integrand=lambda p: evaluate(expr, p),
        family=family,
        profiles={Scheme.SE: profile, Scheme.DE: profile},
        T=T,
        exact=exact,
        source=src,
    )
