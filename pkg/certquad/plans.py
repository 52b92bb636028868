"""
certquad Plans
Mesh size and truncation selection (h, M, N) for the eight quadrature methods
"""

import math
from dataclasses import dataclass
from enum import Enum

from certquad.errors import MismatchedFamily, PreconditionViolated
from certquad.log import get_logger
from certquad.profile import Family, Scheme, SingularityProfile
from certquad.transforms import MapKind, MapTag

# shared by the two existing (log-bounded) methods
GAMMA = (2.0 * math.pi - 1.0) / (2.0 * math.pi)

N_MIN_SCAN_LIMIT = 100_000

logger = get_logger("Plans")


class Method(Enum):
    SE_FINITE_NEW = "se-finite-new"
    DE_FINITE_NEW = "de-finite-new"
    SE_ALG_NEW = "se-alg-new"
    DE_ALG_NEW = "de-alg-new"
    SE_EXP_NEW = "se-exp-new"
    DE_EXP_NEW = "de-exp-new"
    SE_FINITE_EXISTING = "se-finite-existing"
    DE_FINITE_EXISTING = "de-finite-existing"

    @property
    def map_tag(self) -> MapTag:
        return _METHOD_TABLE[self][0]

    @property
    def family(self) -> Family:
        return _METHOD_TABLE[self][1]

    @property
    def is_existing(self) -> bool:
        return _METHOD_TABLE[self][2]

    @property
    def scheme(self) -> Scheme:
        return Scheme.DE if self.map_tag.is_de else Scheme.SE

    @property
    def is_de(self) -> bool:
        return self.scheme is Scheme.DE

    @property
    def cli_name(self) -> str:
        return f"{self.scheme.value}-{'existing' if self.is_existing else 'new'}"

    def map_kind(self, T=None) -> MapKind:
        return MapKind(self.map_tag, None if T is None else float(T))

    @classmethod
    def resolve(cls, name: str, family: Family) -> "Method":
        """Look up a method by its command-line name (se-new, de-existing, ...) and family."""
        for method in cls:
            if method.cli_name == name and method.family is family:
                return method
        if name in CLI_METHOD_NAMES:
            raise MismatchedFamily(f"Method '{name}' is not available on the {family.value} family.")
        raise ValueError(f"Method '{name}' not found.")


_METHOD_TABLE = {
    Method.SE_FINITE_NEW: (MapTag.SE_FINITE, Family.FINITE, False),
    Method.DE_FINITE_NEW: (MapTag.DE_FINITE, Family.FINITE, False),
    Method.SE_ALG_NEW: (MapTag.SE_ALG, Family.SEMI_ALG, False),
    Method.DE_ALG_NEW: (MapTag.DE_ALG, Family.SEMI_ALG, False),
    Method.SE_EXP_NEW: (MapTag.SE_EXP, Family.SEMI_EXP, False),
    Method.DE_EXP_NEW: (MapTag.DE_EXP, Family.SEMI_EXP, False),
    Method.SE_FINITE_EXISTING: (MapTag.SE_FINITE, Family.FINITE, True),
    Method.DE_FINITE_EXISTING: (MapTag.DE_FINITE, Family.FINITE, True),
}

CLI_METHOD_NAMES = ("se-new", "de-new", "se-existing", "de-existing")


@dataclass(frozen=True)
class QuadPlan:
    method: Method
    n: int
    h: float
    M: int
    N: int

    @property
    def evals(self) -> int:
        return self.M + self.N + 1

    def abscissae(self):
        """(k, k*h) for k = -M .. N, left to right."""
        return [(k, k * self.h) for k in range(-self.M, self.N + 1)]


def q_ratio(x: float) -> float:
    """x / asinh(x); tends to 1 as x -> 0+."""
    if x <= 0:
        raise ValueError(f"q_ratio needs x > 0, got {x!r}")
    return x / math.asinh(x)


def check_profile(method: Method, profile: SingularityProfile) -> None:
    """Raise unless `profile` satisfies the hypotheses `method` is stated under."""
    if profile.family is not method.family:
        raise MismatchedFamily(
            f"Method '{method.value}' integrates over the {method.family.value} family, "
            f"profile is {profile.family.value}"
        )

    tag = method.map_tag
    d_limit = math.pi if tag in (MapTag.SE_FINITE, MapTag.SE_EXP) else math.pi / 2.0
    if not profile.d < d_limit:
        raise PreconditionViolated(f"Method '{method.value}' needs d < {d_limit!r}, got d={profile.d!r}")
    if method.family is Family.SEMI_EXP and profile.alpha > 1.0:
        raise PreconditionViolated(f"Method '{method.value}' needs alpha <= 1, got alpha={profile.alpha!r}")


def _check_n(n) -> None:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise PreconditionViolated(f"n must be a positive integer, got {n!r}")


def make_plan(method: Method, n: int, profile: SingularityProfile) -> QuadPlan:
    """Select (h, M, N) for `method` at discretization parameter n.

    Ceilings and floors are taken on the double-precision value as computed.
    Any smallness condition that fails raises PreconditionViolated rather
    than adjusting n.
    """
    _check_n(n)
    check_profile(method, profile)

    d = profile.d
    alpha = profile.alpha
    beta = profile.beta
    mu = profile.mu
    tag = method.map_tag

    if method is Method.SE_FINITE_EXISTING:
        h = math.sqrt(2.0 * math.pi * d / (GAMMA * n))
        M = n
        N = math.ceil(GAMMA * n)

    elif method is Method.DE_FINITE_EXISTING:
        arg = 4.0 * d * n / GAMMA
        if arg <= 1.0:
            raise PreconditionViolated(f"Method '{method.value}' needs 4dn/gamma > 1, got {arg!r} at n={n}")
        h = math.log(arg) / n
        M = n
        N = n - math.floor(math.log(1.0 / GAMMA) / h)
        if N < 0:
            raise PreconditionViolated(f"Method '{method.value}' gives N={N} < 0 at n={n}")

    elif not tag.is_de:
        if n < 1.0 / (2.0 * math.pi * d * mu):
            raise PreconditionViolated(
                f"Method '{method.value}' needs n >= 1/(2*pi*d*mu) = {1.0 / (2.0 * math.pi * d * mu)!r}, got n={n}"
            )
        h = math.sqrt(2.0 * math.pi * d / (mu * n))
        M = math.ceil((mu / alpha) * n)
        N = math.ceil((mu / beta) * n)

    else:
        scale = 4.0 if tag is MapTag.DE_ALG else 2.0
        n_floor = mu * math.sinh(1.0) / (scale * d)
        if n < n_floor:
            raise PreconditionViolated(f"Method '{method.value}' needs n >= {n_floor!r}, got n={n}")
        arg = scale * d * n / mu
        h = math.asinh(arg) / n
        if h > math.pi * d:
            raise PreconditionViolated(f"Method '{method.value}' needs h <= pi*d, got h={h!r} at n={n}")
        q = q_ratio(arg)
        M = math.ceil(math.asinh((mu / alpha) * q) / h)
        N = math.ceil(math.asinh((mu / beta) * q) / h)

    logger.debug(f"Plan {method.value} n={n}: h={h!r} M={M} N={N}")
    return QuadPlan(method=method, n=n, h=h, M=M, N=N)


def n_min(method: Method, profile: SingularityProfile, limit: int = N_MIN_SCAN_LIMIT) -> int:
    """Smallest n >= 1 for which make_plan succeeds."""
    check_profile(method, profile)
    for n in range(1, limit + 1):
        try:
            make_plan(method, n, profile)
        except PreconditionViolated:
            continue
        return n
    raise PreconditionViolated(f"Method '{method.value}' has no admissible n <= {limit}")
