"""
certquad Bounds
Explicit error-bound constants and certified bounds for every quadrature method
"""

import math
from dataclasses import dataclass
from functools import lru_cache

from certquad.errors import PreconditionViolated, RejectedProfile
from certquad.log import get_logger
from certquad.plans import GAMMA, Method, make_plan, q_ratio
from certquad.profile import Family, Scheme, SingularityProfile
from certquad.transforms import MapTag

__all__ = [
    "AuxConstants",
    "BoundReport",
    "Family",
    "Scheme",
    "SingularityProfile",
    "aux_constants",
    "bound",
    "constant",
    "require_log_bounded",
]

_LOG2 = math.log(2.0)
_LOGLOG2 = math.log(_LOG2)

logger = get_logger("Bounds")


@dataclass(frozen=True)
class AuxConstants:
    mu: float
    l_mu: float
    c_d: float
    c_tilde_d: float
    L_d: float
    L_tilde_d: float


@dataclass(frozen=True)
class BoundReport:
    """bound = C * amplitude * decay, decay = exp(-rate)."""

    C: float
    amplitude: float
    decay: float
    rate: float
    bound: float
    refined: bool = False


def _big_l(c: float) -> float:
    log_c = math.log(2.0 + c)
    return (1.0 + log_c) / log_c * (1.0 + c)


@lru_cache(maxsize=256)
def aux_constants(profile: SingularityProfile) -> AuxConstants:
    mu = profile.mu
    d = profile.d
    c_d = 1.0 / math.cos((math.pi / 2.0) * math.sin(d))
    c_tilde_d = 1.0 / math.cos(d / 2.0)
    return AuxConstants(
        mu=mu,
        l_mu=2.0 * _LOG2 + 1.0 / mu,
        c_d=c_d,
        c_tilde_d=c_tilde_d,
        L_d=_big_l(c_d),
        L_tilde_d=_big_l(c_tilde_d),
    )


def require_log_bounded(method: Method, profile: SingularityProfile) -> None:
    """The existing methods assume |f(z)| <= K|log z|, i.e. alpha = beta = 1."""
    if method.is_existing and (profile.alpha != 1.0 or profile.beta != 1.0):
        raise RejectedProfile(
            f"Method '{method.value}' assumes alpha = beta = 1, got alpha={profile.alpha!r} beta={profile.beta!r}"
        )


def _abs_log_t(profile: SingularityProfile) -> float:
    return abs(math.log(profile.T))


def _se_finite_new(p: SingularityProfile, a: AuxConstants) -> float:
    K, alpha, beta, d, T, mu, l_mu = p.K, p.alpha, p.beta, p.d, p.T, a.mu, a.l_mu
    abs_log_t = _abs_log_t(p)
    cos_half = math.cos(d / 2.0)
    return (K * T ** (alpha + beta - 1.0) / mu) * (
        (4.0 * abs_log_t * cos_half + 2.0 * l_mu)
        / ((1.0 - math.exp(-math.sqrt(2.0 * math.pi * d * mu))) * cos_half ** (alpha + beta + 1.0))
        + 2.0 * abs_log_t
        + l_mu
        + math.sqrt(2.0 * math.pi * d / mu)
    )


def _de_finite_new(p: SingularityProfile, a: AuxConstants) -> float:
    K, alpha, beta, d, T, mu, l_mu, c_d = p.K, p.alpha, p.beta, p.d, p.T, a.mu, a.l_mu, a.c_d
    abs_log_t = _abs_log_t(p)
    return (K * T ** (alpha + beta - 1.0) / mu) * (
        c_d ** (alpha + beta)
        * (4.0 * abs_log_t * math.cos(d) + 2.0 * l_mu * c_d)
        / ((1.0 - math.exp(-math.pi * mu * q_ratio(2.0 * d / mu))) * math.cos(d) ** 2)
        + 2.0 * abs_log_t
        + l_mu
        + 2.0 * math.pi * d / mu
    )


def _se_alg_new(p: SingularityProfile, a: AuxConstants) -> float:
    K, alpha, beta, d, mu = p.K, p.alpha, p.beta, p.d, a.mu
    return (2.0 * K / mu**2) * (
        2.0 * (1.0 + mu * d)
        / ((1.0 - math.exp(-math.sqrt(2.0 * math.pi * d * mu))) * math.cos(d) ** ((alpha + beta) / 2.0))
        + math.sqrt(2.0 * math.pi * d * mu)
        + 1.0
    )


def _de_alg_new(p: SingularityProfile, a: AuxConstants) -> float:
    K, alpha, beta, d, mu, c_d = p.K, p.alpha, p.beta, p.d, a.mu, a.c_d
    return (2.0 * K / mu**2) * (
        (2.0 + math.pi * mu * math.cos(d))
        * c_d ** ((alpha + beta) / 2.0)
        / ((1.0 - math.exp(-math.pi * mu * q_ratio(4.0 * d / mu) / 2.0)) * math.cos(d) ** 2)
        + 2.0 * math.pi * d
        + 1.0
    )


def _se_exp_new(p: SingularityProfile, a: AuxConstants) -> float:
    K, alpha, beta, d, mu = p.K, p.alpha, p.beta, p.d, a.mu
    c, L = a.c_tilde_d, a.L_tilde_d
    log_c = math.log(2.0 + c)
    return (2.0 * K / mu**2) * (
        2.0
        * L ** (1.0 - alpha)
        * c ** (alpha + beta)
        * ((1.0 + c) * (1.0 + mu * d) - mu * _LOGLOG2 * log_c)
        / ((1.0 - math.exp(-math.sqrt(2.0 * math.pi * d * mu))) * log_c)
        + math.exp(math.pi * (1.0 - alpha) / 12.0) * (math.sqrt(2.0 * math.pi * d * mu) + 1.0 - mu * _LOGLOG2)
    )


def _de_exp_new(p: SingularityProfile, a: AuxConstants) -> float:
    K, alpha, beta, d, mu = p.K, p.alpha, p.beta, p.d, a.mu
    c, L = a.c_d, a.L_d
    log_c = math.log(2.0 + c)
    cos_d = math.cos(d)
    return (2.0 * K / mu**2) * (
        2.0
        * L ** (1.0 - alpha)
        * c ** (alpha + beta)
        * ((1.0 + c) * (1.0 + d) * (1.0 + math.pi * mu * cos_d) - mu * _LOGLOG2 * log_c * cos_d)
        / ((1.0 - math.exp(-math.pi * mu * q_ratio(2.0 * d / mu))) * log_c * cos_d**2)
        + math.exp(math.pi * (1.0 - alpha) / 12.0) * (2.0 * math.pi * d + 1.0 - mu * _LOGLOG2)
    )


def _se_finite_existing(p: SingularityProfile, a: AuxConstants) -> float:
    K, d, T = p.K, p.d, p.T
    cos_half = math.cos(d / 2.0)
    return (
        2.0
        * K
        * T
        / (GAMMA * cos_half ** (1.0 / (2.0 * math.pi)))
        * math.sqrt(math.pi**2 + math.log(T / cos_half) ** 2)
        * (2.0 / ((1.0 - math.exp(-math.sqrt(2.0 * math.pi * d * GAMMA))) * cos_half ** (GAMMA + 1.0)) + 1.0)
    )


def _de_finite_existing(p: SingularityProfile, a: AuxConstants) -> float:
    K, d, T, c_d = p.K, p.d, p.T, a.c_d
    return (
        2.0
        * K
        * T
        * c_d ** (1.0 / (2.0 * math.pi))
        / GAMMA
        * math.sqrt(math.pi**2 + math.log(T * c_d) ** 2)
        * (
            2.0 * c_d ** (GAMMA + 1.0) / ((1.0 - math.exp(-math.pi * GAMMA * math.e / 2.0)) * math.cos(d))
            + math.exp(math.pi / 2.0)
        )
    )


_CONSTANTS = {
    Method.SE_FINITE_NEW: _se_finite_new,
    Method.DE_FINITE_NEW: _de_finite_new,
    Method.SE_ALG_NEW: _se_alg_new,
    Method.DE_ALG_NEW: _de_alg_new,
    Method.SE_EXP_NEW: _se_exp_new,
    Method.DE_EXP_NEW: _de_exp_new,
    Method.SE_FINITE_EXISTING: _se_finite_existing,
    Method.DE_FINITE_EXISTING: _de_finite_existing,
}


@lru_cache(maxsize=256)
def constant(method: Method, profile: SingularityProfile) -> float:
    """The n-independent constant C of `method` for `profile`."""
    C = _CONSTANTS[method](profile, aux_constants(profile))
    logger.debug(f"C[{method.value}] = {C!r} for {profile!r}")
    return C


# The proofs of the new bounds carry an n-dependent constant C(n) <= C(1) = C.


def _refined_se_finite(p, a, n):
    K, alpha, beta, d, T, mu, l_mu = p.K, p.alpha, p.beta, p.d, p.T, a.mu, a.l_mu
    abs_log_t = _abs_log_t(p)
    cos_half = math.cos(d / 2.0)
    rn = math.sqrt(n)
    return (K * T ** (alpha + beta - 1.0) / mu) * (
        (4.0 * abs_log_t * cos_half + 2.0 * l_mu)
        / (rn * (1.0 - math.exp(-math.sqrt(2.0 * math.pi * d * mu * n))) * cos_half ** (alpha + beta + 1.0))
        + (2.0 * abs_log_t + l_mu) / rn
        + math.sqrt(2.0 * math.pi * d / mu)
    )


def _refined_de_finite(p, a, n):
    K, alpha, beta, d, T, mu, l_mu, c_d = p.K, p.alpha, p.beta, p.d, p.T, a.mu, a.l_mu, a.c_d
    abs_log_t = _abs_log_t(p)
    return (K * T ** (alpha + beta - 1.0) / mu) * (
        c_d ** (alpha + beta)
        * (4.0 * abs_log_t * math.cos(d) + 2.0 * l_mu * c_d)
        / (n * (1.0 - math.exp(-math.pi * mu * q_ratio(2.0 * d * n / mu))) * math.cos(d) ** 2)
        + (2.0 * abs_log_t + l_mu) / n
        + 2.0 * math.pi * d / mu
    )


def _refined_se_alg(p, a, n):
    K, alpha, beta, d, mu = p.K, p.alpha, p.beta, p.d, a.mu
    rn = math.sqrt(n)
    return (2.0 * K / mu**2) * (
        2.0
        * (mu * d + 1.0)
        / (rn * (1.0 - math.exp(-math.sqrt(2.0 * math.pi * d * mu * n))) * math.cos(d) ** ((alpha + beta) / 2.0))
        + math.sqrt(2.0 * math.pi * d * mu)
        + 1.0 / rn
    )


def _refined_de_alg(p, a, n):
    K, alpha, beta, d, mu = p.K, p.alpha, p.beta, p.d, a.mu
    return (2.0 * K / mu**2) * (
        (2.0 + math.pi * mu * math.cos(d))
        / (
            n
            * (1.0 - math.exp(-(math.pi / 2.0) * mu * q_ratio(4.0 * d * n / mu)))
            * math.cos((math.pi / 2.0) * math.sin(d)) ** ((alpha + beta) / 2.0)
            * math.cos(d) ** 2
        )
        + 2.0 * math.pi * d
        + 1.0 / n
    )


def _refined_se_exp(p, a, n):
    K, alpha, beta, d, mu = p.K, p.alpha, p.beta, p.d, a.mu
    c, L = a.c_tilde_d, a.L_tilde_d
    rn = math.sqrt(n)
    return (2.0 * K / mu**2) * (
        (
            2.0 * L ** (1.0 - alpha) * (mu * d + 1.0) / math.cos(d / 2.0) ** (alpha + beta) * (1.0 + c) / math.log(2.0 + c)
            - mu * _LOGLOG2
        )
        / (rn * (1.0 - math.exp(-math.sqrt(2.0 * math.pi * d * mu * n))))
        + math.exp(math.pi * (1.0 - alpha) / 12.0) * (math.sqrt(2.0 * math.pi * d * mu) + (1.0 - mu * _LOGLOG2) / rn)
    )


def _refined_de_exp(p, a, n):
    K, alpha, beta, d, mu = p.K, p.alpha, p.beta, p.d, a.mu
    c, L = a.c_d, a.L_d
    log_c = math.log(2.0 + c)
    cos_d = math.cos(d)
    return (2.0 * K / mu**2) * (
        2.0
        * L ** (1.0 - alpha)
        * ((1.0 + c) * (1.0 + d) * (1.0 + math.pi * mu * cos_d) - mu * _LOGLOG2 * log_c * cos_d)
        / (
            n
            * (1.0 - math.exp(-math.pi * mu * q_ratio(2.0 * d * n / mu)))
            * log_c
            * math.cos((math.pi / 2.0) * math.sin(d)) ** (alpha + beta)
            * cos_d**2
        )
        + math.exp(math.pi * (1.0 - alpha) / 12.0) * (2.0 * math.pi * d + 1.0 - mu * _LOGLOG2 / n)
    )


_REFINED = {
    Method.SE_FINITE_NEW: _refined_se_finite,
    Method.DE_FINITE_NEW: _refined_de_finite,
    Method.SE_ALG_NEW: _refined_se_alg,
    Method.DE_ALG_NEW: _refined_de_alg,
    Method.SE_EXP_NEW: _refined_se_exp,
    Method.DE_EXP_NEW: _refined_de_exp,
}


def _amplitude_and_rate(method: Method, n: int, profile: SingularityProfile):
    d = profile.d
    mu = profile.mu
    tag = method.map_tag

    if method is Method.SE_FINITE_EXISTING:
        return 1.0, math.sqrt(2.0 * math.pi * d * GAMMA * n)
    if method is Method.DE_FINITE_EXISTING:
        return 1.0, 2.0 * math.pi * d * n / math.log(4.0 * d * n / GAMMA)
    if not method.is_de:
        return math.sqrt(n), math.sqrt(2.0 * math.pi * d * mu * n)
    scale = 4.0 if tag is MapTag.DE_ALG else 2.0
    return float(n), 2.0 * math.pi * d * n / math.asinh(scale * d * n / mu)


def bound(method: Method, n: int, profile: SingularityProfile, refined: bool = False) -> BoundReport:
    """Certified bound on |integral - h * sum| for `method` at n.

    With refined=True the n-dependent constant from the proofs of the new
    bounds is used instead of C; the existing methods have none.
    """
    make_plan(method, n, profile)
    require_log_bounded(method, profile)

    if refined:
        if method not in _REFINED:
            raise PreconditionViolated(f"Method '{method.value}' has no refined constant")
        C = _REFINED[method](profile, aux_constants(profile), n)
    else:
        C = constant(method, profile)

    amplitude, rate = _amplitude_and_rate(method, n, profile)
    decay = math.exp(-rate)
    return BoundReport(C=C, amplitude=amplitude, decay=decay, rate=rate, bound=C * amplitude * decay, refined=refined)
