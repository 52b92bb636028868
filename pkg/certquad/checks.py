"""
certquad Checks
Seeded sampling of the inequalities and monotonicity facts the error bounds are built on
"""

from dataclasses import dataclass
from typing import Callable, List, Tuple

import numpy as np

from certquad.log import get_logger

TOLERANCE = 1e-12
X_RANGE = 30.0
LOG_T_RANGE = (0.1, 10.0)
EXPONENT_RANGE = (0.05, 4.0)
SERIES_CUTOFF = 1e-8
LOGLOG2 = float(np.log(np.log(2.0)))

logger = get_logger("Checks")


@dataclass(frozen=True)
class CheckReport:
    name: str
    samples: int
    violations: int
    worst_margin: float

    @property
    def passed(self) -> bool:
        return self.violations == 0


def _report(name: str, margins: np.ndarray) -> CheckReport:
    """margins has one row per inequality variant and one column per sample."""
    per_sample = np.min(np.atleast_2d(margins), axis=0)
    report = CheckReport(
        name=name,
        samples=int(per_sample.size),
        # a NaN margin is a sample that was not checked, so it counts against the check
        violations=int(np.count_nonzero(~(per_sample >= -TOLERANCE))),
        worst_margin=float(np.min(per_sample)),
    )
    log = logger.warning if report.violations else logger.info
    log(f"{name}: {report.violations}/{report.samples} violations, worst margin {report.worst_margin!r}")
    return report


def _scaled_margin(lhs: np.ndarray, rhs: np.ndarray) -> np.ndarray:
    return (rhs - lhs) / np.maximum(1.0, np.abs(rhs))


def _rng(samples: int, seed: int) -> np.random.Generator:
    if samples < 1:
        raise ValueError(f"samples must be at least 1, got {samples!r}")
    return np.random.default_rng(seed)


def _open_symmetric(rng: np.random.Generator, half_width: float, size: int) -> np.ndarray:
    """Uniform on (-half_width, half_width); the endpoints are never returned."""
    y = rng.uniform(-half_width, half_width, size)
    return np.where(y == -half_width, 0.0, y)


def clog1p(u: np.ndarray) -> np.ndarray:
    """Complex log(1 + u), accurate for small |u|.

    Below SERIES_CUTOFF the series is used; 1 + u can then keep only a
    subnormal imaginary part and dividing by (1 + u) - 1 gives NaN.
    """
    small = np.abs(u) < SERIES_CUTOFF
    safe = np.where(small, 1.0, u)
    w = 1.0 + safe
    return np.where(small, u - u * u / 2.0 + u * u * u / 3.0, np.log(w) * safe / (w - 1.0))


def csoftplus(s: np.ndarray) -> np.ndarray:
    """log(1 + e^s) continued from the real axis, split on the sign of Re s."""
    positive = s.real > 0
    upper = s + clog1p(np.exp(np.where(positive, -s, 0.0)))
    lower = clog1p(np.exp(np.where(positive, 0.0, s)))
    return np.where(positive, upper, lower)


def clog_softplus(s: np.ndarray) -> np.ndarray:
    """log(log(1 + e^s)); for Re s < 0 written as s + log(log1p(u)/u), u = e^s."""
    upper = s.real >= 0
    s_hi = np.where(upper, s, 1.0)
    s_lo = np.where(upper, -1.0, s)

    u = np.exp(s_lo)
    small = np.abs(u) < SERIES_CUTOFF
    safe_u = np.where(small, 0.5, u)
    g = np.where(small, 1.0 - u / 2.0 + u * u / 3.0, clog1p(safe_u) / safe_u)

    return np.where(upper, np.log(csoftplus(s_hi)), s_lo + np.log(g))


def _logistic_ratio(a: np.ndarray, b: np.ndarray, kappa: np.ndarray) -> np.ndarray:
    """|1/(1+e^{a+ib})| over 1/((1+e^a) kappa), from the cancellation-free modulus."""
    r = np.exp(-np.abs(a))
    rho = np.sqrt((1.0 - r) ** 2 + 4.0 * r * np.cos(b / 2.0) ** 2) / (1.0 + r)
    return kappa / rho


def check_logistic_bounds(samples: int, seed: int) -> CheckReport:
    """|1/(1+e^{+-z})| against 1/((1+e^{+-Re}) cos) on the SE strip and its DE image."""
    rng = _rng(samples, seed)
    x = rng.uniform(-X_RANGE, X_RANGE, samples)
    y_se = _open_symmetric(rng, np.pi, samples)
    y_de = _open_symmetric(rng, np.pi / 2.0, samples)

    kappa_se = np.cos(y_se / 2.0)
    a_de = np.pi * np.sinh(x) * np.cos(y_de)
    b_de = np.pi * np.cosh(x) * np.sin(y_de)
    kappa_de = np.cos((np.pi / 2.0) * np.sin(y_de))

    margins = np.stack(
        [
            1.0 - _logistic_ratio(x, y_se, kappa_se),
            1.0 - _logistic_ratio(-x, -y_se, kappa_se),
            1.0 - _logistic_ratio(a_de, b_de, kappa_de),
            1.0 - _logistic_ratio(-a_de, -b_de, kappa_de),
        ]
    )
    return _report("logistic_bounds", margins)


def check_log_bounds(samples: int, seed: int) -> CheckReport:
    """|log(T/(1+e^{-w}))| against |log T| plus the scaled real softplus, SE and DE."""
    rng = _rng(samples, seed)
    x = rng.uniform(-X_RANGE, X_RANGE, samples)
    y_se = _open_symmetric(rng, np.pi, samples)
    y_de = _open_symmetric(rng, np.pi / 2.0, samples)
    log_t = np.log(rng.uniform(*LOG_T_RANGE, samples))

    lhs_se, rhs_se = se_log_bound_sides(x, y_se, log_t)
    lhs_de, rhs_de = de_log_bound_sides(x, y_de, log_t)
    return _report("log_bounds", np.stack([_scaled_margin(lhs_se, rhs_se), _scaled_margin(lhs_de, rhs_de)]))


def se_log_bound_sides(x: np.ndarray, y: np.ndarray, log_t: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    lhs = np.abs(log_t - csoftplus(-(x + 1j * y)))
    rhs = np.abs(log_t) + np.logaddexp(0.0, -x) / np.cos(y / 2.0)
    return lhs, rhs


def de_log_bound_sides(x: np.ndarray, y: np.ndarray, log_t: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    w = np.pi * np.sinh(x + 1j * y)
    lhs = np.abs(log_t - csoftplus(-w))
    rhs = np.abs(log_t) + np.logaddexp(0.0, -np.pi * np.sinh(x) * np.cos(y)) / (
        np.cos((np.pi / 2.0) * np.sin(y)) * np.cos(y)
    )
    return lhs, rhs


def check_loglog_bounds(samples: int, seed: int) -> CheckReport:
    """|log(log(1+e^w))| on the closed strip |y| <= d, plus the real-axis variants."""
    rng = _rng(samples, seed)
    x = rng.uniform(-X_RANGE, X_RANGE, samples)

    d_se = np.pi - rng.uniform(0.0, np.pi, samples)
    d_se = np.where(d_se >= np.pi, np.pi / 2.0, d_se)
    y_se = d_se * rng.uniform(-1.0, 1.0, samples)
    c_tilde = 1.0 / np.cos(d_se / 2.0)
    lhs_se = np.abs(clog_softplus(x + 1j * y_se))
    rhs_se = (1.0 + c_tilde) / np.log(2.0 + c_tilde) * np.hypot(x, y_se) - LOGLOG2

    d_de = np.pi / 2.0 - rng.uniform(0.0, np.pi / 2.0, samples)
    d_de = np.where(d_de >= np.pi / 2.0, np.pi / 4.0, d_de)
    y_de = d_de * rng.uniform(-1.0, 1.0, samples)
    c_d = 1.0 / np.cos((np.pi / 2.0) * np.sin(d_de))
    lhs_de = np.abs(clog_softplus(np.pi * np.sinh(x + 1j * y_de)))
    rhs_de = np.pi * (1.0 + c_d) / np.log(2.0 + c_d) * (1.0 + np.abs(y_de)) * np.cosh(x) - LOGLOG2

    # the real variants, in their own accurate real form
    u_se = x
    u_de = np.pi * np.sinh(x)
    lhs_real_se = np.abs(_real_log_softplus(u_se))
    lhs_real_de = np.abs(_real_log_softplus(u_de))

    margins = np.stack(
        [
            _scaled_margin(lhs_se, rhs_se),
            _scaled_margin(lhs_de, rhs_de),
            _scaled_margin(lhs_real_se, np.abs(u_se) - LOGLOG2),
            _scaled_margin(lhs_real_de, np.abs(u_de) - LOGLOG2),
        ]
    )
    return _report("loglog_bounds", margins)


def _real_log_softplus(u: np.ndarray) -> np.ndarray:
    upper = u >= 0
    u_hi = np.where(upper, u, 0.0)
    u_lo = np.where(upper, -1.0, u)
    e = np.exp(u_lo)
    small = e < SERIES_CUTOFF
    safe_e = np.where(small, 0.5, e)
    g = np.where(small, 1.0 - e / 2.0, np.log1p(safe_e) / safe_e)
    return np.where(upper, np.log(np.logaddexp(0.0, u_hi)), u_lo + np.log(g))


def _monotone_margins(
    g: Callable[[np.ndarray, np.ndarray], np.ndarray],
    exponent: np.ndarray,
    x1: np.ndarray,
    x2: np.ndarray,
    increasing: bool,
) -> np.ndarray:
    g1 = g(x1, exponent)
    g2 = g(x2, exponent)
    if increasing:
        return _scaled_margin(g1, g2)
    return _scaled_margin(g2, g1)


def _ordered_pair(rng, start, span, size, leftward):
    """Two sorted points between start and start -/+ span."""
    a = rng.uniform(0.0, 1.0, (2, size)) * span
    a.sort(axis=0)
    if leftward:
        return start - a[1], start - a[0]
    return start + a[0], start + a[1]


def check_monotonicity(samples: int, seed: int) -> CheckReport:
    """The endpoint tails used by the truncation estimates are monotone where claimed."""
    rng = _rng(samples, seed)
    low, high = EXPONENT_RANGE
    alpha = high - rng.uniform(0.0, high - low, samples)
    beta = high - rng.uniform(0.0, high - low, samples)

    # SE: -x e^{ax} increases for x <= -1/a, x e^{-bx} decreases for x >= 1/b
    x1m, x2m = _ordered_pair(rng, -1.0 / alpha, 40.0 / alpha, samples, leftward=True)
    x1p, x2p = _ordered_pair(rng, 1.0 / beta, 40.0 / beta, samples, leftward=False)
    se_minus = _monotone_margins(lambda x, a: -x * np.exp(a * x), alpha, x1m, x2m, increasing=True)
    se_plus = _monotone_margins(lambda x, b: x * np.exp(-b * x), beta, x1p, x2p, increasing=False)

    # DE: same shape with sinh in the exponent, thresholds asinh(2/(pi a)) and asinh(2/(pi b))
    x1m, x2m = _ordered_pair(rng, -np.arcsinh(2.0 / (np.pi * alpha)), 6.0, samples, leftward=True)
    x1p, x2p = _ordered_pair(rng, np.arcsinh(2.0 / (np.pi * beta)), 6.0, samples, leftward=False)
    margins = np.stack(
        [
            se_minus,
            se_plus,
            _monotone_margins(
                lambda x, a: -np.sinh(x) * np.cosh(x) * np.exp(np.pi * a * np.sinh(x)), alpha, x1m, x2m, True
            ),
            _monotone_margins(lambda x, a: np.cosh(x) * np.exp(np.pi * a * np.sinh(x)), alpha, x1m, x2m, True),
            _monotone_margins(
                lambda x, b: np.sinh(x) * np.cosh(x) * np.exp(-np.pi * b * np.sinh(x)), beta, x1p, x2p, False
            ),
            _monotone_margins(lambda x, b: np.cosh(x) * np.exp(-np.pi * b * np.sinh(x)), beta, x1p, x2p, False),
        ]
    )
    return _report("monotonicity", margins)


CHECKS = {
    "logistic_bounds": check_logistic_bounds,
    "log_bounds": check_log_bounds,
    "loglog_bounds": check_loglog_bounds,
    "monotonicity": check_monotonicity,
}


def run_all(samples: int, seed: int) -> List[CheckReport]:
    return [check(samples, seed) for check in CHECKS.values()]
