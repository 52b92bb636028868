"""
certquad Engine
Truncated trapezoidal sums with compensated summation and certified bounds
"""

import asyncio
import math
import sys
from dataclasses import dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from certquad.bounds import BoundReport, bound as certified_bound
from certquad.errors import MismatchedFamily, NonFiniteTerm, PreconditionViolated
from certquad.log import get_logger
from certquad.plans import Method, QuadPlan, make_plan
from certquad.problems import Problem
from certquad.summation import NeumaierAccumulator
from certquad.transforms import MapPoint, map_point

EPS = sys.float_info.epsilon
ROUNDOFF_FACTOR = 8.0
MIN_SLACK = 1e-16
MAX_LOG_TERM = 709.0

logger = get_logger("Engine")


@dataclass(frozen=True)
class QuadResult:
    approx: float
    plan: QuadPlan
    bound: Optional[BoundReport]
    terms_evaluated: int
    terms_underflowed: int
    terms_rescued: int = 0
    roundoff: float = 0.0


@dataclass(frozen=True)
class SweepRecord:
    """One row of a convergence sweep; skipped rows carry only n and the reason.

    failed marks a skipped row whose terms could not be evaluated, as opposed
    to one whose n did not meet the method's preconditions.
    """

    n: int
    h: Optional[float] = None
    M: Optional[int] = None
    N: Optional[int] = None
    evals: Optional[int] = None
    approx: Optional[float] = None
    abs_error: Optional[float] = None
    bound: Optional[float] = None
    skipped: bool = False
    reason: str = ""
    failed: bool = False
    roundoff: float = 0.0
    slack: float = MIN_SLACK

    @property
    def violates_bound(self) -> bool:
        if self.skipped or self.abs_error is None or self.bound is None:
            return False
        return self.abs_error > self.bound + self.slack


def _saturated(point: MapPoint) -> bool:
    return point.t in (0.0, math.inf) or point.weight in (0.0, math.inf)


def _term(problem: Problem, point: MapPoint, k: int) -> Tuple[float, str]:
    """Integrand times map derivative at one abscissa, plus how it was obtained.

    A float error raised by the integrand (1/0 at t == 0, say) is treated
    like a NaN result and goes through the same rescue and underflow path.
    """
    try:
        value = problem.integrand(point)
        if problem.log_weighted:
            value *= point.log_t
        value *= point.weight
    except (ZeroDivisionError, OverflowError):
        value = math.nan
    if math.isfinite(value):
        return value, "direct"

    if problem.log_integrand is not None:
        sign, log_abs = problem.log_integrand(point)
        log_term = log_abs + point.log_weight
        if sign == 0 or log_term == -math.inf:
            return 0.0, "rescued"
        if math.isfinite(log_term) and log_term < MAX_LOG_TERM:
            return sign * math.exp(log_term), "rescued"

    if _saturated(point):
        return 0.0, "underflowed"
    raise NonFiniteTerm(k, point.x, value)


def quadrature_terms(problem: Problem, method: Method, plan: QuadPlan) -> Iterator[Tuple[float, str]]:
    """Unscaled terms f(t(kh)) t'(kh) for k = -M..N, each tagged direct, rescued or underflowed."""
    kind = method.map_kind(problem.T)
    for k, x in plan.abscissae():
        yield _term(problem, map_point(kind, x), k)


def integrate(
    problem: Problem,
    method: Method,
    n: int,
    refined: bool = False,
    plan: Optional[QuadPlan] = None,
) -> QuadResult:
    """h * sum_{k=-M}^{N} f(t(kh)) t'(kh) for `problem` with `method` at n.

    The plan and bound come from the problem's profile for the method's
    scheme. A caller may pass its own plan instead, in which case the
    result carries no bound unless a profile is also available.
    """
    if method.family is not problem.family:
        raise MismatchedFamily(
            f"Method '{method.value}' integrates over the {method.family.value} family, "
            f"problem '{problem.label}' is {problem.family.value}"
        )

    profile = problem.profile_for(method)
    if plan is None:
        if profile is None:
            raise PreconditionViolated(f"Problem '{problem.label}' has no {method.scheme.value} profile to plan from")
        plan = make_plan(method, n, profile)
    report = certified_bound(method, plan.n, profile, refined=refined) if profile is not None else None

    acc = NeumaierAccumulator()
    underflowed = 0
    rescued = 0
    for value, how in quadrature_terms(problem, method, plan):
        if how == "underflowed":
            underflowed += 1
        elif how == "rescued":
            rescued += 1
        acc.add(value)

    approx = plan.h * acc.value
    roundoff = ROUNDOFF_FACTOR * EPS * plan.h * acc.abs_sum

    if underflowed:
        logger.info(f"{problem.label} {method.value} n={plan.n}: {underflowed}/{plan.evals} terms underflowed to 0")
    logger.debug(f"{problem.label} {method.value} n={plan.n}: approx={approx!r}")

    return QuadResult(
        approx=approx,
        plan=plan,
        bound=report,
        terms_evaluated=plan.evals,
        terms_underflowed=underflowed,
        terms_rescued=rescued,
        roundoff=roundoff,
    )


def dominance_slack(result: QuadResult, exact: float) -> float:
    """Absolute slack allowed on top of the bound once it drops below double resolution."""
    return max(MIN_SLACK, result.roundoff + math.ulp(exact))


def _validate_n_values(n_values: Sequence[int]) -> List[int]:
    values = list(n_values)
    if not values:
        raise ValueError("n_values must not be empty")
    for n in values:
        if isinstance(n, bool) or not isinstance(n, int) or n < 1:
            raise ValueError(f"n values must be positive integers, got {n!r}")
    if any(b <= a for a, b in zip(values, values[1:])):
        raise ValueError(f"n values must be strictly increasing, got {values!r}")
    return values


def sweep_point(problem: Problem, method: Method, n: int, refined: bool = False) -> SweepRecord:
    try:
        result = integrate(problem, method, n, refined=refined)
    except PreconditionViolated as e:
        logger.warning(f"{problem.label} {method.value}: skipping n={n}: {e}")
        return SweepRecord(n=n, skipped=True, reason=str(e))
    except NonFiniteTerm as e:
        logger.error(f"{problem.label} {method.value}: n={n} failed: {e}")
        return SweepRecord(n=n, skipped=True, failed=True, reason=str(e))

    plan = result.plan
    abs_error = None
    slack = MIN_SLACK
    if problem.exact is not None:
        abs_error = abs(result.approx - problem.exact)
        slack = dominance_slack(result, problem.exact)

    return SweepRecord(
        n=n,
        h=plan.h,
        M=plan.M,
        N=plan.N,
        evals=plan.evals,
        approx=result.approx,
        abs_error=abs_error,
        bound=result.bound.bound if result.bound is not None else None,
        roundoff=result.roundoff,
        slack=slack,
    )


def sweep(problem: Problem, method: Method, n_values: Sequence[int], refined: bool = False) -> List[SweepRecord]:
    """One record per n; an n that fails a precondition or yields a NaN term comes back skipped."""
    values = _validate_n_values(n_values)
    logger.info(f"Sweep {problem.label} {method.value} over {len(values)} values of n")
    records = [sweep_point(problem, method, n, refined=refined) for n in values]
    logger.info(f"Sweep {problem.label} {method.value} finished: {_summary(records)}")
    return records


async def sweep_async(
    problem: Problem, method: Method, n_values: Sequence[int], refined: bool = False
) -> List[SweepRecord]:
    """Same as sweep, with each n evaluated in a worker thread; results stay ordered by n."""
    values = _validate_n_values(n_values)
    logger.info(f"Async sweep {problem.label} {method.value} over {len(values)} values of n")
    tasks = [asyncio.to_thread(sweep_point, problem, method, n, refined) for n in values]
    records = list(await asyncio.gather(*tasks))
    logger.info(f"Async sweep {problem.label} {method.value} finished: {_summary(records)}")
    return records


def _summary(records: Sequence[SweepRecord]) -> str:
    skipped = sum(1 for r in records if r.skipped)
    failed = sum(1 for r in records if r.failed)
    violations = sum(1 for r in records if r.violates_bound)
    return f"{len(records)} rows, {skipped} skipped ({failed} failed), {violations} bound violations"
