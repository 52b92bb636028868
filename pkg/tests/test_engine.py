import math

import pytest

from certquad.engine import integrate, quadrature_terms, sweep, sweep_async
from certquad.errors import MismatchedFamily, NonFiniteTerm, PreconditionViolated
from certquad.plans import Method, QuadPlan, make_plan
from certquad.problems import Problem, builtin
from certquad.profile import Family, Scheme, SingularityProfile
from certquad.summation import compensated_sum
from certquad.transforms import map_point

N_VALUES = list(range(5, 101, 5))

ADMISSIBLE = [
    (1, Method.SE_FINITE_NEW),
    (1, Method.DE_FINITE_NEW),
    (1, Method.SE_FINITE_EXISTING),
    (1, Method.DE_FINITE_EXISTING),
    (2, Method.SE_FINITE_NEW),
    (2, Method.DE_FINITE_NEW),
    (3, Method.SE_ALG_NEW),
    (3, Method.DE_ALG_NEW),
    (4, Method.SE_EXP_NEW),
    (4, Method.DE_EXP_NEW),
]


def with_integrand(problem, integrand, label="variant"):
    return Problem(
        label=label,
        integrand=integrand,
        family=problem.family,
        profiles=problem.profiles,
        T=problem.T,
        exact=None,
        log_weighted=problem.log_weighted,
    )


@pytest.mark.parametrize("example_id,method", ADMISSIBLE)
def test_error_stays_below_bound(example_id, method):
    records = sweep(builtin(example_id), method, N_VALUES)
    assert not any(r.skipped for r in records)
    for r in records:
        assert not r.violates_bound, f"n={r.n}: {r.abs_error!r} > {r.bound!r}"


@pytest.mark.parametrize("example_id,method", [em for em in ADMISSIBLE if not em[1].is_existing])
def test_error_stays_below_refined_bound(example_id, method):
    for r in sweep(builtin(example_id), method, N_VALUES, refined=True):
        assert not r.violates_bound, f"n={r.n}: {r.abs_error!r} > {r.bound!r}"


def test_de_reaches_double_precision_on_example_1():
    records = sweep(builtin(1), Method.DE_FINITE_NEW, range(1, 101))
    first = next(r.n for r in records if r.abs_error <= 1e-12)
    assert first <= 30
    assert all(r.abs_error <= 1e-10 for r in records if r.n >= first)


@pytest.mark.parametrize(
    "example_id,method,limit",
    [
        (2, Method.DE_FINITE_NEW, 60),
        (3, Method.DE_ALG_NEW, 60),
        (4, Method.DE_EXP_NEW, 60),
    ],
)
def test_de_reaches_double_precision(example_id, method, limit):
    records = sweep(builtin(example_id), method, N_VALUES)
    first = next(r.n for r in records if r.abs_error <= 1e-12)
    assert first <= limit
    assert all(r.abs_error <= 1e-10 for r in records if r.n >= first)


@pytest.mark.parametrize(
    "example_id,method", [(2, Method.SE_FINITE_NEW), (3, Method.SE_ALG_NEW), (4, Method.SE_EXP_NEW)]
)
def test_se_converges(example_id, method):
    (record,) = sweep(builtin(example_id), method, [100])
    assert record.abs_error <= 1e-7


@pytest.mark.parametrize("example_id,method", ADMISSIBLE)
def test_large_n_stays_on_the_plateau(example_id, method):
    for r in sweep(builtin(example_id), method, [500, 1000]):
        assert not r.skipped, r.reason
        assert r.abs_error <= 1e-12


def test_example_2_left_end_underflow_is_rescued():
    result = integrate(builtin(2), Method.DE_FINITE_NEW, 1000)
    leftmost = map_point(Method.DE_FINITE_NEW.map_kind(1.0), -result.plan.M * result.plan.h)
    assert leftmost.t == 0.0
    assert result.terms_rescued >= 1
    assert math.isfinite(result.approx)


@pytest.mark.parametrize("example_id,method", ADMISSIBLE)
def test_zero_integrand_sums_to_zero(example_id, method):
    problem = with_integrand(builtin(example_id), lambda p: 0.0)
    assert integrate(problem, method, 20).approx == 0.0


@pytest.mark.parametrize("example_id,method", ADMISSIBLE)
def test_scaling_the_integrand_scales_the_result(example_id, method):
    problem = builtin(example_id)
    scaled = with_integrand(problem, lambda p: 3.0 * problem.integrand(p))
    base = integrate(problem, method, 30).approx
    assert integrate(scaled, method, 30).approx == pytest.approx(3.0 * base, rel=1e-14)


@pytest.mark.parametrize("example_id,method", ADMISSIBLE)
def test_summation_order_does_not_matter(example_id, method):
    problem = builtin(example_id)
    result = integrate(problem, method, 50)
    terms = [value for value, _ in quadrature_terms(problem, method, result.plan)]
    assert len(terms) == result.plan.evals
    reordered = result.plan.h * compensated_sum(reversed(terms))
    assert reordered == pytest.approx(result.approx, rel=1e-13)


@pytest.mark.parametrize("example_id,method", ADMISSIBLE)
def test_few_terms_underflow(example_id, method):
    for n in N_VALUES:
        result = integrate(builtin(example_id), method, n)
        assert result.terms_evaluated == result.plan.evals
        assert result.terms_underflowed / result.terms_evaluated < 0.5


def test_result_carries_plan_and_bound():
    problem = builtin(1)
    result = integrate(problem, Method.DE_FINITE_NEW, 20)
    assert result.plan == make_plan(Method.DE_FINITE_NEW, 20, problem.profiles[Scheme.DE])
    assert result.bound.bound > abs(result.approx - problem.exact)
    assert result.roundoff > 0.0


def test_saturated_terms_count_as_underflow():
    problem = Problem(label="rational", integrand=lambda p: 1.0 / (1.0 + p.t) ** 2, family=Family.SEMI_ALG)
    plan = QuadPlan(method=Method.DE_ALG_NEW, n=1, h=1.0, M=10, N=10)
    result = integrate(problem, Method.DE_ALG_NEW, 1, plan=plan)
    assert result.bound is None
    # t overflows for x >= 7; the far left terms are exactly 0 already
    assert result.terms_underflowed == 4
    assert math.isfinite(result.approx)


def test_float_errors_at_saturated_points_count_as_underflow():
    problem = Problem(label="inverse-sqrt", integrand=lambda p: 1.0 / math.sqrt(p.t), family=Family.FINITE, T=1.0)
    plan = QuadPlan(method=Method.DE_FINITE_NEW, n=1, h=1.0, M=10, N=10)
    result = integrate(problem, Method.DE_FINITE_NEW, 1, plan=plan)
    # t is exactly 0 for x <= -7, where 1/sqrt(t) raises instead of returning inf
    assert result.terms_underflowed == 4
    assert math.isfinite(result.approx)


def test_log_form_rescues_overflowing_terms():
    problem = builtin(3)
    plan = QuadPlan(method=Method.DE_ALG_NEW, n=1, h=1.0, M=8, N=8)
    result = integrate(problem, Method.DE_ALG_NEW, 1, plan=plan)
    assert result.terms_rescued >= 2
    assert result.terms_underflowed == 0
    assert math.isfinite(result.approx)


def test_non_finite_term_raises():
    problem = with_integrand(builtin(1), lambda p: math.nan)
    with pytest.raises(NonFiniteTerm) as excinfo:
        integrate(problem, Method.SE_FINITE_NEW, 10)
    assert excinfo.value.k == -10


def test_sweep_records_non_finite_terms_as_failed_rows():
    problem = Problem(
        label="nan",
        integrand=lambda p: math.nan,
        family=Family.FINITE,
        profiles=builtin(1).profiles,
        T=1.0,
        exact=0.0,
    )
    (failed,) = sweep(problem, Method.DE_FINITE_NEW, [20])
    assert failed.skipped and failed.failed
    assert "Non-finite term" in failed.reason
    assert failed.abs_error is None and not failed.violates_bound


def test_family_mismatch():
    with pytest.raises(MismatchedFamily):
        integrate(builtin(1), Method.SE_ALG_NEW, 10)


def test_no_profile_and_no_plan():
    problem = Problem(label="bare", integrand=lambda p: 1.0, family=Family.FINITE, T=1.0)
    with pytest.raises(PreconditionViolated):
        integrate(problem, Method.SE_FINITE_NEW, 10)


def test_sweep_skips_inadmissible_n():
    profile = SingularityProfile(K=1.0, alpha=1.0, beta=1.0, d=0.01, family=Family.FINITE, T=1.0)
    problem = Problem(
        label="narrow-strip",
        integrand=lambda p: 1.0,
        family=Family.FINITE,
        profiles={Scheme.SE: profile},
        T=1.0,
        exact=1.0,
    )
    skipped, kept = sweep(problem, Method.SE_FINITE_NEW, [5, 20])
    assert skipped.skipped and skipped.h is None and skipped.abs_error is None
    assert skipped.reason
    assert not kept.skipped
    assert kept.h is not None and kept.abs_error is not None


def test_sweep_without_exact_value():
    problem = with_integrand(builtin(1), builtin(1).integrand)
    for r in sweep(problem, Method.DE_FINITE_NEW, [10, 20]):
        assert r.abs_error is None
        assert r.bound is not None
        assert not r.violates_bound


@pytest.mark.parametrize("n_values", [[], [10, 5], [5, 5], [0, 5], [5, 7.5]])
def test_sweep_rejects_bad_n_values(n_values):
    with pytest.raises(ValueError):
        sweep(builtin(1), Method.SE_FINITE_NEW, n_values)


@pytest.mark.asyncio
async def test_async_sweep_matches_sync_sweep():
    problem = builtin(4)
    expected = sweep(problem, Method.DE_EXP_NEW, N_VALUES)
    records = await sweep_async(problem, Method.DE_EXP_NEW, N_VALUES)
    assert [r.n for r in records] == N_VALUES
    assert records == expected


@pytest.mark.asyncio
async def test_async_sweep_validates_n_values():
    with pytest.raises(ValueError):
        await sweep_async(builtin(1), Method.SE_FINITE_NEW, [])
