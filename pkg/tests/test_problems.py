import math

import mpmath
import pytest

from certquad.engine import integrate
from certquad.errors import UnknownExample
from certquad.plans import Method
from certquad.problems import BUILTINS, CATALAN, EULER_GAMMA, Problem, builtin, from_expression
from certquad.profile import Family, Scheme, SingularityProfile


def test_constants_match_mpmath():
    assert CATALAN == pytest.approx(float(mpmath.catalan), rel=1e-16)
    assert EULER_GAMMA == pytest.approx(float(mpmath.euler), rel=1e-16)


@pytest.mark.parametrize(
    "example_id,expected",
    [
        (1, lambda: -mpmath.pi**2 / 12),
        (2, lambda: -4 * mpmath.catalan),
        (3, lambda: -mpmath.pi**2 / 6),
        (4, lambda: -mpmath.sqrt(mpmath.pi) * (mpmath.euler + 2 * mpmath.log(2))),
    ],
)
def test_exact_values(example_id, expected):
    with mpmath.workdps(30):
        value = float(expected())
    assert builtin(example_id).exact == pytest.approx(value, rel=1e-15)


@pytest.mark.parametrize("example_id", [1, 2])
def test_exact_values_by_direct_quadrature(example_id):
    problem = builtin(example_id)
    f = {
        1: lambda t: mpmath.log(t) / (1 + t),
        2: lambda t: mpmath.log(t) / (mpmath.sqrt(t) * (1 + t)),
    }[example_id]
    with mpmath.workdps(30):
        value = float(mpmath.quad(f, [0, 1]))
    assert problem.exact == pytest.approx(value, rel=1e-13)


def test_profiles_of_example_1():
    problem = builtin(1)
    se = problem.profiles[Scheme.SE]
    de = problem.profiles[Scheme.DE]
    assert se.K == 1.0 + math.e and se.d == 3.0
    assert de.K == 3.0 * math.sqrt(2.0) and de.d == math.pi / 3.0
    assert se.T == de.T == 1.0


def test_every_builtin_has_both_profiles():
    for example_id in BUILTINS:
        problem = builtin(example_id)
        assert set(problem.profiles) == {Scheme.SE, Scheme.DE}
        assert problem.profile_for(Method.SE_FINITE_NEW) is problem.profiles[Scheme.SE]


@pytest.mark.parametrize("example_id", [0, 5, -1])
def test_unknown_example(example_id):
    with pytest.raises(UnknownExample) as excinfo:
        builtin(example_id)
    assert str(excinfo.value) == f"Example '{example_id}' not found."
    with pytest.raises(KeyError):
        builtin(example_id)


def test_expression_and_builtin_agree():
    example = builtin(1)
    problem = from_expression("log(t)/(1+t)", example.profiles[Scheme.DE])
    assert problem.family is Family.FINITE and problem.T == 1.0
    for n in range(10, 51, 10):
        expected = integrate(example, Method.DE_FINITE_NEW, n).approx
        assert integrate(problem, Method.DE_FINITE_NEW, n).approx == pytest.approx(expected, rel=1e-15)


def test_expression_label_defaults_to_source():
    profile = SingularityProfile(K=1.0, alpha=1.0, beta=1.0, d=1.0, family=Family.SEMI_ALG)
    problem = from_expression("1/(1+t^2)", profile, exact=math.pi / 2.0)
    assert problem.label == "1/(1+t^2)"
    assert problem.source == "1/(1+t^2)"
    assert problem.exact == math.pi / 2.0


def test_expression_interval_must_match_profile():
    profile = SingularityProfile(K=1.0, alpha=1.0, beta=1.0, d=1.0, family=Family.FINITE, T=2.0)
    with pytest.raises(ValueError):
        from_expression("t", profile, T=1.0)
    with pytest.raises(ValueError):
        from_expression("t", profile, family=Family.SEMI_ALG)


def test_problem_validates_interval():
    with pytest.raises(ValueError):
        Problem(label="x", integrand=lambda p: 1.0, family=Family.FINITE)
    with pytest.raises(ValueError):
        Problem(label="x", integrand=lambda p: 1.0, family=Family.SEMI_EXP, T=1.0)
    with pytest.raises(ValueError):
        Problem(label="x", integrand=lambda p: 1.0, family=Family.FINITE, T=1.0, exact=math.inf)
