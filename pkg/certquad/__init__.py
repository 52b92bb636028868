"""
certquad
SE and DE quadrature for integrands with logarithmic and algebraic endpoint singularities,
with an explicit error bound attached to every result
"""

from certquad.bounds import AuxConstants, BoundReport, aux_constants, bound
from certquad.checks import (
    CheckReport,
    check_log_bounds,
    check_logistic_bounds,
    check_loglog_bounds,
    check_monotonicity,
    run_all,
)
from certquad.engine import QuadResult, SweepRecord, integrate, quadrature_terms, sweep, sweep_async
from certquad.errors import (
    CertQuadError,
    DomainError,
    ExprSyntaxError,
    MismatchedFamily,
    NonFiniteTerm,
    PreconditionViolated,
    RejectedProfile,
    UnknownExample,
    UsageError,
)
from certquad.expression import evaluate, parse, to_source
from certquad.plans import GAMMA, Method, QuadPlan, make_plan, n_min, q_ratio
from certquad.problems import Problem, builtin, from_expression
from certquad.profile import Family, Scheme, SingularityProfile
from certquad.transforms import MapKind, MapPoint, MapTag, map_point

__version__ = "0.1.0"
