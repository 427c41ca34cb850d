"""Exact rational recovery from decimal approximations via continued fractions."""

__version__ = "0.1.0"

from .contfrac import (  # noqa: E402
    ContinuedFraction,
    ConvergentPair,
    cf_canonicalize,
    cf_eval,
    cf_expand,
    convergents,
)
from .decimal_approx import DecimalApprox  # noqa: E402
from .oracle import best_approx_bounded_denominator, exhaustive_best_approx, min_pairwise_gap  # noqa: E402
from .planner import PrecisionPlan, plan_for_denominator_bound, uniqueness_radius  # noqa: E402
from .polyexact import (  # noqa: E402
    ApproxPolynomial,
    ExactPolynomial,
    Monomial,
    monic_transform,
    multiply,
    recover_polynomial,
    verify_factorization,
)
from .recovery import RecoveryContractError, RecoveryResult, recover, verify_unique  # noqa: E402
