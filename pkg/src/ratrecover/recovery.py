"""Recover an exact rational from a sufficiently accurate approximation.

The approximation is expanded as a continued fraction with exact integer
arithmetic.  Expansion stops as soon as the fractional remainder drops below
``plan.epsilon_stop`` (equivalently, the next quotient would be at least
``plan.k_threshold``).  Under the accuracy contract the accepted quotients are
either the target's quotients, or the same with the last one lowered by one
and a 1 appended; folding that trailing 1 gives the target.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, NamedTuple

from .contfrac import ContinuedFraction, cf_canonicalize, cf_eval
from .decimal_approx import as_fraction
from .planner import PrecisionPlan, _check_bound


class RecoveryContractError(ValueError):
    """The approximation was not within ``delta`` of any admissible rational."""

    def __init__(self, message, result=None):
        super().__init__(message)
        self.result = result


@dataclass(frozen=True)
class RecoveryResult:
    value: Fraction
    quotients_used: ContinuedFraction
    terminating_quotient: int | None
    collapsed_trailing_one: bool

    def as_dict(self) -> dict:
        return {
            "value": f"{self.value.numerator}/{self.value.denominator}",
            "quotients": list(self.quotients_used.quotients),
            "terminating_quotient": self.terminating_quotient,
            "collapsed_trailing_one": self.collapsed_trailing_one,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "RecoveryResult":
        return cls(
            value=Fraction(data["value"]),
            quotients_used=ContinuedFraction(tuple(data["quotients"])),
            terminating_quotient=data["terminating_quotient"],
            collapsed_trailing_one=bool(data["collapsed_trailing_one"]),
        )


class Step(NamedTuple):
    """One expansion step: integer part and exact fractional remainder."""

    quotient: int
    remainder: Fraction


def _expand(num: int, den: int, eps: Fraction) -> Iterator[tuple[int, int, int]]:
    # yields (a_i, r, den) with remainder b_i = r/den; last item is the stop step
    while True:
        a, r = divmod(num, den)
        yield a, r, den
        if r == 0 or r * eps.denominator < den * eps.numerator:
            return
        num, den = den, r


def trace_expansion(approx, epsilon_stop: Fraction) -> list[Step]:
    """Exact ``(a_i, b_i)`` pairs produced by the stopped expansion."""
    x = as_fraction(approx)
    eps = Fraction(epsilon_stop)
    if eps <= 0:
        raise ValueError("epsilon_stop must be positive")
    return [Step(a, Fraction(r, den)) for a, r, den in _expand(x.numerator, x.denominator, eps)]


def recover(approx, plan: PrecisionPlan) -> RecoveryResult:
    """Return the unique rational with denominator <= ``plan.n_bound`` near ``approx``.

    ``approx`` may be a :class:`DecimalApprox`, a decimal string or an exact
    rational.  It must lie within ``plan.delta`` of the target; if the
    recovered denominator exceeds the bound a :class:`RecoveryContractError`
    is raised.
    """
    x = as_fraction(approx)
    quotients = []
    terminating = None
    for a, r, den in _expand(x.numerator, x.denominator, plan.epsilon_stop):
        quotients.append(a)
    # r, den belong to the stop step; r == 0 means the input was exhausted
    if r:
        terminating = den // r
    used = ContinuedFraction(tuple(quotients))
    canon = cf_canonicalize(used)
    result = RecoveryResult(
        value=cf_eval(canon),
        quotients_used=used,
        terminating_quotient=terminating,
        collapsed_trailing_one=len(canon) < len(used),
    )
    if result.value.denominator > plan.n_bound:
        raise RecoveryContractError(
            f"recovered {result.value} has denominator > N = {plan.n_bound}; "
            f"the approximation {approx} is not within {plan.delta} of any "
            f"fraction with denominator <= {plan.n_bound}",
            result,
        )
    return result


def verify_unique(candidate: Fraction, approx, n_bound: int) -> bool:
    """True iff ``candidate`` lies strictly within ``1/(2N(N-1))`` of ``approx``."""
    n = _check_bound(n_bound)
    candidate = Fraction(candidate)
    if candidate.denominator > n:
        raise ValueError(f"candidate {candidate} has denominator > {n}")
    return abs(candidate - as_fraction(approx)) * 2 * n * (n - 1) < 1
