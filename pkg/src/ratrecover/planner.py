"""Accuracy planning from an a-priori denominator bound."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class InvalidBound(ValueError):
    pass


def _check_bound(n_bound: int) -> int:
    if isinstance(n_bound, bool) or int(n_bound) != n_bound:
        raise InvalidBound(f"denominator bound must be an integer, got {n_bound!r}")
    n_bound = int(n_bound)
    if n_bound < 2:
        raise InvalidBound(f"denominator bound must satisfy N >= 2, got N = {n_bound}")
    return n_bound


@dataclass(frozen=True)
class PrecisionPlan:
    """What an approximation must satisfy so recovery is guaranteed.

    ``delta`` is the accuracy radius the upstream numerics must meet,
    ``epsilon_stop`` the remainder threshold that ends the expansion, and
    ``decimal_digits`` the number of places after the point at which a
    correctly rounded decimal is within ``delta / 2`` of its target.
    """

    n_bound: int
    k_threshold: int
    delta: Fraction
    epsilon_stop: Fraction
    decimal_digits: int

    @property
    def inverse_delta(self) -> int:
        return self.delta.denominator

    def as_dict(self) -> dict:
        return {
            "n_bound": self.n_bound,
            "k_threshold": self.k_threshold,
            "delta": f"{self.delta.numerator}/{self.delta.denominator}",
            "epsilon_stop": f"{self.epsilon_stop.numerator}/{self.epsilon_stop.denominator}",
            "decimal_digits": self.decimal_digits,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PrecisionPlan":
        return cls(
            n_bound=int(data["n_bound"]),
            k_threshold=int(data["k_threshold"]),
            delta=Fraction(data["delta"]),
            epsilon_stop=Fraction(data["epsilon_stop"]),
            decimal_digits=int(data["decimal_digits"]),
        )

    def to_text(self) -> str:
        return "\n".join(f"{k}: {v}" for k, v in self.as_dict().items())


def required_accuracy(n_bound: int, k_threshold: int) -> Fraction:
    return Fraction(1, (2 * k_threshold + 2) * n_bound * (n_bound - 1))


def digits_for_radius(radius: Fraction) -> int:
    """Smallest ``d`` with ``10**-d <= radius / 2``."""
    if radius <= 0:
        raise ValueError("radius must be positive")
    d = 0
    while Fraction(1, 10**d) > radius / 2:
        d += 1
    return d


def plan_for_denominator_bound(n_bound: int) -> PrecisionPlan:
    """Build the plan for targets whose denominator is at most ``n_bound``.

    The stop threshold is ``K = N + 1``.

    >>> plan_for_denominator_bound(170).inverse_delta
    9883120
    """
    n = _check_bound(n_bound)
    k = n + 1
    delta = required_accuracy(n, k)
    return PrecisionPlan(
        n_bound=n,
        k_threshold=k,
        delta=delta,
        epsilon_stop=Fraction(1, k),
        decimal_digits=digits_for_radius(delta),
    )


def uniqueness_radius(n_bound: int) -> Fraction:
    """Radius ``1/(2N(N-1))`` holding at most one fraction with denominator <= N."""
    n = _check_bound(n_bound)
    return Fraction(1, 2 * n * (n - 1))
