"""Finite continued fractions over exact rationals.

A continued fraction is held as a tuple of partial quotients
``(a0, a1, ..., aL)`` standing for ``a0 + 1/(a1 + 1/(... + 1/aL))``.
``a0`` is any integer, every later quotient is >= 1.  The canonical form of
a rational is the shorter of its two expansions: the last quotient is >= 2
unless there is only one quotient.

Values are :class:`fractions.Fraction`; nothing here touches floats.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

Rational = Fraction


class InvalidContinuedFraction(ValueError):
    pass


@dataclass(frozen=True)
class ContinuedFraction:
    quotients: tuple[int, ...]

    def __post_init__(self):
        qs = tuple(int(a) for a in self.quotients)
        _check_quotients(qs)
        object.__setattr__(self, "quotients", qs)

    def __iter__(self):
        return iter(self.quotients)

    def __len__(self):
        return len(self.quotients)

    def __getitem__(self, i):
        return self.quotients[i]

    @property
    def is_canonical(self) -> bool:
        return len(self.quotients) == 1 or self.quotients[-1] >= 2

    def value(self) -> Fraction:
        return cf_eval(self)

    def __str__(self):
        head, *tail = self.quotients
        if not tail:
            return f"[{head}]"
        return f"[{head}; {', '.join(map(str, tail))}]"


@dataclass(frozen=True)
class ConvergentPair:
    h: int
    k: int
    index: int

    @property
    def value(self) -> Fraction:
        return Fraction(self.h, self.k)


def _check_quotients(qs: Sequence[int]) -> None:
    if not qs:
        raise InvalidContinuedFraction("continued fraction needs at least one quotient")
    for i, a in enumerate(qs[1:], start=1):
        if a < 1:
            raise InvalidContinuedFraction(f"quotient a{i} = {a} must be >= 1")


def _as_quotients(cf: ContinuedFraction | Iterable[int]) -> tuple[int, ...]:
    if isinstance(cf, ContinuedFraction):
        return cf.quotients
    qs = tuple(int(a) for a in cf)
    _check_quotients(qs)
    return qs


def euclid_quotients(num: int, den: int) -> list[int]:
    """Floor-based Euclidean quotients of ``num/den`` (``den > 0``)."""
    if den <= 0:
        raise ValueError("denominator must be positive")
    out = []
    while True:
        a, r = divmod(num, den)
        out.append(a)
        if r == 0:
            return out
        num, den = den, r


def cf_expand(x: Fraction | int) -> ContinuedFraction:
    """Canonical continued fraction of a rational.

    >>> cf_expand(Fraction(137, 169)).quotients
    (0, 1, 4, 3, 1, 1, 4)
    """
    x = Fraction(x)
    # Euclid never ends on a trailing 1 unless the expansion is a single quotient.
    return ContinuedFraction(tuple(euclid_quotients(x.numerator, x.denominator)))


def iter_convergents(cf: ContinuedFraction | Iterable[int]) -> Iterator[ConvergentPair]:
    h2, h1 = 0, 1
    k2, k1 = 1, 0
    for n, a in enumerate(_as_quotients(cf)):
        h2, h1 = h1, a * h1 + h2
        k2, k1 = k1, a * k1 + k2
        yield ConvergentPair(h1, k1, n)


def convergents(cf: ContinuedFraction | Iterable[int]) -> list[ConvergentPair]:
    """All convergents ``h_n/k_n`` from the standard two-term recurrence."""
    return list(iter_convergents(cf))


def cf_eval(cf: ContinuedFraction | Iterable[int]) -> Fraction:
    """Exact value of a finite continued fraction (canonical or not)."""
    last = None
    for last in iter_convergents(cf):
        pass
    return Fraction(last.h, last.k)


def cf_canonicalize(cf: ContinuedFraction | Iterable[int]) -> ContinuedFraction:
    """Fold a trailing 1 into its predecessor: ``[..., a, 1] -> [..., a + 1]``."""
    qs = list(_as_quotients(cf))
    if len(qs) > 1 and qs[-1] == 1:
        qs.pop()
        qs[-1] += 1
    return ContinuedFraction(tuple(qs))
