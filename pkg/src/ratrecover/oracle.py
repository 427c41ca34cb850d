"""Independent best-approximation engines used as ground truth.

Nothing in here touches continued fractions: the fast oracle walks the
Stern-Brocot tree by mediants, the slow one enumerates every denominator.
Ties are broken toward the smaller denominator, then the smaller numerator.
"""

from __future__ import annotations

from fractions import Fraction

from .decimal_approx import as_fraction

EXHAUSTIVE_LIMIT = 2000
GAP_LIMIT = 300


class CostGuardError(ValueError):
    pass


def _rank(x: Fraction, p: int, q: int):
    return (abs(x - Fraction(p, q)), q, p)


def best_approx_bounded_denominator(approx, n_bound: int) -> Fraction:
    """Closest fraction to ``approx`` with denominator at most ``n_bound``.

    Descends the Stern-Brocot tree between the integer neighbours of the
    target, taking runs of same-direction mediant steps in one go so the
    cost is logarithmic in ``n_bound``.
    """
    if n_bound < 1:
        raise ValueError("n_bound must be >= 1")
    x = as_fraction(approx)
    P, Q = x.numerator, x.denominator
    if Q <= n_bound:
        return x
    fl = P // Q
    lp, lq = fl, 1
    hp, hq = fl + 1, 1
    # invariant: lp/lq < x < hp/hq, the two are Farey neighbours
    while True:
        mq = lq + hq
        if mq > n_bound:
            break
        mp = lp + hp
        if P * mq < Q * mp:
            # x below the mediant: move the upper end toward the lower one
            # as far as x < (hp + k*lp)/(hq + k*lq) and hq + k*lq <= n_bound
            k = (Q * hp - P * hq - 1) // (P * lq - Q * lp)
            k = min(k, (n_bound - hq) // lq)
            hp, hq = hp + k * lp, hq + k * lq
        else:
            k = (P * lq - Q * lp - 1) // (Q * hp - P * hq)
            k = min(k, (n_bound - lq) // hq)
            lp, lq = lp + k * hp, lq + k * hq
    return Fraction(*min((lp, lq), (hp, hq), key=lambda c: _rank(x, *c)))


def exhaustive_best_approx(approx, n_bound: int) -> Fraction:
    """Brute-force twin of :func:`best_approx_bounded_denominator`."""
    if n_bound < 1:
        raise ValueError("n_bound must be >= 1")
    if n_bound > EXHAUSTIVE_LIMIT:
        raise CostGuardError(f"n_bound {n_bound} exceeds exhaustive limit {EXHAUSTIVE_LIMIT}")
    x = as_fraction(approx)
    P, Q = x.numerator, x.denominator
    # distance of p/q is |P*q - Q*p| / (Q*q); compare by cross-multiplying
    best = None
    for q in range(1, n_bound + 1):
        base = (P * q) // Q
        for p in (base - 1, base, base + 1):
            num = abs(P * q - Q * p)
            if best is None:
                best = (num, q, p)
                continue
            bnum, bq, bp = best
            lhs, rhs = num * bq, bnum * q
            if lhs < rhs or (lhs == rhs and (q, p) < (bq, bp)):
                best = (num, q, p)
    _, q, p = best
    return Fraction(p, q)


def _farey_sorted(n_bound: int) -> list[Fraction]:
    return sorted({Fraction(a, b) for b in range(1, n_bound + 1) for a in range(b + 1)})


def min_pairwise_gap_witness(n_bound: int) -> tuple[Fraction, Fraction, Fraction]:
    """Smallest gap among fractions in [0, 1] with denominator <= ``n_bound``.

    Returns ``(gap, left, right)`` for the first closest pair in sorted order.
    """
    if not 2 <= n_bound <= GAP_LIMIT:
        raise CostGuardError(f"n_bound must be in [2, {GAP_LIMIT}], got {n_bound}")
    fracs = _farey_sorted(n_bound)
    return min(((b - a, a, b) for a, b in zip(fracs, fracs[1:])), key=lambda t: t[0])


def min_pairwise_gap(n_bound: int) -> Fraction:
    return min_pairwise_gap_witness(n_bound)[0]


def pairs_at_gap(n_bound: int, gap: Fraction) -> list[tuple[Fraction, Fraction]]:
    """All adjacent pairs in [0, 1] whose distance is exactly ``gap``."""
    if not 2 <= n_bound <= GAP_LIMIT:
        raise CostGuardError(f"n_bound must be in [2, {GAP_LIMIT}], got {n_bound}")
    fracs = _farey_sorted(n_bound)
    return [(a, b) for a, b in zip(fracs, fracs[1:]) if b - a == gap]
