"""Exact multivariate polynomials and recovery of approximate factors.

Polynomial text grammar (whitespace ignored)::

    poly  := ['+'|'-'] term (('+'|'-') term)*
    term  := coeff ('*' var ['^' int])*  |  var ['^' int] ('*' var ['^' int])*
    coeff := int | int '/' int | decimal

A term that starts with a variable has coefficient 1.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .decimal_approx import DecimalApprox
from .planner import plan_for_denominator_bound
from .recovery import RecoveryContractError, recover


class PolynomialSyntaxError(ValueError):
    pass


class InvalidPolynomial(ValueError):
    pass


class CoefficientRecoveryError(RecoveryContractError):
    def __init__(self, message, monomial, result=None):
        super().__init__(message, result)
        self.monomial = monomial


@dataclass(frozen=True, order=False)
class Monomial:
    """Power product stored as sorted ``(variable, exponent)`` pairs."""

    powers: tuple[tuple[str, int], ...] = ()

    def __post_init__(self):
        merged: dict[str, int] = {}
        for var, e in self.powers:
            if e < 0:
                raise InvalidPolynomial(f"negative exponent on {var}")
            merged[var] = merged.get(var, 0) + e
        object.__setattr__(self, "powers", tuple(sorted((v, e) for v, e in merged.items() if e)))

    @classmethod
    def of(cls, **exps: int) -> "Monomial":
        return cls(tuple(exps.items()))

    @property
    def exponents(self) -> dict[str, int]:
        return dict(self.powers)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.powers)

    @property
    def variables(self) -> set[str]:
        return {v for v, _ in self.powers}

    def __mul__(self, other: "Monomial") -> "Monomial":
        return Monomial(self.powers + other.powers)

    def sort_key(self, order: Iterable[str]) -> tuple:
        exps = self.exponents
        return (self.degree, tuple(exps.get(v, 0) for v in order))

    def __str__(self):
        return "*".join(v if e == 1 else f"{v}^{e}" for v, e in self.powers)


ONE = Monomial()


def _fmt_fraction(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _render(terms: list[tuple[Monomial, str, bool]]) -> str:
    # terms: (monomial, magnitude text, negative)
    if not terms:
        return "0"
    parts = []
    for i, (mono, mag, neg) in enumerate(terms):
        if mono == ONE:
            body = mag
        elif mag == "1":
            body = str(mono)
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"{'-' if neg else '+'} {body}")
    return " ".join(parts)


class ExactPolynomial:
    """Polynomial with :class:`~fractions.Fraction` coefficients."""

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        self.terms: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            c = Fraction(c)
            if c:
                self.terms[mono] = c

    @classmethod
    def parse(cls, text: str) -> "ExactPolynomial":
        acc: dict[Monomial, Fraction] = {}
        for sign, literal, mono in parse_terms(text):
            acc[mono] = acc.get(mono, Fraction(0)) + sign * _literal_value(literal)
        return cls(acc)

    @classmethod
    def constant(cls, c) -> "ExactPolynomial":
        return cls({ONE: Fraction(c)})

    @property
    def variables(self) -> list[str]:
        return sorted(set().union(*(m.variables for m in self.terms)) if self.terms else [])

    def is_zero(self) -> bool:
        return not self.terms

    def ordered_terms(self, order: Iterable[str] | None = None) -> list[tuple[Monomial, Fraction]]:
        """Terms in descending graded-lexicographic order."""
        order = list(order) if order is not None else self.variables
        order += [v for v in self.variables if v not in order]
        return sorted(self.terms.items(), key=lambda t: t[0].sort_key(order), reverse=True)

    def coefficient(self, mono: Monomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = ExactPolynomial.constant(other)
        if not isinstance(other, ExactPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = _promote(other)
        acc = dict(self.terms)
        for mono, c in other.terms.items():
            acc[mono] = acc.get(mono, Fraction(0)) + c
        return ExactPolynomial(acc)

    __radd__ = __add__

    def __neg__(self):
        return ExactPolynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-_promote(other))

    def __rsub__(self, other):
        return _promote(other) - self

    def __mul__(self, other):
        return multiply(self, _promote(other))

    __rmul__ = __mul__

    def __repr__(self):
        return f"ExactPolynomial({str(self)!r})"

    def __str__(self):
        return _render([(m, _fmt_fraction(abs(c)), c < 0) for m, c in self.ordered_terms()])


def _promote(x) -> ExactPolynomial:
    if isinstance(x, ExactPolynomial):
        return x
    return ExactPolynomial.constant(x)


@dataclass
class ApproxPolynomial:
    """Polynomial whose coefficients are decimal approximations.

    Every coefficient is assumed to be within ``stated_accuracy`` of the
    exact coefficient it approximates.
    """

    terms: dict[Monomial, DecimalApprox]
    stated_accuracy: Fraction

    def __post_init__(self):
        self.stated_accuracy = Fraction(self.stated_accuracy)
        if self.stated_accuracy <= 0:
            raise InvalidPolynomial("stated_accuracy must be positive")

    @classmethod
    def parse(cls, text: str, stated_accuracy) -> "ApproxPolynomial":
        terms: dict[Monomial, DecimalApprox] = {}
        for sign, literal, mono in parse_terms(text):
            if mono in terms:
                raise PolynomialSyntaxError(f"repeated monomial {mono or '1'} in approximate polynomial")
            if literal is None:
                literal = "1"
            if "/" in literal:
                raise PolynomialSyntaxError(f"approximate coefficients must be decimals, got {literal}")
            d = DecimalApprox.parse(literal)
            terms[mono] = DecimalApprox(sign * d.sign, d.integer_part, d.fraction_digits)
        return cls(terms, stated_accuracy)

    def __str__(self):
        order = sorted(set().union(*(m.variables for m in self.terms)) if self.terms else [])
        items = sorted(self.terms.items(), key=lambda t: t[0].sort_key(order), reverse=True)
        return _render([(m, str(DecimalApprox(1, d.integer_part, d.fraction_digits)), d.sign < 0)
                        for m, d in items])


_TOKEN = re.compile(r"\s*(?:(\d+\.\d*|\.\d+|\d+)|([A-Za-z_]\w*)|([-+*/^]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens, pos = [], 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolynomialSyntaxError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        num, ident, op = m.groups()
        if num is not None:
            tokens.append(("num", num))
        elif ident is not None:
            tokens.append(("var", ident))
        else:
            tokens.append(("op", op))
        pos = m.end()
    return tokens


def parse_terms(text: str) -> list[tuple[int, str | None, Monomial]]:
    """Split polynomial text into ``(sign, coefficient literal, monomial)`` triples."""
    toks = _tokenize(text)
    if not toks:
        raise PolynomialSyntaxError("empty polynomial")
    i, out = 0, []

    def peek(kind=None, value=None):
        if i >= len(toks):
            return False
        k, v = toks[i]
        return (kind is None or k == kind) and (value is None or v == value)

    def expect(kind):
        nonlocal i
        if not peek(kind):
            got = toks[i][1] if i < len(toks) else "end of input"
            raise PolynomialSyntaxError(f"expected {kind}, got {got!r}")
        i += 1
        return toks[i - 1][1]

    def power():
        nonlocal i
        var = expect("var")
        e = 1
        if peek("op", "^"):
            i += 1
            e_text = expect("num")
            if not e_text.isdigit():
                raise PolynomialSyntaxError(f"exponent must be an integer, got {e_text}")
            e = int(e_text)
        return (var, e)

    first = True
    while i < len(toks):
        sign = 1
        if peek("op", "+") or peek("op", "-"):
            sign = -1 if toks[i][1] == "-" else 1
            i += 1
        elif not first:
            raise PolynomialSyntaxError(f"expected '+' or '-', got {toks[i][1]!r}")
        first = False
        literal, powers = None, []
        if peek("num"):
            literal = expect("num")
            if peek("op", "/"):
                i += 1
                den = expect("num")
                if not (literal.isdigit() and den.isdigit()):
                    raise PolynomialSyntaxError("rational coefficients need integer parts")
                if int(den) == 0:
                    raise PolynomialSyntaxError("zero denominator")
                literal = f"{literal}/{den}"
        else:
            powers.append(power())
        while peek("op", "*"):
            i += 1
            powers.append(power())
        out.append((sign, literal, Monomial(tuple(powers))))
    return out


def _literal_value(literal: str | None) -> Fraction:
    if literal is None:
        return Fraction(1)
    if "/" in literal:
        num, den = literal.split("/")
        return Fraction(int(num), int(den))
    return DecimalApprox.parse(literal).to_fraction()


def multiply(a: ExactPolynomial, b: ExactPolynomial) -> ExactPolynomial:
    acc: dict[Monomial, Fraction] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            m = ma * mb
            acc[m] = acc.get(m, Fraction(0)) + ca * cb
    return ExactPolynomial(acc)


def leading_term(p: ExactPolynomial, leading_var: str) -> tuple[Monomial, Fraction]:
    if p.is_zero():
        raise InvalidPolynomial("zero polynomial has no leading term")
    order = [leading_var] + [v for v in p.variables if v != leading_var]
    return p.ordered_terms(order)[0]


def monic_transform(p: ExactPolynomial, leading_var: str) -> tuple[ExactPolynomial, int]:
    """Divide ``p`` by its leading coefficient and bound monic-factor denominators.

    The leading term is the graded-lex largest with ``leading_var`` ranked
    first.  The returned bound is the lcm of the monic polynomial's
    coefficient denominators, raised to 2 when smaller (planning needs N >= 2).
    """
    mono, lc = leading_term(p, leading_var)
    if leading_var not in mono.variables and p.variables:
        raise InvalidPolynomial(f"leading term {mono or '1'} does not involve {leading_var}")
    monic = ExactPolynomial({m: c / lc for m, c in p.terms.items()})
    bound = 1
    for c in monic.terms.values():
        bound = math.lcm(bound, c.denominator)
    return monic, max(bound, 2)


def recover_polynomial(g_approx: ApproxPolynomial, n_bound: int) -> ExactPolynomial:
    """Recover every coefficient of ``g_approx`` with the plan for ``n_bound``."""
    plan = plan_for_denominator_bound(n_bound)
    if g_approx.stated_accuracy > plan.delta:
        raise ValueError(
            f"stated accuracy {g_approx.stated_accuracy} is looser than the required {plan.delta}"
        )
    exact = {}
    for mono, approx in g_approx.terms.items():
        try:
            exact[mono] = recover(approx, plan).value
        except RecoveryContractError as exc:
            raise CoefficientRecoveryError(
                f"coefficient of {mono or '1'}: {exc}", mono, exc.result
            ) from exc
    return ExactPolynomial(exact)


def verify_factorization(p: ExactPolynomial, factors: list[ExactPolynomial], scalar=1) -> bool:
    product = ExactPolynomial.constant(scalar)
    for f in factors:
        product = multiply(product, f)
    return product == p
