"""Exact decimal literals used as approximations.

A :class:`DecimalApprox` is the literal the user typed (``0.8106507864``,
``-.375``), kept digit for digit so that converting it to a rational is
lossless.  Binary floats are deliberately not accepted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

_LITERAL = re.compile(r"^\s*([+-])?(\d*)(?:\.(\d*))?\s*$")


class InvalidLiteral(ValueError):
    pass


@dataclass(frozen=True)
class DecimalApprox:
    sign: int
    integer_part: int
    fraction_digits: str = ""

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise InvalidLiteral("sign must be +1 or -1")
        if self.integer_part < 0:
            raise InvalidLiteral("integer part must be nonnegative")
        if self.fraction_digits and not self.fraction_digits.isdigit():
            raise InvalidLiteral(f"bad fraction digits {self.fraction_digits!r}")

    @classmethod
    def parse(cls, text: str) -> "DecimalApprox":
        if isinstance(text, float):
            raise TypeError("pass the decimal literal as a string, not a float")
        m = _LITERAL.match(str(text))
        if not m or not (m.group(2) or m.group(3)):
            raise InvalidLiteral(f"not a decimal literal: {text!r}")
        sign, whole, frac = m.groups()
        return cls(-1 if sign == "-" else 1, int(whole or "0"), frac or "")

    @classmethod
    def from_rational(cls, value: Fraction, digits: int) -> "DecimalApprox":
        """Round ``value`` to ``digits`` places (nearest, ties to even)."""
        value = Fraction(value)
        scaled = round(abs(value) * 10**digits)
        whole, frac = divmod(scaled, 10**digits)
        frac_digits = str(frac).rjust(digits, "0") if digits else ""
        return cls(-1 if value < 0 else 1, whole, frac_digits)

    def to_fraction(self) -> Fraction:
        value = Fraction(self.integer_part)
        if self.fraction_digits:
            value += Fraction(int(self.fraction_digits), 10 ** len(self.fraction_digits))
        return self.sign * value

    def __str__(self):
        s = "-" if self.sign < 0 else ""
        s += str(self.integer_part)
        if self.fraction_digits:
            s += "." + self.fraction_digits
        return s


def as_fraction(approx) -> Fraction:
    """Accept a DecimalApprox, a decimal string, an int or a Fraction."""
    if isinstance(approx, DecimalApprox):
        return approx.to_fraction()
    if isinstance(approx, str):
        return DecimalApprox.parse(approx).to_fraction()
    if isinstance(approx, float):
        raise TypeError("binary floats are not accepted; pass a decimal string")
    return Fraction(approx)
