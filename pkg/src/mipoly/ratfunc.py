"""Rational functions in one parameter over Q, with exact limit evaluation.

A RationalFunction is a reduced fraction num/den of Fraction-coefficient
polynomials with monic denominator, so equality is structural.  It supports
field arithmetic (ints and Fractions coerce), hashing, and evaluation at a
rational point after reduction -- which is exactly the "remove the removable
singularity, then substitute" notion of a limit for rational functions.

Used as the coefficient field for constructions that must stay symbolic in a
parameter until a limit is taken at the end.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as int_gcd, lcm as int_lcm

from .polynomials import Polynomial

__all__ = ["RationalFunction", "PoleError", "limit_at", "polynomial_gcd"]

_ONE = Polynomial((Fraction(1),))


class PoleError(ArithmeticError):
    """Evaluation point is a genuine pole of the reduced fraction."""


def _poly_divmod(a: Polynomial, b: Polynomial) -> tuple[Polynomial, Polynomial]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(a.coeffs) - len(b.coeffs) + 1, 0)
    rem = list(a.coeffs)
    lead = b.leading_coefficient
    db = len(b.coeffs) - 1
    for i in range(len(rem) - 1, db - 1, -1):
        if rem[i] == 0:
            continue
        q = rem[i] / lead
        quot[i - db] = q
        for j, bc in enumerate(b.coeffs):
            rem[i - db + j] -= q * bc
    return Polynomial(quot), Polynomial(rem)


def _primitive(p: Polynomial) -> Polynomial:
    """Integer-primitive form with positive leading coefficient."""
    if not p:
        return p
    den = int_lcm(*(c.denominator for c in p.coeffs))
    ints = [int(c * den) for c in p.coeffs]
    g = 0
    for v in ints:
        g = int_gcd(g, v)
    if ints[-1] < 0:
        g = -g
    return Polynomial(Fraction(v, g) for v in ints)


def polynomial_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    """Monic gcd over Q; content is stripped each step to tame growth."""
    a, b = _primitive(a), _primitive(b)
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, _primitive(r)
    if not a:
        return a
    return a.scalar_div(a.leading_coefficient)


def _as_fraction_poly(v) -> Polynomial:
    if isinstance(v, Polynomial):
        return v
    return Polynomial((Fraction(v),))


class RationalFunction:
    """Reduced num/den with monic den; a field element, not a callable curve."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        num = _as_fraction_poly(num)
        den = _ONE if den is None else _as_fraction_poly(den)
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        g = polynomial_gcd(num, den)
        if g and g.degree > 0:
            num, _ = _poly_divmod(num, g)
            den, _ = _poly_divmod(den, g)
        lead = den.leading_coefficient
        if lead != 1:
            num = num.scalar_div(lead)
            den = den.scalar_div(lead)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    @classmethod
    def variable(cls) -> "RationalFunction":
        """The independent parameter itself."""
        return cls(Polynomial((Fraction(0), Fraction(1))))

    # -- field arithmetic -------------------------------------------------------

    def __add__(self, other) -> "RationalFunction":
        o = _as_rf(other)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> "RationalFunction":
        return self + (-_as_rf(other))

    def __rsub__(self, other) -> "RationalFunction":
        return _as_rf(other) + (-self)

    def __mul__(self, other) -> "RationalFunction":
        o = _as_rf(other)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RationalFunction":
        o = _as_rf(other)
        if not o.num:
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other) -> "RationalFunction":
        return _as_rf(other) / self

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            if not self.num:
                raise ZeroDivisionError("zero to a negative power")
            return RationalFunction(self.den ** (-n), self.num ** (-n))
        return RationalFunction(self.num**n, self.den**n)

    # -- predicates ---------------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.num)

    def __eq__(self, other) -> bool:
        o = _as_rf(other)
        return self.num == o.num and self.den == o.den

    def __hash__(self) -> int:
        return hash((self.num.coeffs, self.den.coeffs))

    def __repr__(self) -> str:
        if self.den == _ONE:
            return f"RationalFunction({self.num.coeffs!r})"
        return f"RationalFunction({self.num.coeffs!r}, {self.den.coeffs!r})"

    # -- evaluation ----------------------------------------------------------------

    def evaluate(self, t0) -> Fraction:
        t0 = Fraction(t0)
        d = self.den(t0)
        if d == 0:
            raise PoleError(f"pole at {t0}")
        return self.num(t0) / d


def _as_rf(v) -> RationalFunction:
    if isinstance(v, RationalFunction):
        return v
    if isinstance(v, (int, Fraction)):
        return RationalFunction(v)
    raise TypeError(f"cannot coerce {type(v).__name__} to RationalFunction")


def limit_at(value, t0) -> Fraction:
    """Limit of a rational expression as the parameter approaches t0.

    For a reduced rational function the limit exists iff t0 is not a pole of
    the reduced form, and then equals plain evaluation.  Constants pass
    through.  A genuine pole raises PoleError.
    """
    if isinstance(value, RationalFunction):
        return value.evaluate(t0)
    return Fraction(value)
