"""Rational number plumbing.

Every exact quantity in the package is built through :func:`Q` so the
rational backend can be swapped in one place.
"""

from fractions import Fraction
from decimal import Decimal, localcontext

Q = Fraction
ZERO = Q(0)
ONE = Q(1)


def to_rational(value):
    """Convert ints, Fractions, floats (exactly) or strings like ``"1/3"``,
    ``"0.25"``, ``"-2"`` to a rational. Decimal strings convert by their
    literal digits, never through binary floating point."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, float)):
        return Q(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty number")
        try:
            return Q(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational number: {value!r}") from exc
    return Q(value)


def is_rational(value):
    return isinstance(value, (int, Fraction))


def fmt_exact(value):
    """``p/q`` string, or the integer when the denominator is 1."""
    return str(Q(value))


def fmt_decimal(value, digits=17):
    """Decimal string with ``digits`` significant digits."""
    if isinstance(value, float):
        return repr(value)
    value = Q(value)
    with localcontext() as ctx:
        ctx.prec = digits
        return str(Decimal(value.numerator) / Decimal(value.denominator))


def simplest_between(lo, hi):
    """Rational with the smallest denominator in the closed interval [lo, hi]."""
    lo, hi = Q(lo), Q(hi)
    if lo > hi:
        raise ValueError("empty interval")
    if lo <= 0 <= hi:
        return ZERO
    if hi < 0:
        return -simplest_between(-hi, -lo)
    # continued-fraction walk (Stern-Brocot)
    p0, q0, p1, q1 = 0, 1, 1, 0
    a, b = lo, hi
    while True:
        fl = a.numerator // a.denominator
        if fl * a.denominator == a.numerator or fl + 1 <= b:
            # an integer lies in [a, b]
            n = fl if fl * a.denominator == a.numerator else fl + 1
            return Q(n * p1 + p0, n * q1 + q0)
        p0, q0, p1, q1 = p1, q1, fl * p1 + p0, fl * q1 + q0
        a, b = 1 / (b - fl), 1 / (a - fl)
