"""Outward-rounded floating point intervals.

Endpoints are IEEE doubles. Arithmetic (+, -, *, /, integer powers) is done
exactly on the rational values of the endpoints and then rounded outward, so
an exact result is never widened. Elementary functions take the libm value
and step two ulps outward.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .exceptions import DomainError

_INF = math.inf
_ULPS = 2


def round_down(value: Fraction) -> float:
    """Largest double not exceeding ``value``."""
    try:
        f = float(value)
    except OverflowError:
        return _huge(value, down=True)
    if Fraction(f) > value:
        f = math.nextafter(f, -_INF)
    return f


def round_up(value: Fraction) -> float:
    """Smallest double not below ``value``."""
    try:
        f = float(value)
    except OverflowError:
        return _huge(value, down=False)
    if Fraction(f) < value:
        f = math.nextafter(f, _INF)
    return f


def _huge(value, down):
    big = math.nextafter(_INF, 0.0)
    if value > 0:
        return big if down else _INF
    return -_INF if down else -big


def _step(f: float, direction: float, ulps: int = _ULPS) -> float:
    for _ in range(ulps):
        f = math.nextafter(f, direction)
    return f


class FInterval:
    """Closed interval [lo, hi] of doubles."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        if hi is None:
            hi = lo
        if isinstance(lo, Fraction) or isinstance(hi, Fraction) or isinstance(lo, int) or isinstance(hi, int):
            lo, hi = round_down(Fraction(lo)), round_up(Fraction(hi))
        lo, hi = float(lo), float(hi)
        if math.isnan(lo) or math.isnan(hi):
            lo, hi = -_INF, _INF
        if lo > hi:
            raise ValueError(f"empty interval [{lo}, {hi}]")
        self.lo = lo
        self.hi = hi

    @classmethod
    def hull(cls, *items: "FInterval") -> "FInterval":
        return cls(min(i.lo for i in items), max(i.hi for i in items))

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return self.lo + (self.hi - self.lo) / 2

    def is_finite(self) -> bool:
        return math.isfinite(self.lo) and math.isfinite(self.hi)

    def contains(self, value) -> bool:
        return self.lo <= value <= self.hi

    def __contains__(self, value) -> bool:
        return self.contains(value)

    def __repr__(self):
        return f"FInterval({self.lo!r}, {self.hi!r})"

    def __eq__(self, other):
        return isinstance(other, FInterval) and self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    # arithmetic -----------------------------------------------------------

    def _exact(self, values):
        return FInterval(round_down(min(values)), round_up(max(values)))

    def __add__(self, other):
        other = _coerce(other)
        if not (self.is_finite() and other.is_finite()):
            return FInterval(self.lo + other.lo, self.hi + other.hi)
        lo = Fraction(self.lo) + Fraction(other.lo)
        hi = Fraction(self.hi) + Fraction(other.hi)
        return FInterval(round_down(lo), round_up(hi))

    __radd__ = __add__

    def __neg__(self):
        return FInterval(-self.hi, -self.lo)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) + (-self)

    def __mul__(self, other):
        other = _coerce(other)
        if not (self.is_finite() and other.is_finite()):
            prods = [x * y for x in (self.lo, self.hi) for y in (other.lo, other.hi)]
            prods = [0.0 if math.isnan(p) else p for p in prods]
            return FInterval(min(prods), max(prods))
        a, b = Fraction(self.lo), Fraction(self.hi)
        c, d = Fraction(other.lo), Fraction(other.hi)
        return self._exact([a * c, a * d, b * c, b * d])

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other.lo <= 0.0 <= other.hi:
            raise DomainError("division by an interval containing zero")
        if not (self.is_finite() and other.is_finite()):
            quots = [x / y for x in (self.lo, self.hi) for y in (other.lo, other.hi)]
            return FInterval(min(quots), max(quots))
        a, b = Fraction(self.lo), Fraction(self.hi)
        c, d = Fraction(other.lo), Fraction(other.hi)
        return self._exact([a / c, a / d, b / c, b / d])

    def __rtruediv__(self, other):
        return _coerce(other) / self

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("only non-negative integer powers")
        if k == 0:
            return FInterval(1.0)
        if not self.is_finite():
            cands = [self.lo**k, self.hi**k]
            if k % 2 == 0 and self.lo <= 0 <= self.hi:
                return FInterval(0.0, max(cands))
            return FInterval(min(cands), max(cands))
        a, b = Fraction(self.lo) ** k, Fraction(self.hi) ** k
        if k % 2 == 0 and self.lo <= 0.0 <= self.hi:
            return FInterval(0.0, round_up(max(a, b)))
        return self._exact([a, b])

    def __abs__(self):
        if self.lo >= 0:
            return self
        if self.hi <= 0:
            return -self
        return FInterval(0.0, max(-self.lo, self.hi))


def _coerce(value) -> FInterval:
    if isinstance(value, FInterval):
        return value
    if isinstance(value, float):
        return FInterval(value)
    return FInterval(Fraction(value))


# elementary functions ------------------------------------------------------


def _down(f):
    return _step(f, -_INF)


def _up(f):
    return _step(f, _INF)


def exp(x: FInterval) -> FInterval:
    def lo_of(v):
        if v == 0.0:
            return 1.0
        try:
            return max(0.0, _down(math.exp(v)))
        except OverflowError:
            return math.nextafter(_INF, 0.0)

    def hi_of(v):
        if v == 0.0:
            return 1.0
        try:
            return _up(math.exp(v))
        except OverflowError:
            return _INF

    return FInterval(lo_of(x.lo) if x.lo > -_INF else 0.0, hi_of(x.hi))


def log(x: FInterval) -> FInterval:
    if x.lo <= 0.0:
        raise DomainError("log of an interval reaching non-positive values")
    lo = 0.0 if x.lo == 1.0 else _down(math.log(x.lo))
    hi = _INF if x.hi == _INF else (0.0 if x.hi == 1.0 else _up(math.log(x.hi)))
    return FInterval(lo, hi)


def sqrt(x: FInterval) -> FInterval:
    if x.lo < 0.0:
        raise DomainError("sqrt of an interval reaching negative values")

    def exact_sqrt(v, down):
        r = math.sqrt(v)
        if math.isinf(r):
            return r
        sq = Fraction(r) ** 2
        if sq == Fraction(v):
            return r
        if down:
            return r if sq < Fraction(v) else math.nextafter(r, -_INF)
        return r if sq > Fraction(v) else math.nextafter(r, _INF)

    return FInterval(max(0.0, exact_sqrt(x.lo, True)), exact_sqrt(x.hi, False))


_TWO_PI = 2 * math.pi


def _contains_critical(x: FInterval, offset: float) -> bool:
    """Whether [lo, hi] may contain offset + 2*k*pi for an integer k (conservative)."""
    k_lo = math.floor((x.lo - offset) / _TWO_PI) - 1
    k_hi = math.ceil((x.hi - offset) / _TWO_PI) + 1
    for k in range(k_lo, k_hi + 1):
        c = offset + k * _TWO_PI
        slack = 1e-12 * (1.0 + abs(c))
        if x.lo - slack <= c <= x.hi + slack:
            return True
    return False


def _trig(x: FInterval, fn, max_at: float, min_at: float) -> FInterval:
    if not x.is_finite() or x.width >= 6.3 or max(abs(x.lo), abs(x.hi)) > 1e8:
        return FInterval(-1.0, 1.0)
    vals = [fn(x.lo), fn(x.hi)]
    lo, hi = _down(min(vals)), _up(max(vals))
    if _contains_critical(x, max_at):
        hi = 1.0
    if _contains_critical(x, min_at):
        lo = -1.0
    return FInterval(max(-1.0, lo), min(1.0, hi))


def sin(x: FInterval) -> FInterval:
    if x.lo == x.hi == 0.0:
        return FInterval(0.0)
    return _trig(x, math.sin, math.pi / 2, -math.pi / 2)


def cos(x: FInterval) -> FInterval:
    if x.lo == x.hi == 0.0:
        return FInterval(1.0)
    return _trig(x, math.cos, 0.0, math.pi)
