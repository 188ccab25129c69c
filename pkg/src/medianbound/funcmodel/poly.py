"""Univariate polynomials with exact rational coefficients.

Real roots are isolated with Sturm sequences. A root is reported either as an
exact rational or as an isolating bracket ``(l, r)`` with ``l < root < r`` and
a sign change of the square-free part across it. Rational roots are always
found exactly: once a bracket is narrower than ``1/L**2`` (``L`` the leading
coefficient of the primitive integer form) the simplest rational inside it is
the only possible rational root.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .._rational import Q, simplest_between

# Bracket refinement target: value enclosures are tightened until their
# excess is below 2**-PRECISION_BITS relative to the magnitude involved.
PRECISION_BITS = 64


class Poly:
    """Immutable polynomial ``c[0] + c[1] x + ... + c[d] x^d``."""

    __slots__ = ("c", "__dict__")

    def __init__(self, coeffs: Iterable = (0,)):
        c = [Q(v) for v in coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        if not c:
            c = [Q(0)]
        self.c = tuple(c)

    @classmethod
    def const(cls, value) -> "Poly":
        return cls((value,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, k: int, coeff=1) -> "Poly":
        return cls([0] * k + [coeff])

    @property
    def degree(self) -> int:
        return -1 if self.is_zero() else len(self.c) - 1

    def is_zero(self) -> bool:
        return len(self.c) == 1 and self.c[0] == 0

    def is_const(self) -> bool:
        return len(self.c) == 1

    @property
    def lead(self) -> Fraction:
        return self.c[-1]

    def __repr__(self):
        return f"Poly({[str(v) for v in self.c]})"

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.c == other.c
        return NotImplemented

    def __hash__(self):
        return hash(self.c)

    def __call__(self, x):
        acc = 0
        for coef in reversed(self.c):
            acc = acc * x + coef
        return acc

    def eval_float(self, x: float) -> float:
        acc = 0.0
        for coef in reversed(self.c):
            acc = acc * x + float(coef)
        return acc

    # ring operations ------------------------------------------------------

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.c), len(other.c))
        a = self.c + (Q(0),) * (n - len(self.c))
        b = other.c + (Q(0),) * (n - len(other.c))
        return Poly(p + q for p, q in zip(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Poly(-v for v in self.c)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            k = Q(other)
            return Poly(v * k for v in self.c)
        a, b = self.c, other.c
        out = [Q(0)] * (len(a) + len(b) - 1)
        for i, p in enumerate(a):
            if p:
                for j, q in enumerate(b):
                    out[i + j] += p * q
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.c)
        dq = len(other.c) - 1
        lead = other.c[-1]
        if len(rem) - 1 < dq:
            return Poly.const(0), self
        quot = [Q(0)] * (len(rem) - dq)
        for i in range(len(rem) - 1, dq - 1, -1):
            coef = rem[i] / lead
            if coef:
                quot[i - dq] = coef
                for j, oc in enumerate(other.c):
                    rem[i - dq + j] -= coef * oc
        return Poly(quot), Poly(rem[:dq] or [0])

    # calculus -------------------------------------------------------------

    def deriv(self, k: int = 1) -> "Poly":
        c = self.c
        for _ in range(k):
            if len(c) == 1:
                return Poly.const(0)
            c = tuple(i * c[i] for i in range(1, len(c)))
        return Poly(c)

    def antideriv(self) -> "Poly":
        return Poly([0] + [v / (i + 1) for i, v in enumerate(self.c)])

    def integral(self, s, t) -> Fraction:
        big = self.antideriv()
        return big(t) - big(s)

    def compose_shift(self, h) -> "Poly":
        """``p(x + h)``."""
        h = Q(h)
        out = Poly.const(0)
        lin = Poly((h, 1))
        for coef in reversed(self.c):
            out = out * lin + coef
        return out

    # root machinery -------------------------------------------------------

    def monic(self) -> "Poly":
        return self * (1 / self.lead)

    def gcd(self, other: "Poly") -> "Poly":
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic() if not a.is_zero() else a

    @cached_property
    def squarefree(self) -> "Poly":
        if self.degree <= 1:
            return self
        g = self.gcd(self.deriv())
        return self.divmod(g)[0].monic() if g.degree > 0 else self.monic()

    @cached_property
    def primitive_lead(self) -> int:
        """Leading coefficient of the primitive integer multiple."""
        den = math.lcm(*(v.denominator for v in self.c))
        ints = [int(v * den) for v in self.c]
        g = math.gcd(*ints)
        return abs(ints[-1] // g)

    @cached_property
    def sturm(self) -> tuple["Poly", ...]:
        seq = [self, self.deriv()]
        while not seq[-1].is_const():
            r = seq[-2].divmod(seq[-1])[1]
            if r.is_zero():
                break
            # positive rescaling keeps signs and tames coefficient growth
            seq.append(-(r * (1 / abs(r.lead))))
        return tuple(seq)

    def sign_changes(self, x) -> int:
        signs = []
        for p in self.sturm:
            v = p(x)
            if v:
                signs.append(v > 0)
        return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def _as_poly(v) -> Poly:
    return v if isinstance(v, Poly) else Poly.const(v)


class Root:
    """A real root: exact (``lo == hi``) or bracketed (``lo < root < hi``)."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo, hi=None):
        self.lo = Q(lo)
        self.hi = self.lo if hi is None else Q(hi)

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    def __repr__(self):
        return f"Root({self.lo})" if self.exact else f"Root({self.lo}, {self.hi})"


def real_roots(p: Poly, s, t, min_width=None) -> list[Root]:
    """Distinct real roots of ``p`` in the open interval ``(s, t)``, sorted.

    Brackets are refined until rational roots are decided and, when
    ``min_width`` is given, until narrower than it.
    """
    s, t = Q(s), Q(t)
    if p.degree <= 0 or s >= t:
        return []
    q = p.squarefree
    # strip roots sitting on the boundary so Sturm counts are well defined
    for end in (s, t):
        while q.degree > 0 and q(end) == 0:
            q = q.divmod(Poly((-end, 1)))[0]
    exact: list[Fraction] = []
    brackets: list[tuple[Fraction, Fraction]] = []
    _isolate(q, s, t, exact, brackets)
    out = [Root(r) for r in exact]
    lead = q.primitive_lead
    rational_gap = Fraction(1, 2 * lead * lead)
    for lo, hi in brackets:
        root = _decide(q, lo, hi, rational_gap, min_width)
        out.append(root)
    out.sort(key=lambda r: r.lo)
    return out


def _isolate(q: Poly, lo, hi, exact, brackets):
    """Isolate roots of square-free ``q`` in (lo, hi); q(lo), q(hi) != 0."""
    stack = [(lo, hi, q.sign_changes(lo) - q.sign_changes(hi))]
    while stack:
        lo, hi, n = stack.pop()
        if n == 0:
            continue
        if n == 1:
            brackets.append((lo, hi))
            continue
        mid = (lo + hi) / 2
        if q(mid) == 0:
            exact.append(mid)
            # split just around the exact root using neighbouring dyadics
            eps = (hi - lo) / 4
            while True:
                left, right = mid - eps, mid + eps
                if q(left) and q(right) and q.sign_changes(left) - q.sign_changes(right) == 1:
                    break
                eps /= 2
            stack.append((lo, left, q.sign_changes(lo) - q.sign_changes(left)))
            stack.append((right, hi, q.sign_changes(right) - q.sign_changes(hi)))
            continue
        vm = q.sign_changes(mid)
        stack.append((lo, mid, q.sign_changes(lo) - vm))
        stack.append((mid, hi, vm - q.sign_changes(hi)))


def _decide(q: Poly, lo, hi, rational_gap, min_width) -> Root:
    """Shrink a bracket of a simple root of ``q`` until it is known whether the
    root is rational."""
    slo = q(lo) > 0
    while hi - lo >= rational_gap:
        mid = (lo + hi) / 2
        v = q(mid)
        if v == 0:
            return Root(mid)
        if (v > 0) == slo:
            lo = mid
        else:
            hi = mid
    cand = simplest_between(lo, hi)
    if lo < cand < hi and q(cand) == 0:
        return Root(cand)
    if min_width is not None:
        return refine(q, Root(lo, hi), min_width)
    return Root(lo, hi)


def refine(q: Poly, root: Root, width) -> Root:
    """Bisect a bracketed root of ``q`` until narrower than ``width``."""
    if root.exact:
        return root
    lo, hi = root.lo, root.hi
    slo = q(lo) > 0
    while hi - lo > width:
        mid = (lo + hi) / 2
        v = q(mid)
        if v == 0:
            return Root(mid)
        if (v > 0) == slo:
            lo = mid
        else:
            hi = mid
    return Root(lo, hi)


# rational interval evaluation ----------------------------------------------


def eval_range(p: Poly, lo, hi) -> tuple[Fraction, Fraction]:
    """Rational enclosure of ``p`` over [lo, hi] by interval Horner."""
    lo, hi = Q(lo), Q(hi)
    rlo = rhi = Q(0)
    for coef in reversed(p.c):
        cands = (rlo * lo, rlo * hi, rhi * lo, rhi * hi)
        rlo, rhi = min(cands) + coef, max(cands) + coef
    return rlo, rhi


def value_enclosure(p: Poly, root: Root, dp: Poly = None, rel_bits=PRECISION_BITS):
    """Enclosure of ``p`` at a root of ``dp = p'`` located by ``root``.

    Uses the mean value form p(m) + p'([l, r]) * ([l, r] - m) and refines the
    bracket until the excess is below ``2**-rel_bits`` relative.
    """
    if root.exact:
        v = p(root.lo)
        return v, v
    if dp is None:
        dp = p.deriv()
    q = dp.squarefree
    lo, hi = root.lo, root.hi
    while True:
        mid = (lo + hi) / 2
        pm = p(mid)
        dlo, dhi = eval_range(dp, lo, hi)
        slope = max(abs(dlo), abs(dhi))
        excess = slope * (hi - lo) / 2
        scale = abs(pm) + 1
        if excess <= scale / 2**rel_bits:
            return pm - excess, pm + excess
        r = refine(q, Root(lo, hi), (hi - lo) / 16)
        if r.exact:
            v = p(r.lo)
            return v, v
        lo, hi = r.lo, r.hi


def extreme_values(p: Poly, s, t) -> tuple[Fraction, Fraction]:
    """Rational (lo, hi) with lo <= min p and hi >= max p over [s, t].

    Both are attained values whenever the extremum sits at an endpoint or a
    rational critical point; otherwise they are within 2**-PRECISION_BITS
    relative of the true extremum.
    """
    s, t = Q(s), Q(t)
    vals = [p(s), p(t)]
    lo, hi = min(vals), max(vals)
    if p.degree <= 1:
        return lo, hi
    dp = p.deriv()
    for root in real_roots(dp, s, t):
        vlo, vhi = value_enclosure(p, root, dp)
        lo = min(lo, vlo)
        hi = max(hi, vhi)
    return lo, hi


def abs_integral(p: Poly, s, t) -> tuple[Fraction, Fraction]:
    """Rational enclosure (lo, hi) of the integral of |p| over [s, t].

    Exact (lo == hi) when every sign change of ``p`` inside (s, t) is rational.
    """
    s, t = Q(s), Q(t)
    big = p.antideriv()
    if p.degree <= 0:
        v = abs(p.c[0]) * (t - s)
        return v, v
    width = (t - s) / 2**PRECISION_BITS
    roots = real_roots(p, s, t, min_width=width)
    lo_total = Q(0)
    slack = Q(0)
    cursor = s
    for r in roots:
        lo_total += abs(big(r.lo) - big(cursor))
        if not r.exact:
            a, b = eval_range(p, r.lo, r.hi)
            slack += max(abs(a), abs(b)) * (r.hi - r.lo)
        cursor = r.hi
    lo_total += abs(big(t) - big(cursor))
    return lo_total, lo_total + slack


def from_roots(roots: Sequence, lead=1) -> Poly:
    out = Poly.const(lead)
    for r in roots:
        out = out * Poly((-Q(r), 1))
    return out
