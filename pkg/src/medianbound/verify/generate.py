"""Deterministic random functions and inequality instances.

Every draw comes from a private ``random.Random`` seeded by a hash of
``(seed, trial, salt)``, so a trial's instance never depends on which worker
runs it or in what order.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from math import factorial

from .._rational import Q
from ..funcmodel import BVFunction, Jump, PiecewisePoly, Poly

KINDS = ("piecewise", "smooth", "zero_mean", "closed_bv", "bv")


@dataclass(frozen=True)
class Profile:
    """Size limits for generated functions.

    ``smoothness`` is the number of continuous derivatives across
    breakpoints (-1 allows jumps).
    """

    degree: int = 6
    pieces: int = 5
    coeff_bound: int = 5
    kind: str = "piecewise"
    smoothness: int = -1

    def __post_init__(self):
        if self.degree < 0 or self.pieces < 1 or self.coeff_bound < 1:
            raise ValueError("profile bounds must be positive")
        if self.kind not in KINDS:
            raise ValueError(f"unknown kind {self.kind!r}; expected one of {', '.join(KINDS)}")

    def to_dict(self):
        return asdict(self)


def rng_for(seed: int, trial: int, salt: str = "") -> random.Random:
    digest = hashlib.sha256(f"{seed}:{trial}:{salt}".encode()).digest()
    return random.Random(int.from_bytes(digest[:16], "big"))


def _coeff(rng, bound):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, 4))


def _interval(rng):
    a = Fraction(rng.randint(-4, 4), rng.choice((1, 2)))
    width = Fraction(rng.randint(1, 6), rng.choice((1, 2, 3)))
    return a, a + width


def _breaks(rng, a, b, pieces):
    k = rng.randint(1, pieces)
    inner = set()
    for _ in range(k - 1):
        num, den = rng.randint(1, 15), 16
        inner.add(a + (b - a) * Fraction(num, den))
    return [a, *sorted(inner), b]


def _shifted_basis(t, k):
    return Poly((-t, 1)) ** k


def _poly(rng, degree, bound):
    d = rng.randint(0, degree)
    return Poly([_coeff(rng, bound) for _ in range(d + 1)])


def _piecewise(rng, prof: Profile, a=None, b=None, smoothness=None) -> PiecewisePoly:
    if a is None:
        a, b = _interval(rng)
    s = prof.smoothness if smoothness is None else smoothness
    breaks = _breaks(rng, a, b, prof.pieces)
    pieces = [_poly(rng, prof.degree, prof.coeff_bound)]
    for t in breaks[1:-1]:
        prev = pieces[-1]
        if s < 0:
            pieces.append(_poly(rng, prof.degree, prof.coeff_bound))
            continue
        # Taylor data of the previous piece up to order s, then free terms
        p = Poly.const(0)
        for k in range(min(s, prof.degree) + 1):
            p = p + _shifted_basis(t, k) * (prev.deriv(k)(t) / factorial(k))
        top = rng.randint(min(s, prof.degree), prof.degree)
        for k in range(s + 1, top + 1):
            p = p + _shifted_basis(t, k) * _coeff(rng, prof.coeff_bound)
        pieces.append(p)
    return PiecewisePoly(breaks, pieces)


def _bv(rng, prof: Profile, a, b, closed=None) -> BVFunction:
    """Piecewise base plus jump records; ``closed`` forces u(a) = u(b)
    (True) or u(a) != u(b) (False)."""
    base = _piecewise(rng, prof, a, b, smoothness=rng.choice((-1, 0)))
    jumps = {}
    for t in base.breaks[1:-1]:
        left, right = base.limit_left(t), base.limit_right(t)
        if left != right or rng.random() < 0.3:
            point = rng.choice((left, right, _coeff(rng, prof.coeff_bound)))
            jumps[t] = Jump(t, left, point, right)
    for t in (a, b):
        if rng.random() < 0.6:
            jumps[t] = Jump(t, base.limit_left(t), _coeff(rng, prof.coeff_bound), base.limit_right(t))
    u = BVFunction(base, sorted(jumps.values(), key=lambda j: j.t))
    if closed is True and u.value(b) != u.value(a):
        u = u.with_endpoint_value("b", u.value(a))
    elif closed is False and u.value(b) == u.value(a):
        u = u.with_endpoint_value("b", u.value(a) + rng.choice((-1, 1)) * Fraction(rng.randint(1, 4), rng.randint(1, 3)))
    return u


def random_function(seed: int, trial: int, profile: Profile | None = None, salt: str = ""):
    """One random function of the profile's kind.

    ``piecewise`` and ``smooth`` give a PiecewisePoly (``smooth`` is at least
    continuous); ``zero_mean`` a PiecewisePoly with zero integral; ``bv`` and
    ``closed_bv`` a BVFunction, the latter with u(a) = u(b).
    """
    prof = profile or Profile()
    rng = rng_for(seed, trial, salt or prof.kind)
    if prof.kind == "piecewise":
        return _piecewise(rng, prof)
    if prof.kind == "smooth":
        return _piecewise(rng, prof, smoothness=max(prof.smoothness, 0))
    if prof.kind == "zero_mean":
        l0 = _piecewise(rng, prof)
        return l0 - l0.mean()
    a, b = _interval(rng)
    return _bv(rng, prof, a, b, closed=True if prof.kind == "closed_bv" else None)


# instances -----------------------------------------------------------------


def _point(rng, a, b):
    r = rng.random()
    if r < 0.1:
        return a
    if r < 0.2:
        return b
    if r < 0.3:
        return (a + b) / 2
    return a + (b - a) * Fraction(rng.randint(0, 64), 64)


def random_instance(ineq_id: str, seed: int, trial: int, profile: Profile | None = None) -> dict:
    """Inputs for one trial of ``ineq_id`` satisfying its preconditions."""
    from ..inequalities import get_spec
    from ..inequalities.zero_degree import stieltjes

    spec = get_spec(ineq_id)
    prof = profile or Profile()
    rng = rng_for(seed, trial, ineq_id)
    a, b = _interval(rng)

    def pw(smooth=-1):
        return _piecewise(rng, prof, a, b, smoothness=smooth)

    kind = spec.kind
    out = {"interval": (a, b)}
    if kind == "zero_mean":
        l0 = pw()
        out.update(f=pw(), l=l0 - l0.mean())
    elif kind == "pair":
        out.update(f=pw(), g=pw())
    elif kind == "smooth_pair":
        out.update(f=pw(0), g=pw(0) if ineq_id == "cheby" else pw())
    elif kind == "closed_bv":
        out.update(f=pw(0), u=_bv(rng, prof, a, b, closed=True))
    elif kind == "open_bv":
        out.update(f=pw(0), g=pw(0), u=_bv(rng, prof, a, b, closed=False))
    elif kind == "weighted_bv":
        u = _bv(rng, prof, a, b)
        l0 = pw(0)
        delta = u.value(b) - u.value(a)
        if delta != 0:
            l = l0 - stieltjes(l0, u) / delta
        else:
            t = PiecewisePoly.identity((a, b))
            moment = stieltjes(t, u)
            l = l0 - t * (stieltjes(l0, u) / moment) if moment != 0 else l0 * 0
        out.update(f=pw(0), u=u, l=l)
    elif kind == "point":
        out.update(f=pw(0), x=_point(rng, a, b))
    elif kind == "nth":
        n = rng.randint(1, 4)
        out.update(f=pw(n - 1), x=_point(rng, a, b), n=n)
    else:
        raise ValueError(f"no generator for kind {kind!r}")
    return out


def describe(inputs: dict) -> dict:
    """JSON-friendly serialization of an instance."""
    out = {}
    for k, v in inputs.items():
        if v is None:
            continue
        if k == "interval":
            out["a"], out["b"] = str(Q(v[0])), str(Q(v[1]))
        elif hasattr(v, "to_literal"):
            out[k] = v.to_literal()
        elif isinstance(v, (int, Fraction)):
            out[k] = str(v)
        else:
            out[k] = str(v)
    return out
