"""Text literals for piecewise and bounded-variation functions.

    pw[(0,1/2): -1; (1/2,1): 1]
    bv[pieces: pw[(0,1): 1]; jumps: (0,0,0,1),(1,1,0,0)]

Jump tuples are ``(t, left, point, right)``. Piece bodies are polynomial
expressions in ``x``.
"""

from __future__ import annotations

import re

from .._rational import to_rational
from ..exceptions import ParseError, NotPolynomial
from .bv import BVFunction, Jump
from .piecewise import PiecewisePoly
from .poly import Poly

_PIECE = re.compile(r"\s*\(\s*([^,()]+?)\s*,\s*([^,()]+?)\s*\)\s*:\s*(.+?)\s*$", re.S)
_TUPLE = re.compile(r"\(([^()]*)\)")


def _rational(text, offset):
    try:
        return to_rational(text)
    except ValueError:
        raise ParseError(f"bad rational {text!r}", offset) from None


def parse_piecewise(text: str) -> PiecewisePoly:
    from ..expr import parse, poly_coefficients

    src = text.strip()
    if not (src.startswith("pw[") and src.endswith("]")):
        raise ParseError("piecewise literal must look like pw[(a,b): poly; ...]", 0)
    body = src[3:-1]
    base = text.index("pw[") + 3
    breaks, pieces = [], []
    pos = 0
    for chunk in body.split(";"):
        m = _PIECE.match(chunk)
        if m is None:
            raise ParseError(f"bad piece {chunk.strip()!r}", base + pos)
        s = _rational(m.group(1), base + pos)
        t = _rational(m.group(2), base + pos)
        try:
            coeffs = poly_coefficients(parse(m.group(3)))
        except NotPolynomial as exc:
            raise ParseError(f"piece body is not a polynomial: {exc}", base + pos) from None
        except ParseError as exc:
            raise ParseError(str(exc), base + pos + m.start(3) + (exc.offset or 0)) from None
        if s >= t:
            raise ParseError(f"empty or reversed piece ({s},{t})", base + pos)
        if breaks and breaks[-1] != s:
            raise ParseError(f"pieces must be contiguous: {breaks[-1]} then {s}", base + pos)
        if not breaks:
            breaks.append(s)
        breaks.append(t)
        pieces.append(Poly(coeffs))
        pos += len(chunk) + 1
    return PiecewisePoly(breaks, pieces)


def parse_bv(text: str) -> BVFunction:
    src = text.strip()
    if not (src.startswith("bv[") and src.endswith("]")):
        raise ParseError("BV literal must look like bv[pieces: pw[...]; jumps: (t,l,p,r), ...]", 0)
    body = src[3:-1]
    m = re.match(r"\s*pieces\s*:\s*", body)
    if m is None:
        raise ParseError("expected 'pieces:'", 3)
    start = m.end()
    if not body.startswith("pw[", start):
        raise ParseError("expected a pw[...] literal after 'pieces:'", 3 + start)
    depth, end = 0, None
    for i in range(start, len(body)):
        if body[i] == "[":
            depth += 1
        elif body[i] == "]":
            depth -= 1
            if depth == 0:
                end = i + 1
                break
    if end is None:
        raise ParseError("unterminated pw[...] literal", 3 + start)
    base = parse_piecewise(body[start:end])
    rest = body[end:]
    jumps = []
    mj = re.match(r"\s*(?:;\s*jumps\s*:\s*(.*))?$", rest, re.S)
    if mj is None:
        raise ParseError("expected '; jumps: ...'", 3 + end)
    if mj.group(1):
        jtext = mj.group(1)
        leftover = _TUPLE.sub("", jtext).replace(",", "").strip()
        if leftover:
            raise ParseError(f"unexpected text in jumps: {leftover!r}", 3 + end)
        for tm in _TUPLE.finditer(jtext):
            parts = [p.strip() for p in tm.group(1).split(",")]
            if len(parts) != 4:
                raise ParseError("jump tuples are (t, left, point, right)", 3 + end + tm.start())
            jumps.append(Jump(*(_rational(p, 3 + end + tm.start()) for p in parts)))
    jumps.sort(key=lambda j: j.t)
    return BVFunction(base, jumps)


def format_piecewise(f: PiecewisePoly) -> str:
    return f.to_literal()


def format_bv(u: BVFunction) -> str:
    return u.to_literal()
