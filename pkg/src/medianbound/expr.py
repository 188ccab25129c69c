"""Closed-form expressions in one variable ``x``.

Grammar (whitespace ignored)::

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | power
    power  := base ('^' INT)?
    base   := NUMBER | 'x' | FUNC '(' expr ')' | '(' expr ')'
    FUNC   := sin | cos | exp | log | abs | sqrt
    NUMBER := decimal literal, or rational 'p/q' written without spaces

Exponentiation binds tighter than unary minus, so ``-x^2`` is ``-(x^2)``.
A rational literal is a single token: ``2/3^2`` is ``(2/3)^2``.

Trees are immutable; derivatives only fold literal arithmetic.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from . import interval as ia
from .exceptions import DomainError, NotPolynomial, ParseError

FUNCS = ("sin", "cos", "exp", "log", "abs", "sqrt")


class Expr:
    """Base node. Subclasses are frozen dataclasses."""

    __slots__ = ()

    def __str__(self):
        return serialize(self)

    def __call__(self, x):
        return evaluate(self, x)


@dataclass(frozen=True)
class Const(Expr):
    value: Fraction


@dataclass(frozen=True)
class Var(Expr):
    pass


@dataclass(frozen=True)
class Neg(Expr):
    arg: Expr


@dataclass(frozen=True)
class Func(Expr):
    name: str
    arg: Expr


@dataclass(frozen=True)
class BinOp(Expr):
    op: str  # one of + - * /
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Pow(Expr):
    base: Expr
    exponent: int


X = Var()
ZERO = Const(Fraction(0))
ONE = Const(Fraction(1))


# smart constructors (literal folding only) ---------------------------------


def const(value) -> Const:
    return Const(Fraction(value))


def _is_const(e, value=None):
    return isinstance(e, Const) and (value is None or e.value == value)


def neg(e: Expr) -> Expr:
    if isinstance(e, Const):
        return Const(-e.value)
    if isinstance(e, Neg):
        return e.arg
    return Neg(e)


def add(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value + b.value)
    if _is_const(a, 0):
        return b
    if _is_const(b, 0):
        return a
    return BinOp("+", a, b)


def sub(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value - b.value)
    if _is_const(b, 0):
        return a
    if _is_const(a, 0):
        return neg(b)
    return BinOp("-", a, b)


def mul(a: Expr, b: Expr) -> Expr:
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value * b.value)
    if _is_const(a, 0) or _is_const(b, 0):
        return ZERO
    if _is_const(a, 1):
        return b
    if _is_const(b, 1):
        return a
    if _is_const(a, -1):
        return neg(b)
    if _is_const(b, -1):
        return neg(a)
    return BinOp("*", a, b)


def div(a: Expr, b: Expr) -> Expr:
    if _is_const(b, 0):
        raise DomainError("division by the literal zero")
    if isinstance(a, Const) and isinstance(b, Const):
        return Const(a.value / b.value)
    if _is_const(a, 0):
        return ZERO
    if _is_const(b, 1):
        return a
    return BinOp("/", a, b)


def power(base: Expr, k: int) -> Expr:
    if k == 0:
        return ONE
    if k == 1:
        return base
    if isinstance(base, Const):
        return Const(base.value**k)
    return Pow(base, k)


def func(name: str, arg: Expr) -> Expr:
    if name not in FUNCS:
        raise ValueError(f"unknown function {name!r}")
    return Func(name, arg)


# parsing -------------------------------------------------------------------

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<rational>\d+/\d+(?![\d.eE]))
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    offset: int


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", _byte_offset(text, pos))
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(_Tok(kind, m.group(), _byte_offset(text, pos)))
        pos = m.end()
    tokens.append(_Tok("end", "", _byte_offset(text, len(text))))
    return tokens


def _byte_offset(text, index):
    return len(text[:index].encode("utf-8"))


class _Parser:
    def __init__(self, text):
        self.tokens = _tokenize(text)
        self.i = 0

    @property
    def tok(self):
        return self.tokens[self.i]

    def advance(self):
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text):
        if self.tok.text != text:
            self.fail(f"expected {text!r}")
        return self.advance()

    def fail(self, message, tok=None):
        tok = tok or self.tok
        found = "end of input" if tok.kind == "end" else repr(tok.text)
        raise ParseError(f"syntax error: {message}, found {found}", tok.offset)

    def parse(self):
        e = self.expr()
        if self.tok.kind != "end":
            self.fail("unexpected token")
        return e

    def expr(self):
        e = self.term()
        while self.tok.text in ("+", "-"):
            op = self.advance().text
            e = BinOp(op, e, self.term())
        return e

    def term(self):
        e = self.factor()
        while self.tok.text in ("*", "/"):
            op = self.advance().text
            e = BinOp(op, e, self.factor())
        return e

    def factor(self):
        if self.tok.text == "-":
            self.advance()
            nxt, after = self.tok, self.tokens[self.i + 1]
            if nxt.kind in ("number", "rational") and after.text != "^":
                self.advance()
                return Const(-_number(nxt))
            return Neg(self.factor())
        return self.power()

    def power(self):
        base = self.base()
        if self.tok.text == "^":
            self.advance()
            t = self.tok
            if t.kind == "number" and t.text.isdigit():
                self.advance()
                return Pow(base, int(t.text))
            if t.kind in ("number", "rational"):
                raise ParseError(f"non-integer exponent {t.text!r}", t.offset)
            self.fail("expected an integer exponent")
        return base

    def base(self):
        t = self.tok
        if t.kind in ("number", "rational"):
            self.advance()
            return Const(_number(t))
        if t.kind == "name":
            self.advance()
            if t.text == "x":
                return X
            if t.text in FUNCS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Func(t.text, arg)
            raise ParseError(f"unknown identifier {t.text!r}", t.offset)
        if t.text == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        self.fail("expected a number, 'x', a function or '('")


def _number(tok) -> Fraction:
    try:
        return Fraction(tok.text)
    except ZeroDivisionError:
        raise ParseError("zero denominator in rational literal", tok.offset) from None


def parse(text: str) -> Expr:
    """Parse ``text`` into an expression tree.

    Raises :class:`ParseError` carrying the byte offset of the offending
    token, for syntax errors, unknown identifiers and non-integer exponents.
    """
    return _Parser(text).parse()


# serialization -------------------------------------------------------------

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def _prec(e):
    if isinstance(e, BinOp):
        return _PREC[e.op]
    if isinstance(e, Neg):
        return 3
    if isinstance(e, Pow):
        return 4
    if isinstance(e, Const) and e.value < 0:
        return 5  # always parenthesized by _const
    return 5


def _const(c: Fraction) -> str:
    return f"({c})" if c < 0 else str(c)


def _wrap(e, min_prec):
    s = serialize(e)
    return s if _prec(e) >= min_prec else f"({s})"


def serialize(e: Expr) -> str:
    """Text form that :func:`parse` maps back to an identical tree."""
    if isinstance(e, Const):
        return _const(e.value)
    if isinstance(e, Var):
        return "x"
    if isinstance(e, Func):
        return f"{e.name}({serialize(e.arg)})"
    if isinstance(e, Neg):
        if isinstance(e.arg, Const):
            return f"-({e.arg.value})"
        return "-" + _wrap(e.arg, 3)
    if isinstance(e, Pow):
        if isinstance(e.base, Const) and e.base.value >= 0:
            return f"{e.base.value}^{e.exponent}"
        return f"{_wrap(e.base, 5)}^{e.exponent}"
    if isinstance(e, BinOp):
        p = _PREC[e.op]
        left = _wrap(e.left, p)
        right = _wrap(e.right, p + 1)
        return f"{left} {e.op} {right}"
    raise TypeError(f"not an expression node: {e!r}")


# differentiation -----------------------------------------------------------


def differentiate(e: Expr) -> Expr:
    """Symbolic d/dx. ``abs(u)`` differentiates to ``u/abs(u) * u'``, which is
    undefined where ``u`` vanishes."""
    if isinstance(e, Const):
        return ZERO
    if isinstance(e, Var):
        return ONE
    if isinstance(e, Neg):
        return neg(differentiate(e.arg))
    if isinstance(e, BinOp):
        u, v = e.left, e.right
        du, dv = differentiate(u), differentiate(v)
        if e.op == "+":
            return add(du, dv)
        if e.op == "-":
            return sub(du, dv)
        if e.op == "*":
            return add(mul(du, v), mul(u, dv))
        if isinstance(v, Const):
            return div(du, v)
        return div(sub(mul(du, v), mul(u, dv)), power(v, 2))
    if isinstance(e, Pow):
        k = e.exponent
        if k == 0:
            return ZERO
        return mul(mul(const(k), power(e.base, k - 1)), differentiate(e.base))
    if isinstance(e, Func):
        u = e.arg
        du = differentiate(u)
        if e.name == "sin":
            outer = Func("cos", u)
        elif e.name == "cos":
            outer = neg(Func("sin", u))
        elif e.name == "exp":
            outer = e
        elif e.name == "log":
            return div(du, u)
        elif e.name == "sqrt":
            return div(du, mul(const(2), e))
        else:  # abs
            outer = div(u, e)
        return mul(outer, du)
    raise TypeError(f"not an expression node: {e!r}")


def derivative(e: Expr, k: int) -> Expr:
    for _ in range(k):
        e = differentiate(e)
    return e


# evaluation ----------------------------------------------------------------


def evaluate(e: Expr, x: float) -> float:
    """Double-precision value at ``x``. Overflow yields ``inf``; leaving the
    domain of log, sqrt or division raises :class:`DomainError`."""
    x = float(x)
    return _eval(e, x)


def _eval(e, x):
    if isinstance(e, Const):
        return float(e.value)
    if isinstance(e, Var):
        return x
    if isinstance(e, Neg):
        return -_eval(e.arg, x)
    if isinstance(e, BinOp):
        a, b = _eval(e.left, x), _eval(e.right, x)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            return a * b
        if b == 0.0:
            raise DomainError(f"division by zero at x={x}")
        return a / b
    if isinstance(e, Pow):
        try:
            return _eval(e.base, x) ** e.exponent
        except OverflowError:
            b = _eval(e.base, x)
            return math.inf if b > 0 or e.exponent % 2 == 0 else -math.inf
    if isinstance(e, Func):
        u = _eval(e.arg, x)
        name = e.name
        if name == "exp":
            try:
                return math.exp(u)
            except OverflowError:
                return math.inf
        if name == "log":
            if u <= 0.0:
                raise DomainError(f"log of non-positive value at x={x}")
            return math.log(u)
        if name == "sqrt":
            if u < 0.0:
                raise DomainError(f"sqrt of negative value at x={x}")
            return math.sqrt(u)
        if name == "sin":
            return math.sin(u)
        if name == "cos":
            return math.cos(u)
        return abs(u)
    raise TypeError(f"not an expression node: {e!r}")


def evaluate_interval(e: Expr, x: ia.FInterval) -> ia.FInterval:
    """Rigorous enclosure of the range of ``e`` over the interval ``x``."""
    if isinstance(e, Const):
        return ia.FInterval(e.value)
    if isinstance(e, Var):
        return x
    if isinstance(e, Neg):
        return -evaluate_interval(e.arg, x)
    if isinstance(e, BinOp):
        a, b = evaluate_interval(e.left, x), evaluate_interval(e.right, x)
        if e.op == "+":
            return a + b
        if e.op == "-":
            return a - b
        if e.op == "*":
            if e.left == e.right:
                return a**2
            return a * b
        return a / b
    if isinstance(e, Pow):
        return evaluate_interval(e.base, x) ** e.exponent
    if isinstance(e, Func):
        u = evaluate_interval(e.arg, x)
        if e.name == "abs":
            return abs(u)
        return getattr(ia, e.name)(u)
    raise TypeError(f"not an expression node: {e!r}")


def evaluate_mp(e: Expr, x):
    """Value at ``x`` in mpmath arbitrary precision (current ``mp.dps``)."""
    import mpmath

    def go(n):
        if isinstance(n, Const):
            return mpmath.mpf(n.value.numerator) / n.value.denominator
        if isinstance(n, Var):
            return x
        if isinstance(n, Neg):
            return -go(n.arg)
        if isinstance(n, BinOp):
            a, b = go(n.left), go(n.right)
            if n.op == "+":
                return a + b
            if n.op == "-":
                return a - b
            if n.op == "*":
                return a * b
            if b == 0:
                raise DomainError("division by zero")
            return a / b
        if isinstance(n, Pow):
            return go(n.base) ** n.exponent
        u = go(n.arg)
        if n.name == "log" and u <= 0:
            raise DomainError("log of non-positive value")
        if n.name == "sqrt" and u < 0:
            raise DomainError("sqrt of negative value")
        return {"abs": abs}.get(n.name, getattr(mpmath, n.name, None))(u)

    return go(e)


# polynomial lowering -------------------------------------------------------


def poly_coefficients(e: Expr) -> list[Fraction]:
    """Exact coefficients (constant term first) of a polynomial expression.

    Division is accepted only by a constant subexpression."""
    if isinstance(e, Const):
        return [e.value]
    if isinstance(e, Var):
        return [Fraction(0), Fraction(1)]
    if isinstance(e, Neg):
        return [-c for c in poly_coefficients(e.arg)]
    if isinstance(e, BinOp):
        a = poly_coefficients(e.left)
        if e.op == "/":
            b = poly_coefficients(e.right)
            b = _trim(b)
            if len(b) != 1:
                raise NotPolynomial("division by a non-constant expression")
            if b[0] == 0:
                raise DomainError("division by zero")
            return [c / b[0] for c in a]
        b = poly_coefficients(e.right)
        if e.op in "+-":
            sign = 1 if e.op == "+" else -1
            n = max(len(a), len(b))
            a = a + [Fraction(0)] * (n - len(a))
            b = b + [Fraction(0)] * (n - len(b))
            return [p + sign * q for p, q in zip(a, b)]
        return _polymul(a, b)
    if isinstance(e, Pow):
        base = poly_coefficients(e.base)
        out = [Fraction(1)]
        for _ in range(e.exponent):
            out = _polymul(out, base)
        return out
    if isinstance(e, Func):
        raise NotPolynomial(f"{e.name}() is not polynomial")
    raise TypeError(f"not an expression node: {e!r}")


def _polymul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, p in enumerate(a):
        if p:
            for j, q in enumerate(b):
                out[i + j] += p * q
    return out


def _trim(c):
    c = list(c)
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def is_polynomial(e: Expr) -> bool:
    try:
        poly_coefficients(e)
    except (NotPolynomial, DomainError):
        return False
    return True


def lower_to_poly(e: Expr, interval):
    """Exact single-piece piecewise polynomial equal to ``e`` on ``interval``."""
    from .funcmodel import PiecewisePoly, Poly

    return PiecewisePoly.single(Poly(poly_coefficients(e)), interval)


def from_coefficients(coeffs) -> Expr:
    """Expression ``c0 + c1*x + ...`` for exact coefficients."""
    out = ZERO
    for k in range(len(coeffs) - 1, -1, -1):
        c = Fraction(coeffs[k])
        if c == 0:
            continue
        mono = power(X, k)
        if out == ZERO:
            out = mul(Const(c), mono) if k else Const(c)
        elif c < 0:
            out = sub(out, mul(Const(-c), mono))
        else:
            out = add(out, mul(Const(c), mono))
    return out


ExprLike = Union[Expr, str]


def as_expr(value: ExprLike) -> Expr:
    return parse(value) if isinstance(value, str) else value
