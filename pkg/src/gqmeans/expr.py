"""
Composition trees over the elementary set.

Generators must be evaluable both as vectorized numpy functions (for
quadrature and root finding) and as jets (for exact higher derivatives),
and they must be differentiable in closed form (Cauchy means and the
``phi' * S_a(phi)`` pairs need derivatives of the user's functions).  A
small expression tree gives all three.

Expressions serialize to nested JSON lists in prefix notation::

    "x"                     the variable
    2.5                     a constant
    ["add", e1, e2]         also "sub", "mul", "div"
    ["neg", e]
    ["exp", e]              also log, sin, cos, sinh, cosh, sqrt
    ["pow", e, r]           e ** r
    ["abspow", e, r]        |e| ** r
"""

from __future__ import annotations

import math
from numbers import Real

import numpy as np

from . import jet as _jet
from .errors import DomainError
from .jet import Jet

__all__ = [
    "Expr", "X", "const", "exp", "log", "sin", "cos", "sinh", "cosh",
    "sqrt", "pow_", "abspow", "parse", "as_expr",
]

_UNARY = ("exp", "log", "sin", "cos", "sinh", "cosh", "sqrt")
_NUMPY = {
    "exp": np.exp, "log": np.log, "sin": np.sin, "cos": np.cos,
    "sinh": np.sinh, "cosh": np.cosh, "sqrt": np.sqrt,
}


class Expr:
    """Base node.  Calling an expression evaluates it on floats or arrays."""

    def __call__(self, x):
        with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
            return self.value(x)

    def value(self, x):
        raise NotImplementedError

    def jet(self, t: Jet) -> Jet:
        raise NotImplementedError

    def diff(self) -> "Expr":
        raise NotImplementedError

    def to_json(self):
        raise NotImplementedError

    def jet_at(self, x0: float, order: int = _jet.MAX_ORDER) -> Jet:
        return self.jet(Jet.variable(x0, order))

    def __add__(self, other):
        return _add(self, as_expr(other))

    def __radd__(self, other):
        return _add(as_expr(other), self)

    def __sub__(self, other):
        return _sub(self, as_expr(other))

    def __rsub__(self, other):
        return _sub(as_expr(other), self)

    def __mul__(self, other):
        return _mul(self, as_expr(other))

    def __rmul__(self, other):
        return _mul(as_expr(other), self)

    def __truediv__(self, other):
        return _div(self, as_expr(other))

    def __rtruediv__(self, other):
        return _div(as_expr(other), self)

    def __neg__(self):
        return _neg(self)

    def __pow__(self, r):
        return pow_(self, r)

    def __repr__(self):
        return f"Expr({self.to_json()!r})"

    def __eq__(self, other):
        return isinstance(other, Expr) and self.to_json() == other.to_json()

    def __hash__(self):
        return hash(repr(self.to_json()))


class Var(Expr):
    def value(self, x):
        return x

    def jet(self, t):
        return t

    def diff(self):
        return Const(1.0)

    def to_json(self):
        return "x"


class Const(Expr):
    def __init__(self, c: float):
        self.c = float(c)

    def value(self, x):
        if isinstance(x, np.ndarray):
            return np.full(x.shape, self.c)
        return self.c

    def jet(self, t):
        return Jet.constant(self.c, t.order)

    def diff(self):
        return Const(0.0)

    def to_json(self):
        return self.c


class _Binary(Expr):
    op = ""

    def __init__(self, a: Expr, b: Expr):
        self.a, self.b = a, b

    def to_json(self):
        return [self.op, self.a.to_json(), self.b.to_json()]


class Add(_Binary):
    op = "add"

    def value(self, x):
        return self.a.value(x) + self.b.value(x)

    def jet(self, t):
        return self.a.jet(t) + self.b.jet(t)

    def diff(self):
        return _add(self.a.diff(), self.b.diff())


class Sub(_Binary):
    op = "sub"

    def value(self, x):
        return self.a.value(x) - self.b.value(x)

    def jet(self, t):
        return self.a.jet(t) - self.b.jet(t)

    def diff(self):
        return _sub(self.a.diff(), self.b.diff())


class Mul(_Binary):
    op = "mul"

    def value(self, x):
        return self.a.value(x) * self.b.value(x)

    def jet(self, t):
        return self.a.jet(t) * self.b.jet(t)

    def diff(self):
        return _add(_mul(self.a.diff(), self.b), _mul(self.a, self.b.diff()))


class Div(_Binary):
    op = "div"

    def value(self, x):
        return self.a.value(x) / self.b.value(x)

    def jet(self, t):
        return self.a.jet(t) / self.b.jet(t)

    def diff(self):
        num = _sub(_mul(self.a.diff(), self.b), _mul(self.a, self.b.diff()))
        return _div(num, pow_(self.b, 2))


class Neg(Expr):
    def __init__(self, a: Expr):
        self.a = a

    def value(self, x):
        return -self.a.value(x)

    def jet(self, t):
        return -self.a.jet(t)

    def diff(self):
        return _neg(self.a.diff())

    def to_json(self):
        return ["neg", self.a.to_json()]


class Call(Expr):
    """An elementary function applied to a subexpression."""

    def __init__(self, name: str, arg: Expr, param: float | None = None):
        if name not in _UNARY and name not in ("pow", "abspow"):
            raise DomainError(f"unknown elementary function {name!r}")
        self.name, self.arg = name, arg
        self.param = None if param is None else float(param)

    def value(self, x):
        u = self.arg.value(x)
        if self.name == "pow":
            return np.power(u, self.param) if isinstance(u, np.ndarray) else _scalar_pow(u, self.param)
        if self.name == "abspow":
            return np.abs(u) ** self.param
        if isinstance(u, np.ndarray):
            return _NUMPY[self.name](u)
        return _scalar(self.name, u)

    def jet(self, t):
        inner = self.arg.jet(t)
        if self.param is None:
            return _jet.compose(self.name, inner)
        return _jet.compose((self.name, self.param), inner)

    def diff(self):
        u, du = self.arg, self.arg.diff()
        n = self.name
        if n == "exp":
            outer = self
        elif n == "log":
            outer = _div(Const(1.0), u)
        elif n == "sin":
            outer = Call("cos", u)
        elif n == "cos":
            outer = _neg(Call("sin", u))
        elif n == "sinh":
            outer = Call("cosh", u)
        elif n == "cosh":
            outer = Call("sinh", u)
        elif n == "sqrt":
            outer = _mul(Const(0.5), pow_(u, -0.5))
        elif n == "pow":
            outer = _mul(Const(self.param), pow_(u, self.param - 1.0))
        else:  # abspow: d|u|^r = r |u|^r / u
            outer = _div(_mul(Const(self.param), self), u)
        return _mul(outer, du)

    def to_json(self):
        if self.param is None:
            return [self.name, self.arg.to_json()]
        return [self.name, self.arg.to_json(), self.param]


def _scalar(name, u):
    try:
        return getattr(math, name)(u)
    except (ValueError, OverflowError):
        return math.nan


def _scalar_pow(u, r):
    try:
        out = u ** r
    except (ZeroDivisionError, OverflowError):
        return math.nan
    return math.nan if isinstance(out, complex) else out


def _is_const(e, c=None):
    return isinstance(e, Const) and (c is None or e.c == c)


def _add(a, b):
    if _is_const(a) and _is_const(b):
        return Const(a.c + b.c)
    if _is_const(a, 0.0):
        return b
    if _is_const(b, 0.0):
        return a
    return Add(a, b)


def _sub(a, b):
    if _is_const(a) and _is_const(b):
        return Const(a.c - b.c)
    if _is_const(b, 0.0):
        return a
    if _is_const(a, 0.0):
        return _neg(b)
    return Sub(a, b)


def _mul(a, b):
    if _is_const(a) and _is_const(b):
        return Const(a.c * b.c)
    if _is_const(a, 0.0) or _is_const(b, 0.0):
        return Const(0.0)
    if _is_const(a, 1.0):
        return b
    if _is_const(b, 1.0):
        return a
    return Mul(a, b)


def _div(a, b):
    if _is_const(a, 0.0):
        return Const(0.0)
    if _is_const(b, 1.0):
        return a
    if _is_const(a) and _is_const(b):
        return Const(a.c / b.c)
    return Div(a, b)


def _neg(a):
    if _is_const(a):
        return Const(-a.c)
    if isinstance(a, Neg):
        return a.a
    return Neg(a)


def as_expr(obj) -> Expr:
    if isinstance(obj, Expr):
        return obj
    if isinstance(obj, (Real, np.floating, np.integer)):
        return Const(float(obj))
    raise TypeError(f"cannot turn {type(obj).__name__} into an expression")


X = Var()


def const(c: float) -> Expr:
    return Const(c)


def exp(e) -> Expr:
    return Call("exp", as_expr(e))


def log(e) -> Expr:
    return Call("log", as_expr(e))


def sin(e) -> Expr:
    return Call("sin", as_expr(e))


def cos(e) -> Expr:
    return Call("cos", as_expr(e))


def sinh(e) -> Expr:
    return Call("sinh", as_expr(e))


def cosh(e) -> Expr:
    return Call("cosh", as_expr(e))


def sqrt(e) -> Expr:
    return Call("sqrt", as_expr(e))


def pow_(e, r: float) -> Expr:
    e = as_expr(e)
    r = float(r)
    if r == 0.0:
        return Const(1.0)
    if r == 1.0:
        return e
    if _is_const(e):
        return Const(e.c ** r)
    return Call("pow", e, r)


def abspow(e, r: float) -> Expr:
    return Call("abspow", as_expr(e), r)


_BINARY = {"add": _add, "sub": _sub, "mul": _mul, "div": _div}


def parse(obj) -> Expr:
    """Build an expression from its prefix-notation JSON form."""
    if isinstance(obj, Expr):
        return obj
    if obj == "x":
        return X
    if isinstance(obj, bool):
        raise DomainError("booleans are not expressions")
    if isinstance(obj, (int, float)):
        return Const(obj)
    if isinstance(obj, str):
        raise DomainError(f"unknown symbol {obj!r}; the only variable is 'x'")
    if not isinstance(obj, (list, tuple)) or not obj:
        raise DomainError(f"malformed expression {obj!r}")
    head, *args = obj
    if head in _BINARY:
        if len(args) != 2:
            raise DomainError(f"{head} takes two operands")
        return _BINARY[head](parse(args[0]), parse(args[1]))
    if head == "neg" and len(args) == 1:
        return _neg(parse(args[0]))
    if head in _UNARY and len(args) == 1:
        return Call(head, parse(args[0]))
    if head in ("pow", "abspow") and len(args) == 2:
        if not isinstance(args[1], (int, float)):
            raise DomainError(f"{head} exponent must be a number")
        return Call(head, parse(args[0]), args[1])
    raise DomainError(f"malformed expression {obj!r}")
