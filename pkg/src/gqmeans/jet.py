"""
Truncated Taylor series ("jets") at a point, up to order 8.

A jet stores ``coeffs[k] = h^(k)(x0) / k!`` for ``k <= order``.  All
arithmetic truncates to the smallest order among the operands, so a jet
never claims more accuracy than its inputs carry.

>>> x = Jet.variable(3.0)
>>> (x * x).coeffs[:4]
array([9., 6., 1., 0.])
"""

from __future__ import annotations

import math
from numbers import Real

import numpy as np

from .errors import DivisionByZeroJet, DomainError

MAX_ORDER = 8
_SIZE = MAX_ORDER + 1
ZERO_TOL = 1e-300

FACTORIALS = np.array([math.factorial(k) for k in range(_SIZE)], dtype=float)

__all__ = [
    "MAX_ORDER", "Jet", "compose", "bell_polynomial", "faa_di_bruno",
    "ELEMENTARY",
]


class Jet:
    """Taylor-normalized derivatives of a scalar function at one point."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order: int = MAX_ORDER):
        if not 0 <= order <= MAX_ORDER:
            raise ValueError(f"jet order must lie in 0..{MAX_ORDER}, got {order}")
        given = np.asarray(coeffs, dtype=float).ravel()
        c = np.zeros(_SIZE)
        n = min(len(given), order + 1)
        c[:n] = given[:n]
        self.coeffs = c
        self.order = order

    @classmethod
    def constant(cls, value: float, order: int = MAX_ORDER) -> "Jet":
        return cls([value], order)

    @classmethod
    def variable(cls, x0: float, order: int = MAX_ORDER) -> "Jet":
        """The jet of the identity map at ``x0``."""
        return cls([x0, 1.0], order)

    @classmethod
    def from_derivatives(cls, derivs, order: int | None = None) -> "Jet":
        d = np.asarray(derivs, dtype=float)
        if order is None:
            order = len(d) - 1
        return cls(d / FACTORIALS[: len(d)], order)

    @property
    def value(self) -> float:
        return float(self.coeffs[0])

    def derivatives(self) -> np.ndarray:
        """Raw derivatives ``h^(k)(x0)`` for ``k = 0..order``."""
        n = self.order + 1
        return self.coeffs[:n] * FACTORIALS[:n]

    def derivative(self, times: int = 1) -> "Jet":
        """Jet of ``h'``; costs one order per differentiation."""
        out = self
        for _ in range(times):
            if out.order == 0:
                raise ValueError("cannot differentiate an order-0 jet")
            n = out.order
            k = np.arange(1, n + 1)
            out = Jet(out.coeffs[1 : n + 1] * k, n - 1)
        return out

    def truncate(self, order: int) -> "Jet":
        return Jet(self.coeffs, min(order, self.order))

    # arithmetic -----------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Jet):
            return other
        if isinstance(other, (Real, np.floating, np.integer)):
            return Jet.constant(float(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Jet(self.coeffs + other.coeffs, min(self.order, other.order))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Jet(self.coeffs - other.coeffs, min(self.order, other.order))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Jet(-self.coeffs, self.order)

    def __pos__(self):
        return self

    def __mul__(self, other):
        if isinstance(other, (Real, np.floating, np.integer)):
            return Jet(self.coeffs * float(other), self.order)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        n = min(self.order, other.order)
        prod = np.convolve(self.coeffs[: n + 1], other.coeffs[: n + 1])[: n + 1]
        return Jet(prod, n)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (Real, np.floating, np.integer)):
            other = float(other)
            if abs(other) < ZERO_TOL:
                raise DivisionByZeroJet("division by a zero scalar")
            return Jet(self.coeffs / other, self.order)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        b = other.coeffs
        if abs(b[0]) < ZERO_TOL:
            raise DivisionByZeroJet("leading coefficient of the divisor vanishes")
        n = min(self.order, other.order)
        a = self.coeffs
        q = np.zeros(n + 1)
        for k in range(n + 1):
            q[k] = (a[k] - np.dot(b[1 : k + 1], q[k - 1 :: -1][:k])) / b[0]
        return Jet(q, n)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __pow__(self, r):
        return power(self, r)

    # elementary functions as methods, for expression evaluation
    def exp(self):
        return exp(self)

    def log(self):
        return log(self)

    def sin(self):
        return sin(self)

    def cos(self):
        return cos(self)

    def sinh(self):
        return sinh(self)

    def cosh(self):
        return cosh(self)

    def sqrt(self):
        return sqrt(self)

    def __repr__(self):
        body = ", ".join(f"{c:.6g}" for c in self.coeffs[: self.order + 1])
        return f"Jet([{body}], order={self.order})"

    def allclose(self, other: "Jet", rtol=1e-12, atol=1e-12) -> bool:
        n = min(self.order, other.order)
        return bool(np.allclose(self.coeffs[: n + 1], other.coeffs[: n + 1],
                                rtol=rtol, atol=atol))


# series recurrences ------------------------------------------------------


def exp(a: Jet) -> Jet:
    n = a.order
    c = a.coeffs
    b = np.zeros(n + 1)
    b[0] = math.exp(c[0])
    for k in range(1, n + 1):
        j = np.arange(1, k + 1)
        b[k] = np.dot(j * c[1 : k + 1], b[k - 1 :: -1][:k]) / k
    return Jet(b, n)


def log(a: Jet) -> Jet:
    n = a.order
    c = a.coeffs
    if c[0] <= 0.0:
        raise DomainError(f"log of a jet with leading coefficient {c[0]!r}")
    b = np.zeros(n + 1)
    b[0] = math.log(c[0])
    for k in range(1, n + 1):
        s = sum((k - j) * c[j] * b[k - j] for j in range(1, k))
        b[k] = (c[k] - s / k) / c[0]
    return Jet(b, n)


def power(a: Jet, r: float) -> Jet:
    """``a ** r``; integer ``r >= 0`` is exact even through zero."""
    r = float(r)
    if r.is_integer() and r >= 0:
        out = Jet.constant(1.0, a.order)
        for _ in range(int(r)):
            out = out * a
        return out
    n = a.order
    c = a.coeffs
    if c[0] == 0.0 or (c[0] < 0.0 and not r.is_integer()):
        raise DomainError(f"power {r} of a jet with leading coefficient {c[0]!r}")
    b = np.zeros(n + 1)
    b[0] = c[0] ** r
    for k in range(1, n + 1):
        j = np.arange(1, k + 1)
        b[k] = np.dot(((r + 1.0) * j - k) * c[1 : k + 1], b[k - 1 :: -1][:k]) / (k * c[0])
    return Jet(b, n)


def sqrt(a: Jet) -> Jet:
    return power(a, 0.5)


def abs_power(a: Jet, r: float) -> Jet:
    """``|a| ** r`` for a jet whose leading coefficient is nonzero."""
    if a.coeffs[0] == 0.0:
        raise DomainError("abs-power of a jet through zero")
    return power(a if a.coeffs[0] > 0 else -a, r)


def _sin_cos(a: Jet, hyperbolic: bool):
    n = a.order
    c = a.coeffs
    s = np.zeros(n + 1)
    co = np.zeros(n + 1)
    if hyperbolic:
        s[0], co[0] = math.sinh(c[0]), math.cosh(c[0])
    else:
        s[0], co[0] = math.sin(c[0]), math.cos(c[0])
    sign = 1.0 if hyperbolic else -1.0
    for k in range(1, n + 1):
        j = np.arange(1, k + 1)
        w = j * c[1 : k + 1]
        s[k] = np.dot(w, co[k - 1 :: -1][:k]) / k
        co[k] = sign * np.dot(w, s[k - 1 :: -1][:k]) / k
    return Jet(s, n), Jet(co, n)


def sin(a: Jet) -> Jet:
    return _sin_cos(a, False)[0]


def cos(a: Jet) -> Jet:
    return _sin_cos(a, False)[1]


def sinh(a: Jet) -> Jet:
    return _sin_cos(a, True)[0]


def cosh(a: Jet) -> Jet:
    return _sin_cos(a, True)[1]


ELEMENTARY = {
    "exp": exp,
    "log": log,
    "sin": sin,
    "cos": cos,
    "sinh": sinh,
    "cosh": cosh,
    "sqrt": sqrt,
    "pow": power,
    "abspow": abs_power,
}

_PARAMETRIC = {"pow", "abspow"}


def compose(outer, inner: Jet) -> Jet:
    """Jet of ``outer(inner)``.

    ``outer`` is the name of an elementary function, or a ``(name, r)``
    tuple for the parametric ones (``pow``, ``abspow``).
    """
    if isinstance(outer, tuple):
        name, param = outer
    else:
        name, param = outer, None
    try:
        fn = ELEMENTARY[name]
    except KeyError:
        raise DomainError(f"unknown elementary function {name!r}") from None
    if name in _PARAMETRIC:
        if param is None:
            raise DomainError(f"{name} needs an exponent")
        return fn(inner, param)
    return fn(inner)


# Faa di Bruno -------------------------------------------------------------


def bell_polynomial(N: int, k: int, xs) -> float:
    """Incomplete Bell polynomial B_{N,k}(x_1, ..., x_{N-k+1}).

    Evaluated straight from the recursive definition
    ``B_{N,k} = sum_j C(N-1, j-1) x_j B_{N-j,k-1}`` with ``B_{0,0} = 1``.
    ``xs[j-1]`` holds ``x_j``; extra trailing entries are ignored.
    """
    xs = list(xs)
    memo: dict[tuple[int, int], float] = {}

    def b(n: int, m: int) -> float:
        if n == 0 and m == 0:
            return 1.0
        if n == 0 or m == 0:
            return 0.0
        key = (n, m)
        if key not in memo:
            memo[key] = sum(
                math.comb(n - 1, j - 1) * xs[j - 1] * b(n - j, m - 1)
                for j in range(1, n - m + 2)
            )
        return memo[key]

    return b(N, k)


def faa_di_bruno(outer_derivs, inner_derivs, N: int) -> float:
    """N-th derivative of ``outer(inner(u))`` at a point from raw derivatives.

    ``outer_derivs[k]`` is the k-th derivative of the outer function at
    ``inner(u0)``; ``inner_derivs[k]`` the k-th derivative of the inner
    function at ``u0``.
    """
    if N == 0:
        return outer_derivs[0]
    xs = inner_derivs[1 : N + 1]
    return sum(outer_derivs[k] * bell_polynomial(N, k, xs) for k in range(1, N + 1))
