"""Fixed-order Gauss-Legendre rule with adaptive bisection."""

from __future__ import annotations

import numpy as np

GL_ORDER = 16
_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(GL_ORDER)

# each bisection level halves the panel, so 30 levels is far below double
# precision resolution of any interval we integrate on
MAX_DEPTH = 30


def gauss_legendre(fun, a: float, b: float):
    """16-point rule on ``[a, b]``.  ``fun`` maps an array of nodes to values
    of shape ``(n,)`` or ``(m, n)`` for vector integrands."""
    half = 0.5 * (b - a)
    mid = 0.5 * (b + a)
    vals = np.asarray(fun(mid + half * _NODES), dtype=float)
    return half * (vals @ _WEIGHTS)


def integrate(fun, a: float, b: float, tol: float = 1e-12):
    """Adaptive integral of ``fun`` over ``[a, b]`` to absolute ``tol``.

    A panel is accepted when the whole-panel estimate and the sum over its
    two halves agree to the panel's share of the tolerance.
    """
    if a == b:
        return 0.0 * gauss_legendre(fun, a, a + 1.0)
    return _adaptive(fun, a, b, gauss_legendre(fun, a, b), tol, 0)


def _adaptive(fun, a, b, whole, tol, depth):
    m = 0.5 * (a + b)
    left = gauss_legendre(fun, a, m)
    right = gauss_legendre(fun, m, b)
    halves = left + right
    if depth >= MAX_DEPTH or np.max(np.abs(halves - whole)) <= tol:
        return halves
    return (_adaptive(fun, a, m, left, 0.5 * tol, depth + 1)
            + _adaptive(fun, m, b, right, 0.5 * tol, depth + 1))
