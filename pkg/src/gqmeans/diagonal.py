"""
Derivatives of a mean along the anti-diagonal ``u -> M(x + u/2, x - u/2)``.

Two independent routes compute ``m_x^{(2i)}(0)`` for ``i = 1..4``:

* closed forms in terms of the sequences ``phi_i``, ``psi_i`` generated
  from ``(Phi, Psi)`` by a first-order recursion, and
* the implicit-series oracle, which differentiates the defining equation
  of the mean directly (Leibniz rule plus Faa di Bruno) and isolates one
  unknown derivative per order.  It never touches ``Phi`` or ``Psi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AsymmetricMeasure, OutOfDomain, StencilOutOfDomain, UnsupportedIndex
from .generator import GeneratorPair, _check_order, phi_psi_jets
from .jet import MAX_ORDER, Jet, bell_polynomial
from .mean import eval_generalized
from .measure import Measure, MomentVector, is_symmetric, moments

__all__ = [
    "RecursionTable", "DiagonalDerivatives", "recursion_table", "drec_check",
    "bell_table", "bell_recursive", "BELL_CLOSED_FORMS", "diagonal_derivatives",
    "implicit_series_oracle", "finite_difference_check", "slice_value",
]


@dataclass(frozen=True)
class RecursionTable:
    """``phi[i]``, ``psi[i]`` as jets at ``x``; entry ``i`` is valid to
    order ``8 - i`` (each recursion step spends one derivative)."""

    x: float
    phi: tuple[Jet, ...]
    psi: tuple[Jet, ...]

    def values(self) -> tuple[np.ndarray, np.ndarray]:
        return (np.array([j.value for j in self.phi]), np.array([j.value for j in self.psi]))


@dataclass(frozen=True)
class DiagonalDerivatives:
    d2: float
    d4: float
    d6: float
    d8: float

    def as_array(self) -> np.ndarray:
        return np.array([self.d2, self.d4, self.d6, self.d8])


def recursion_table(pair: GeneratorPair, x: float) -> RecursionTable:
    _check_order(pair, MAX_ORDER)
    Phi, Psi = phi_psi_jets(pair, x, MAX_ORDER - 2)
    phi = [Jet.constant(0.0), Jet.constant(1.0)]
    psi = [Jet.constant(1.0), Jet.constant(0.0)]
    for i in range(1, MAX_ORDER):
        phi.append(phi[i].derivative() + phi[i] * Phi + psi[i])
        psi.append(phi[i] * Psi + psi[i].derivative())
    return RecursionTable(x, tuple(phi), tuple(psi))


def drec_check(pair: GeneratorPair, x: float, tol: float = 1e-9,
               table: RecursionTable | None = None) -> bool:
    """Check the two-step form of the recursion against a one-step table.

    ``table`` defaults to the freshly computed one; passing a tampered table
    exercises the detection path.
    """
    if table is None:
        table = recursion_table(pair, x)
    Phi, Psi = phi_psi_jets(pair, x, MAX_ORDER - 2)
    phi, psi = table.phi, table.psi
    for i in range(0, 5):
        d1, d2 = phi[i].derivative(), phi[i].derivative(2)
        p1, p2 = psi[i].derivative(), psi[i].derivative(2)
        lhs_phi = d2 + 2 * d1 * Phi + phi[i] * phi[3] + 2 * p1 + psi[i] * Phi
        lhs_psi = 2 * d1 * Psi + phi[i] * psi[3] + p2 + psi[i] * Psi
        for got, want in ((lhs_phi, phi[i + 2]), (lhs_psi, psi[i + 2])):
            scale = max(1.0, abs(want.value))
            if abs(got.value - want.value) > tol * scale:
                return False
    return True


# incomplete Bell polynomials with odd arguments zero ----------------------

BELL_CLOSED_FORMS = {
    (2, 1): lambda x: x[2],
    (4, 1): lambda x: x[4],
    (4, 2): lambda x: 3 * x[2] ** 2,
    (6, 1): lambda x: x[6],
    (6, 2): lambda x: 15 * x[2] * x[4],
    (6, 3): lambda x: 15 * x[2] ** 3,
    (8, 1): lambda x: x[8],
    (8, 2): lambda x: 28 * x[2] * x[6] + 35 * x[4] ** 2,
    (8, 3): lambda x: 210 * x[2] ** 2 * x[4],
    (8, 4): lambda x: 105 * x[2] ** 4,
}


def bell_table(N: int, k: int):
    """Evaluator for ``B_{N,k}`` on arguments whose odd coordinates vanish.

    The evaluator takes a mapping or sequence indexed from 1: ``x[2]`` is
    the second coordinate.  Pass a dict, or a sequence with a dummy entry
    at index 0.  Combinations that vanish identically return 0.
    """
    if N not in (2, 4, 6, 8) or not 1 <= k <= N:
        raise UnsupportedIndex(f"B_{{{N},{k}}} is not tabulated")
    if k > N // 2:
        return lambda x: 0.0
    return BELL_CLOSED_FORMS[(N, k)]


def bell_recursive(N: int, k: int, x) -> float:
    """Same evaluation from the recursive definition (1-indexed ``x``)."""
    xs = [x[j] if j in x else 0.0 for j in range(1, N + 1)] if isinstance(x, dict) \
        else list(x[1 : N + 1])
    return bell_polynomial(N, k, xs)


# closed forms ---------------------------------------------------------------


def _moments_of(m) -> MomentVector:
    mv = m if isinstance(m, MomentVector) else moments(m)
    if not is_symmetric(mv):
        raise AsymmetricMeasure("the diagonal formulas need a measure symmetric about 1/2")
    return mv


def diagonal_derivatives(pair: GeneratorPair, m: Measure | MomentVector, x: float) -> DiagonalDerivatives:
    """Even-order derivatives of ``m_x`` at 0 from the recursion table."""
    mv = _moments_of(m)
    mu2, mu4, mu6, mu8 = (mv.mu(k) for k in (2, 4, 6, 8))
    phi, psi = recursion_table(pair, x).values()
    p2, p3, p4, p6, p8 = phi[2], phi[3], phi[4], phi[6], phi[8]
    s2, s3, s4, s6 = psi[2], psi[3], psi[4], psi[6]

    d2 = mu2 * p2
    d4 = mu4 * p4 - 3 * mu2 ** 2 * (p2 ** 3 + 2 * s2 * p2)
    d6 = (mu6 * p6
          - 15 * mu4 * mu2 * (p4 * (p2 ** 2 + s2) + p2 * s4)
          - 15 * mu2 ** 3 * p2 * (p3 * p2 ** 2 - 3 * (p2 ** 2 + s2) * (p2 ** 2 + 2 * s2)))
    d8 = (mu8 * p8
          - 28 * mu6 * mu2 * (p6 * (p2 ** 2 + s2) + p2 * s6)
          - 35 * mu4 ** 2 * (p4 ** 2 * p2 + 2 * p4 * s4)
          + 210 * mu4 * mu2 ** 2 * (p4 * (3 * p2 ** 4 + p2 ** 2 * (7 * s2 - p3) + 2 * s2 ** 2)
                                    + 2 * p2 * s4 * (p2 ** 2 + 2 * s2))
          - 105 * mu2 ** 4 * (p4 * p2 ** 4 + 15 * p2 ** 7
                              + 2 * p2 ** 3 * (5 * p2 ** 2 + 6 * s2) * (6 * s2 - p3)
                              + 4 * p2 * (6 * s2 ** 3 - p2 ** 3 * s3)))
    return DiagonalDerivatives(float(d2), float(d4), float(d6), float(d8))


# oracle -----------------------------------------------------------------


def _det(a, b) -> float:
    """Determinant of the 2x2 matrix with columns ``a`` and ``b``."""
    return a[0] * b[1] - a[1] * b[0]


def implicit_series_oracle(pair: GeneratorPair, m: Measure | MomentVector, x: float) -> DiagonalDerivatives:
    """Derivatives of ``m_x`` at 0 by differentiating the implicit equation.

    With ``F = (f, g)`` the mean solves
    ``int det[F(x + (t - 1/2) u), F(m_x(u))] dmu(t) = 0``.  Differentiating
    ``n`` times at ``u = 0`` gives
    ``sum_i C(n, i) mu_i det[F^(i)(x), (F o m_x)^(n-i)(0)] = 0``, where the
    only term containing ``m_x^(n)(0)`` is ``det[F(x), F'(x)] m_x^(n)(0)``.
    All orders 1..8 are solved in sequence; odd ones come out as zero.
    """
    mv = _moments_of(m)
    _check_order(pair, MAX_ORDER)
    fj, gj = pair.jets(x)
    df, dg = fj.derivatives(), gj.derivatives()
    F = [(df[k], dg[k]) for k in range(MAX_ORDER + 1)]
    mu = mv.central
    md = [x] + [0.0] * MAX_ORDER  # derivatives of m_x at 0

    def composed(N: int, skip_linear: bool = False):
        """``(F o m_x)^(N)(0)`` as an (f, g) pair, optionally without the
        ``k = 1`` term of Faa di Bruno."""
        if N == 0:
            return F[0]
        out = [0.0, 0.0]
        for k in range(2 if skip_linear else 1, N + 1):
            b = bell_polynomial(N, k, md[1 : N + 1])
            out[0] += F[k][0] * b
            out[1] += F[k][1] * b
        return out

    base = _det(F[0], F[1])  # = -W^{1,0}(x)
    for n in range(1, MAX_ORDER + 1):
        rest = _det(F[0], composed(n, skip_linear=True))
        for i in range(1, n + 1):
            rest += math.comb(n, i) * mu[i] * _det(F[i], composed(n - i))
        md[n] = -rest / base
    return DiagonalDerivatives(md[2], md[4], md[6], md[8])


# finite differences -----------------------------------------------------


def slice_value(pair: GeneratorPair, m: Measure, x: float, u: float) -> float:
    return eval_generalized(pair, m, x + 0.5 * u, x - 0.5 * u)


def _richardson(values, ratio: float = 2.0, power: int = 2) -> float:
    """Extrapolate estimates ``values[j]`` at steps ``h / ratio**j`` whose
    error expands in even powers of ``h``."""
    table = list(values)
    p = power
    while len(table) > 1:
        f = ratio ** p
        table = [(f * table[j + 1] - table[j]) / (f - 1) for j in range(len(table) - 1)]
        p += 2
    return table[0]


def finite_difference_check(pair: GeneratorPair, m: Measure, x: float,
                            orders=(2, 4), step: float | None = None,
                            levels: int = 3) -> dict[int, float]:
    """Absolute residuals between Richardson-extrapolated central differences
    of the root-found slice and the closed-form derivatives.

    The slice is even, so the stencils fold onto ``u >= 0`` and use
    ``m_x(0) = x`` exactly.  Orders 6 and 8 are out of reach in double
    precision and are not offered.
    """
    if any(o not in (2, 4) for o in orders):
        raise UnsupportedIndex("finite differences are provided for orders 2 and 4 only")
    if x not in pair.domain:
        raise OutOfDomain(f"{x} is outside {pair.domain}")
    if step is None:
        # large enough that rounding in the root-found slice (amplified by
        # h^-4) stays below the Richardson-reduced truncation error
        step = 0.2 * min(x - pair.domain.lo, pair.domain.hi - x)
    h0 = step
    reach = 2 * h0 if 4 in orders else h0
    if not (x - 0.5 * reach in pair.domain and x + 0.5 * reach in pair.domain):
        raise StencilOutOfDomain(f"stencil of half-width {0.5 * reach} leaves {pair.domain}")
    closed = diagonal_derivatives(pair, m, x)
    cache: dict[float, float] = {}

    def s(u):
        if u not in cache:
            cache[u] = slice_value(pair, m, x, u)
        return cache[u]

    steps = [h0 / 2 ** j for j in range(levels)]
    out = {}
    if 2 in orders:
        est = [2.0 * (s(h) - x) / h ** 2 for h in steps]
        out[2] = abs(_richardson(est) - closed.d2)
    if 4 in orders:
        est = [(2.0 * s(2 * h) - 8.0 * s(h) + 6.0 * x) / h ** 4 for h in steps]
        out[4] = abs(_richardson(est) - closed.d4)
    return out
