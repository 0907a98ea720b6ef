"""
Borel probability measures on ``[0, 1]``.

A measure is a finite set of atoms plus an absolutely continuous part given
by polynomial densities on subintervals (pieces may overlap; densities add).
Moments are computed exactly from this representation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from numpy.polynomial import Polynomial

from .errors import DomainError, InvalidMeasure, InvalidTau, ParamsOutsidePi
from .quadrature import integrate

MASS_TOL = 1e-12
SYMMETRY_TOL = 1e-11
MAX_MOMENT = 8

__all__ = [
    "DensityPiece", "Measure", "MomentVector", "PiParams", "moments",
    "is_symmetric", "pi_moments", "modified_power", "mn_measure",
    "segment_integral", "dirac", "endpoints", "lebesgue", "uniform",
    "mixture", "raw_from_central", "central_from_raw",
]


@dataclass(frozen=True)
class DensityPiece:
    lo: float
    hi: float
    poly: tuple[float, ...]  # ascending powers of t

    def polynomial(self) -> Polynomial:
        return Polynomial(self.poly)

    def mass(self) -> float:
        P = self.polynomial().integ()
        return float(P(self.hi) - P(self.lo))


@dataclass(frozen=True)
class Measure:
    atoms: tuple[tuple[float, float], ...] = ()
    density: tuple[DensityPiece, ...] = ()

    def __post_init__(self):
        atoms = tuple((float(t), float(w)) for t, w in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        pieces = tuple(
            p if isinstance(p, DensityPiece)
            else DensityPiece(float(p[0]), float(p[1]), tuple(float(c) for c in p[2]))
            for p in self.density
        )
        object.__setattr__(self, "density", pieces)
        self._validate()

    def _validate(self):
        positions = [t for t, _ in self.atoms]
        for t, w in self.atoms:
            if not 0.0 <= t <= 1.0:
                raise InvalidMeasure(f"atom at {t} lies outside [0, 1]")
            if not w > 0.0:
                raise InvalidMeasure(f"atom weight {w} is not positive")
        if len(set(positions)) != len(positions):
            raise InvalidMeasure("atom positions must be pairwise distinct")
        for p in self.density:
            if not 0.0 <= p.lo < p.hi <= 1.0:
                raise InvalidMeasure(f"density piece [{p.lo}, {p.hi}] is not inside [0, 1]")
            # Chebyshev points of the piece, endpoints included
            k = np.arange(33)
            ts = 0.5 * (p.lo + p.hi) + 0.5 * (p.hi - p.lo) * np.cos(np.pi * k / 32)
            if np.min(p.polynomial()(ts)) < -1e-14:
                raise InvalidMeasure(f"density on [{p.lo}, {p.hi}] takes negative values")
        total = self.total_mass()
        if abs(total - 1.0) > MASS_TOL:
            raise InvalidMeasure(f"total mass is {total!r}, not 1")

    def total_mass(self) -> float:
        return sum(w for _, w in self.atoms) + sum(p.mass() for p in self.density)

    def to_json(self) -> dict:
        return {
            "atoms": [{"t": t, "w": w} for t, w in self.atoms],
            "density": [{"lo": p.lo, "hi": p.hi, "poly": list(p.poly)} for p in self.density],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "Measure":
        try:
            atoms = [(a["t"], a["w"]) for a in obj.get("atoms", [])]
            pieces = [(d["lo"], d["hi"], d["poly"]) for d in obj.get("density", [])]
        except (KeyError, TypeError) as exc:
            raise InvalidMeasure(f"malformed measure JSON: {exc}") from None
        return cls(tuple(atoms), tuple(pieces))


@dataclass(frozen=True)
class MomentVector:
    """Raw moments and moments centralized about the first raw moment."""

    raw: np.ndarray
    central: np.ndarray = field(repr=False)

    @property
    def mean(self) -> float:
        return float(self.raw[1])

    def mu(self, k: int) -> float:
        return float(self.central[k])

    def to_json(self) -> dict:
        return {"raw": [float(v) for v in self.raw], "central": [float(v) for v in self.central]}


@dataclass(frozen=True)
class PiParams:
    ell: float
    p: float

    def __post_init__(self):
        if not (self.ell > 0 and self.p > 0):
            raise ParamsOutsidePi(f"pi(ell, p) needs positive parameters, got {self}")
        # necessary bound only; the exact parameter set is not characterized
        if self.ell > 1 / 16 or self.p > 2:
            raise ParamsOutsidePi(f"{self} violates ell <= 1/16, p <= 2")


# constructors -------------------------------------------------------------


def dirac(t: float) -> Measure:
    return Measure(((t, 1.0),))


def endpoints() -> Measure:
    """The measure (delta_0 + delta_1)/2; it turns the generalized mean into
    the Bajraktarevic mean."""
    return Measure(((0.0, 0.5), (1.0, 0.5)))


def uniform(lo: float = 0.0, hi: float = 1.0) -> Measure:
    return Measure((), ((lo, hi, (1.0 / (hi - lo),)),))


def lebesgue() -> Measure:
    return uniform(0.0, 1.0)


def mixture(weights, measures) -> Measure:
    """Convex combination; atoms at equal positions are merged."""
    atoms: dict[float, float] = {}
    pieces = []
    for w, m in zip(weights, measures):
        if w == 0:
            continue
        for t, a in m.atoms:
            atoms[t] = atoms.get(t, 0.0) + w * a
        for p in m.density:
            pieces.append((p.lo, p.hi, tuple(w * c for c in p.poly)))
    return Measure(tuple(sorted(atoms.items())), tuple(pieces))


def mn_measure(tau: float, kind: str) -> Measure:
    """``(delta_tau + delta_{1-tau})/2`` or the normalized Lebesgue measure on
    ``[tau, 1-tau]``."""
    if not 0.0 <= tau < 0.5:
        raise InvalidTau(f"tau must lie in [0, 1/2), got {tau}")
    if kind == "two-atoms":
        return Measure(((tau, 0.5), (1.0 - tau, 0.5)))
    if kind == "truncated-uniform":
        return uniform(tau, 1.0 - tau)
    raise InvalidTau(f"unknown kind {kind!r}")


# moments ------------------------------------------------------------------


def _shifted_moments(m: Measure, center: float, max_k: int) -> np.ndarray:
    out = np.zeros(max_k + 1)
    for t, w in m.atoms:
        out += w * (t - center) ** np.arange(max_k + 1)
    shift = Polynomial([-center, 1.0])
    for p in m.density:
        P = p.polynomial()
        term = Polynomial([1.0])
        for k in range(max_k + 1):
            antider = (term * P).integ()
            out[k] += antider(p.hi) - antider(p.lo)
            term = term * shift
    return out


def moments(m: Measure, max_k: int = MAX_MOMENT) -> MomentVector:
    raw = _shifted_moments(m, 0.0, max_k)
    raw[0] = 1.0
    central = _shifted_moments(m, raw[1], max_k)
    central[0], central[1] = 1.0, 0.0
    return MomentVector(raw, central)


def raw_from_central(central, mean: float) -> np.ndarray:
    """Raw moments from central ones via the binomial expansion."""
    c = np.asarray(central, dtype=float)
    return np.array([
        sum(math.comb(k, i) * c[i] * mean ** (k - i) for i in range(k + 1))
        for k in range(len(c))
    ])


def central_from_raw(raw) -> np.ndarray:
    r = np.asarray(raw, dtype=float)
    mean = r[1]
    return np.array([
        sum(math.comb(k, i) * r[i] * (-mean) ** (k - i) for i in range(k + 1))
        for k in range(len(r))
    ])


def is_symmetric(m, tol: float = SYMMETRY_TOL) -> bool:
    """Symmetry about 1/2, detected from the first raw moment and the odd
    central moments up to order 7.  Accepts a measure or its moments."""
    mv = m if isinstance(m, MomentVector) else moments(m)
    if abs(mv.mean - 0.5) > tol:
        return False
    return all(abs(mv.central[k]) <= tol for k in (1, 3, 5, 7) if k < len(mv.central))


def modified_power(p: float, n: int) -> float:
    """``prod_{i<n} p / (1 + i p)``."""
    out = 1.0
    for i in range(n):
        out *= p / (1.0 + i * p)
    return out


def pi_moments(params: PiParams, max_k: int = MAX_MOMENT) -> MomentVector:
    """Moments of the symmetric measure pi(ell, p), defined through its even
    central moments ``(2n)!/n! * ell**n * p<n>``."""
    if not 0 <= max_k <= MAX_MOMENT:
        raise ValueError(f"max_k must lie in 0..{MAX_MOMENT}")
    central = np.zeros(max_k + 1)
    central[0] = 1.0
    for k in range(2, max_k + 1, 2):
        n = k // 2
        central[k] = (math.factorial(k) / math.factorial(n)
                      * params.ell ** n * modified_power(params.p, n))
    raw = raw_from_central(central, 0.5)
    return MomentVector(raw, central)


# integration along a segment ---------------------------------------------


def segment_integral(m: Measure, h, x: float, y: float, domain=None, tol: float = 1e-12):
    """``int h(t x + (1 - t) y) dm(t)``.

    ``h`` maps arrays to arrays (shape ``(n,)``, or ``(k, n)`` for several
    integrands at once).  ``domain`` is an optional open interval with
    ``lo``/``hi`` attributes that the segment must stay inside.
    """
    if domain is not None:
        lo, hi = min(x, y), max(x, y)
        if not (domain.lo < lo and hi < domain.hi):
            raise DomainError(f"segment [{lo}, {hi}] leaves {domain}")
    total = 0.0
    if m.atoms:
        ts = np.array([t for t, _ in m.atoms])
        ws = np.array([w for _, w in m.atoms])
        vals = np.asarray(h(ts * x + (1.0 - ts) * y), dtype=float)
        total = total + vals @ ws
    for p in m.density:
        P = p.polynomial()

        def integrand(ts, P=P):
            return np.asarray(h(ts * x + (1.0 - ts) * y), dtype=float) * P(ts)

        total = total + integrate(integrand, p.lo, p.hi, tol)
    return total
