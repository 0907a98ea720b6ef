"""
Generator pairs ``(f, g)``: Wronskians, the second-order signature
``(Phi, Psi)``, builtin families and the linear equivalence of pairs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import expr as E
from .errors import (
    DegeneratePair, DomainError, OrderExceedsClass, OutOfDomain, SingularMatrix,
)
from .expr import Expr
from .jet import MAX_ORDER, Jet

VALIDATION_POINTS = 257
WRONSKIAN_FLOOR = 1e-10

__all__ = [
    "Interval", "GeneratorPair", "TrigPair", "wronskian", "wronskian_jet",
    "phi_psi_jets", "phi_psi", "builtin_pair", "power_pair", "log_power_pair",
    "trig_pair", "quasiarithmetic_pair", "cauchy_derived_pair",
    "equivalent_transform", "are_equivalent", "pair_from_json", "sine_cosine",
]


@dataclass(frozen=True)
class Interval:
    """A finite open interval."""

    lo: float
    hi: float

    def __post_init__(self):
        lo, hi = float(self.lo), float(self.hi)
        if not (math.isfinite(lo) and math.isfinite(hi) and lo < hi):
            raise DomainError(f"invalid interval ({lo}, {hi})")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def __contains__(self, x) -> bool:
        return self.lo < x < self.hi

    def chebyshev(self, n: int) -> np.ndarray:
        """Chebyshev points of the first kind; all strictly interior."""
        k = np.arange(n)
        nodes = np.cos(np.pi * (2 * k + 1) / (2 * n))[::-1]
        return self.midpoint + 0.5 * self.width * nodes

    def shrink(self, fraction: float) -> "Interval":
        """Centered sub-interval keeping ``1 - 2*fraction`` of the width."""
        d = fraction * self.width
        return Interval(self.lo + d, self.hi - d)

    def to_json(self):
        return [self.lo, self.hi]

    def __str__(self):
        return f"({self.lo:g}, {self.hi:g})"


@dataclass(frozen=True)
class GeneratorPair:
    f: Expr
    g: Expr
    domain: Interval
    class_order: int = MAX_ORDER
    label: str = ""

    def jets(self, x: float, order: int = MAX_ORDER) -> tuple[Jet, Jet]:
        if x not in self.domain:
            raise OutOfDomain(f"{x} is outside {self.domain}")
        t = Jet.variable(x, order)
        return self.f.jet(t), self.g.jet(t)

    def ratio(self, z):
        return self.f(z) / self.g(z)

    def both(self, z):
        """``f`` and ``g`` stacked; a vector integrand for quadrature."""
        return np.stack([np.broadcast_to(self.f(z), np.shape(z)),
                         np.broadcast_to(self.g(z), np.shape(z))])

    def w10(self, z):
        """``W^{1,0} = f' g - f g'`` evaluated on floats or arrays."""
        return self.f.diff()(z) * self.g(z) - self.f(z) * self.g.diff()(z)

    def validate(self, n: int = VALIDATION_POINTS) -> "GeneratorPair":
        """Sampled membership test: ``g > 0`` and ``|W^{1,0}| > 1e-10`` on
        ``n`` Chebyshev points.  Sampling cannot prove the open-interval
        statement; it only catches violations it happens to hit."""
        z = self.domain.chebyshev(n)
        g = np.asarray(self.g(z), dtype=float)
        if not np.all(np.isfinite(g)) or np.min(g) <= 0.0:
            raise DegeneratePair(f"g is not positive on {self.domain}")
        w = np.asarray(self.w10(z), dtype=float)
        if not np.all(np.isfinite(w)) or np.min(np.abs(w)) <= WRONSKIAN_FLOOR:
            raise DegeneratePair(f"f'g - fg' vanishes on {self.domain}")
        if np.min(w) < 0 < np.max(w):
            raise DegeneratePair(f"f'g - fg' changes sign on {self.domain}")
        return self

    def to_json(self) -> dict:
        return {"family": "custom", "f": self.f.to_json(), "g": self.g.to_json(),
                "domain": self.domain.to_json(), "class_order": self.class_order}


@dataclass(frozen=True)
class TrigPair:
    """``(S_a(phi), C_a(phi))``, optionally both scaled by ``phi'``."""

    a: float
    phi: Expr = E.X
    scale_by_phi_prime: bool = False


# Wronskians ---------------------------------------------------------------


def _check_order(pair: GeneratorPair, needed: int):
    if needed > pair.class_order:
        raise OrderExceedsClass(
            f"needs derivatives of order {needed}, pair is of class {pair.class_order}")


def wronskian_jet(fj: Jet, gj: Jet, i: int, j: int) -> Jet:
    """Jet of ``f^(i) g^(j) - g^(i) f^(j)`` from jets of ``f`` and ``g``."""
    fi, fjj = fj.derivative(i), fj.derivative(j)
    gi, gjj = gj.derivative(i), gj.derivative(j)
    return fi * gjj - gi * fjj


def wronskian(pair: GeneratorPair, i: int, j: int, x: float) -> float:
    _check_order(pair, max(i, j))
    fj, gj = pair.jets(x)
    df, dg = fj.derivatives(), gj.derivatives()
    return float(df[i] * dg[j] - dg[i] * df[j])


def phi_psi_jets(pair: GeneratorPair, x: float, order: int = MAX_ORDER - 2) -> tuple[Jet, Jet]:
    """Jets of ``Phi = W^{2,0}/W^{1,0}`` and ``Psi = -W^{2,1}/W^{1,0}`` at ``x``."""
    _check_order(pair, order + 2)
    fj, gj = pair.jets(x, order + 2)
    w10 = wronskian_jet(fj, gj, 1, 0)
    w20 = wronskian_jet(fj, gj, 2, 0)
    w21 = wronskian_jet(fj, gj, 2, 1)
    return w20 / w10, -(w21 / w10)


def phi_psi(pair: GeneratorPair, xs) -> tuple[np.ndarray, np.ndarray]:
    """Values of ``Phi`` and ``Psi`` on a grid."""
    out = [phi_psi_jets(pair, float(x), 0) for x in np.atleast_1d(xs)]
    return (np.array([p.value for p, _ in out]), np.array([q.value for _, q in out]))


# builtin families ---------------------------------------------------------


def _domain(domain) -> Interval:
    return domain if isinstance(domain, Interval) else Interval(*domain)


def power_pair(a: float, b: float, domain=(0.1, 10.0)) -> GeneratorPair:
    """``(x^a, x^b)``: its Bajraktarevic mean is the Gini mean G_{a,b}."""
    d = _domain(domain)
    if d.lo <= 0:
        raise DomainError("power pairs live on a subinterval of (0, inf)")
    if a == b:
        return log_power_pair(a, d)
    pair = GeneratorPair(E.pow_(E.X, a), E.pow_(E.X, b), d, label=f"power({a:g},{b:g})")
    return pair.validate()


def log_power_pair(a: float, domain=(0.1, 10.0)) -> GeneratorPair:
    """``(x^a log x, x^a)``, the Gini generators on the diagonal ``a = b``."""
    d = _domain(domain)
    if d.lo <= 0:
        raise DomainError("power pairs live on a subinterval of (0, inf)")
    xa = E.pow_(E.X, a)
    pair = GeneratorPair(xa * E.log(E.X), xa, d, label=f"log-power({a:g})")
    return pair.validate()


def sine_cosine(a: float, u: Expr) -> tuple[Expr, Expr]:
    """``S_a(u), C_a(u)``: the solutions of ``h'' = a h`` with ``S(0)=0,
    S'(0)=1`` up to scale, and ``C(0)=1, C'(0)=0``."""
    if a < 0:
        r = math.sqrt(-a)
        return E.sin(r * u), E.cos(r * u)
    if a == 0:
        return u, E.const(1.0)
    r = math.sqrt(a)
    return E.sinh(r * u), E.cosh(r * u)


def trig_pair(spec: TrigPair, domain) -> GeneratorPair:
    s, c = sine_cosine(spec.a, spec.phi)
    label = f"trig(a={spec.a:g})"
    if spec.scale_by_phi_prime:
        dphi = spec.phi.diff()
        s, c = dphi * s, dphi * c
        label += "*phi'"
    return GeneratorPair(s, c, _domain(domain), label=label).validate()


def quasiarithmetic_pair(phi: Expr, domain) -> GeneratorPair:
    """``(phi, 1)``: its Bajraktarevic mean is the quasiarithmetic mean."""
    return GeneratorPair(E.parse(phi), E.const(1.0), _domain(domain),
                         label="quasiarithmetic").validate()


def cauchy_derived_pair(F: Expr, G: Expr, domain) -> GeneratorPair:
    """``(F', G')``; under the Lebesgue measure its generalized mean is the
    Cauchy mean C_{F,G}."""
    F, G = E.parse(F), E.parse(G)
    return GeneratorPair(F.diff(), G.diff(), _domain(domain),
                         label="cauchy-derived").validate()


def builtin_pair(family: str, domain=None, **params) -> GeneratorPair:
    if family == "power":
        return power_pair(params["a"], params["b"], domain or (0.1, 10.0))
    if family == "log-power":
        return log_power_pair(params["a"], domain or (0.1, 10.0))
    if family == "trig":
        spec = params.get("spec") or TrigPair(
            params["a"], E.parse(params.get("phi", "x")), bool(params.get("scale", False)))
        return trig_pair(spec, domain)
    if family == "quasiarithmetic":
        return quasiarithmetic_pair(params["phi"], domain)
    if family == "cauchy-derived":
        return cauchy_derived_pair(params["f"], params["g"], domain)
    raise DomainError(f"unknown pair family {family!r}")


def pair_from_json(obj: dict) -> GeneratorPair:
    try:
        family = obj["family"]
        domain = Interval(*obj["domain"]) if "domain" in obj else None
        if family == "custom":
            return GeneratorPair(E.parse(obj["f"]), E.parse(obj["g"]), domain,
                                 int(obj.get("class_order", MAX_ORDER)), "custom").validate()
        params = {k: v for k, v in obj.items() if k not in ("family", "domain")}
        return builtin_pair(family, domain, **params)
    except KeyError as exc:
        raise DomainError(f"pair JSON is missing {exc}") from None
    except TypeError as exc:
        raise DomainError(f"malformed pair JSON: {exc}") from None


# equivalence --------------------------------------------------------------


def equivalent_transform(pair: GeneratorPair, a: float, b: float, c: float, d: float) -> GeneratorPair:
    """``(a f + b g, c f + d g)``.  Positivity of the new ``g`` is not
    checked here; call ``validate`` on the result."""
    if abs(a * d - b * c) < 1e-14:
        raise SingularMatrix(f"ad - bc = {a * d - b * c}")
    h = a * pair.f + b * pair.g
    k = c * pair.f + d * pair.g
    return GeneratorPair(h, k, pair.domain, pair.class_order, f"{pair.label}~")


def are_equivalent(p1: GeneratorPair, p2: GeneratorPair, grid, tol: float = 1e-9) -> bool:
    phi1, psi1 = phi_psi(p1, grid)
    phi2, psi2 = phi_psi(p2, grid)
    return bool(np.max(np.abs(phi1 - phi2)) <= tol and np.max(np.abs(psi1 - psi2)) <= tol)
