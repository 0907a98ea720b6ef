"""
Evaluation of two-variable means.

Closed forms for the power, Gini and Stolarsky families; generator-based
forms for the quasiarithmetic, Bajraktarevic and Cauchy means; and the
root-finding evaluator for the generalized quasiarithmetic mean
``M_{f,g;mu}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq

from . import expr as E
from .errors import BracketFailure, DomainError, NonPositiveArgument, OutOfDomain
from .generator import GeneratorPair, Interval, pair_from_json
from .measure import Measure, endpoints, lebesgue, segment_integral

BRANCH_TOL = 1e-12
XTOL = 1e-15
# relative amount by which a rounded target may leave the endpoint range
# before the bracket is declared broken
BRACKET_SLACK = 1e-9
LOG2 = math.log(2.0)

__all__ = [
    "Power", "Gini", "Stolarsky", "Quasiarithmetic", "Bajraktarevic",
    "Cauchy", "Generalized", "MeanSpec", "evaluate", "spec_from_json",
    "eval_power", "eval_gini", "eval_stolarsky", "eval_quasiarithmetic",
    "eval_generalized", "eval_bajraktarevic", "eval_cauchy", "solve_monotone",
]


def _positive(x, y):
    if not (x > 0 and y > 0):
        raise NonPositiveArgument(f"arguments must be positive, got ({x}, {y})")


def _log_mid_exp(z: float) -> float:
    """``L(z) = log((1 + e^z) / 2)`` with full relative accuracy near 0."""
    if z > 30.0:
        return z - LOG2 + math.log1p(math.exp(-z))
    if z < -30.0:
        return -LOG2 + math.log1p(math.exp(z))
    return math.log1p(0.5 * math.expm1(z))


def _logistic(z: float) -> float:
    """``L'(z)``."""
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-z))
    e = math.exp(z)
    return e / (1.0 + e)


def _log_rel_expm1(z: float) -> float:
    """``R(z) = log(expm1(z) / z)``, accurate for small ``|z|``.

    Written as ``z/2 + log(sinh(w)/w)`` with ``w = z/2``; the second term
    uses its Taylor series when ``|w| < 0.1``.
    """
    w = 0.5 * z
    if abs(w) < 0.1:
        w2 = w * w
        tail = w2 * (1 / 6 - w2 * (1 / 180 - w2 * (1 / 2835 - w2 * (1 / 37800 - w2 / 467775))))
        return w + tail
    if z > 0:
        return z + math.log1p(-math.exp(-z)) - math.log(z)
    return math.log(-math.expm1(z)) - math.log(-z)


def _d_log_rel_expm1(z: float) -> float:
    """``R'(z) = 1/2 + (coth(z/2) - 2/z)/2``."""
    w = 0.5 * z
    if abs(w) < 0.1:
        w2 = w * w
        lang = w * (1 / 3 - w2 * (1 / 45 - w2 * (2 / 945 - w2 * (1 / 4725 - w2 * 2 / 93555))))
    else:
        lang = 1.0 / math.tanh(w) - 1.0 / w
    return 0.5 + 0.5 * lang


_DD_NODES, _DD_WEIGHTS = np.polynomial.legendre.leggauss(6)
# below this width the difference quotient is replaced by the mean of the
# derivative, which avoids cancellation between nearly equal values
DD_SWITCH = 0.1


def _divided_difference(F, dF, u: float, v: float) -> float:
    """``(F(u) - F(v)) / (u - v)``, continuous across ``u = v``."""
    h = u - v
    if h == 0.0:
        return dF(u)
    if abs(h) <= DD_SWITCH:
        mid = 0.5 * (u + v)
        return 0.5 * sum(w * dF(mid + 0.5 * h * t) for t, w in zip(_DD_NODES, _DD_WEIGHTS))
    return (F(u) - F(v)) / h


def eval_power(a: float, x: float, y: float) -> float:
    """``((x^a + y^a)/2)^(1/a)``.  Small ``|a|``, overflow and underflow go
    through ``y exp(L(a d)/a)`` with ``d = log(x/y)`` and
    ``L(z) = log((1 + e^z)/2)``."""
    _positive(x, y)
    if x == y:
        return float(x)
    if abs(a) < BRANCH_TOL:
        return math.sqrt(x * y)
    if abs(a) >= 0.5:
        # the 1/a root at most doubles the relative rounding of the sum
        try:
            s = 0.5 * (x ** a + y ** a)
            if 0.0 < s < math.inf:
                v = s ** (1.0 / a)
                if 0.0 < v < math.inf:
                    return v
        except OverflowError:
            pass
    ly = math.log(y)
    d = math.log(x) - ly
    return math.exp(ly + _log_mid_exp(a * d) / a)


def eval_gini(a: float, b: float, x: float, y: float) -> float:
    """``((x^a + y^a)/(x^b + y^b))^(1/(a-b))``, and
    ``exp((x^a log x + y^a log y)/(x^a + y^a))`` when ``a = b``.

    With ``d = log(x/y)`` the logarithm of the mean is
    ``log y + d (L(a d) - L(b d)) / (a d - b d)``; the diagonal branch is
    the limit ``log y + d L'(a d)``.
    """
    _positive(x, y)
    if x == y:
        return float(x)
    ly = math.log(y)
    d = math.log(x) - ly
    if abs(a - b) < BRANCH_TOL:
        return math.exp(ly + d * _logistic(a * d))
    return math.exp(ly + d * _divided_difference(_log_mid_exp, _logistic, a * d, b * d))


def eval_stolarsky(a: float, b: float, x: float, y: float) -> float:
    """Stolarsky (difference) mean, branches tested in the textbook order.

    With ``d = log(x/y)`` and ``R(z) = log(expm1(z)/z)`` every branch is
    ``log y + d (R(a d) - R(b d)) / (a d - b d)`` or one of its limits,
    which keeps full accuracy near the diagonal and near the singular
    parameter sets.
    """
    _positive(x, y)
    lx, ly = math.log(x), math.log(y)
    d = lx - ly
    same = abs(x - y) <= BRANCH_TOL * max(1.0, abs(x), abs(y))
    a0, b0 = abs(a) < BRANCH_TOL, abs(b) < BRANCH_TOL
    ab = abs(a - b) < BRANCH_TOL
    if not (a0 or b0 or ab or same):
        # (b (x^a - y^a) / (a (x^b - y^b)))^(1/(a-b))
        dd = _divided_difference(_log_rel_expm1, _d_log_rel_expm1, a * d, b * d)
        return math.exp(ly + d * dd)
    if ab and not (a0 or same):
        # exp(-1/a + (x^a log x - y^a log y)/(x^a - y^a))
        return math.exp(ly + d * _d_log_rel_expm1(a * d))
    if b0 and not (a0 or same):
        # ((x^a - y^a) / (a (log x - log y)))^(1/a)
        return math.exp(ly + d * _divided_difference(_log_rel_expm1, _d_log_rel_expm1, a * d, 0.0))
    if a0 and not (b0 or same):
        return math.exp(ly + d * _divided_difference(_log_rel_expm1, _d_log_rel_expm1, b * d, 0.0))
    if a0 and b0:
        return math.sqrt(x * y)
    return float(x)


def solve_monotone(fun, lo: float, hi: float, magnitude: float = 0.0) -> float:
    """Root of a monotone ``fun`` on ``[lo, hi]``.

    Brent's bisection/secant/inverse-quadratic hybrid keeps the bracket at
    every step.  If rounding pushes the target just outside the endpoint
    values, the nearer endpoint is returned; a larger violation means the
    function is not monotone with a sign change there.  ``magnitude`` is
    the size of the quantities whose difference ``fun`` returns; it sets
    the rounding allowance when ``fun(lo)`` and ``fun(hi)`` are themselves
    within rounding of each other.
    """
    if lo == hi:
        return lo
    flo, fhi = fun(lo), fun(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if not (math.isfinite(flo) and math.isfinite(fhi)):
        raise BracketFailure(f"non-finite values at the bracket [{lo}, {hi}]")
    if flo * fhi > 0:
        scale = max(abs(flo - fhi), 1e-300)
        near, fnear = (lo, flo) if abs(flo) <= abs(fhi) else (hi, fhi)
        noise = 64 * np.finfo(float).eps * max(magnitude, abs(flo), abs(fhi))
        if abs(fnear) <= BRACKET_SLACK * scale + noise:
            return near
        raise BracketFailure(f"no sign change on [{lo}, {hi}]: {flo!r}, {fhi!r}")
    return brentq(fun, lo, hi, xtol=XTOL, rtol=4 * np.finfo(float).eps, maxiter=200)


def _in_domain(domain: Interval | None, x, y):
    if domain is not None and not (x in domain and y in domain):
        raise OutOfDomain(f"({x}, {y}) is outside {domain}")


def eval_quasiarithmetic(phi, x: float, y: float, domain: Interval | None = None) -> float:
    """``phi^{-1}((phi(x) + phi(y)) / 2)``."""
    _in_domain(domain, x, y)
    if x == y:
        return float(x)
    phi = E.parse(phi) if not callable(phi) else phi
    target = 0.5 * (float(phi(x)) + float(phi(y)))
    lo, hi = min(x, y), max(x, y)
    return solve_monotone(lambda z: float(phi(z)) - target, lo, hi, abs(target))


def eval_generalized(pair: GeneratorPair, m: Measure, x: float, y: float) -> float:
    """Generalized quasiarithmetic mean: solves
    ``f(z) G - g(z) F = 0`` with ``F, G`` the ``m``-integrals of ``f, g``
    along ``t x + (1-t) y``."""
    _in_domain(pair.domain, x, y)
    if x == y:
        return float(x)
    F, G = segment_integral(m, pair.both, x, y)
    lo, hi = min(x, y), max(x, y)
    ratio = pair.ratio
    target = F / G
    return solve_monotone(lambda z: float(ratio(z)) - target, lo, hi, abs(target))


def eval_bajraktarevic(pair: GeneratorPair, x: float, y: float) -> float:
    return eval_generalized(pair, endpoints(), x, y)


def eval_cauchy(pair: GeneratorPair, x: float, y: float) -> float:
    """Cauchy mean of the primitives ``(F, G) = (pair.f, pair.g)``:
    ``(F'/G')^{-1}((F(x) - F(y)) / (G(x) - G(y)))``."""
    _in_domain(pair.domain, x, y)
    if x == y:
        return float(x)
    F, G = pair.f, pair.g
    dF, dG = F.diff(), G.diff()
    q = (float(F(x)) - float(F(y))) / (float(G(x)) - float(G(y)))
    lo, hi = min(x, y), max(x, y)
    return solve_monotone(lambda z: float(dF(z)) / float(dG(z)) - q, lo, hi, abs(q))


# mean specifications ------------------------------------------------------


@dataclass(frozen=True)
class Power:
    a: float


@dataclass(frozen=True)
class Gini:
    a: float
    b: float


@dataclass(frozen=True)
class Stolarsky:
    a: float
    b: float


@dataclass(frozen=True)
class Quasiarithmetic:
    phi: E.Expr
    domain: Interval | None = None


@dataclass(frozen=True)
class Bajraktarevic:
    pair: GeneratorPair


@dataclass(frozen=True)
class Cauchy:
    """``pair`` holds the primitives ``(F, G)`` of the definition."""

    pair: GeneratorPair


@dataclass(frozen=True)
class Generalized:
    pair: GeneratorPair
    measure: Measure


MeanSpec = Power | Gini | Stolarsky | Quasiarithmetic | Bajraktarevic | Cauchy | Generalized


def evaluate(spec, x: float, y: float) -> float:
    if isinstance(spec, Power):
        return eval_power(spec.a, x, y)
    if isinstance(spec, Gini):
        return eval_gini(spec.a, spec.b, x, y)
    if isinstance(spec, Stolarsky):
        return eval_stolarsky(spec.a, spec.b, x, y)
    if isinstance(spec, Quasiarithmetic):
        return eval_quasiarithmetic(spec.phi, x, y, spec.domain)
    if isinstance(spec, Bajraktarevic):
        return eval_bajraktarevic(spec.pair, x, y)
    if isinstance(spec, Cauchy):
        return eval_cauchy(spec.pair, x, y)
    if isinstance(spec, Generalized):
        return eval_generalized(spec.pair, spec.measure, x, y)
    raise TypeError(f"not a mean specification: {spec!r}")


def spec_domain(spec) -> Interval | None:
    if isinstance(spec, Quasiarithmetic):
        return spec.domain
    if isinstance(spec, (Bajraktarevic, Cauchy, Generalized)):
        return spec.pair.domain
    return None


def _pair_without_validation(obj: dict) -> GeneratorPair:
    # Cauchy primitives need G' > 0, not G > 0
    domain = Interval(*obj["domain"])
    return GeneratorPair(E.parse(obj["f"]), E.parse(obj["g"]), domain, label="cauchy")


def spec_from_json(obj: dict):
    """Build a mean specification from its JSON form.

    ``{"family": "power", "a": 2}``, ``{"family": "gini", "a": 1, "b": 0}``,
    ``{"family": "quasiarithmetic", "phi": ["log", "x"], "domain": [0.1, 10]}``,
    ``{"family": "bajraktarevic", "pair": {...}}``,
    ``{"family": "cauchy", "f": F, "g": G, "domain": [...]}``,
    ``{"family": "generalized", "pair": {...}, "measure": {...}}``.
    ``measure`` may also be the string ``"endpoints"`` or ``"lebesgue"``.
    """
    try:
        family = obj["family"]
        if family == "power":
            return Power(float(obj["a"]))
        if family == "gini":
            return Gini(float(obj["a"]), float(obj["b"]))
        if family == "stolarsky":
            return Stolarsky(float(obj["a"]), float(obj["b"]))
        if family == "quasiarithmetic":
            dom = Interval(*obj["domain"]) if "domain" in obj else None
            return Quasiarithmetic(E.parse(obj["phi"]), dom)
        if family == "bajraktarevic":
            return Bajraktarevic(pair_from_json(obj["pair"]))
        if family == "cauchy":
            return Cauchy(_pair_without_validation(obj.get("pair", obj)))
        if family == "generalized":
            m = obj["measure"]
            if m == "endpoints":
                m = endpoints()
            elif m == "lebesgue":
                m = lebesgue()
            else:
                m = Measure.from_json(m)
            return Generalized(pair_from_json(obj["pair"]), m)
    except KeyError as exc:
        raise DomainError(f"mean JSON is missing {exc}") from None
    raise DomainError(f"unknown mean family {obj.get('family')!r}")
