import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gqmeans import expr as E
from gqmeans.errors import BracketFailure, DomainError, NonPositiveArgument, OutOfDomain
from gqmeans.generator import (
    GeneratorPair, Interval, TrigPair, equivalent_transform, power_pair, quasiarithmetic_pair,
    trig_pair,
)
from gqmeans.mean import (
    Bajraktarevic, Cauchy, Generalized, Gini, Power, Quasiarithmetic, Stolarsky,
    eval_bajraktarevic, eval_cauchy, eval_generalized, eval_gini, eval_power,
    eval_quasiarithmetic, eval_stolarsky, evaluate, solve_monotone, spec_from_json,
)
from gqmeans.measure import Measure, dirac, endpoints, lebesgue, mixture, mn_measure


# closed forms -------------------------------------------------------------


@pytest.mark.parametrize("a,x,y,want", [(2, 1, 7, 5), (0, 1, 4, 2), (-1, 2, 6, 3), (1, 2, 6, 4)])
def test_power(a, x, y, want):
    assert eval_power(a, x, y) == pytest.approx(want, rel=1e-15)


def test_power_extreme_exponent():
    assert eval_power(800.0, 2.0, 3.0) == pytest.approx(3.0 * 0.5 ** (1 / 800))
    assert eval_power(-800.0, 2.0, 3.0) == pytest.approx(2.0 * 0.5 ** (-1 / 800))


@pytest.mark.parametrize("fn", [eval_power, eval_gini, eval_stolarsky])
def test_nonpositive_arguments(fn):
    args = (1.0,) if fn is eval_power else (1.0, 0.0)
    with pytest.raises(NonPositiveArgument):
        fn(*args, -1.0, 2.0)
    with pytest.raises(NonPositiveArgument):
        fn(*args, 0.0, 2.0)


def test_gini():
    assert eval_gini(2, 1, 1, 3) == pytest.approx(2.5)
    assert eval_gini(2, 0, 1, 7) == pytest.approx(5.0)
    assert eval_gini(1, 1, 1, 2) == pytest.approx(2 ** (2 / 3), rel=1e-15)


def test_stolarsky():
    assert eval_stolarsky(2, 1, 2, 6) == pytest.approx(4.0, rel=1e-15)
    assert eval_stolarsky(1, 0, 1, math.e) == pytest.approx(math.e - 1, rel=1e-15)
    assert eval_stolarsky(3, -3, 1, 4) == pytest.approx(2.0, rel=1e-15)


def test_stolarsky_identric_branch():
    # S_{1,1}(x, y) = exp(-1) (x^x / y^y)^(1/(x-y))
    x, y = 2.0, 5.0
    want = math.exp(-1) * (x ** x / y ** y) ** (1 / (x - y))
    assert eval_stolarsky(1, 1, x, y) == pytest.approx(want, rel=1e-14)
    assert eval_stolarsky(0, 0, x, y) == pytest.approx(math.sqrt(x * y))
    assert eval_stolarsky(0, 2, x, y) == pytest.approx(eval_stolarsky(2, 0, x, y))
    assert eval_stolarsky(1.5, 0.5, 3.0, 3.0) == 3.0


@pytest.mark.parametrize("a", [-2.0, -0.5, 0.3, 1.0, 2.5])
def test_stolarsky_branch_continuity(a):
    for x, y in [(1.0, 2.0), (0.5, 4.0), (3.0, 3.5)]:
        assert abs(eval_stolarsky(a, a + 1e-9, x, y) - eval_stolarsky(a, a, x, y)) <= 1e-6
        assert abs(eval_stolarsky(a, 1e-13, x, y) - eval_stolarsky(a, 0.0, x, y)) <= 1e-6


def test_stolarsky_near_diagonal_accuracy():
    # logarithmic mean close to the diagonal, against its series
    x, y = 1.0 + 1e-9, 1.0
    assert eval_stolarsky(1, 0, x, y) == pytest.approx(1.0 + 0.5e-9, rel=1e-15)


# generator-based means ----------------------------------------------------


def test_quasiarithmetic():
    assert eval_quasiarithmetic(E.log(E.X), 4, 9) == pytest.approx(6.0, rel=1e-15)
    assert eval_quasiarithmetic(E.X, 4, 9) == pytest.approx(6.5, rel=1e-15)
    assert eval_quasiarithmetic(E.X * E.X, 1, 7, Interval(0, 100)) == pytest.approx(5.0, rel=1e-15)
    with pytest.raises(OutOfDomain):
        eval_quasiarithmetic(E.X, 4, 9, Interval(0, 5))


def test_generalized():
    arith = quasiarithmetic_pair(E.X, (0, 10))
    assert eval_generalized(arith, endpoints(), 2, 4) == pytest.approx(3.0, rel=1e-15)
    assert eval_generalized(arith, lebesgue(), 2, 4) == pytest.approx(3.0, rel=1e-15)
    gini = power_pair(2, 1, (0.5, 10))
    assert eval_generalized(gini, endpoints(), 1, 3) == pytest.approx(2.5, rel=1e-15)
    with pytest.raises(OutOfDomain):
        eval_generalized(gini, endpoints(), 0.1, 3)


def test_cauchy():
    cubes = GeneratorPair(E.pow_(E.X, 3.0), E.pow_(E.X, 2.0), Interval(0.1, 10))
    assert eval_cauchy(cubes, 1, 2) == pytest.approx(14 / 9, rel=1e-15)
    squares = GeneratorPair(E.X * E.X, E.X, Interval(0, 20))
    assert eval_cauchy(squares, 4, 9) == pytest.approx(6.5, rel=1e-15)
    assert eval_cauchy(squares, 3, 3) == 3.0


def test_bajraktarevic_hyperbolic():
    pair = trig_pair(TrigPair(1.0), (0, 4))
    want = math.atanh((math.sinh(1) + math.sinh(3)) / (math.cosh(1) + math.cosh(3)))
    assert eval_bajraktarevic(pair, 1, 3) == pytest.approx(2.0, rel=1e-15)
    assert want == pytest.approx(2.0)


def test_solve_monotone_failure():
    with pytest.raises(BracketFailure):
        solve_monotone(lambda z: z * z + 1, -1.0, 2.0)
    # a gap far beyond rounding of the target is still a failure
    with pytest.raises(BracketFailure):
        solve_monotone(lambda z: z - 2.0 * (1 + 1e-6), 1.0, 2.0, magnitude=2.0)


def test_generalized_adjacent_floats():
    # the quadrature ratio lands a few ulps outside [ratio(y), ratio(x)]
    pair = power_pair(2, 1, (0.2, 5))
    x, y = 4.5, 4.499999999999999
    z = eval_generalized(pair, lebesgue(), x, y)
    assert y <= z <= x


def test_spec_json():
    assert isinstance(spec_from_json({"family": "power", "a": 2}), Power)
    spec = spec_from_json({"family": "generalized", "measure": "lebesgue",
                           "pair": {"family": "power", "a": 2, "b": 1, "domain": [0.5, 5]}})
    assert evaluate(spec, 1, 3) == pytest.approx(eval_generalized(spec.pair, lebesgue(), 1, 3))
    spec = spec_from_json({"family": "cauchy", "f": ["mul", "x", "x"], "g": "x", "domain": [0, 10]})
    assert evaluate(spec, 4, 9) == pytest.approx(6.5)
    spec = spec_from_json({"family": "quasiarithmetic", "phi": ["log", "x"], "domain": [0.1, 10]})
    assert evaluate(spec, 4, 9) == pytest.approx(6.0)
    with pytest.raises(DomainError):
        spec_from_json({"family": "median"})
    with pytest.raises(DomainError):
        spec_from_json({"family": "gini", "a": 1})


# properties ---------------------------------------------------------------

positive = st.floats(0.05, 20.0)
param = st.floats(-4, 4, allow_nan=False)

GEN_PAIRS = [
    power_pair(2, 1, (0.2, 5)),
    power_pair(-1, 0.5, (0.2, 5)),
    quasiarithmetic_pair(E.log(E.X), (0.2, 5)),
    trig_pair(TrigPair(1.0, E.log(E.X)), (0.2, 5)),
]
SYMMETRIC = [endpoints(), lebesgue(), mn_measure(0.25, "two-atoms"),
             mixture([0.5, 0.25, 0.25], [lebesgue(), dirac(0.1), dirac(0.9)])]
ASYMMETRIC = Measure(((0.2, 0.3), (0.9, 0.7)))


def _closed_specs(a, b):
    return [Power(a), Gini(a, b), Stolarsky(a, b)]


@given(param, param, positive, positive)
def test_internality_and_symmetry_closed_forms(a, b, x, y):
    for spec in _closed_specs(a, b):
        m = evaluate(spec, x, y)
        lo, hi = min(x, y), max(x, y)
        assert lo * (1 - 1e-13) <= m <= hi * (1 + 1e-13)
        assert m == pytest.approx(evaluate(spec, y, x), rel=1e-12)
        assert evaluate(spec, x, x) == pytest.approx(x, rel=1e-13)


@given(st.sampled_from(GEN_PAIRS), st.sampled_from(SYMMETRIC + [ASYMMETRIC]),
       st.floats(0.25, 4.9), st.floats(0.25, 4.9))
def test_internality_generalized(pair, m, x, y):
    z = eval_generalized(pair, m, x, y)
    assert min(x, y) - 1e-13 <= z <= max(x, y) + 1e-13
    assert eval_generalized(pair, m, x, x) == x
    if m is not ASYMMETRIC:
        assert z == pytest.approx(eval_generalized(pair, m, y, x), rel=1e-12)


matrices = st.tuples(*[st.floats(-2, 2, allow_nan=False)] * 2)


@given(st.sampled_from(GEN_PAIRS), matrices, st.floats(0.5, 2.0), st.sampled_from(SYMMETRIC),
       st.floats(0.3, 4.5), st.floats(0.3, 4.5))
def test_equivalent_pairs_give_same_mean(pair, ab, d, m, x, y):
    # (a f + b g, c f + d g) with c = 0 keeps k = d g positive; a != 0 keeps it nonsingular
    a, b = ab
    if abs(a) < 0.1:
        a = 1.0
    other = equivalent_transform(pair, a, b, 0.0, d)
    assert eval_generalized(other, m, x, y) == pytest.approx(eval_generalized(pair, m, x, y),
                                                             abs=1e-11)


@given(st.floats(-3, 3), positive, positive)
def test_subclass_identities(a, x, y):
    p = eval_power(a, x, y)
    assert eval_gini(a, 0, x, y) == pytest.approx(p, rel=1e-12)
    assert eval_stolarsky(2 * a, a, x, y) == pytest.approx(p, rel=1e-12)
    assert eval_stolarsky(a, -a, x, y) == pytest.approx(eval_power(0, x, y), rel=1e-12)
    assert eval_gini(a, -a, x, y) == pytest.approx(eval_power(0, x, y), rel=1e-12)


def test_internality_bulk():
    rng = np.random.default_rng(7)
    xs, ys = rng.uniform(0.01, 100, 10_000), rng.uniform(0.01, 100, 10_000)
    ab = rng.uniform(-5, 5, (10_000, 2))
    for (a, b), x, y in zip(ab, xs, ys):
        lo, hi = min(x, y) * (1 - 1e-12), max(x, y) * (1 + 1e-12)
        assert lo <= eval_power(a, x, y) <= hi
        assert lo <= eval_gini(a, b, x, y) <= hi
        assert lo <= eval_stolarsky(a, b, x, y) <= hi


# values frozen from a 50-digit evaluation of the textbook formulas
@pytest.mark.parametrize("fn,args,want", [
    (eval_power, (1e-5, 1.0, 2.0), 1.414214411702310544),
    (eval_power, (-3e-9, 0.5, 40.0), 4.4721359227965825177),
    (eval_power, (60.0, 2.0, 3.0), 2.9655420610600326476),
    (eval_power, (-7.5, 0.01, 90.0), 0.010968249796946259835),
    (eval_gini, (1e-5, 0.0, 1.0, 2.0), 1.414214411702310544),
    (eval_gini, (2.5, 2.5000001, 0.02, 50.0), 49.999998748153147666),
    (eval_gini, (-4.0, 3.0, 0.3, 0.31), 0.30491807678431329266),
    (eval_gini, (1.0, 1.0, 1.0, 2.0), 1.5874010519681994748),
    (eval_stolarsky, (2e-5, 1e-5, 1.0, 2.0), 1.414214411702310544),
    (eval_stolarsky, (5.0, 5.000000001, 0.01, 100.0), 81.873075309435647516),
    (eval_stolarsky, (-2.0, 1e-7, 3.0, 4.0), 3.4403578909156141925),
    (eval_stolarsky, (1.0, 1.0, 2.0, 5.0), 3.3881986224445414938),
    (eval_stolarsky, (0.5, -0.25, 1.0, 1.000000001), 1.0000000005000000413),
])
def test_high_precision_values(fn, args, want):
    assert fn(*args) == pytest.approx(want, rel=1e-13)


def test_stolarsky_continuity_wide_arguments():
    for a in (-5.0, 5.0):
        for x, y in [(100.0, 0.01), (0.01, 100.0)]:
            assert abs(eval_stolarsky(a, a + 1e-9, x, y) - eval_stolarsky(a, a, x, y)) <= 1e-6
