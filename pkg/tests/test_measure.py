import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gqmeans.errors import DomainError, InvalidMeasure, InvalidTau, ParamsOutsidePi
from gqmeans.measure import (
    Measure, PiParams, central_from_raw, dirac, endpoints, is_symmetric, lebesgue,
    mixture, mn_measure, modified_power, moments, pi_moments, raw_from_central,
    segment_integral, uniform,
)


def test_endpoint_moments():
    mv = moments(endpoints())
    assert mv.mean == 0.5
    assert [mv.mu(k) for k in (2, 4, 6, 8)] == pytest.approx([1 / 4, 1 / 16, 1 / 64, 1 / 256], abs=1e-16)
    assert [mv.mu(k) for k in (1, 3, 5, 7)] == pytest.approx([0, 0, 0, 0], abs=1e-16)


def test_lebesgue_moments():
    mv = moments(lebesgue())
    assert [mv.mu(k) for k in (2, 4, 6, 8)] == pytest.approx([1 / 12, 1 / 80, 1 / 448, 1 / 2304], abs=1e-16)


def test_dirac_at_mean_has_no_spread():
    mv = moments(dirac(0.5))
    assert np.allclose(mv.central[1:], 0.0)


def test_truncated_uniform_second_moment():
    m = mn_measure(0.25, "truncated-uniform")
    assert m.density[0].poly == (2.0,)
    assert moments(m).mu(2) == pytest.approx(1 / 48, abs=1e-16)


def test_mn_measure_at_zero():
    assert mn_measure(0.0, "two-atoms") == endpoints()
    assert moments(mn_measure(0.0, "truncated-uniform")).raw == pytest.approx(moments(lebesgue()).raw)


@pytest.mark.parametrize("tau", [-0.1, 0.5, 0.7])
def test_invalid_tau(tau):
    with pytest.raises(InvalidTau):
        mn_measure(tau, "two-atoms")


def test_invalid_kind():
    with pytest.raises(InvalidTau):
        mn_measure(0.1, "three-atoms")


@pytest.mark.parametrize("m,expected", [
    (Measure(((0.2, 0.5), (0.8, 0.5))), True),
    (dirac(0.3), False),
    (mixture([0.5, 0.25, 0.25], [lebesgue(), dirac(0.1), dirac(0.9)]), True),
    (Measure(((0.2, 0.25), (0.8, 0.75))), False),
    (Measure((), ((0.0, 1.0, (0.0, 2.0)),)), False),
])
def test_is_symmetric(m, expected):
    assert is_symmetric(m) is expected


def test_symmetric_mixture_third_moment():
    m = mixture([0.5, 0.25, 0.25], [lebesgue(), dirac(0.1), dirac(0.9)])
    assert moments(m).mu(3) == pytest.approx(0.0, abs=1e-16)


def test_pi_moments_anchor_points():
    mv = pi_moments(PiParams(1 / 16, 2))
    assert [mv.mu(k) for k in (2, 4, 6, 8)] == pytest.approx([1 / 4, 1 / 16, 1 / 64, 1 / 256])
    mv = pi_moments(PiParams(1 / 16, 2 / 3))
    assert [mv.mu(k) for k in (2, 4, 6, 8)] == pytest.approx([1 / 12, 1 / 80, 1 / 448, 1 / 2304])
    mv = pi_moments(PiParams(1 / 64, 2))
    assert mv.mu(2) == pytest.approx(1 / 16)
    assert mv.raw == pytest.approx(moments(Measure(((0.25, 0.5), (0.75, 0.5)))).raw, abs=1e-15)


@pytest.mark.parametrize("ell,p", [(0.0, 1.0), (0.1, 1.0), (0.05, 2.5), (0.05, -1.0)])
def test_params_outside_pi(ell, p):
    with pytest.raises(ParamsOutsidePi):
        PiParams(ell, p)


def test_modified_power():
    assert modified_power(2.0, 0) == 1.0
    assert modified_power(2.0, 3) == pytest.approx(2 * (2 / 3) * (2 / 5))


@pytest.mark.parametrize("kwargs,msg", [
    (dict(atoms=((0.5, 0.9),)), "mass"),
    (dict(atoms=((1.5, 1.0),)), "outside"),
    (dict(atoms=((0.5, 0.5), (0.5, 0.5))), "distinct"),
    (dict(atoms=((0.5, -1.0), (0.2, 2.0))), "positive"),
    (dict(density=((0.0, 1.0, (2.0, -2.0 * 1.5)),)), "negative"),
    (dict(density=((0.5, 1.5, (1.0,)),)), "inside"),
])
def test_invalid_measures(kwargs, msg):
    with pytest.raises(InvalidMeasure, match=msg):
        Measure(**kwargs)


def test_json_round_trip():
    m = mixture([0.5, 0.5], [uniform(0.2, 0.6), dirac(0.9)])
    assert Measure.from_json(m.to_json()) == m


def test_malformed_json():
    with pytest.raises(InvalidMeasure):
        Measure.from_json({"atoms": [{"t": 0.5}]})


@pytest.mark.parametrize("m", [endpoints(), lebesgue()])
def test_segment_integral_of_identity(m):
    assert segment_integral(m, lambda z: z, 2.0, 4.0) == pytest.approx(3.0, abs=1e-14)


def test_segment_integral_of_exp():
    assert segment_integral(lebesgue(), np.exp, 0.0, 1.0) == pytest.approx(math.e - 1, abs=1e-13)


def test_segment_integral_vector_integrand():
    got = segment_integral(lebesgue(), lambda z: np.stack([z, z * z]), 0.0, 3.0)
    assert got == pytest.approx([1.5, 3.0])


def test_segment_integral_leaves_domain():
    from gqmeans.generator import Interval
    with pytest.raises(DomainError):
        segment_integral(lebesgue(), np.log, 0.5, 3.0, domain=Interval(0.1, 2.0))


# properties -----------------------------------------------------------------

positions = st.floats(0.0, 1.0, allow_nan=False)


@st.composite
def measures(draw):
    parts = []
    for _ in range(draw(st.integers(1, 4))):
        kind = draw(st.integers(0, 2))
        if kind == 0:
            parts.append(dirac(draw(positions)))
        elif kind == 1:
            lo = draw(st.floats(0.0, 0.9))
            hi = draw(st.floats(lo + 0.05, 1.0))
            parts.append(uniform(lo, hi))
        else:
            # density 2t or 2(1 - t)
            poly = (0.0, 2.0) if draw(st.booleans()) else (2.0, -2.0)
            parts.append(Measure((), ((0.0, 1.0, poly),)))
    w = np.array(draw(st.lists(st.floats(0.1, 1.0), min_size=len(parts), max_size=len(parts))))
    w = w / w.sum()
    w[-1] = 1.0 - w[:-1].sum()
    return mixture(list(w), parts)


@given(measures())
def test_normalization(m):
    assert segment_integral(m, np.ones_like, 0.3, 2.0) == pytest.approx(1.0, abs=1e-12)


@given(measures())
def test_raw_central_consistency(m):
    mv = moments(m)
    assert np.allclose(raw_from_central(mv.central, mv.mean), mv.raw, atol=1e-13)
    assert np.allclose(central_from_raw(mv.raw), mv.central, atol=1e-13)
    assert mv.central[0] == 1.0 and mv.central[1] == 0.0
    assert all(mv.central[k] >= -1e-15 for k in (2, 4, 6, 8))


@given(measures())
def test_symmetrized_measures(m):
    mirror = Measure(tuple((1.0 - t, w) for t, w in m.atoms) or (),
                     tuple((1.0 - p.hi, 1.0 - p.lo,
                            tuple(np.polynomial.Polynomial(p.poly)(np.polynomial.Polynomial([1.0, -1.0])).coef))
                           for p in m.density))
    sym = mixture([0.5, 0.5], [m, mirror])
    mv = moments(sym)
    assert is_symmetric(mv)
    assert mv.mu(2) ** 2 <= mv.mu(4) + 1e-15


@given(st.floats(0.0, 0.45))
def test_mn_measures_match_pi(tau):
    ell = ((1 - 2 * tau) / 4) ** 2
    assert np.allclose(moments(mn_measure(tau, "two-atoms")).raw, pi_moments(PiParams(ell, 2)).raw, atol=1e-13)
    assert np.allclose(moments(mn_measure(tau, "truncated-uniform")).raw,
                       pi_moments(PiParams(ell, 2 / 3)).raw, atol=1e-13)
