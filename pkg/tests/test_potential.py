"""Equilibrium measure, capacity, Green function against closed forms.

Single segments and symmetric two-band sets have textbook values, which
pin down the solver; randomized sets then only need to satisfy the
structural identities (unit mass, flat potential, positive exterior
Green values).
"""

import math

import numpy as np
import pytest

from widomlab import intervals, potential


def eq_for(bands):
    return potential.equilibrium(intervals.normalize(bands))


def test_segment_capacity_quarter_length():
    # Cap([a, b]) = (b - a) / 4
    for a, b in [(-1.0, 1.0), (0.0, 1.0), (-3.5, 2.25)]:
        eq = eq_for([(a, b)])
        assert math.exp(potential.log_capacity(eq)) == pytest.approx(
            (b - a) / 4.0, rel=1e-13)


def test_segment_green_closed_form():
    # g(x) = log|x + sqrt(x^2 - 1)| outside [-1, 1]
    eq = eq_for([(-1.0, 1.0)])
    for x in (1.5, 2.0, 5.0, -3.0):
        expected = math.log(abs(x) + math.sqrt(x * x - 1.0))
        assert potential.green(eq, x) == pytest.approx(expected, rel=1e-11)


def test_segment_density_is_arcsine():
    eq = eq_for([(-1.0, 1.0)])
    xs = np.array([-0.9, -0.4, 0.0, 0.3, 0.8])
    rho = eq.density(xs)
    assert np.allclose(rho, 1.0 / (np.pi * np.sqrt(1.0 - xs ** 2)), rtol=1e-11)


def test_symmetric_two_band_capacity():
    # Cap(±[delta, 1]) = sqrt(1 - delta^2) / 2
    for delta in (0.2, 0.5, 0.8):
        eq = eq_for([(-1.0, -delta), (delta, 1.0)])
        assert math.exp(potential.log_capacity(eq)) == pytest.approx(
            math.sqrt(1.0 - delta * delta) / 2.0, rel=1e-12)


def test_symmetric_two_band_structure():
    eq = eq_for([(-1.0, -0.4), (0.4, 1.0)])
    assert eq.gap_roots == pytest.approx((0.0,), abs=1e-13)
    assert eq.band_masses == pytest.approx((0.5, 0.5), abs=1e-13)


def test_masses_sum_to_one_and_frostman_flat():
    rng = np.random.default_rng(7)
    for _ in range(6):
        cuts = np.sort(rng.uniform(-1.0, 1.0, size=6))
        while np.min(np.diff(cuts)) < 0.05:
            cuts = np.sort(rng.uniform(-1.0, 1.0, size=6))
        eq = eq_for(list(zip(cuts[0::2], cuts[1::2])))
        assert sum(eq.band_masses) == pytest.approx(1.0, abs=1e-12)
        assert abs(eq.mass_residual) < 1e-10
        assert abs(eq.frostman_residual) < 1e-9


def test_green_zero_on_set_positive_outside():
    eq = eq_for([(-1.0, -0.3), (0.2, 1.0)])
    for x in (-1.0, -0.5, 0.7, 1.0):
        assert potential.green(eq, x) == pytest.approx(0.0, abs=1e-10)
    for x in (-0.1, 0.1, 1.3, -2.0):
        assert potential.green(eq, x) > 1e-4


def test_green_increases_away_from_the_set():
    eq = eq_for([(-1.0, 1.0)])
    vals = [potential.green(eq, x) for x in (1.1, 1.5, 2.5, 4.0)]
    assert all(a < b for a, b in zip(vals, vals[1:]))


def test_pw_data_collects_gap_critical_values():
    eq = eq_for([(-1.0, -0.5), (-0.2, 0.3), (0.8, 1.0)])
    pw = potential.pw_data(eq)
    assert len(pw.points) == 2
    assert pw.total == pytest.approx(sum(pw.values), rel=1e-15)
    for p, v in zip(pw.points, pw.values):
        assert potential.green(eq, p) == pytest.approx(v, rel=1e-13)
        # interior maximum of g on the gap
        assert v >= potential.green(eq, p - 1e-4) - 1e-12
        assert v >= potential.green(eq, p + 1e-4) - 1e-12


def test_capacity_monotone_under_inclusion():
    big = eq_for([(-1.0, 1.0)])
    small = eq_for([(-1.0, -0.2), (0.3, 1.0)])
    assert potential.log_capacity(small) < potential.log_capacity(big)


def test_affine_covariance_of_capacity():
    K = intervals.normalize([(-1.0, -0.1), (0.4, 1.0)])
    M = intervals.affine_map(K, (-1.0, 1.0), (2.0, 8.0))  # half-width 3
    cap_k = math.exp(potential.log_capacity(potential.equilibrium(K)))
    cap_m = math.exp(potential.log_capacity(potential.equilibrium(M)))
    assert cap_m == pytest.approx(3.0 * cap_k, rel=1e-11)


def test_integrate_dmu_normalization():
    eq = eq_for([(-1.0, -0.3), (0.2, 1.0)])
    assert potential.integrate_dmu(eq, lambda x: np.ones_like(x)) == pytest.approx(
        1.0, abs=1e-12)
    # smooth exterior anchor: potential = log Cap + g there
    val = potential.integrate_dmu(eq, lambda x: np.log(np.abs(2.0 - x)))
    expected = potential.log_capacity(eq) + potential.green(eq, 2.0)
    assert val == pytest.approx(expected, abs=1e-11)
