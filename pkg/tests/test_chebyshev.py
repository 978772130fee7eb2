"""Weighted minimax solver against classical closed forms.

On [-1, 1] all four named weights have explicit extremal polynomials
(the four classical Chebyshev families after monic rescaling), so the
exchange iteration can be checked coefficient by coefficient.  Off the
segment the bound sandwich and the alternation structure carry the
verification load.
"""

import math

import numpy as np
import numpy.polynomial.chebyshev as ncheb
import pytest

from widomlab import chebyshev, intervals, potential

SEGMENT = intervals.normalize([(-1.0, 1.0)])
SEG_EQ = potential.equilibrium(SEGMENT)


def test_unit_weight_is_scaled_first_kind():
    for n in range(1, 9):
        ref_coeffs, level = chebyshev.kind_polynomial("first", n)
        assert level == pytest.approx(2.0 ** (1 - n), rel=1e-15)
        mono = ncheb.cheb2poly(ref_coeffs)
        assert mono[-1] == pytest.approx(1.0, rel=1e-14)
        sol = chebyshev.remez(SEGMENT, chebyshev.WeightSpec("unit"), n, eq=SEG_EQ)
        assert sol.level == pytest.approx(level, rel=1e-11)
        assert np.allclose(sol.coeffs, ref_coeffs, atol=1e-11)


@pytest.mark.parametrize("kind,family", [
    ("unit", "first"),
    ("sqrt_one_minus_sq", "second"),
    ("sqrt_one_plus", "third"),
    ("sqrt_one_minus", "fourth"),
])
def test_remez_recovers_each_family(kind, family):
    weight = chebyshev.WeightSpec(kind)
    for n in (1, 2, 5):
        ref_coeffs, level = chebyshev.kind_polynomial(family, n)
        sol = chebyshev.remez(SEGMENT, weight, n, eq=SEG_EQ)
        assert sol.level == pytest.approx(level, rel=1e-11)
        assert np.allclose(sol.coeffs, ref_coeffs, atol=1e-10)


def test_kind_polynomial_accepts_weight_kind_aliases():
    assert chebyshev.kind_polynomial("sqrt_one_plus", 3) \
        == chebyshev.kind_polynomial("third", 3)
    with pytest.raises(ValueError):
        chebyshev.kind_polynomial("fifth", 2)


def test_one_plus_degree_one_closed_form():
    # minimizer x - 1/2 at level sqrt(2)/2 with alternation {-1/2, 1}
    sol = chebyshev.remez(SEGMENT, chebyshev.WeightSpec("sqrt_one_plus"), 1, eq=SEG_EQ)
    mono = ncheb.cheb2poly(sol.coeffs)
    assert mono == pytest.approx([-0.5, 1.0], abs=1e-12)
    assert sol.level == pytest.approx(math.sqrt(2.0) / 2.0, rel=1e-13)
    assert sorted(sol.alternation) == pytest.approx([-0.5, 1.0], abs=1e-9)


def test_alternation_structure():
    K = intervals.normalize([(-1.0, -0.2), (0.1, 0.6), (0.7, 1.0)])
    eq = potential.equilibrium(K)
    weight = chebyshev.WeightSpec("sqrt_one_minus")
    for n in (2, 4, 7):
        sol = chebyshev.remez(K, weight, n, eq=eq)
        assert len(sol.alternation) == n + 1
        r = sol.weighted_error(np.array(sol.alternation))
        assert np.allclose(np.abs(r), sol.level, rtol=1e-9)
        assert np.all(np.abs(np.diff(np.sign(r))) == 2.0)
        assert sol.residual < 1e-7


def test_symmetric_two_band_even_degree_exact():
    # on K = ±[delta, 1] the degree-2 minimizer centers x^2 on its range
    delta = 0.6
    K = intervals.normalize([(-1.0, -delta), (delta, 1.0)])
    eq = potential.equilibrium(K)
    sol = chebyshev.remez(K, chebyshev.WeightSpec("unit"), 2, eq=eq)
    mono = ncheb.cheb2poly(sol.coeffs)
    assert mono == pytest.approx([-(1.0 + delta ** 2) / 2.0, 0.0, 1.0], abs=1e-12)
    assert sol.level == pytest.approx((1.0 - delta ** 2) / 2.0, rel=1e-12)
    # degree-2 saturation of the unit-weight floor
    assert chebyshev.widom_inf(sol, eq) == pytest.approx(2.0, rel=1e-11)


def test_widom_inf_floor_unit_weight():
    rng = np.random.default_rng(3)
    for _ in range(4):
        cuts = np.sort(rng.uniform(-1.0, 1.0, size=4))
        while np.min(np.diff(cuts)) < 0.1:
            cuts = np.sort(rng.uniform(-1.0, 1.0, size=4))
        K = intervals.normalize([(cuts[0], cuts[1]), (cuts[2], cuts[3])])
        eq = potential.equilibrium(K)
        for n in (1, 3, 5):
            sol = chebyshev.remez(K, chebyshev.WeightSpec("unit"), n, eq=eq)
            assert chebyshev.widom_inf(sol, eq) >= 2.0 - 1e-10


def test_sup_bounds_sandwich():
    K = intervals.normalize([(-1.0, -0.35), (0.05, 0.55), (0.72, 1.0)])
    eq = potential.equilibrium(K)
    for kind in ("sqrt_one_plus", "sqrt_one_minus"):
        weight = chebyshev.WeightSpec(kind)
        lower, upper = chebyshev.sup_bounds(eq, weight)
        assert 0.0 < lower < upper
        for n in (1, 2, 4, 6):
            sol = chebyshev.remez(K, weight, n, eq=eq)
            wi = chebyshev.widom_inf(sol, eq)
            assert lower - 1e-10 <= wi <= upper + 1e-10


def test_sup_bounds_equality_family():
    # K = [-1, b] attains the lower envelope at every degree
    K = intervals.normalize([(-1.0, 0.35)])
    eq = potential.equilibrium(K)
    weight = chebyshev.WeightSpec("sqrt_one_plus")
    lower, upper = chebyshev.sup_bounds(eq, weight)
    assert upper == pytest.approx(lower, rel=1e-12)
    sol = chebyshev.remez(K, weight, 5, eq=eq)
    assert chebyshev.widom_inf(sol, eq) == pytest.approx(lower, rel=1e-10)


def test_sup_bounds_rejects_other_weights():
    with pytest.raises(ValueError):
        chebyshev.sup_bounds(SEG_EQ, chebyshev.WeightSpec("unit"))
    with pytest.raises(ValueError):
        chebyshev.sup_bounds(SEG_EQ, chebyshev.WeightSpec("sqrt_one_minus_sq"))


def test_weight_frame_is_literal_for_sqrt_kinds():
    # sqrt(1+x) on a set away from -1 keeps the frame [-1, 1]
    K = intervals.normalize([(0.2, 0.8)])
    weight = chebyshev.WeightSpec("sqrt_one_plus")
    assert weight.resolve_hull(K) == (-1.0, 1.0)
    assert chebyshev.WeightSpec("unit").resolve_hull(K) == (0.2, 0.8)


def test_set_outside_weight_frame_rejected():
    K = intervals.normalize([(0.5, 1.5)])
    with pytest.raises(ValueError):
        chebyshev.remez(K, chebyshev.WeightSpec("sqrt_one_plus"), 2)


def test_enclosing_preimage_contains_the_set():
    K = intervals.normalize([(-1.0, -0.4), (0.1, 1.0)])
    eq = potential.equilibrium(K)
    sol = chebyshev.remez(K, chebyshev.WeightSpec("unit"), 4, eq=eq)
    enc = chebyshev.enclosing_preimage(sol)
    for a, b in K.bands:
        assert enc.set.contains(a, tol=1e-9) and enc.set.contains(b, tol=1e-9)
    # the enclosure has an exact capacity in terms of the level
    expected = (math.log(sol.level ** 2 / 4.0)) / (2.0 * sol.degree)
    assert enc.log_capacity == pytest.approx(expected, rel=1e-12)


def test_degree_zero_returns_weighted_sup():
    sol = chebyshev.remez(SEGMENT, chebyshev.WeightSpec("sqrt_one_plus"), 0, eq=SEG_EQ)
    assert sol.level == pytest.approx(math.sqrt(2.0), rel=1e-12)
