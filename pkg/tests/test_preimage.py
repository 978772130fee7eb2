"""Polynomial preimage sets: exact invariants, admissibility, saturation.

Every admissible spec yields exact rational reference values (capacity
power, minimax level, orthogonal norms), so this file pins the numeric
machinery against integer arithmetic.  The rejection and control cases
document which configurations genuinely fail and why.
"""

import math
from fractions import Fraction

import numpy as np
import numpy.polynomial.polynomial as npoly
import pytest

from widomlab import intervals, preimage
from widomlab.errors import AdmissibilityError

CUBIC = preimage.PreimageSpec("one_plus", (0, 3))


def q_values(spec, xs):
    q = [float(c) for c in spec.q_coeffs()]
    return npoly.polyval(np.asarray(xs, dtype=float), q)


def test_spec_validation():
    with pytest.raises(ValueError):
        preimage.PreimageSpec("one_plus", (1,))        # degree zero
    with pytest.raises(ValueError):
        preimage.PreimageSpec("one_plus", (1, 0))      # zero lead
    with pytest.raises(ValueError):
        preimage.PreimageSpec("two_plus", (0, 1))      # unknown variant


def test_exact_invariants_of_the_cubic():
    oracle = preimage.exact_invariants(CUBIC)
    assert oracle.cap_power == Fraction(1, 36)         # Cap^3 = 1/(4 c^2)
    assert oracle.capacity == pytest.approx(36.0 ** (-1.0 / 3.0), rel=1e-15)
    assert oracle.t_exact == Fraction(1, 3)
    assert oracle.norm2_exact == Fraction(1, 18)
    assert oracle.widom2_sq == pytest.approx(2.0 * 36.0 ** (-1.0 / 3.0), rel=1e-14)


def test_cubic_band_edges_solve_q_equals_one():
    K, report = preimage.build_set(CUBIC)
    assert len(K.bands) == 2
    assert K.hull[0] == -1.0
    interior_edges = [K.bands[0][1], K.bands[1][0], K.bands[1][1]]
    assert np.allclose(q_values(CUBIC, interior_edges), 1.0, atol=1e-12)
    # frozen digits for the record
    assert K.bands[0][1] == pytest.approx(-0.8440296287459854, abs=1e-12)
    assert K.bands[1][0] == pytest.approx(-0.4490987851112869, abs=1e-12)
    assert report.branch_counts == (1, 2)


def test_cubic_branch_masses():
    # each branch carries 1/deg Q of the equilibrium mass
    oracle = preimage.exact_invariants(CUBIC)
    assert oracle.branch_mass == Fraction(1, 3)
    _, report = preimage.build_set(CUBIC)
    masses = [c * oracle.branch_mass for c in report.branch_counts]
    assert masses == [Fraction(1, 3), Fraction(2, 3)]


def test_rejected_linear_spec_names_the_critical_value():
    spec = preimage.PreimageSpec("one_plus", (0, 1))
    report = preimage.analyze(spec)
    assert not report.admissible
    assert "forbidden" in report.verdicts
    # interior critical value 4/27 at x = -2/3
    assert any(abs(v - 4.0 / 27.0) < 1e-12 for v in report.critical_values)
    assert "0.148148" in report.reason
    with pytest.raises(AdmissibilityError) as exc_info:
        preimage.build_set(spec)
    assert exc_info.value.report is not None


def test_one_minus_mirror_duality():
    spec = CUBIC.reflected()
    assert spec.variant == "one_minus"
    K_m, report_m = preimage.build_set(spec)
    K, report = preimage.build_set(CUBIC)
    mirrored = sorted((-b, -a) for a, b in K.bands)
    assert np.allclose(K_m.bands, mirrored, atol=1e-12)
    assert report_m.branch_counts == tuple(reversed(report.branch_counts))
    o1 = preimage.exact_invariants(CUBIC)
    o2 = preimage.exact_invariants(spec)
    assert o1.cap_power == o2.cap_power
    assert o1.t_exact == o2.t_exact


def test_one_minus_sq_scaled_identity_covers_the_segment():
    spec = preimage.PreimageSpec("one_minus_sq", (0, 2))
    K, report = preimage.build_set(spec)
    assert len(K.bands) == 1
    assert K.bands[0] == pytest.approx((-1.0, 1.0), abs=1e-13)
    assert report.branch_counts == (4,)
    assert preimage.exact_invariants(spec).cap_power == Fraction(1, 16)


def test_one_minus_sq_cubic_band_layout():
    spec = preimage.PreimageSpec("one_minus_sq", (0, 3))
    K, report = preimage.build_set(spec)
    assert len(K.bands) == 3
    assert K.hull == (-1.0, 1.0)
    assert K.bands[1][0] == pytest.approx(-0.35682208977308993, abs=1e-11)
    assert K.bands[2][0] == pytest.approx(0.9341723589627158, abs=1e-11)
    assert sum(report.branch_counts) == spec.q_degree


def test_degree_two_three_band_spec():
    spec = preimage.PreimageSpec("one_plus", (-6, 0, 12))
    K, report = preimage.build_set(spec)
    assert len(K.bands) == 3
    assert report.branch_counts == (1, 2, 2)
    oracle = preimage.exact_invariants(spec)
    assert oracle.cap_power == Fraction(1, 576)        # Cap^5
    assert oracle.t_exact == Fraction(1, 12)
    assert np.allclose(q_values(spec, [e for band in K.bands for e in band
                                       if abs(abs(e) - 1.0) > 1e-9]),
                       1.0, atol=1e-11)


def test_saturation_clauses_pass_on_admissible_specs():
    for spec in (CUBIC, preimage.PreimageSpec("one_minus_sq", (0, 2))):
        sat = preimage.saturation_verify(spec, tol=1e-7)
        assert sat.passed, sat.failing()
        assert {c.label for c in sat.clauses} == set("abcde")


def test_control_set_fails_sup_and_l2_clauses():
    K = intervals.normalize([(-1.0, -0.5), (0.5, 1.0)])
    report = preimage.control_clauses(K, "one_plus", 2)
    by_label = {c.label: c for c in report.clauses}
    assert not by_label["b"].passed
    assert not by_label["c"].passed
    assert abs(by_label["b"].error) > 1e-6
    assert abs(by_label["c"].error) > 1e-6


def test_symmetric_two_band_saturates_even_degree_one_minus_sq():
    # y = 2x^2 - 1 maps ±[delta, 1] onto a one-sided equality case, so
    # this is a true saturation family, not a usable negative control
    K = intervals.normalize([(-1.0, -0.5), (0.5, 1.0)])
    report = preimage.control_clauses(K, "one_minus_sq", 2)
    by_label = {c.label: c for c in report.clauses}
    assert by_label["b"].passed
    assert by_label["c"].passed


def test_affine_instance_transport():
    inst = preimage.affine_instance(CUBIC, (0.0, 4.0))
    assert inst.set.hull[0] == pytest.approx(0.0, abs=1e-12)
    assert inst.level_exact == Fraction(2, 3)
    assert [float(c) for c in inst.polynomial] == pytest.approx([-2.0, 1.0])
    assert math.exp(inst.log_capacity) == pytest.approx(
        2.0 * 36.0 ** (-1.0 / 3.0), rel=1e-14)
    # identity hull reproduces the unit-frame data
    ident = preimage.affine_instance(CUBIC, (-1.0, 1.0))
    assert ident.level_exact == Fraction(1, 3)
    assert [float(c) for c in ident.polynomial] == pytest.approx([0.0, 1.0])


def test_affine_instance_degree_two():
    spec = preimage.PreimageSpec("one_plus", (-6, 0, 12))
    inst = preimage.affine_instance(spec, (3.0, 7.0))
    assert [float(c) for c in inst.polynomial] == pytest.approx([23.0, -10.0, 1.0])
    assert inst.level_exact == Fraction(1, 3)


def test_random_rooted_specs_structural_identities():
    # draw S from rational roots inside the frame with a lead large
    # enough that the interior maxima usually clear height 1
    rng = np.random.default_rng(11)
    grid = [Fraction(k, 8) for k in range(-6, 7)]
    found = 0
    for trial in range(80):
        i, j = rng.choice(len(grid), size=2, replace=False)
        r1, r2 = grid[i], grid[j]
        if abs(r1 - r2) < 1:
            continue
        c = Fraction(int(rng.integers(6, 11)) * int(rng.choice([-1, 1])))
        coeffs = (c * r1 * r2, -c * (r1 + r2), c)
        variant = ("one_plus", "one_minus", "one_minus_sq")[trial % 3]
        spec = preimage.PreimageSpec(variant, coeffs)
        try:
            K, report = preimage.build_set(spec)
        except AdmissibilityError:
            continue
        found += 1
        edges = [e for band in K.bands for e in band]
        vals = q_values(spec, edges)
        # every edge is a root of Q - 1 or a frame endpoint
        for e, v in zip(edges, vals):
            assert abs(v - 1.0) < 1e-8 or abs(abs(e) - 1.0) < 1e-12
        assert sum(report.branch_counts) == spec.q_degree
        if found >= 8:
            break
    assert found >= 5
