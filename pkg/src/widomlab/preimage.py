"""Interval sets that are polynomial preimages of a segment.

A spec fixes a polynomial S of degree n and an envelope variant that
turns it into

    one_plus        Q(x) = (1 + x) S(x)^2         degree 2n + 1
    one_minus       Q(x) = (1 - x) S(x)^2         degree 2n + 1
    one_minus_sq    Q(x) = (1 - x^2) S(x)^2       degree 2n + 2

The set K = Q^{-1}([0, 1]) is then a finite union of intervals on which
the weighted Chebyshev and orthogonality problems of this package are
solvable in closed form: with c the leading coefficient of S, the
capacity satisfies Cap(K)^deg = 1/(4 c^2), the weighted minimax level
at degree n is exactly 1/|c| with S/c as minimizer, and the monic
minimax polynomial at full degree is a rational expression in Q.  All
of these are produced as exact rationals, so they can serve as oracles
for the numerical stack; :func:`saturation_verify` runs that comparison
end to end.

Coefficients are carried as :class:`fractions.Fraction` throughout the
exact layer, which keeps the oracles bit-exact for integer and rational
input.
"""

import dataclasses
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from numpy.polynomial import polynomial as npoly

from . import chebbasis, chebyshev, intervals, orthopoly, potential
from .errors import AdmissibilityError, ConvergenceError

VARIANTS = {
    "one_plus": (0, 1),
    "one_minus": (1, 0),
    "one_minus_sq": (1, 1),
}

_WEIGHT_KIND = {
    "one_plus": "sqrt_one_plus",
    "one_minus": "sqrt_one_minus",
    "one_minus_sq": "sqrt_one_minus_sq",
}

# numeric slack for classifying critical values against {0, 1}
_BOUNDARY_TOL = 1e-9
_IMAG_TOL = 1e-9


def _conv(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        for j, bj in enumerate(b):
            out[i + j] += ai * bj
    return out


def _padd(a, b):
    out = list(a) + [Fraction(0)] * max(0, len(b) - len(a))
    for j, bj in enumerate(b):
        out[j] += bj
    return out


def _pscale(a, s):
    return [ai * s for ai in a]


def _pder(a):
    return [k * ak for k, ak in enumerate(a)][1:] or [Fraction(0)]


@dataclass(frozen=True)
class PreimageSpec:
    """Variant plus ascending coefficients of the base polynomial S."""

    variant: str
    s_coeffs: tuple

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"unknown preimage variant {self.variant!r}")
        coeffs = tuple(Fraction(c) for c in self.s_coeffs)
        if len(coeffs) < 2:
            raise ValueError("the base polynomial must have degree at least 1")
        if coeffs[-1] == 0:
            raise ValueError("the base polynomial's leading coefficient is zero")
        object.__setattr__(self, "s_coeffs", coeffs)

    @property
    def degree(self):
        return len(self.s_coeffs) - 1

    @property
    def lead(self):
        return self.s_coeffs[-1]

    @property
    def exponents(self):
        return VARIANTS[self.variant]

    @property
    def q_degree(self):
        alpha, beta = self.exponents
        return 2 * self.degree + alpha + beta

    @property
    def envelope(self):
        """Ascending coefficients of the envelope factor (1 -+ x)(1 +- x)."""
        return {
            "one_plus": [Fraction(1), Fraction(1)],
            "one_minus": [Fraction(1), Fraction(-1)],
            "one_minus_sq": [Fraction(1), Fraction(0), Fraction(-1)],
        }[self.variant]

    def q_coeffs(self):
        """Ascending exact coefficients of Q."""
        return _conv(self.envelope, _conv(self.s_coeffs, self.s_coeffs))

    def weight(self):
        return chebyshev.WeightSpec(_WEIGHT_KIND[self.variant])

    def reflected(self):
        """The mirror spec whose set is the reflection of this one's."""
        flipped = tuple(c * (-1) ** k for k, c in enumerate(self.s_coeffs))
        swap = {"one_plus": "one_minus", "one_minus": "one_plus",
                "one_minus_sq": "one_minus_sq"}
        return PreimageSpec(swap[self.variant], flipped)


@dataclass(frozen=True)
class AdmissibilityReport:
    """Critical-value audit of a preimage spec.

    Each critical point of Q carries a verdict: zero and unit critical
    values sit on the admitted boundary, values outside [0, 1] open a
    gap or a well, and anything strictly inside (0, 1) breaks the
    preimage structure.  contained records whether the sublevel set
    stays inside [-1, 1] (checked exactly), branch_counts how many of
    the deg Q monotone branches land in each band.
    """

    admissible: bool
    critical_points: tuple
    critical_values: tuple
    verdicts: tuple
    contained: bool
    branch_counts: tuple
    reason: str = ""

    # verdict "broken" marks a critical point on the wrong side for its
    # type (a local maximum below 1 or a local minimum above 0), which
    # destroys the branch covering even though the value avoids (0, 1)


def _polish(roots, coeffs, root_tol, max_iter=8):
    """Newton-polish real roots of an ascending-coefficient polynomial."""
    der = npoly.polyder(np.asarray(coeffs, dtype=float))
    x = np.asarray(roots, dtype=float).copy()
    for _ in range(max_iter):
        fx = npoly.polyval(x, coeffs)
        dfx = npoly.polyval(x, der)
        safe = np.abs(dfx) > 0.0
        step = np.zeros_like(x)
        step[safe] = fx[safe] / dfx[safe]
        x -= step
        if np.abs(step).max(initial=0.0) <= root_tol:
            break
    return x


def _real_roots(coeffs, root_tol):
    """All-real root list of an ascending polynomial, or None if any escape."""
    coeffs = np.asarray([float(c) for c in coeffs])
    roots = npoly.polyroots(coeffs)
    if roots.size == 0:
        return np.array([])
    scale = max(1.0, float(np.abs(roots).max()))
    if np.abs(roots.imag).max() > _IMAG_TOL * scale:
        return None
    return np.sort(_polish(roots.real, coeffs, root_tol))


def _critical_data(spec, root_tol):
    """Critical points of Q split into S zeros and envelope stationary points.

    Q' factors as S times a companion polynomial H, so the double zeros
    of S never have to be extracted from Q' itself.
    """
    s = list(spec.s_coeffs)
    ds = _pder(s)
    two = Fraction(2)
    if spec.variant == "one_plus":
        h = _padd(_pscale(_conv([Fraction(1), Fraction(1)], ds), two), s)
    elif spec.variant == "one_minus":
        h = _padd(_pscale(_conv([Fraction(1), Fraction(-1)], ds), two), _pscale(s, -1))
    else:
        h = _padd(_pscale(_conv(spec.envelope, ds), two),
                  _pscale(_conv([Fraction(0), Fraction(1)], s), -two))
    s_zeros = _real_roots(s, root_tol)
    h_zeros = _real_roots(h, root_tol)
    return s_zeros, h_zeros


def analyze(spec, root_tol=1e-12):
    """Admissibility audit without building the interval set."""
    q = [float(c) for c in spec.q_coeffs()]
    s_zeros, h_zeros = _critical_data(spec, root_tol)
    if s_zeros is None:
        return AdmissibilityReport(
            False, (), (), (), False, (),
            reason="the base polynomial has zeros off the real line")
    if h_zeros is None:
        return AdmissibilityReport(
            False, tuple(s_zeros), (), (), False, (),
            reason="Q has critical points off the real line")

    q2 = npoly.polyder(np.asarray(q), 2)
    q2_mag = np.abs(q2)

    def classify(x):
        # local shape of Q from the second derivative, scale-relative
        curv = float(npoly.polyval(x, q2))
        scale = float(npoly.polyval(abs(x), q2_mag)) + 1.0
        if abs(curv) <= 1e-9 * scale:
            return "flat"
        return "max" if curv < 0.0 else "min"

    points, values, verdicts = [], [], []
    reason = ""

    def record(x, cv):
        points.append(float(x))
        values.append(cv)
        shape = classify(x)
        nonlocal reason
        if shape == "flat" and (abs(cv) <= _BOUNDARY_TOL
                                or abs(cv - 1.0) <= _BOUNDARY_TOL):
            # Q - cv has a root of multiplicity >= 3: branches collapse
            verdicts.append("broken")
            if not reason:
                reason = (f"degenerate tangency of Q at x = {float(x)!r} "
                          f"(value {cv!r}) collapses branches")
            return
        if shape == "max" and cv < 1.0 - _BOUNDARY_TOL:
            verdicts.append("forbidden" if cv > _BOUNDARY_TOL else "broken")
            if not reason:
                if cv > _BOUNDARY_TOL:
                    reason = (f"critical value {cv!r} at x = {float(x)!r} "
                              "lies strictly inside (0, 1)")
                else:
                    reason = (f"local maximum of Q at x = {float(x)!r} has "
                              f"value {cv!r} below 1, so the branch covering "
                              "breaks")
            return
        if shape == "min" and cv > _BOUNDARY_TOL:
            verdicts.append("forbidden" if cv < 1.0 - _BOUNDARY_TOL else "broken")
            if not reason:
                if cv < 1.0 - _BOUNDARY_TOL:
                    reason = (f"critical value {cv!r} at x = {float(x)!r} "
                              "lies strictly inside (0, 1)")
                else:
                    reason = (f"local minimum of Q at x = {float(x)!r} has "
                              f"value {cv!r} above 0, so the branch covering "
                              "breaks")
            return
        if abs(cv) <= _BOUNDARY_TOL or abs(cv - 1.0) <= _BOUNDARY_TOL:
            verdicts.append("boundary")
        elif cv < 0.0 or cv > 1.0:
            verdicts.append("outside")
        else:
            verdicts.append("forbidden")
            if not reason:
                reason = (f"critical value {cv!r} at x = {float(x)!r} "
                          "lies strictly inside (0, 1)")

    for x in s_zeros:
        record(x, 0.0)
    for x in h_zeros:
        record(x, float(npoly.polyval(x, q)))
    order = np.argsort(points)
    points = tuple(points[i] for i in order)
    values = tuple(values[i] for i in order)
    verdicts = tuple(verdicts[i] for i in order)

    # containment is a rational inequality on Q at the free hull end,
    # plus no band edge (root of Q - 1) beyond that end
    qx = spec.q_coeffs()
    contained = True
    if spec.variant == "one_plus":
        contained = sum(qx) >= 1
    elif spec.variant == "one_minus":
        contained = sum(c * (-1) ** k for k, c in enumerate(qx)) >= 1
    if not contained and not reason:
        reason = "the sublevel set escapes [-1, 1]"
    if contained and spec.variant != "one_minus_sq":
        qm = list(q)
        qm[0] -= 1.0
        edges = npoly.polyroots(np.asarray(qm))
        real = edges[np.abs(edges.imag) <= _IMAG_TOL * np.maximum(
            1.0, np.abs(edges))].real
        escape = real[real > 1.0 + _BOUNDARY_TOL] if spec.variant == "one_plus" \
            else real[real < -1.0 - _BOUNDARY_TOL]
        if escape.size:
            contained = False
            if not reason:
                reason = ("the sublevel set escapes [-1, 1] "
                          f"(band edge at {float(escape[0])!r})")

    admissible = contained and "forbidden" not in verdicts \
        and "broken" not in verdicts
    return AdmissibilityReport(
        admissible, points, values, verdicts, contained, (), reason=reason)


def build_set(spec, root_tol=1e-12):
    """Interval set Q^{-1}([0, 1]) together with its admissibility audit.

    Raises AdmissibilityError (with the report attached) when a critical
    value lands strictly inside (0, 1), when critical points leave the
    real line, or when the sublevel set escapes [-1, 1].
    """
    report = analyze(spec, root_tol)
    if not report.admissible:
        raise AdmissibilityError(report.reason, report=report)

    q = np.asarray([float(c) for c in spec.q_coeffs()])
    shifted = q.copy()
    shifted[0] -= 1.0
    roots = npoly.polyroots(shifted)
    scale = max(1.0, float(np.abs(roots).max())) if roots.size else 1.0
    # tangential double roots may drift off axis; dropping them only
    # removes cuts interior to a band, never a band edge
    real = roots[np.abs(roots.imag) <= _IMAG_TOL * scale].real
    dq = npoly.polyder(q)
    keep = np.abs(npoly.polyval(real, dq)) > root_tol
    real = np.concatenate([_polish(real[keep], shifted, root_tol), real[~keep]])

    cuts = sorted({-1.0, 1.0, *(float(r) for r in real if -1.0 - root_tol <= r <= 1.0 + root_tol)})
    segments = []
    for lo, hi in zip(cuts, cuts[1:]):
        if hi - lo <= root_tol:
            continue
        if float(npoly.polyval(0.5 * (lo + hi), q)) <= 1.0 + _BOUNDARY_TOL:
            segments.append((max(lo, -1.0), min(hi, 1.0)))
    if not segments:
        raise ConvergenceError("sublevel set came out empty")
    interval_set = intervals.normalize(segments, merge_tol=10 * root_tol)

    # every monotone branch of Q covers [0, 1] once; count them per band
    half_level = q.copy()
    half_level[0] -= 0.5
    br = npoly.polyroots(half_level)
    br_scale = max(1.0, float(np.abs(br).max()))
    br_real = br[np.abs(br.imag) <= _IMAG_TOL * br_scale].real
    counts = [0] * len(interval_set.bands)
    for x in br_real:
        j = interval_set.band_index(float(x), tol=1e-9)
        if j is None:
            raise ConvergenceError("a branch point fell outside the set")
        counts[j] += 1
    if sum(counts) != spec.q_degree:
        raise ConvergenceError(
            f"expected {spec.q_degree} monotone branches, found {sum(counts)}")

    report = dataclasses.replace(report, branch_counts=tuple(counts))
    return interval_set, report


@dataclass(frozen=True)
class ExactOracle:
    """Closed-form values attached to an admissible preimage spec.

    cap_power is Cap^{deg Q} = 1/(4 c^2) as an exact rational; capacity
    its real root.  t_exact is the weighted minimax level at the spec's
    own degree, norm2_exact the squared L2 norm of the monic orthogonal
    polynomial there, and chebyshev_top the monic minimax polynomial at
    degree deg Q for the unit weight (ascending rational coefficients)
    with deviation top_level.
    """

    spec: PreimageSpec
    cap_power: Fraction
    capacity: float
    log_capacity: float
    t_exact: Fraction
    norm2_exact: Fraction
    widom2_sq: float
    chebyshev_top: tuple
    top_level: Fraction
    minimax_monic: tuple
    branch_mass: Fraction


def exact_invariants(spec):
    """Exact oracle package; rejects inadmissible specs."""
    report = analyze(spec)
    if not report.admissible:
        raise AdmissibilityError(report.reason, report=report)
    c = spec.lead
    n_q = spec.q_degree
    alpha, beta = spec.exponents
    cap_power = Fraction(1, 4) / (c * c)
    log_cap = -math.log(4.0 * float(c) * float(c)) / n_q
    s_monic = [ci / c for ci in spec.s_coeffs]
    top = _pscale(_conv(spec.envelope, _conv(s_monic, s_monic)), Fraction(1))
    half = Fraction(1, 2) / (c * c)
    if spec.variant == "one_plus":
        top[0] -= half
    else:
        top = _pscale(top, Fraction(-1))
        top[0] += half
    capacity = math.exp(log_cap)
    return ExactOracle(
        spec=spec,
        cap_power=cap_power,
        capacity=capacity,
        log_capacity=log_cap,
        t_exact=abs(Fraction(1) / c),
        norm2_exact=Fraction(1, 2) / (c * c),
        widom2_sq=2.0 * capacity ** (alpha + beta),
        chebyshev_top=tuple(top),
        top_level=half,
        minimax_monic=tuple(s_monic),
        branch_mass=Fraction(1, n_q),
    )


@dataclass(frozen=True)
class ClauseResult:
    label: str
    name: str
    passed: bool
    error: float
    detail: str = ""


@dataclass(frozen=True)
class SaturationReport:
    """Clause-by-clause comparison of numerics against the exact layer."""

    description: str
    clauses: tuple

    @property
    def passed(self):
        return all(c.passed for c in self.clauses)

    def clause(self, key):
        for c in self.clauses:
            if c.label == key or c.name == key:
                return c
        raise KeyError(key)

    def failing(self):
        return tuple(c for c in self.clauses if not c.passed)


def _monic_op_monomial(ortho, n):
    """Ascending monomial coefficients of the degree-n monic orthogonal poly."""
    prev = np.array([1.0])
    if n == 0:
        return prev
    cur = np.array([-ortho.recurrence_a[0], 1.0])
    for k in range(1, n):
        nxt = npoly.polymul([-ortho.recurrence_a[k], 1.0], cur)
        nxt[: len(prev)] -= ortho.recurrence_b[k] * prev
        prev, cur = cur, nxt
    return cur


def saturation_verify(spec, tol=1e-7, root_tol=1e-12):
    """Check every closed-form identity of a spec against the numerics.

    Clauses: (a) capacity, (b) normalized sup deviation, (c) squared L2
    deviation against twice the entropy, (d) both computed minimizers
    coefficient-by-coefficient, (e) the full-degree unit-weight minimax
    polynomial against its rational closed form.
    """
    oracle = exact_invariants(spec)
    interval_set, report = build_set(spec, root_tol)
    eq = potential.equilibrium(interval_set)
    log_cap = potential.log_capacity(eq)
    alpha, beta = spec.exponents
    n = spec.degree
    clauses = []

    cap_err = abs(math.exp(log_cap) - oracle.capacity)
    clauses.append(ClauseResult("a", "capacity", cap_err <= tol, cap_err))

    weight = spec.weight()
    sol = chebyshev.remez(interval_set, weight, n, eq=eq)
    target_inf = 2.0 * oracle.capacity ** (0.5 * (alpha + beta))
    inf_err = chebyshev.widom_inf(sol, eq) - target_inf
    clauses.append(ClauseResult(
        "b", "sup_deviation", abs(inf_err) <= tol, inf_err,
        detail=f"target {target_inf!r}"))

    measure = orthopoly.JacobiOnEq(eq, float(alpha), float(beta))
    ortho = orthopoly.stieltjes(measure, n)
    w2_err = orthopoly.widom2_sq(ortho, n) - oracle.widom2_sq
    clauses.append(ClauseResult(
        "c", "l2_deviation", abs(w2_err) <= tol, w2_err,
        detail=f"target {oracle.widom2_sq!r}"))

    target_poly = np.asarray([float(v) for v in oracle.minimax_monic])
    remez_mono = chebbasis.to_monomial(interval_set.hull, sol.coeffs)
    ortho_mono = _monic_op_monomial(ortho, n)
    d_err = max(float(np.abs(remez_mono - target_poly).max()),
                float(np.abs(ortho_mono - target_poly).max()))
    clauses.append(ClauseResult("d", "minimizer_coefficients", d_err <= tol, d_err))

    top = chebyshev.remez(interval_set, chebyshev.WeightSpec("unit"),
                          spec.q_degree, eq=eq)
    top_mono = chebbasis.to_monomial(interval_set.hull, top.coeffs)
    top_target = np.asarray([float(v) for v in oracle.chebyshev_top])
    e_err = max(float(np.abs(top_mono - top_target).max()),
                abs(top.level - float(oracle.top_level)))
    clauses.append(ClauseResult("e", "top_polynomial", e_err <= tol, e_err))

    return SaturationReport(
        description=f"{spec.variant} degree {n}", clauses=tuple(clauses))


def control_clauses(interval_set, variant, degree, tol=1e-7):
    """Saturation clauses (b) and (c) for a set with no exact layer.

    The targets come from the numeric capacity, so the clauses measure
    pure saturation; sets that are not preimages of the right shape
    must fail both with positive residuals.
    """
    if variant not in VARIANTS:
        raise ValueError(f"unknown preimage variant {variant!r}")
    alpha, beta = VARIANTS[variant]
    eq = potential.equilibrium(interval_set)
    cap = math.exp(potential.log_capacity(eq))
    clauses = []

    weight = chebyshev.WeightSpec(_WEIGHT_KIND[variant])
    sol = chebyshev.remez(interval_set, weight, degree, eq=eq)
    target_inf = 2.0 * cap ** (0.5 * (alpha + beta))
    inf_err = chebyshev.widom_inf(sol, eq) - target_inf
    clauses.append(ClauseResult(
        "b", "sup_deviation", abs(inf_err) <= tol, inf_err,
        detail=f"target {target_inf!r}"))

    measure = orthopoly.JacobiOnEq(eq, float(alpha), float(beta))
    ortho = orthopoly.stieltjes(measure, degree)
    two_s = 2.0 * orthopoly.entropy(measure)
    w2_err = orthopoly.widom2_sq(ortho, degree) - two_s
    clauses.append(ClauseResult(
        "c", "l2_deviation", abs(w2_err) <= tol, w2_err,
        detail=f"target {two_s!r}"))

    bands = ", ".join(f"[{a:g}, {b:g}]" for a, b in interval_set.bands)
    return SaturationReport(description=f"control {bands}", clauses=tuple(clauses))


@dataclass(frozen=True)
class AffineInstance:
    """A preimage problem carried to another hull by the affine map.

    polynomial holds ascending exact coefficients of the mapped monic
    minimizer; level_exact its deviation, which picks up one factor of
    the target half-width per degree.  The weight evaluates in unit
    coordinates of the target frame, so it contributes no scale factor
    and the normalized deviation is untouched by the map.
    """

    spec: PreimageSpec
    target_hull: tuple
    set: object
    weight: object
    exponents: tuple
    polynomial: tuple
    level_exact: Fraction
    log_capacity: float
    widom_inf_exact: float


def affine_instance(spec, target_hull, root_tol=1e-12):
    """Map an admissible spec's problem onto the given hull."""
    a, b = Fraction(target_hull[0]), Fraction(target_hull[1])
    if not a < b:
        raise ValueError("target hull endpoints out of order")
    base_set, _ = build_set(spec, root_tol)
    oracle = exact_invariants(spec)
    half = (b - a) / 2
    target = (float(a), float(b))
    mapped = intervals.affine_map(base_set, (-1.0, 1.0), target)

    # compose S with the unit map of the target hull, then scale monic
    t_lin = [-(a + b) / (b - a), Fraction(2) / (b - a)]
    comp = [Fraction(0)]
    for ck in reversed(spec.s_coeffs):
        comp = _padd(_conv(comp, t_lin), [ck])
    poly = _pscale(comp[: spec.degree + 1], half ** spec.degree / spec.lead)

    alpha, beta = spec.exponents
    weight = chebyshev.WeightSpec(_WEIGHT_KIND[spec.variant], hull=target)
    return AffineInstance(
        spec=spec,
        target_hull=target,
        set=mapped,
        weight=weight,
        exponents=(alpha, beta),
        polynomial=tuple(poly),
        level_exact=oracle.t_exact * half ** spec.degree,
        log_capacity=oracle.log_capacity + math.log(float(half)),
        widom_inf_exact=2.0 * oracle.capacity ** (0.5 * (alpha + beta)),
    )
