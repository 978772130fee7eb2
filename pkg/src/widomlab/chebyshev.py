"""Weighted minimax polynomials on unions of intervals.

:func:`remez` computes the monic polynomial of a given degree that
minimizes the sup norm of w(x) p(x) over an interval set, by multi-point
exchange over dense per-band Chebyshev grids with golden-section
refinement of every local extremum.  The companions are closed-form
bounds on the normalized deviation (:func:`sup_bounds`), the classical
solutions on a single interval (:func:`kind_polynomial`), and the
polynomial-preimage set a solved problem saturates
(:func:`enclosing_preimage`).
"""

import dataclasses
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import chebyshev as ncheb

from . import chebbasis, potential
from .errors import ConvergenceError
from .intervals import normalize
from .kernels import clenshaw, golden_refine

_KIND_EXPONENTS = {
    "unit": (0.0, 0.0),
    "sqrt_one_plus": (0.0, 1.0),
    "sqrt_one_minus": (1.0, 0.0),
    "sqrt_one_minus_sq": (1.0, 1.0),
}

VALIDATION_SLACK = 1e-8


@dataclass(frozen=True)
class WeightSpec:
    """Endpoint weight w(x) = (1-u)^(alpha/2) (1+u)^(beta/2).

    u is the unit coordinate of the weight's hull frame.  The named
    kinds fix the exponent pair (unit, sqrt_one_plus, sqrt_one_minus,
    sqrt_one_minus_sq); jacobi_root takes alpha and beta as given.  A
    hull of None means the literal frame [-1, 1], so sqrt_one_plus is
    the function sqrt(1+x) itself no matter how the set sits inside;
    the unit weight carries no frame and adopts the set's hull.
    """

    kind: str = "unit"
    alpha: float = 0.0
    beta: float = 0.0
    hull: tuple = None

    DEFAULT_FRAME = (-1.0, 1.0)

    def __post_init__(self):
        if self.kind in _KIND_EXPONENTS:
            a, b = _KIND_EXPONENTS[self.kind]
            object.__setattr__(self, "alpha", a)
            object.__setattr__(self, "beta", b)
        elif self.kind == "jacobi_root":
            if self.alpha < 0 or self.beta < 0:
                raise ValueError("jacobi_root exponents must be nonnegative")
            object.__setattr__(self, "alpha", float(self.alpha))
            object.__setattr__(self, "beta", float(self.beta))
        else:
            raise ValueError(f"unknown weight kind {self.kind!r}")
        if self.hull is not None:
            a, b = self.hull
            if not a < b:
                raise ValueError("weight hull endpoints out of order")
            object.__setattr__(self, "hull", (float(a), float(b)))

    def resolve_hull(self, interval_set):
        if self.hull is not None:
            return self.hull
        if self.alpha == 0.0 and self.beta == 0.0:
            return interval_set.hull
        return self.DEFAULT_FRAME

    def values(self, x, hull=None):
        """Weight values at points x, clamped to zero outside the frame."""
        frame = hull if hull is not None else self.hull
        u = chebbasis.to_unit(frame, x)
        lo = np.clip(1.0 - u, 0.0, None)
        hi = np.clip(1.0 + u, 0.0, None)
        return lo ** (0.5 * self.alpha) * hi ** (0.5 * self.beta)

    @property
    def integer_exponents(self):
        return float(self.alpha).is_integer() and float(self.beta).is_integer()

    def w2_series(self, p_hull, w_hull=None):
        """Chebyshev series (on p_hull) of the squared weight.

        Only defined when both exponents are integers, in which case
        w(x)^2 is a polynomial of degree alpha + beta.
        """
        if not self.integer_exponents:
            raise ValueError("squared weight is polynomial only for integer exponents")
        frame = w_hull if w_hull is not None else self.hull
        q0, q1 = _frame_map(p_hull, frame)
        series = np.array([1.0])
        for _ in range(int(round(self.alpha))):
            series = ncheb.chebmul(series, np.array([1.0 - q0, -q1]))
        for _ in range(int(round(self.beta))):
            series = ncheb.chebmul(series, np.array([1.0 + q0, q1]))
        return series


def _frame_map(p_hull, w_hull):
    """Affine map u' = q0 + q1*u between the unit frames of two hulls."""
    pa, pb = p_hull
    wa, wb = w_hull
    q1 = (pb - pa) / (wb - wa)
    q0 = (pa + pb - wa - wb) / (wb - wa)
    return q0, q1


@dataclass(frozen=True)
class ChebyshevSolution:
    """Monic weighted minimax polynomial on an interval set.

    coeffs is the hull-Chebyshev series of the monic solution, level the
    attained deviation sup |w p|, and alternation the points carrying
    the equioscillating extrema (signs alternate left to right).
    residual records how far the validation sweep rose above the level,
    relative to the level; it stays at roundoff size for a converged
    solve.
    """

    set: object
    weight: WeightSpec
    degree: int
    coeffs: tuple
    level: float
    alternation: tuple
    iterations: int
    residual: float

    def __call__(self, x):
        return chebbasis.evaluate(self.set.hull, np.asarray(self.coeffs), x)

    def weighted_error(self, x):
        """Signed error w(x) p(x) whose sup over the set is the level."""
        return self.weight.values(x) * self(x)


def _initial_reference(interval_set, eq, weight, n_pts, hull, w_hull):
    """Spread reference points over the bands, weighted by band mass.

    Within a band the points sit at local Chebyshev extrema; points
    where the weight vanishes exactly are pulled toward the band center
    so the first exchange matrix stays nonsingular.
    """
    bands = interval_set.bands
    masses = np.asarray(eq.band_masses)
    counts = np.floor(masses * n_pts).astype(int)
    frac = masses * n_pts - counts
    while counts.sum() < n_pts:
        j = int(np.argmax(frac))
        counts[j] += 1
        frac[j] = -1.0
    if n_pts >= len(bands):
        for j in range(len(bands)):
            if counts[j] == 0:
                counts[int(np.argmax(counts))] -= 1
                counts[j] = 1
    out = []
    for (a, b), m in zip(bands, counts):
        if m == 0:
            continue
        if m == 1:
            local = np.array([0.0])
        else:
            local = np.cos(np.pi * np.arange(m)[::-1] / (m - 1))
        x = 0.5 * (a + b) + 0.5 * (b - a) * local
        w = weight.values(x, w_hull)
        bad = w == 0.0
        if bad.any():
            x[bad] = 0.5 * (a + b) + 0.5 * (b - a) * 0.995 * local[bad]
        out.append(x)
    x_all = np.sort(np.concatenate(out))
    return chebbasis.to_unit(hull, x_all)


def _band_candidates(coeffs, weight, hull, w_hull, bands_u, grid):
    """Refined local maxima of (w p)^2, band by band, in unit coords."""
    alpha, beta = weight.alpha, weight.beta
    q0, q1 = _frame_map(hull, w_hull)
    coeffs = np.asarray(coeffs, dtype=float)
    us, rs = [], []
    for ua, ub in bands_u:
        um, uh = 0.5 * (ua + ub), 0.5 * (ub - ua)
        ug = um + uh * np.cos(np.linspace(np.pi, 0.0, grid))
        ug[0], ug[-1] = ua, ub
        pv = clenshaw(coeffs, ug)
        uw = q0 + q1 * ug
        wv = np.clip(1.0 - uw, 0.0, None) ** (0.5 * alpha) \
            * np.clip(1.0 + uw, 0.0, None) ** (0.5 * beta)
        F = (wv * pv) ** 2
        interior = np.nonzero((F[1:-1] >= F[:-2]) & (F[1:-1] >= F[2:]))[0] + 1
        if interior.size:
            u_star, p_star, w2_star = golden_refine(
                coeffs, alpha, beta, q0, q1, ug[interior - 1], ug[interior + 1]
            )
            keep = w2_star * p_star * p_star > 0.0
            us.append(u_star[keep])
            rs.append(np.sign(p_star[keep]) * np.sqrt(w2_star[keep]) * np.abs(p_star[keep]))
        for j, j_in in ((0, 1), (grid - 1, grid - 2)):
            if F[j] >= F[j_in] and F[j] > 0.0:
                us.append(np.array([ug[j]]))
                rs.append(np.array([wv[j] * pv[j]]))
    if not us:
        return np.array([]), np.array([])
    u = np.concatenate(us)
    r = np.concatenate(rs)
    order = np.argsort(u)
    return u[order], r[order]


def _alternating_subset(u, r, n_pts):
    """Pick n_pts alternating-sign points from the pool, keeping the peak.

    Same-sign runs collapse to their strongest member; the sequence is
    then trimmed pairwise from its weakest links, never dropping the
    global maximum.
    """
    keep_u, keep_r = [], []
    for ui, ri in zip(u, r):
        if keep_r and np.sign(ri) == np.sign(keep_r[-1]):
            if abs(ri) > abs(keep_r[-1]):
                keep_u[-1], keep_r[-1] = ui, ri
        else:
            keep_u.append(ui)
            keep_r.append(ri)
    if len(keep_u) < n_pts:
        return None
    a = np.abs(np.array(keep_r))
    while len(keep_u) > n_pts:
        gm = int(np.argmax(a))
        excess = len(keep_u) - n_pts
        if excess == 1:
            drop = 0 if (a[0] <= a[-1] and gm != 0) or gm == len(a) - 1 else len(a) - 1
            del keep_u[drop], keep_r[drop]
            a = np.delete(a, drop)
        else:
            strength = np.maximum(a[:-1], a[1:])
            strength[max(0, gm - 1): gm + 1] = np.inf
            i = int(np.argmin(strength))
            del keep_u[i: i + 2], keep_r[i: i + 2]
            a = np.delete(a, (i, i + 1))
    return np.array(keep_u)


def remez(interval_set, weight, degree, eq=None, grid=4096, max_iter=60, tol=1e-12):
    """Monic minimax polynomial of the weight on an interval set.

    Alternation equations are solved on a shifting reference of
    degree + 1 points; candidate extrema come from per-band dense grids
    refined by golden section.  A converged solution is re-validated on
    an 8x denser sweep before being accepted.
    """
    K = interval_set
    hull = K.hull
    if eq is None:
        eq = potential.cached_equilibrium(K)
    w_hull = weight.resolve_hull(K)
    span = w_hull[1] - w_hull[0]
    if hull[0] < w_hull[0] - 1e-12 * span or hull[1] > w_hull[1] + 1e-12 * span:
        raise ValueError("set extends outside the weight frame")
    weight = dataclasses.replace(weight, hull=w_hull)
    bands_u = [(chebbasis.to_unit(hull, a), chebbasis.to_unit(hull, b)) for a, b in K.bands]
    lead = chebbasis.monic_lead(hull, degree)

    if degree == 0:
        coeffs = np.array([1.0])
        u_c, r_c = _band_candidates(coeffs, weight, hull, w_hull, bands_u, grid)
        i = int(np.argmax(np.abs(r_c)))
        level = float(abs(r_c[i]))
        return ChebyshevSolution(
            set=K, weight=weight, degree=0, coeffs=(1.0,), level=level,
            alternation=(float(chebbasis.from_unit(hull, u_c[i])),),
            iterations=0, residual=0.0,
        )

    u_ref = _initial_reference(K, eq, weight, degree + 1, hull, w_hull)
    sigma = (-1.0) ** (degree - np.arange(degree + 1))
    coeffs, level = None, 0.0
    for iteration in range(1, max_iter + 1):
        x_ref = chebbasis.from_unit(hull, u_ref)
        wk = weight.values(x_ref, w_hull)
        if np.any(wk <= 0.0):
            raise ConvergenceError("weight vanished on the reference")
        V = ncheb.chebvander(u_ref, degree)
        A = np.empty((degree + 1, degree + 1))
        A[:, :degree] = wk[:, None] * V[:, :degree]
        A[:, degree] = -sigma
        rhs = -lead * wk * V[:, degree]
        solved = np.linalg.solve(A, rhs)
        coeffs = np.append(solved[:degree], lead)
        level = abs(float(solved[degree]))
        if level == 0.0:
            raise ConvergenceError("degenerate reference, zero deviation")

        u_c, r_c = _band_candidates(coeffs, weight, hull, w_hull, bands_u, grid)
        peak = float(np.abs(r_c).max())
        if (peak - level) / level <= tol:
            break
        pool_u = np.concatenate([u_c, u_ref])
        pool_r = np.concatenate([r_c, wk * clenshaw(coeffs, u_ref)])
        order = np.argsort(pool_u)
        pool_u, pool_r = pool_u[order], pool_r[order]
        # collapse near-duplicates, strongest wins
        fresh_u, fresh_r = [pool_u[0]], [pool_r[0]]
        for ui, ri in zip(pool_u[1:], pool_r[1:]):
            if ui - fresh_u[-1] < 1e-13:
                if abs(ri) > abs(fresh_r[-1]):
                    fresh_u[-1], fresh_r[-1] = ui, ri
            else:
                fresh_u.append(ui)
                fresh_r.append(ri)
        new_ref = _alternating_subset(np.array(fresh_u), np.array(fresh_r), degree + 1)
        if new_ref is None or (new_ref.size == u_ref.size and np.allclose(new_ref, u_ref, atol=1e-15, rtol=0.0)):
            raise ConvergenceError(
                "exchange stagnated", residual=(peak - level) / level
            )
        u_ref = new_ref
    else:
        raise ConvergenceError(f"no convergence in {max_iter} exchanges")

    # independent sweep on a denser grid; golden refinement already
    # bounded every hump, so this can only fail if the scan missed one
    u_v, r_v = _band_candidates(coeffs, weight, hull, w_hull, bands_u, 8 * grid)
    sup_valid = float(np.abs(r_v).max())
    residual = (sup_valid - level) / level
    if residual > VALIDATION_SLACK:
        raise ConvergenceError("validation sweep exceeded the level", residual=residual)

    alt = _alternating_subset(u_c, r_c, degree + 1)
    alternation = tuple(float(t) for t in chebbasis.from_unit(hull, alt)) if alt is not None else ()
    return ChebyshevSolution(
        set=K, weight=weight, degree=degree,
        coeffs=tuple(float(c) for c in coeffs), level=level,
        alternation=alternation, iterations=iteration, residual=residual,
    )


def widom_inf(solution, equilibrium_data):
    """Sup-norm deviation normalized by the degree power of capacity."""
    log_cap = potential.log_capacity(equilibrium_data)
    return solution.level * math.exp(-solution.degree * log_cap)


def sup_bounds(equilibrium_data, weight):
    """Two-sided envelope for the normalized deviation at every degree.

    lower = 2 sqrt(Cap) in the frame's unit scale; it holds at every
    degree because the weighted square of any monic candidate maps the
    set into a segment whose capacity the level pins down.  The upper
    bound multiplies in half the Green value at the frame endpoint where
    the weight vanishes plus the total Green value over the gap critical
    points, and collapses onto the lower bound exactly when the set is a
    single interval anchored at that endpoint.
    """
    eq = equilibrium_data
    if weight.kind not in ("sqrt_one_plus", "sqrt_one_minus"):
        raise ValueError(f"no deviation envelope for weight kind {weight.kind!r}")
    a_r, b_r = weight.resolve_hull(eq.set)
    log_cap = potential.log_capacity(eq)
    cap_unit = math.exp(log_cap) * 2.0 / (b_r - a_r)
    lower = 2.0 * math.sqrt(cap_unit)
    anchor = a_r if weight.kind == "sqrt_one_plus" else b_r
    upper = lower * math.exp(0.5 * potential.green(eq, anchor) + potential.pw_data(eq).total)
    return lower, upper


KIND_FAMILY = {
    "unit": "first",
    "sqrt_one_minus_sq": "second",
    "sqrt_one_plus": "third",
    "sqrt_one_minus": "fourth",
}

_FAMILY_SEEDS = {
    "first": np.array([0.0, 1.0]),
    "second": np.array([0.0, 2.0]),
    "third": np.array([-1.0, 2.0]),
    "fourth": np.array([1.0, 2.0]),
}

_FAMILY_LEVELS = {
    "first": lambda n: 2.0 ** (1 - n) if n else 1.0,
    "second": lambda n: 2.0 ** (-n) if n else 1.0,
    "third": lambda n: math.sqrt(2.0) * 2.0 ** (-n),
    "fourth": lambda n: math.sqrt(2.0) * 2.0 ** (-n),
}


def kind_polynomial(kind, degree):
    """Classical single-interval minimax solution on [-1, 1].

    kind names the family (first, second, third, fourth) or the weight
    kind it solves; returns the monic coefficient series on [-1, 1]
    together with the exact deviation.  The four families share one
    three-term recurrence and differ only in the degree-one seed.
    """
    family = KIND_FAMILY.get(kind, kind)
    if family not in _FAMILY_SEEDS:
        raise ValueError(f"no classical family named {kind!r}")
    if degree == 0:
        return (1.0,), _FAMILY_LEVELS[family](0)
    prev, cur = np.array([1.0]), _FAMILY_SEEDS[family]
    for _ in range(degree - 1):
        prev, cur = cur, ncheb.chebadd(2.0 * ncheb.chebmulx(cur), -prev)
    coeffs = cur * (2.0 ** (1 - degree) / cur[-1])
    return tuple(float(c) for c in coeffs), _FAMILY_LEVELS[family](degree)


@dataclass(frozen=True)
class EnclosingPreimage:
    """Sublevel set {w^2 p^2 <= level^2} with its exact capacity."""

    set: object
    log_capacity: float
    degree: int


def enclosing_preimage(solution, merge_tol=1e-9):
    """Polynomial-preimage set a weighted minimax solution saturates.

    The sublevel set of w(x)^2 p(x)^2 at the squared level contains the
    original set and is itself a polynomial preimage of a segment, so
    its capacity is known in closed form from the level alone.  Requires
    integer weight exponents (the named kinds all qualify).
    """
    weight = solution.weight
    K = solution.set
    hull = K.hull
    if not weight.integer_exponents:
        raise ValueError("squared weight must be a polynomial")
    w_hull = weight.hull
    p = np.asarray(solution.coeffs, dtype=float)
    F = ncheb.chebmul(weight.w2_series(hull), ncheb.chebmul(p, p))
    total_degree = 2 * solution.degree + int(round(weight.alpha + weight.beta))
    if total_degree < 1:
        raise ValueError("constant problems have no enclosing preimage")
    t2 = solution.level ** 2

    shifted = F.copy()
    shifted[0] -= t2
    cuts = []
    for series in (shifted, F):
        roots = ncheb.chebroots(series)
        if roots.size:
            scale = max(1.0, float(np.abs(roots).max()))
            cuts.extend(roots[np.abs(roots.imag) <= 1e-9 * scale].real.tolist())
    cuts = sorted(set(cuts))
    if len(cuts) < 2:
        raise ConvergenceError("sublevel boundary not resolved")

    # tangencies of w^2 p^2 with the level (or with zero) sit exactly on
    # the acceptance boundary; solver noise must not open false holes
    slack = 10.0 * VALIDATION_SLACK
    segments = []
    for u_l, u_r in zip(cuts, cuts[1:]):
        mid_val = float(ncheb.chebval(0.5 * (u_l + u_r), F))
        if -slack * t2 <= mid_val <= t2 * (1.0 + slack):
            segments.append((chebbasis.from_unit(hull, u_l), chebbasis.from_unit(hull, u_r)))
    if not segments:
        raise ConvergenceError("sublevel set came out empty")
    enclosure = normalize(segments, merge_tol=merge_tol)

    for a, b in K.bands:
        j = enclosure.band_index(0.5 * (a + b))
        if j is None:
            raise ConvergenceError("enclosure lost a band")
        ea, eb = enclosure.bands[j]
        if a < ea - merge_tol or b > eb + merge_tol:
            raise ConvergenceError("enclosure does not contain the set")

    half_w = chebbasis.half_width(w_hull)
    log_cap = (math.log(t2 / 4.0) + (weight.alpha + weight.beta) * math.log(half_w)) / total_degree
    return EnclosingPreimage(set=enclosure, log_capacity=log_cap, degree=total_degree)
