"""Monic orthogonal polynomials for endpoint-weighted equilibrium measures.

The measure is (1-u)^alpha (1+u)^beta dmu, where mu is the equilibrium
measure of an interval set and u the unit coordinate of a reference
frame (by default the literal [-1, 1]).  Inner products use per-band
Gauss-Jacobi rules whose exponents absorb both the inverse square root
of the band parameterization and, on bands touching the frame ends, the
endpoint weight itself, so every integrand the rules see is analytic.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import roots_jacobi

from . import chebbasis, potential
from .errors import QuadratureError

_TOUCH_TOL = 1e-13
ENTROPY_CHECK_TOL = 1e-7
GRAM_LIMIT = 12


@dataclass(frozen=True)
class JacobiOnEq:
    """Measure (1-u)^alpha (1+u)^beta dmu in reference unit coordinates.

    Exponents must exceed -1/2 (the quadrature exponents shift by that
    much).  The set has to live inside the reference frame; with the
    default frame [-1, 1] the weight is the literal (1-x)^alpha
    (1+x)^beta whether or not the set reaches the frame ends.
    """

    eq: object
    alpha: float
    beta: float
    reference_hull: tuple = None

    def __post_init__(self):
        if self.alpha <= -0.5 or self.beta <= -0.5:
            raise ValueError("weight exponents must exceed -1/2")
        hull = self.reference_hull
        if hull is None:
            if self.alpha == 0.0 and self.beta == 0.0:
                hull = self.eq.set.hull
            else:
                hull = (-1.0, 1.0)
        a, b = float(hull[0]), float(hull[1])
        if not a < b:
            raise ValueError("reference frame endpoints out of order")
        ka, kb = self.eq.set.hull
        span = b - a
        if ka < a - 1e-12 * span or kb > b + 1e-12 * span:
            raise ValueError("set sticks out of the reference frame")
        object.__setattr__(self, "reference_hull", (a, b))
        object.__setattr__(self, "alpha", float(self.alpha))
        object.__setattr__(self, "beta", float(self.beta))

    def _touches(self, band):
        ra, rb = self.reference_hull
        span = rb - ra
        return (abs(band[0] - ra) <= _TOUCH_TOL * span,
                abs(band[1] - rb) <= _TOUCH_TOL * span)

    def rules(self, n_quad):
        """Per-band nodes and weights integrating smooth f against the measure."""
        eq = self.eq
        ra, rb = self.reference_hull
        half_ref = 0.5 * (rb - ra)
        out = []
        for j, band in enumerate(eq.set.bands):
            left_touch, right_touch = self._touches(band)
            A = self.alpha - 0.5 if right_touch else -0.5
            B = self.beta - 0.5 if left_touch else -0.5
            t, wq = roots_jacobi(n_quad, A, B)
            x = chebbasis.from_unit(band, t)
            w = wq / math.pi * eq.band_profile(j, t)
            ratio = chebbasis.half_width(band) / half_ref
            u_ref = chebbasis.to_unit(self.reference_hull, x)
            if right_touch:
                w = w * ratio ** self.alpha
            elif self.alpha != 0.0:
                w = w * (1.0 - u_ref) ** self.alpha
            if left_touch:
                w = w * ratio ** self.beta
            elif self.beta != 0.0:
                w = w * (1.0 + u_ref) ** self.beta
            out.append((x, w))
        return out

    def integrate(self, f, n_quad=160):
        """Integral of a vectorized smooth function against the measure."""
        return float(sum((w * np.asarray(f(x), dtype=float)).sum()
                         for x, w in self.rules(n_quad)))

    def mass(self, n_quad=160):
        return float(sum(w.sum() for _, w in self.rules(n_quad)))


@dataclass(frozen=True)
class OrthoData:
    """Recurrence data P_{k+1} = (x - a_k) P_k - b_k P_{k-1} with norms.

    norms[k] is the squared L2 norm of the monic P_k; recurrence_b[k]
    equals norms[k] / norms[k-1] for k >= 1 and is zero at k = 0.
    """

    measure: JacobiOnEq
    recurrence_a: tuple
    recurrence_b: tuple
    norms: tuple
    n_quad: int

    @property
    def degree_max(self):
        return len(self.norms) - 1

    def evaluate(self, n, x):
        """Values of the monic orthogonal polynomial of degree n."""
        if n > self.degree_max:
            raise ValueError(f"recurrence data stops at degree {self.degree_max}")
        x = np.asarray(x, dtype=float)
        p_prev = np.zeros_like(x)
        p_cur = np.ones_like(x)
        for k in range(n):
            p_prev, p_cur = p_cur, (x - self.recurrence_a[k]) * p_cur \
                - self.recurrence_b[k] * p_prev
        return p_cur

    def norm(self, n):
        return self.norms[n]


def stieltjes(measure, n_max, n_quad=None):
    """Recurrence coefficients and norms by the discretized Stieltjes walk.

    Polynomial values at the quadrature nodes ride the recurrence itself,
    in hull-scaled coordinates so nothing overflows; coefficients and
    norms are mapped back to x units at the end.
    """
    if n_quad is None:
        n_quad = max(96, n_max + 64)
    hull = measure.eq.set.hull
    mid = 0.5 * (hull[0] + hull[1])
    half = chebbasis.half_width(hull)
    pairs = measure.rules(n_quad)
    xt = np.concatenate([chebbasis.to_unit(hull, x) for x, _ in pairs])
    w = np.concatenate([wj for _, wj in pairs])

    a_t, b_t, norms_t = [], [], []
    p_prev = np.zeros_like(xt)
    p_cur = np.ones_like(xt)
    for k in range(n_max + 1):
        nk = float(w @ (p_cur * p_cur))
        if not nk > 0.0:
            raise QuadratureError(f"nonpositive norm at degree {k}")
        norms_t.append(nk)
        if k == n_max:
            break
        ak = float(w @ (xt * p_cur * p_cur)) / nk
        bk = nk / norms_t[k - 1] if k >= 1 else 0.0
        a_t.append(ak)
        b_t.append(bk)
        p_prev, p_cur = p_cur, (xt - ak) * p_cur - bk * p_prev

    a = tuple(mid + half * v for v in a_t)
    b = tuple(half * half * v for v in b_t)
    norms = tuple(v * half ** (2 * k) for k, v in enumerate(norms_t))
    return OrthoData(measure=measure, recurrence_a=a, recurrence_b=b,
                     norms=norms, n_quad=n_quad)


def widom2_sq(ortho, n):
    """Squared L2 deviation ratio: norm of P_n over capacity to the 2n."""
    log_cap = potential.log_capacity(ortho.measure.eq)
    return ortho.norms[n] * math.exp(-2.0 * n * log_cap)


def _graded_panels(depth=46, order=16):
    """Composite Gauss nodes on [0, pi], geometrically refined at both ends."""
    t, w = np.polynomial.legendre.leggauss(order)
    edges = [0.0]
    edges += [0.5 * math.pi * 2.0 ** (-k) for k in range(depth, -1, -1)]
    edges += [math.pi - 0.5 * math.pi * 2.0 ** (-k) for k in range(1, depth + 1)]
    edges += [math.pi]
    nodes, weights = [], []
    for lo, hi in zip(edges, edges[1:]):
        h = 0.5 * (hi - lo)
        nodes.append(lo + h * (t + 1.0))
        weights.append(h * w)
    return np.concatenate(nodes), np.concatenate(weights)


def _log_factors(measure, band, touches, theta):
    """log(1-u) and log(1+u) along a band, stable at touching endpoints."""
    ra, rb = measure.reference_hull
    half_ref = 0.5 * (rb - ra)
    ratio = chebbasis.half_width(band) / half_ref
    left_touch, right_touch = touches
    x = chebbasis.from_unit(band, np.cos(theta))
    if right_touch:
        log_hi = np.log(2.0 * ratio) + 2.0 * np.log(np.abs(np.sin(0.5 * theta)))
    else:
        log_hi = np.log((rb - x) / half_ref)
    if left_touch:
        log_lo = np.log(2.0 * ratio) + 2.0 * np.log(np.abs(np.cos(0.5 * theta)))
    else:
        log_lo = np.log((x - ra) / half_ref)
    return log_hi, log_lo


def entropy(measure, check_tol=ENTROPY_CHECK_TOL):
    """Geometric mean of the weight density against the equilibrium measure.

    The closed form combines capacity in reference coordinates with
    Green values at the frame endpoints (which vanish whenever those
    endpoints belong to the set).  A graded-mesh quadrature of the two
    logarithmic moments must confirm it before the value is returned.
    """
    eq = measure.eq
    ra, rb = measure.reference_hull
    log_cap_u = potential.log_capacity(eq) + math.log(2.0 / (rb - ra))
    g_right = potential.green(eq, rb)
    g_left = potential.green(eq, ra)
    log_s = measure.alpha * (log_cap_u + g_right) + measure.beta * (log_cap_u + g_left)

    theta, w_th = _graded_panels()
    u = np.cos(theta)
    m_right = m_left = 0.0
    for j, band in enumerate(eq.set.bands):
        profile = eq.band_profile(j, u)
        log_hi, log_lo = _log_factors(measure, band, measure._touches(band), theta)
        m_right += float(w_th @ (log_hi * profile)) / math.pi
        m_left += float(w_th @ (log_lo * profile)) / math.pi
    log_s_quad = measure.alpha * m_right + measure.beta * m_left
    if abs(log_s - log_s_quad) > check_tol:
        raise QuadratureError(
            f"entropy routes disagree: {log_s:.12e} vs {log_s_quad:.12e}"
        )
    return math.exp(log_s)


def gram_oracle(measure, degree):
    """Norms of the monic orthogonal polynomials from a moment Gram matrix.

    Assembles the Gram matrix of the first-kind basis on a graded mesh
    that shares nothing with the Gauss-Jacobi machinery, then reads the
    norms off its Cholesky factor.  A deliberate second route for
    cross-checking :func:`stieltjes`; degrees are capped because moment
    matrices lose digits fast.
    """
    if degree > GRAM_LIMIT:
        raise ValueError(f"gram oracle is limited to degree {GRAM_LIMIT}")
    eq = measure.eq
    hull = eq.set.hull
    half = chebbasis.half_width(hull)
    theta, w_th = _graded_panels()
    u = np.cos(theta)
    gram = np.zeros((degree + 1, degree + 1))
    for j, band in enumerate(eq.set.bands):
        x = chebbasis.from_unit(band, u)
        profile = eq.band_profile(j, u)
        log_hi, log_lo = _log_factors(measure, band, measure._touches(band), theta)
        density = w_th * profile / math.pi \
            * np.exp(measure.alpha * log_hi + measure.beta * log_lo)
        vander = np.polynomial.chebyshev.chebvander(chebbasis.to_unit(hull, x), degree)
        gram += (vander * density[:, None]).T @ vander
    chol = np.linalg.cholesky(gram)
    diag = np.diagonal(chol)
    norms = [float(diag[0] ** 2)]
    for n in range(1, degree + 1):
        norms.append(float((diag[n] * 2.0 ** (1 - n)) ** 2 * half ** (2 * n)))
    return tuple(norms)
