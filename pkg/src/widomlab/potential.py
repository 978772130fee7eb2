"""Equilibrium measures, Green functions and capacity on interval sets.

The central object is :func:`equilibrium`.  It resolves the density of
the equilibrium measure band by band: on a band [a, b] the substitution
x = mid + half*cos(theta) turns the density into a smooth profile
D_j(theta), which we store as a Chebyshev series in cos(theta).  The
band mass is then the zeroth coefficient, and the logarithmic potential
of each band piece collapses to a fast series in the same coefficients.
Capacity, Green function values and gap critical points are all derived
from that data.
"""

import dataclasses
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numpy.polynomial import chebyshev as ncheb
from scipy.optimize import brentq

from . import chebbasis
from .errors import ConvergenceError
from .intervals import gaps as set_gaps

MASS_TOL = 1e-8
ANCHOR_TOL = 1e-9


@lru_cache(maxsize=64)
def _gl(n):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


def _gl_on(a, b, n):
    """Gauss-Legendre nodes and weights transplanted to [a, b]."""
    x, w = _gl(n)
    half = 0.5 * (b - a)
    return a + half * (x + 1.0), half * w


def _band_potential(band, d, x):
    """Logarithmic potential of one band piece at the points x.

    Inside the band the series telescopes against the Chebyshev profile;
    outside it becomes a geometric series in the inverse Joukowski
    variable.  Both branches agree at the band endpoints.
    """
    a, b = band
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    u0 = (x - mid) / half
    m = np.arange(len(d), dtype=float)
    m[0] = 1.0
    ser = np.asarray(d, dtype=float) / m
    ser[0] = 0.0

    out = np.empty_like(u0)
    inside = np.abs(u0) <= 1.0
    if inside.any():
        out[inside] = d[0] * math.log(half / 2.0) - ncheb.chebval(u0[inside], ser)
    if (~inside).any():
        uo = u0[~inside]
        v = uo + np.sign(uo) * np.sqrt(uo * uo - 1.0)
        r = 1.0 / v
        acc = np.zeros_like(r)
        for c in ser[:0:-1]:
            acc = acc * r + c
        acc = acc * r
        out[~inside] = d[0] * np.log(half * np.abs(v) / 2.0) - acc
    return out


@dataclass(frozen=True)
class EquilibriumData:
    """Resolved equilibrium measure of an interval set.

    q_cheb holds the monic gap polynomial in the hull-Chebyshev basis
    (identically 1 for a single band).  band_coeffs[j] is the Chebyshev
    series of the angular density profile on band j, so band_masses[j]
    equals band_coeffs[j][0].
    """

    set: object
    q_cheb: tuple
    gap_roots: tuple
    band_coeffs: tuple
    band_masses: tuple
    mass_residual: float
    frostman_residual: float
    n_cheb: int

    def q(self, x):
        """Monic polynomial vanishing once in each gap."""
        g = len(self.gap_roots)
        hull = self.set.hull
        s = chebbasis.to_unit(hull, np.asarray(x, dtype=float))
        return chebbasis.half_width(hull) ** g * ncheb.chebval(s, np.asarray(self.q_cheb))

    def density(self, x):
        """Equilibrium density; zero off the bands, unbounded at endpoints."""
        x_arr = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.zeros_like(x_arr)
        mask = np.zeros(x_arr.shape, dtype=bool)
        for a, b in self.set.bands:
            mask |= (x_arr >= a) & (x_arr <= b)
        if mask.any():
            xs = x_arr[mask]
            rad = np.ones_like(xs)
            for e in self.set.endpoints:
                rad *= np.abs(xs - e)
            with np.errstate(divide="ignore"):
                out[mask] = np.abs(self.q(xs)) / (np.pi * np.sqrt(rad))
        if np.ndim(x) == 0:
            return float(out[0])
        return out

    def potential(self, x):
        """Integral of log|x - t| against the equilibrium measure."""
        x_arr = np.atleast_1d(np.asarray(x, dtype=float))
        total = np.zeros_like(x_arr)
        for band, d in zip(self.set.bands, self.band_coeffs):
            total += _band_potential(band, np.asarray(d), x_arr)
        if np.ndim(x) == 0:
            return float(total[0])
        return total

    def band_profile(self, j, u):
        """Angular density profile of band j at u = cos(theta)."""
        return ncheb.chebval(np.asarray(u, dtype=float), np.asarray(self.band_coeffs[j]))


def equilibrium(interval_set, n_cheb=128, n_gap=96):
    """Solve for the equilibrium measure of a finite union of intervals.

    The gap polynomial is determined by requiring its integral against
    dt/sqrt|R| to vanish across every gap; those conditions are linear
    in the coefficients, so a single dense solve plus one bracketed root
    search per gap pins it down.  Band profiles are then interpolated at
    n_cheb + 1 Chebyshev points each.
    """
    K = interval_set
    hull = K.hull
    half_hull = chebbasis.half_width(hull)
    endpoints = K.endpoints
    gap_list = set_gaps(K)
    g = len(gap_list)

    if g == 0:
        q_coeffs = np.array([1.0])
    else:
        lead = 2.0 ** (1 - g)
        rows = np.empty((g, g + 1))
        for k, gap in enumerate(gap_list):
            mid = 0.5 * (gap.left + gap.right)
            half = 0.5 * (gap.right - gap.left)
            theta, w = _gl_on(0.0, math.pi, n_gap)
            t = mid + half * np.cos(theta)
            others = [e for e in endpoints if e != gap.left and e != gap.right]
            rad = np.ones_like(t)
            for e in others:
                rad *= np.abs(t - e)
            weight = w / np.sqrt(rad)
            vander = ncheb.chebvander(chebbasis.to_unit(hull, t), g)
            rows[k] = weight @ vander
        coeffs = np.linalg.solve(rows[:, :g], -lead * rows[:, g])
        q_coeffs = np.append(coeffs, lead)

    def q_eval(x):
        x = np.asarray(x, dtype=float)
        return half_hull ** g * ncheb.chebval(chebbasis.to_unit(hull, x), q_coeffs)

    roots = []
    for gap in gap_list:
        va = float(q_eval(gap.left))
        vb = float(q_eval(gap.right))
        if va == 0.0 or vb == 0.0 or va * vb > 0.0:
            raise ConvergenceError(
                f"gap polynomial does not change sign across ({gap.left}, {gap.right})"
            )
        roots.append(brentq(lambda t: float(q_eval(t)), gap.left, gap.right,
                            xtol=1e-14, rtol=4 * np.finfo(float).eps))

    band_coeffs = []
    for j, band in enumerate(K.bands):
        others = [e for e in endpoints if e != band[0] and e != band[1]]

        def profile(x, _others=others):
            x = np.asarray(x, dtype=float)
            rad = np.ones_like(x)
            for e in _others:
                rad *= np.abs(x - e)
            return np.abs(q_eval(x)) / np.sqrt(rad)

        band_coeffs.append(chebbasis.interpolate(profile, band, n_cheb))

    masses = tuple(float(d[0]) for d in band_coeffs)
    residual = abs(sum(masses) - 1.0)
    if residual > MASS_TOL:
        raise ConvergenceError("equilibrium mass defect too large", residual=residual)

    eq = EquilibriumData(
        set=K,
        q_cheb=tuple(float(c) for c in q_coeffs),
        gap_roots=tuple(roots),
        band_coeffs=tuple(np.asarray(d) for d in band_coeffs),
        band_masses=masses,
        mass_residual=residual,
        frostman_residual=0.0,
        n_cheb=n_cheb,
    )

    # flatness of the potential over the bands is the real convergence gauge
    samples = []
    for a, b in K.bands:
        u = np.cos(np.pi * (2.0 * np.arange(7) + 1.0) / 14.0)
        samples.append(eq.potential(0.5 * (a + b) + 0.5 * (b - a) * (0.97 * u)))
    samples = np.concatenate(samples)
    eq = dataclasses.replace(eq, frostman_residual=float(samples.max() - samples.min()))
    return eq


@lru_cache(maxsize=32)
def cached_equilibrium(interval_set, n_cheb=128, n_gap=96):
    """Memoized :func:`equilibrium`; callers must not mutate the result."""
    return equilibrium(interval_set, n_cheb=n_cheb, n_gap=n_gap)


def green(equilibrium_data, x, boundary_tol=1e-12):
    """Green function of the complement domain at a real point.

    Integrates the density of the gap polynomial over sqrt|R| along the
    real line starting from the nearest band endpoint e, with t = e +/-
    s**2 so the endpoint singularity cancels.  Points of the set map to
    exactly zero.
    """
    eq = equilibrium_data
    xf = float(x)
    K = eq.set
    if K.contains(xf, tol=boundary_tol):
        return 0.0
    endpoints = K.endpoints
    e = min(endpoints, key=lambda t: abs(xf - t))
    direction = 1.0 if xf > e else -1.0
    span = math.sqrt(abs(xf - e))
    others = [t for t in endpoints if t != e]

    def integrand(s):
        t = e + direction * s * s
        rad = np.ones_like(t)
        for o in others:
            rad *= np.abs(t - o)
        return 2.0 * eq.q(t) / np.sqrt(rad)

    total = 0.0
    n_panels = max(1, int(math.ceil(span)))
    edges = np.linspace(0.0, span, n_panels + 1)
    for lo, hi in zip(edges, edges[1:]):
        s, w = _gl_on(lo, hi, 64)
        total += float(w @ integrand(s))

    value = math.copysign(1.0, float(eq.q(e))) * total
    if value < -1e-9:
        raise ConvergenceError("negative Green function value", residual=value)
    return max(value, 0.0)


def log_capacity(equilibrium_data, tol=ANCHOR_TOL):
    """Logarithmic capacity via potential-minus-Green at two anchors.

    The combination U(z) - g(z) is constant off the set; evaluating it
    at two points to the right of the hull and demanding agreement
    guards both routes at once.
    """
    eq = equilibrium_data
    b = eq.set.hull[1]
    vals = [eq.potential(b + dz) - green(eq, b + dz) for dz in (1.0, 2.0)]
    if abs(vals[0] - vals[1]) > tol:
        raise ConvergenceError(
            "capacity anchors disagree", residual=abs(vals[0] - vals[1])
        )
    return 0.5 * (vals[0] + vals[1])


@dataclass(frozen=True)
class PWData:
    """Gap critical points with their Green values and the total sum."""

    points: tuple
    values: tuple
    total: float


def pw_data(equilibrium_data):
    """Green function maxima over the gaps, one per gap, and their sum."""
    eq = equilibrium_data
    values = tuple(green(eq, z) for z in eq.gap_roots)
    return PWData(points=tuple(eq.gap_roots), values=values, total=float(sum(values)))


def integrate_dmu(equilibrium_data, f, n=256):
    """Integrate a vectorized function against the equilibrium measure."""
    eq = equilibrium_data
    theta, w = _gl_on(0.0, math.pi, n)
    u = np.cos(theta)
    total = 0.0
    for band, d in zip(eq.set.bands, eq.band_coeffs):
        a, b = band
        x = 0.5 * (a + b) + 0.5 * (b - a) * u
        profile = ncheb.chebval(u, np.asarray(d))
        total += float(w @ (np.asarray(f(x), dtype=float) * profile)) / math.pi
    return total
