"""Chebyshev basis of an arbitrary hull interval.

All polynomial linear algebra in the package runs in the basis
T_k((2x - a - b)/(b - a)) of a hull [a, b]; monomial coefficients appear
only at serialization boundaries.  Coefficient vectors are plain 1-d
float arrays in the scaled variable u = (2x - a - b)/(b - a).
"""

import numpy as np
from numpy.polynomial import chebyshev as C
from numpy.polynomial import polynomial as P

from .kernels import clenshaw


def to_unit(hull, x):
    """Map hull coordinates to the reference variable u in [-1, 1]."""
    a, b = hull
    return (2.0 * np.asarray(x, dtype=float) - a - b) / (b - a)


def from_unit(hull, u):
    """Inverse of :func:`to_unit`."""
    a, b = hull
    return 0.5 * (a + b) + 0.5 * (b - a) * np.asarray(u, dtype=float)


def half_width(hull):
    a, b = hull
    return 0.5 * (b - a)


def monic_lead(hull, n):
    """Leading Chebyshev coefficient of the monic degree-n polynomial.

    x^n + ... = monic_lead * T_n(u) + lower order, so a monic polynomial
    stores this value in its last coefficient slot.
    """
    if n == 0:
        return 1.0
    return 2.0 * (half_width(hull) / 2.0) ** n


def evaluate(hull, coeffs, x):
    """Evaluate a coefficient vector at points x (hull coordinates)."""
    return clenshaw(np.asarray(coeffs, dtype=float), to_unit(hull, x))


def multiply(c1, c2):
    """Product of two series over the same hull."""
    return C.chebmul(c1, c2)


def add(c1, c2):
    return C.chebadd(c1, c2)


def mul_by_x(hull, c):
    """Multiply a series by the identity polynomial x of the hull."""
    a, b = hull
    mid = 0.5 * (a + b)
    return C.chebadd(half_width(hull) * C.chebmulx(c), mid * np.asarray(c, dtype=float))


def derivative(hull, c):
    return C.chebder(c) / half_width(hull)


def real_roots(hull, c, imag_tol=1e-9):
    """Real roots of a series, in hull coordinates, sorted ascending."""
    c = np.trim_zeros(np.asarray(c, dtype=float), "b")
    if c.size <= 1:
        return np.array([])
    u = C.chebroots(c)
    u = u[np.abs(u.imag) <= imag_tol * max(1.0, np.abs(u).max())].real
    return np.sort(from_unit(hull, u))


def to_monomial(hull, c):
    """Monomial coefficients (ascending powers of x) of a series."""
    cu = C.cheb2poly(c)  # polynomial in u
    a, b = hull
    # compose with u(x) = (2x - a - b)/(b - a)
    lin = np.array([-(a + b) / (b - a), 2.0 / (b - a)])
    out = np.zeros(1)
    for ck in cu[::-1]:
        out = P.polyadd(P.polymul(out, lin), [ck])
    return out


def from_monomial(hull, m):
    """Series coefficients of a polynomial given by monomial coefficients."""
    a, b = hull
    # compose with x(u) = mid + half*u, then convert u-polynomial to T-basis
    lin = np.array([0.5 * (a + b), 0.5 * (b - a)])
    out = np.zeros(1)
    for mk in np.asarray(m, dtype=float)[::-1]:
        out = P.polyadd(P.polymul(out, lin), [mk])
    return C.poly2cheb(out)


def interpolate(func, hull, degree):
    """Chebyshev interpolant of func on the hull at first-kind points.

    Coefficients come from the discrete cosine transform, which is exact
    for the interpolant at these nodes.
    """
    n = degree + 1
    theta = np.pi * (2.0 * np.arange(n) + 1.0) / (2.0 * n)
    u = np.cos(theta)
    vals = np.asarray(func(from_unit(hull, u)), dtype=float)
    m = np.arange(n)
    coeffs = (2.0 / n) * (np.cos(np.outer(m, theta)) @ vals)
    coeffs[0] *= 0.5
    return coeffs
