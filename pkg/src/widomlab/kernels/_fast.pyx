# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in _pyref.py.

Same signatures and semantics; scalar loops instead of masked numpy
passes, which pays off in the per-extremum golden-section refinement.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport pow, sqrt

cnp.import_array()

BACKEND = "compiled"


cdef double _clenshaw_scalar(const double[::1] c, double t) noexcept nogil:
    cdef Py_ssize_t n = c.shape[0]
    cdef double bk1, bk2, tmp, two_t
    cdef Py_ssize_t k
    if n == 1:
        return c[0]
    two_t = 2.0 * t
    bk1 = c[n - 1]
    bk2 = 0.0
    for k in range(n - 2, 0, -1):
        tmp = c[k] + two_t * bk1 - bk2
        bk2 = bk1
        bk1 = tmp
    return c[0] + t * bk1 - bk2


def clenshaw(coeffs, t):
    """Evaluate a Chebyshev series at t (scalar or array) by Clenshaw."""
    cdef cnp.ndarray[double, ndim=1] c = np.ascontiguousarray(coeffs, dtype=np.float64)
    t_arr = np.asarray(t, dtype=np.float64)
    scalar = t_arr.ndim == 0
    cdef cnp.ndarray[double, ndim=1] tv = np.ascontiguousarray(np.atleast_1d(t_arr))
    cdef cnp.ndarray[double, ndim=1] out = np.empty(tv.shape[0], dtype=np.float64)
    cdef double[::1] cv = c
    cdef double[::1] tm = tv
    cdef double[::1] om = out
    cdef Py_ssize_t i, m = tv.shape[0]
    with nogil:
        for i in range(m):
            om[i] = _clenshaw_scalar(cv, tm[i])
    return out[0] if scalar else out


cdef inline double _weight_sq(double alpha, double beta, double q0, double q1, double t) noexcept nogil:
    cdef double u = q0 + q1 * t
    cdef double lo = 1.0 - u
    cdef double hi = 1.0 + u
    cdef double out = 1.0
    if lo < 0.0:
        lo = 0.0
    if hi < 0.0:
        hi = 0.0
    if alpha != 0.0:
        out *= pow(lo, alpha)
    if beta != 0.0:
        out *= pow(hi, beta)
    return out


cdef inline double _objective(const double[::1] pc, double alpha, double beta,
                              double q0, double q1, double t) noexcept nogil:
    cdef double pv = _clenshaw_scalar(pc, t)
    return _weight_sq(alpha, beta, q0, q1, t) * pv * pv


def golden_refine(pcoeffs, alpha, beta, q0, q1, lo, hi, tol=1e-13, max_iter=120):
    """Golden-section maximization of w2(t)*p(t)^2 on brackets [lo, hi]."""
    cdef cnp.ndarray[double, ndim=1] pc = np.ascontiguousarray(pcoeffs, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] lov = np.array(lo, dtype=np.float64).ravel()
    cdef cnp.ndarray[double, ndim=1] hiv = np.array(hi, dtype=np.float64).ravel()
    cdef Py_ssize_t nb = lov.shape[0]
    cdef cnp.ndarray[double, ndim=1] ts = np.empty(nb, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] ps = np.empty(nb, dtype=np.float64)
    cdef cnp.ndarray[double, ndim=1] ws = np.empty(nb, dtype=np.float64)
    cdef double[::1] pcm = pc
    cdef double[::1] lom = lov
    cdef double[::1] him = hiv
    cdef double[::1] tsm = ts
    cdef double[::1] psm = ps
    cdef double[::1] wsm = ws
    cdef double av = alpha, bv = beta, q0v = q0, q1v = q1
    cdef double invphi = (sqrt(5.0) - 1.0) / 2.0
    cdef double invphi2 = invphi * invphi
    cdef double a, b, x1, x2, f1, f2, tstar, tolv = tol
    cdef int it, maxit = max_iter
    cdef Py_ssize_t i
    with nogil:
        for i in range(nb):
            a = lom[i]
            b = him[i]
            x1 = a + invphi2 * (b - a)
            x2 = a + invphi * (b - a)
            f1 = _objective(pcm, av, bv, q0v, q1v, x1)
            f2 = _objective(pcm, av, bv, q0v, q1v, x2)
            for it in range(maxit):
                if b - a <= tolv:
                    break
                if f1 < f2:
                    a = x1
                    x1 = x2
                    f1 = f2
                    x2 = a + invphi * (b - a)
                    f2 = _objective(pcm, av, bv, q0v, q1v, x2)
                else:
                    b = x2
                    x2 = x1
                    f2 = f1
                    x1 = a + invphi2 * (b - a)
                    f1 = _objective(pcm, av, bv, q0v, q1v, x1)
            tstar = 0.5 * (a + b)
            tsm[i] = tstar
            psm[i] = _clenshaw_scalar(pcm, tstar)
            wsm[i] = _weight_sq(av, bv, q0v, q1v, tstar)
    return ts, ps, ws
