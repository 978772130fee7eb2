"""Pure numpy implementations of the hot kernels.

Reference semantics for the compiled extension in ``_fast.pyx``; the two
backends must agree to rounding.  Everything operates in the scaled
variable t in [-1, 1] of some hull.
"""

import numpy as np

BACKEND = "python"


def clenshaw(coeffs, t):
    """Evaluate a Chebyshev series at t (scalar or array) by Clenshaw.

    Matches numpy.polynomial.chebyshev.chebval but stays cheap for the
    short series and large grids used by the Remez scan.
    """
    c = np.asarray(coeffs, dtype=float)
    t = np.asarray(t, dtype=float)
    scalar = t.ndim == 0
    t = np.atleast_1d(t)
    n = c.size
    if n == 1:
        out = np.full_like(t, c[0])
        return out[0] if scalar else out
    two_t = 2.0 * t
    bk1 = np.full_like(t, c[-1])
    bk2 = np.zeros_like(t)
    for k in range(n - 2, 0, -1):
        bk1, bk2 = c[k] + two_t * bk1 - bk2, bk1
    out = c[0] + t * bk1 - bk2
    return out[0] if scalar else out


def _weight_sq(alpha, beta, q0, q1, t):
    """Squared endpoint weight (1-u)^alpha (1+u)^beta at u = q0 + q1*t."""
    u = q0 + q1 * np.asarray(t, dtype=float)
    lo = np.maximum(1.0 - u, 0.0)
    hi = np.maximum(1.0 + u, 0.0)
    return lo ** alpha * hi ** beta


def golden_refine(pcoeffs, alpha, beta, q0, q1, lo, hi, tol=1e-13, max_iter=120):
    """Golden-section maximization of w2(t)*p(t)^2 on brackets [lo, hi].

    pcoeffs is a Chebyshev series in t; the squared weight is
    (1-u)^alpha (1+u)^beta evaluated at u = q0 + q1*t, clamped at zero
    so fractional exponents stay real just outside the frame.  Returns
    (t_star, p_star, w2_star) with the polynomial and squared-weight
    values at the maximizer.  All brackets advance in lockstep; the loop
    exits when every bracket is shorter than tol.
    """
    lo = np.array(lo, dtype=float)
    hi = np.array(hi, dtype=float)
    invphi = (np.sqrt(5.0) - 1.0) / 2.0
    invphi2 = invphi * invphi

    def objective(t):
        pv = clenshaw(pcoeffs, t)
        return _weight_sq(alpha, beta, q0, q1, t) * pv * pv

    x1 = lo + invphi2 * (hi - lo)
    x2 = lo + invphi * (hi - lo)
    f1 = objective(x1)
    f2 = objective(x2)
    for _ in range(max_iter):
        if np.all(hi - lo <= tol):
            break
        move_right = f1 < f2
        # shrink [lo, x2] -> keep x1 as new x2 where the max is on the left
        new_lo = np.where(move_right, x1, lo)
        new_hi = np.where(move_right, hi, x2)
        lo, hi = new_lo, new_hi
        x1_new = lo + invphi2 * (hi - lo)
        x2_new = lo + invphi * (hi - lo)
        f1_new = np.where(move_right, f2, objective(x1_new))
        x1_keep = np.where(move_right, x2, x1_new)
        # where we moved right, old x2 becomes x1; evaluate the fresh x2
        f2_new = np.where(move_right, objective(x2_new), f1)
        x2_keep = np.where(move_right, x2_new, x1)
        x1, x2, f1, f2 = x1_keep, x2_keep, f1_new, f2_new
    t_star = 0.5 * (lo + hi)
    p_star = clenshaw(pcoeffs, t_star)
    w2_star = _weight_sq(alpha, beta, q0, q1, t_star)
    return t_star, p_star, w2_star
