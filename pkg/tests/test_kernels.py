"""Backend agreement: the compiled kernels must match the numpy reference."""

import numpy as np
import numpy.polynomial.chebyshev as ncheb
import pytest

from widomlab.kernels import _pyref

try:
    from widomlab.kernels import _fast
except ImportError:
    _fast = None

needs_fast = pytest.mark.skipif(_fast is None, reason="compiled kernels unavailable")


def test_clenshaw_matches_numpy():
    rng = np.random.default_rng(5)
    for n in (1, 2, 7, 30):
        c = rng.standard_normal(n)
        t = rng.uniform(-1, 1, size=257)
        assert np.allclose(_pyref.clenshaw(c, t), ncheb.chebval(t, c),
                           rtol=1e-13, atol=1e-13)


def test_clenshaw_scalar_path():
    c = np.array([1.0, -0.5, 0.25])
    val = _pyref.clenshaw(c, 0.3)
    assert np.isscalar(val) or np.ndim(val) == 0
    assert val == pytest.approx(float(ncheb.chebval(0.3, c)), rel=1e-15)


@needs_fast
def test_backends_agree_on_clenshaw():
    rng = np.random.default_rng(17)
    for n in (1, 3, 12, 25):
        c = rng.standard_normal(n)
        t = rng.uniform(-1, 1, size=513)
        assert np.allclose(_fast.clenshaw(c, t), _pyref.clenshaw(c, t),
                           rtol=1e-14, atol=1e-15)


@needs_fast
def test_backends_agree_on_golden_refine():
    rng = np.random.default_rng(23)
    for alpha, beta in [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0), (2.0, 3.0)]:
        c = rng.standard_normal(7)
        lo = np.sort(rng.uniform(-1, 0.8, size=12))
        hi = lo + rng.uniform(0.01, 0.2, size=12)
        hi = np.minimum(hi, 1.0)
        args = (c, alpha, beta, 0.1, 0.9, lo, hi)
        t_f, p_f, w_f = _fast.golden_refine(*args)
        t_p, p_p, w_p = _pyref.golden_refine(*args)
        assert np.allclose(t_f, t_p, atol=1e-10)
        assert np.allclose(p_f, p_p, atol=1e-10)
        assert np.allclose(w_f, w_p, atol=1e-10)


def test_golden_refine_finds_interior_maximum():
    # unweighted parabola peaking at t = 0.5
    c = ncheb.poly2cheb([0.0, 1.0, -1.0])  # t - t^2
    t, p, w2 = _pyref.golden_refine(c, 0.0, 0.0, 0.0, 1.0,
                                    np.array([0.0]), np.array([1.0]))
    assert t[0] == pytest.approx(0.5, abs=1e-7)
    assert p[0] == pytest.approx(0.25, abs=1e-10)
    assert w2[0] == pytest.approx(1.0, rel=1e-12)


def test_environment_override_is_honored(tmp_path):
    import subprocess
    import sys
    code = ("import widomlab.kernels as k; print(k.BACKEND)")
    for req, expect in (("python", "python"), ("auto", None)):
        out = subprocess.run(
            [sys.executable, "-c", code],
            env={"WIDOMLAB_KERNELS": req, "PATH": "/usr/bin:/bin"},
            capture_output=True, text=True, cwd="/", check=True)
        got = out.stdout.strip()
        if expect:
            assert got == expect
        else:
            assert got in ("python", "compiled")
