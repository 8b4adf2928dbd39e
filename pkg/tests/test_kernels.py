import os
import subprocess
import sys

import numpy as np
import pytest

from helpers import ex26, ex31
from ratmat import _kernels
from ratmat.exactalg import roots_with_multiplicity
from ratmat.parser import parse_ratfun

needs_numba = pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")


def _nodes(center, radius, m=256):
    return center + radius * np.exp(2j * np.pi * np.arange(m) / m)


def test_numpy_integrand_matches_direct_formula():
    Q = ex31()
    Lc, qc = Q.coefficient_arrays()
    z = _nodes(1.0, 0.5, 64)
    got = _kernels.contour_integrand(Lc, qc, z, use_numba=False)
    # d/dz log det Q by central differences
    h = 1e-6

    def logdet(w):
        M = sum(Lc[k] * w**k for k in range(Lc.shape[0]))
        q = np.polyval(qc[::-1], w)
        return np.linalg.det(M) / q**3

    ref = np.array([(logdet(w + h) - logdet(w - h)) / (2 * h) / logdet(w) for w in z])
    assert np.allclose(got, ref, atol=1e-5)


@needs_numba
@pytest.mark.parametrize("build, center, radius", [(ex26, -1.0, 0.5), (ex31, 0.0, 0.5), (ex26, 0.0, 3.0)])
def test_integrand_paths_agree(build, center, radius):
    Lc, qc = build().coefficient_arrays()
    z = _nodes(center, radius)
    a = _kernels.contour_integrand(Lc, qc, z, use_numba=True)
    b = _kernels.contour_integrand(Lc, qc, z, use_numba=False)
    assert np.max(np.abs(a - b)) < 1e-10


@needs_numba
def test_aberth_paths_agree():
    rng = np.random.default_rng(5)
    roots = rng.normal(size=12) + 1j * rng.normal(size=12)
    c = np.poly(roots)[::-1]
    start = roots * (1 + 1e-3)
    a = np.sort_complex(_kernels.aberth(c, start, use_numba=True))
    b = np.sort_complex(_kernels.aberth(c, start, use_numba=False))
    assert np.max(np.abs(a - b)) < 1e-9
    assert np.max(np.abs(a - np.sort_complex(roots))) < 1e-9


def test_numeric_roots_polished():
    rs = roots_with_multiplicity(parse_ratfun("z^3 - 2").num)
    for r, _, bound in rs.numeric_roots:
        assert abs(r**3 - 2) < 1e-12
        assert bound < 1e-8


def test_env_flag_disables_numba():
    code = "from ratmat import _kernels; print(_kernels.HAVE_NUMBA)"
    env = dict(os.environ, RATMAT_DISABLE_NUMBA="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "False"


def test_env_flag_run_gives_same_logres():
    code = (
        "from ratmat.logres import Contour, log_residue\n"
        "from ratmat.matfun import ratmat_from_entries\n"
        "from ratmat.parser import parse_ratfun as p\n"
        "Q = ratmat_from_entries([[p('0'), p('1'), p('0')], [p('1/z'), p('0'), p('1')], [p('0'), p('0'), p('z^2-z')]])\n"
        "print(repr(log_residue(Q, Contour(1, 0.5)).value.real))\n"
    )
    vals = []
    for flag in ("1", "0"):
        env = dict(os.environ, RATMAT_DISABLE_NUMBA=flag)
        out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        vals.append(float(out.stdout))
    assert abs(vals[0] - 1) < 1e-8 and abs(vals[0] - vals[1]) < 1e-10
