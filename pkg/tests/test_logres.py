import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import ex26, ex31, ex55, mat, random_ratmat
from ratmat import _kernels
from ratmat.errors import ContourThroughSingularity, SingularFunction
from ratmat.matfun import RatMatFun
from ratmat.logres import Contour, contour_for_report, log_residue, residue_consistency
from ratmat.structure import analyze

GOLDEN = [
    (ex31, 1, 0.5, 1),
    (ex31, 0, 0.5, 0),
    (ex26, 0, 0.5, -4),
    (ex26, -1, 0.5, 4),
    (ex26, 0, 3.0, 0),
    (ex55, 1, 0.5, 2),
]


@pytest.mark.parametrize("build, center, radius, expected", GOLDEN)
def test_golden_contours(build, center, radius, expected):
    res = log_residue(build(), Contour(center, radius))
    assert res.nearest_int == expected
    assert abs(res.value - expected) < 1e-8
    assert res.doubling_change < 1e-8


@pytest.mark.parametrize("build, center, radius, expected", GOLDEN)
def test_radius_invariance(build, center, radius, expected):
    a = log_residue(build(), Contour(center, radius)).value
    b = log_residue(build(), Contour(center, radius * 0.6)).value
    assert abs(a - b) < 1e-8


def test_identity_and_empty_region():
    assert log_residue(RatMatFun.identity(3), Contour(0, 5)).nearest_int == 0
    assert log_residue(ex26(), Contour(5, 1)).nearest_int == 0


def test_additivity_over_disjoint_contours():
    Q = ex26()
    whole = log_residue(Q, Contour(-0.5, 2.0)).value
    parts = log_residue(Q, Contour(0, 0.4)).value + log_residue(Q, Contour(-1, 0.4)).value
    assert abs(whole - parts) < 1e-8


def test_contour_through_singularity():
    with pytest.raises(ContourThroughSingularity):
        log_residue(ex31(), Contour(0, 1))


def test_singular_function_rejected():
    with pytest.raises(SingularFunction):
        log_residue(mat([["z", "z"], ["1", "1"]]), Contour(0, 1))


def test_bad_contour_parameters():
    with pytest.raises(ValueError):
        Contour(0, 0)
    with pytest.raises(ValueError):
        Contour(0, 1, nodes=8)


def test_symbolic_path_agrees():
    Q = ex26()
    c = Contour(-1, 0.5)
    fast = log_residue(Q, c).value
    slow = log_residue(Q, c, symbolic_check=True).value
    assert abs(fast - slow) < 1e-9


@pytest.mark.skipif(not _kernels.HAVE_NUMBA, reason="numba not installed")
def test_numba_and_numpy_agree():
    Q = ex31()
    c = Contour(1, 0.5)
    a = log_residue(Q, c, use_numba=True).value
    b = log_residue(Q, c, use_numba=False).value
    assert abs(a - b) < 1e-12


def test_residue_consistency_on_examples():
    for Q in (ex26(), ex31(), ex55()):
        for rep in analyze(Q, include_infinity=False):
            assert residue_consistency(Q, rep)


def test_residue_consistency_refuses_infinity():
    rep = [r for r in analyze(ex55()) if r.point.is_infinity][0]
    with pytest.raises(ValueError):
        residue_consistency(ex55(), rep)


@settings(max_examples=20)
@given(st.integers(0, 10**6), st.sampled_from([2, 3]))
def test_random_contours_match_structure(seed, n):
    Q = random_ratmat(random.Random(seed), n)
    for rep in analyze(Q, include_infinity=False):
        c = contour_for_report(Q, rep)
        res = log_residue(Q, c)
        assert abs(res.value - (rep.N - rep.P)) < 1e-6
