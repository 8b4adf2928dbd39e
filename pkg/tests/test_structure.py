import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import ZS, ex26, ex31, ex54, ex55, mat, random_ratmat, sympy_matrix, to_sympy
from ratmat.errors import EigvecZero, LimitInfinite, PremiseViolated, SingularFunction
from ratmat.exactalg import GaussRat, Poly, RatFun, Z
from ratmat.matfun import RatMatFun, inverse
from ratmat.realization import factor_at_regular_point
from ratmat.structure import (
    INFINITY,
    analyze,
    eigenvector_rank,
    product_valuation,
    proposition_L_equivalence,
    structure_at_infinity,
    taylor_jordan_vectors,
    verify_order,
    verify_pole_cancellation,
    zero_pole_structure,
)

T2_EX26 = [Poly([1]), (Z**2 + 4 * Z + 5) / 5]


def test_example_26_zero_at_minus_one():
    rep = zero_pole_structure(ex26(), -1)
    assert rep.kind == "zero"
    assert rep.omega0 == (1,) and rep.partial_zero_mults == (4,) and rep.N == 4
    assert list(rep.root_functions[0]) == T2_EX26


def test_example_26_pole_at_zero():
    rep = zero_pole_structure(ex26(), 0)
    assert rep.kind == "pole"
    assert rep.omegaP == (0, 1) and rep.partial_pole_mults == (2, 2)
    assert rep.P == 4 and rep.geometric_mult_pole == 2


def test_example_31_zero_and_pole_at_zero():
    rep = zero_pole_structure(ex31(), 0)
    assert rep.kind == "both"
    assert rep.partial_zero_mults == (1,) and rep.partial_pole_mults == (1,)
    rep1 = zero_pole_structure(ex31(), 1)
    assert rep1.kind == "zero" and rep1.N == 1 and rep1.P == 0


def test_regular_point_gives_empty_report():
    rep = zero_pole_structure(ex26(), 7)
    assert rep.is_empty() and rep.kind == "regular"


def test_verify_order_examples():
    Q = ex26()
    assert verify_order(Q, T2_EX26, -1) == 4
    assert verify_order(Q, [Poly(), Poly([-1])], -1) == 0
    assert verify_order(RatMatFun.identity(2), [1, 0], 3) == 0
    with pytest.raises(EigvecZero):
        verify_order(Q, [Z + 1, Poly()], -1)


def test_verify_order_flags_pole_with_product_valuation():
    Q = ex26()
    assert verify_order(Q, [1, 0], 0) == 0
    assert product_valuation(Q, [1, 0], 0) == -2


def test_verify_pole_cancellation_examples():
    order, limit = verify_pole_cancellation(ex26(), [Poly(), -(Z**2) / 5], 0)
    assert order == 2
    assert limit == [GaussRat(1), GaussRat(Fraction(-5, 4))]
    Qt = factor_at_regular_point(ex55(), -1).Qtilde
    order, _ = verify_pole_cancellation(Qt, [Z * (Z + 1), Poly()], 0)
    assert order == 1
    order, limit = verify_pole_cancellation(RatMatFun.identity(2), [1, 0], 0)
    assert order == 0 and limit == [GaussRat(1), GaussRat(0)]
    with pytest.raises(LimitInfinite):
        verify_pole_cancellation(ex26(), [1, 0], 0)


def test_pole_cancellation_limit_is_pole_function_value():
    Q = ex26()
    rep = zero_pole_structure(Q, 0)
    for psi, phihat, t in zip(rep.pole_cancellation_functions, rep.pole_functions, rep.partial_pole_mults):
        order, limit = verify_pole_cancellation(Q, psi, 0)
        assert order == t
        assert limit == [p(GaussRat(0)) for p in phihat]


def test_proposition_L_equivalence():
    assert proposition_L_equivalence(ex26(), T2_EX26, -1)
    T = zero_pole_structure(ex31(), 0).root_functions[0]
    with pytest.raises(PremiseViolated):
        proposition_L_equivalence(ex31(), T, 0)
    assert proposition_L_equivalence(mat([["z-1", "0"], ["0", "1"]]), [1, 0], 1)


def test_taylor_jordan_vectors():
    vecs = taylor_jordan_vectors(T2_EX26, -1, 3)
    F = Fraction
    assert vecs == [[1, F(2, 5)], [0, F(2, 5)], [0, F(1, 5)]]
    assert taylor_jordan_vectors([Poly([3]), Poly([4])], 2, 2) == [[3, 4], [0, 0]]
    assert taylor_jordan_vectors([Z**2, Z], 0, 3) == [[0, 0], [0, 1], [1, 0]]


def test_taylor_vectors_form_a_jordan_chain():
    # sum_{k<=j} Q_k phi_{j-k} = 0 for j < 4 with Q_k the Taylor coefficients of L at -1
    L = ex26().numerator
    phis = taylor_jordan_vectors(T2_EX26, -1, 4)
    Lk = [[[p.shift(GaussRat(-1)).coeff(k) for p in row] for row in L.rows] for k in range(4)]
    for j in range(4):
        acc = [GaussRat(0), GaussRat(0)]
        for k in range(j + 1):
            for r in range(2):
                acc[r] = acc[r] + sum((Lk[k][r][c] * phis[j - k][c] for c in range(2)), GaussRat(0))
        assert acc == [0, 0]


def test_structure_at_infinity():
    rep = structure_at_infinity(ex54())
    assert rep.P == 3 and sorted(rep.partial_pole_mults) == [1, 2]
    rep = structure_at_infinity(ex55())
    assert max(rep.partial_pole_mults) == 1
    assert structure_at_infinity(RatMatFun.constant([[1, 2], [3, 4]])).is_empty()
    assert zero_pole_structure(ex54(), INFINITY).P == 3


def test_singular_rejected():
    with pytest.raises(SingularFunction):
        analyze(mat([["z", "z"], ["1", "1"]]))


def test_numeric_critical_points():
    Q = mat([["z^2-2", "0"], ["0", "1/(z^2-3)"]])
    reps = analyze(Q, include_infinity=False)
    assert len(reps) == 4
    kinds = sorted((round(complex(r.point.location).real, 6), r.kind) for r in reps)
    assert kinds == [(-1.732051, "pole"), (-1.414214, "zero"), (1.414214, "zero"), (1.732051, "pole")]
    for r in reps:
        if r.kind == "zero":
            assert verify_order(Q, r.root_functions[0], r.point) == 1


# ---------------------------------------------------------------- properties

seeds = st.integers(0, 10**6)


def _sympy_order(Q, phi, alpha) -> int:
    """Smallest l with (Q phi)^{(l)}(alpha) != 0 via sympy series of each component."""
    prod = sympy_matrix(Q) * sp.Matrix([to_sympy(p) for p in phi])
    a = to_sympy(alpha)
    best = None
    for e in prod:
        e = sp.cancel(e)
        if e == 0:
            continue
        num, den = sp.fraction(e)
        v = sp.roots(sp.Poly(num, ZS)).get(a, 0) - sp.roots(sp.Poly(den, ZS)).get(a, 0)
        best = v if best is None else min(best, v)
    return best


@settings(max_examples=15)
@given(seeds)
def test_root_function_orders_match_sympy(seed):
    Q = random_ratmat(random.Random(seed), 2)
    for rep in analyze(Q, include_infinity=False):
        if not rep.point.is_exact:
            continue
        for phi, s in zip(rep.root_functions, rep.partial_zero_mults):
            assert verify_order(Q, phi, rep.point.location) == s
            assert _sympy_order(Q, phi, rep.point.location) == s


@given(seeds, st.sampled_from([2, 3]))
def test_eigenvectors_independent(seed, n):
    Q = random_ratmat(random.Random(seed), n)
    for rep in analyze(Q):
        assert eigenvector_rank(rep) == len(rep.omega0)


@settings(max_examples=25)
@given(seeds, st.sampled_from([2, 3]))
def test_duality_with_inverse(seed, n):
    Q = random_ratmat(random.Random(seed), n)
    Qi = inverse(Q)
    for rep in analyze(Q):
        dual = zero_pole_structure(Qi, rep.point)
        assert sorted(dual.partial_zero_mults) == sorted(rep.partial_pole_mults)
        assert sorted(dual.partial_pole_mults) == sorted(rep.partial_zero_mults)
