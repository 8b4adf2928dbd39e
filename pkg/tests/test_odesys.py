from fractions import Fraction

import pytest

from helpers import ex42, mat
from ratmat.errors import SingularFunction, TrivialSystem, ZeroComponent, ZeroLeading
from ratmat.exactalg import GaussRat, Poly
from ratmat.matfun import evaluate
from ratmat.odesys import (
    OdeSolution,
    OdeSystem,
    build_Q_from_system,
    combine_eigenvectors,
    demonstrate_nonlinearity,
    eigenvector_survey,
    residual_check,
    solve_system,
)
from ratmat.structure import verify_order

I2 = [[1, 0], [0, 1]]
DIAG = OdeSystem(1, [I2, I2])


def _by_alpha(sols):
    return {s.alpha: s for s in sols}


def test_build_Q_example_42():
    Q = build_Q_from_system(ex42())
    assert Q == mat([["1/z", "1/z^2"], ["1+4/z+4/z^2", "1+4/z+4/z^2"]])
    # numerator coefficient of z^k is A_{m-k}
    for k in range(3):
        coeff = tuple(tuple(p.coeff(k) for p in row) for row in Q.numerator.rows)
        assert coeff == ex42().A[2 - k]


def test_build_Q_diagonal():
    Q = build_Q_from_system(DIAG)
    assert Q == mat([["(1+z)/z", "0"], ["0", "(1+z)/z"]])


def test_invalid_systems():
    with pytest.raises(TrivialSystem):
        OdeSystem(1, [[[1]], [[1]]])
    with pytest.raises(ZeroLeading):
        OdeSystem(1, [I2, [[0, 0], [0, 0]]])
    with pytest.raises(ValueError):
        OdeSystem(2, [I2, I2])
    with pytest.raises(SingularFunction):
        solve_system(OdeSystem(1, [[[1, 1], [1, 1]], [[1, 1], [1, 1]]]))


def test_example_42_solutions():
    sols = solve_system(ex42())
    assert len(sols) == 2
    got = _by_alpha(sols)
    assert got[GaussRat(1)].u_components == (GaussRat(1), GaussRat(-1))
    assert got[GaussRat(-2)].u_components == (GaussRat(1), GaussRat(Fraction(1, 2)))
    Q = build_Q_from_system(ex42())
    for s in sols:
        assert s.exact
        assert residual_check(ex42(), s) == 0.0
        assert all(not x for row in evaluate(Q, s.alpha) for x in [sum((a * b for a, b in zip(row, s.eigenvector)), GaussRat(0))])


def test_example_42_T1_is_not_a_root_function():
    Q = build_Q_from_system(ex42())
    T1 = [Poly(), Poly([1])]
    T2 = [Poly([1]), Poly([0, -1])]
    for alpha in (1, -2):
        assert verify_order(Q, T1, alpha) == 0
        assert verify_order(Q, T2, alpha) >= 1


def test_example_42_survey_counts():
    for sv in eigenvector_survey(ex42()):
        assert len(sv.admissible) + len(sv.excluded) == sv.geometric_multiplicity == 1


def test_diagonal_system_needs_a_combination():
    surveys = eigenvector_survey(DIAG)
    assert len(surveys) == 1
    sv = surveys[0]
    assert sv.alpha == -1 and sv.geometric_multiplicity == 2
    assert not sv.admissible and len(sv.excluded) == 2
    sols = solve_system(DIAG)
    assert len(sols) == 1
    assert sols[0].u_components == (GaussRat(1), GaussRat(1))
    assert residual_check(DIAG, sols[0]) == 0.0


def test_combine_eigenvectors():
    sol = combine_eigenvectors(ex42(), 1, [1])
    assert sol.u_components == (GaussRat(1), GaussRat(-1))
    sol = combine_eigenvectors(DIAG, -1, [1, 1])
    assert sol.u_components == (GaussRat(1), GaussRat(1))
    with pytest.raises(ZeroComponent):
        combine_eigenvectors(DIAG, -1, [1, 0])
    with pytest.raises(ValueError):
        combine_eigenvectors(DIAG, -1, [1])
    with pytest.raises(ValueError):
        combine_eigenvectors(DIAG, 5, [1, 1])


def test_perturbed_solution_has_residual():
    bad = OdeSolution(GaussRat(-2), (GaussRat(1), GaussRat(Fraction(5, 3))), (GaussRat(1), GaussRat(Fraction(3, 5))))
    assert residual_check(ex42(), bad, t_samples=[0.0]) > 1e-2


def test_scaled_solution_still_solves():
    # the system is homogeneous of degree -1 in u, so c*u solves whenever u does
    u1 = _by_alpha(solve_system(ex42()))[GaussRat(1)]
    assert residual_check(ex42(), u1.scaled(2)) == 0.0
    assert residual_check(ex42(), u1.scaled(GaussRat(0, 3))) == 0.0


def test_nonlinearity_witness():
    u1, u2 = solve_system(ex42())
    assert demonstrate_nonlinearity(ex42(), u1, u2) > 1e-3
    with pytest.raises(ValueError):
        demonstrate_nonlinearity(ex42(), u1, u1)


def test_solution_evaluation():
    u1 = _by_alpha(solve_system(ex42()))[GaussRat(1)]
    val = u1(1.0)
    assert abs(val[0] - 2.718281828459045) < 1e-12 and abs(val[1] + 2.718281828459045) < 1e-12
