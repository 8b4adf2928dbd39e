"""Shared fixtures data, a random instance generator and sympy-based oracles."""

from __future__ import annotations

import random

import sympy as sp

from ratmat.exactalg import GaussRat, Poly, RatFun
from ratmat.matfun import RatMatFun, poly_det, ratmat_from_entries
from ratmat.odesys import OdeSystem
from ratmat.parser import parse_ratfun

ZS = sp.Symbol("z")


def mat(rows) -> RatMatFun:
    return ratmat_from_entries([[parse_ratfun(x) for x in r] for r in rows])


EX26 = [["(z^2+4*z+5)/z^2", "-5/z^2"], ["-5/z^2", "25/4*(z^2+1)/z^2"]]
EX31 = [["0", "1", "0"], ["1/z", "0", "1"], ["0", "0", "z^2-z"]]
EX54 = [["0", "z", "0"], ["z", "z^2", "0"], ["0", "0", "z"]]
EX55 = [["1/z", "z-1"], ["z-1", "0"]]
EX42_A = [
    [[0, 0], [1, 1]],
    [[1, 0], [4, 4]],
    [[0, 1], [4, 4]],
]


def ex26():
    return mat(EX26)


def ex31():
    return mat(EX31)


def ex54():
    return mat(EX54)


def ex55():
    return mat(EX55)


def ex42():
    return OdeSystem(2, EX42_A)


# ----------------------------------------------------------------------
# random instances

_DENS = ["1", "z", "z+1", "z-1", "z^2", "z-2", "(z+1)^2", "z*(z-1)", "z+2"]


def random_poly(rng: random.Random, max_deg: int = 2, lo: int = -2, hi: int = 2) -> Poly:
    deg = rng.randint(0, max_deg)
    return Poly([rng.randint(lo, hi) for _ in range(deg + 1)])


def random_ratmat(rng: random.Random, n: int) -> RatMatFun:
    """Small-integer rational matrix function with det not identically zero."""
    while True:
        entries = []
        for _ in range(n):
            row = []
            for _ in range(n):
                num = random_poly(rng)
                den = parse_ratfun(rng.choice(_DENS)).num if rng.random() < 0.5 else Poly([1])
                row.append(RatFun(num, den))
            entries.append(row)
        Q = ratmat_from_entries(entries)
        if poly_det(Q.numerator):
            return Q


# ----------------------------------------------------------------------
# sympy oracles


def to_sympy(x):
    if isinstance(x, GaussRat):
        return sp.Rational(x.re.numerator, x.re.denominator) + sp.I * sp.Rational(x.im.numerator, x.im.denominator)
    if isinstance(x, Poly):
        return sum((to_sympy(c) * ZS**k for k, c in enumerate(x.coeffs)), sp.Integer(0))
    if isinstance(x, RatFun):
        return to_sympy(x.num) / to_sympy(x.den)
    return sp.sympify(x)


def sympy_matrix(Q: RatMatFun) -> sp.Matrix:
    return sp.Matrix([[to_sympy(e) for e in row] for row in Q.entries()])


def same_function(a, b) -> bool:
    return sp.simplify(sp.cancel(to_sympy(a) - b)) == 0


def invariant_factors(Q: RatMatFun) -> list:
    """Monic invariant factors of the numerator via determinantal divisors."""
    from itertools import combinations

    L = sp.Matrix([[to_sympy(p) for p in row] for row in Q.numerator.rows])
    n = L.shape[0]
    divisors = [sp.Integer(1)]
    for k in range(1, n + 1):
        g = sp.Integer(0)
        for rows in combinations(range(n), k):
            for cols in combinations(range(n), k):
                g = sp.gcd(g, sp.expand(L.extract(list(rows), list(cols)).det()))
        divisors.append(sp.Poly(g, ZS).monic().as_expr() if g != 0 else sp.Integer(0))
    return [sp.cancel(divisors[k] / divisors[k - 1]) for k in range(1, n + 1)]
