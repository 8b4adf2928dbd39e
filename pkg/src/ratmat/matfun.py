"""Matrix polynomials and rational matrix functions Q(z) = L(z)/q(z)."""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import EvalAtPole, NonSquare, SingularFunction
from .exactalg import (
    ONE_POLY,
    ZERO_POLY,
    GaussRat,
    Poly,
    RatFun,
    poly_gcd,
    poly_lcm,
)

__all__ = [
    "MatPoly",
    "RatMatFun",
    "ratmat_from_entries",
    "determinant",
    "inverse",
    "derivative",
    "invert_variable",
    "evaluate",
    "poly_det",
    "poly_adjugate",
]

POLE_GUARD = 1e-12


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    if isinstance(x, RatFun):
        if x.den.degree > 0:
            raise TypeError("rational entry where a polynomial was expected")
        return x.num * x.den.lc.inv()
    return Poly.const(x)


class MatPoly:
    """Square matrix with polynomial entries."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(_as_poly(x) for x in row) for row in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise NonSquare("matrix polynomial must be square")
        self.rows = rows

    @classmethod
    def identity(cls, n: int) -> MatPoly:
        return cls([[ONE_POLY if i == j else ZERO_POLY for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, n: int) -> MatPoly:
        return cls([[ZERO_POLY] * n for _ in range(n)])

    @classmethod
    def from_coefficients(cls, mats) -> MatPoly:
        """sum_k mats[k] z^k for constant matrices (lowest power first)."""
        n = len(mats[0])
        return cls(
            [[Poly([GaussRat.coerce(m[i][j]) for m in mats]) for j in range(n)] for i in range(n)]
        )

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list:
        return [row[j] for row in self.rows]

    def degree(self) -> int:
        return max((p.degree for row in self.rows for p in row), default=-1)

    def is_zero(self) -> bool:
        return all(not p for row in self.rows for p in row)

    def is_diagonal(self) -> bool:
        return all(not self.rows[i][j] for i in range(self.n) for j in range(self.n) if i != j)

    def diagonal(self) -> list:
        return [self.rows[i][i] for i in range(self.n)]

    def transpose(self) -> MatPoly:
        return MatPoly(list(zip(*self.rows)))

    def conj(self) -> MatPoly:
        return MatPoly([[p.conj() for p in row] for row in self.rows])

    def map(self, fn) -> MatPoly:
        return MatPoly([[fn(p) for p in row] for row in self.rows])

    def __add__(self, other: MatPoly) -> MatPoly:
        return MatPoly([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __sub__(self, other: MatPoly) -> MatPoly:
        return MatPoly([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self) -> MatPoly:
        return self.map(lambda p: -p)

    def __mul__(self, other):
        if isinstance(other, MatPoly):
            n = self.n
            cols = list(zip(*other.rows))
            out = []
            for row in self.rows:
                out_row = []
                for col in cols:
                    acc = ZERO_POLY
                    for a, b in zip(row, col):
                        if a and b:
                            acc = acc + a * b
                    out_row.append(acc)
                out.append(out_row)
            return MatPoly(out) if n else self
        if not isinstance(other, (Poly, GaussRat, int, Fraction)):
            return NotImplemented
        return self.map(lambda p: p * other)

    __rmul__ = __mul__

    def apply(self, vec) -> list:
        """Matrix times a vector of polynomials."""
        out = []
        for row in self.rows:
            acc = ZERO_POLY
            for a, b in zip(row, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out

    def __call__(self, x):
        return [[p(x) for p in row] for row in self.rows]

    def coefficient_array(self, degree: int | None = None) -> np.ndarray:
        """Complex array of shape (degree+1, n, n), lowest power first."""
        d = self.degree() if degree is None else degree
        d = max(d, 0)
        out = np.zeros((d + 1, self.n, self.n), dtype=np.complex128)
        for i, row in enumerate(self.rows):
            for j, p in enumerate(row):
                for k, c in enumerate(p.coeffs):
                    out[k, i, j] = complex(c)
        return out

    def __eq__(self, other):
        if not isinstance(other, MatPoly):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "MatPoly([" + ", ".join("[" + ", ".join(str(p) for p in r) + "]" for r in self.rows) + "])"


def _det_cofactor(rows) -> Poly:
    n = len(rows)
    if n == 0:
        return ONE_POLY
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    acc = ZERO_POLY
    for j, a in enumerate(rows[0]):
        if not a:
            continue
        minor = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = a * _det_cofactor(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def _det_bareiss(rows) -> Poly:
    a = [list(r) for r in rows]
    n = len(a)
    sign = 1
    prev = ONE_POLY
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return ZERO_POLY
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]).exact_div(prev)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign > 0 else -det


def poly_det(M: MatPoly) -> Poly:
    """Cofactor expansion up to 4x4, fraction-free Bareiss elimination above."""
    if M.n <= 4:
        return _det_cofactor(M.rows)
    return _det_bareiss(M.rows)


def poly_adjugate(M: MatPoly) -> MatPoly:
    n = M.n
    if n == 1:
        return MatPoly([[ONE_POLY]])
    rows = M.rows
    adj = [[ZERO_POLY] * n for _ in range(n)]
    det = _det_cofactor if n - 1 <= 4 else _det_bareiss
    for i in range(n):
        for j in range(n):
            minor = [r[:j] + r[j + 1 :] for k, r in enumerate(rows) if k != i]
            c = det(minor)
            adj[j][i] = c if (i + j) % 2 == 0 else -c
    return MatPoly(adj)


class RatMatFun:
    """n x n rational matrix function stored as numerator L(z) over monic q(z).

    The pair is kept canonical: q is monic and shares no common factor with
    all entries of L at once, so q is the lcm of the reduced entry
    denominators and its roots are exactly the finite poles.
    """

    __slots__ = ("numerator", "den")

    def __init__(self, numerator: MatPoly, den: Poly | None = None):
        if not isinstance(numerator, MatPoly):
            numerator = MatPoly(numerator)
        den = ONE_POLY if den is None else _as_poly(den)
        if not den:
            raise SingularFunction("zero denominator")
        if den.degree > 0:
            g = den
            for row in numerator.rows:
                for p in row:
                    if p:
                        g = poly_gcd(g, p)
                        if g.degree == 0:
                            break
                if g.degree == 0:
                    break
            if g.degree > 0:
                den = den.exact_div(g)
                numerator = numerator.map(lambda p: p.exact_div(g))
        lc = den.lc
        if lc != 1:
            inv = lc.inv()
            den = den * inv
            numerator = numerator.map(lambda p: p * inv)
        self.numerator = numerator
        self.den = den

    # constructors ------------------------------------------------------
    @classmethod
    def from_entries(cls, entries) -> RatMatFun:
        return ratmat_from_entries(entries)

    @classmethod
    def identity(cls, n: int) -> RatMatFun:
        return cls(MatPoly.identity(n))

    @classmethod
    def constant(cls, mat) -> RatMatFun:
        return cls(MatPoly([[Poly.const(GaussRat.coerce(x)) for x in row] for row in mat]))

    @classmethod
    def diagonal(cls, entries) -> RatMatFun:
        n = len(entries)
        return ratmat_from_entries(
            [[entries[i] if i == j else RatFun.coerce(0) for j in range(n)] for i in range(n)]
        )

    # views --------------------------------------------------------------
    @property
    def n(self) -> int:
        return self.numerator.n

    @property
    def L(self) -> MatPoly:
        return self.numerator

    def entry(self, i: int, j: int) -> RatFun:
        return RatFun(self.numerator.rows[i][j], self.den)

    def entries(self) -> list:
        return [[self.entry(i, j) for j in range(self.n)] for i in range(self.n)]

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def degree_at_infinity(self) -> int:
        """max over entries of deg num - deg den (the pole order at infinity if > 0)."""
        d = self.numerator.degree()
        if d < 0:
            return -(10**9)
        return d - self.den.degree

    # algebra -------------------------------------------------------------
    def __add__(self, other):
        other = _coerce_rmf(other, self.n)
        if self.den == other.den:
            return RatMatFun(self.numerator + other.numerator, self.den)
        lcm = poly_lcm(self.den, other.den)
        a = lcm.exact_div(self.den)
        b = lcm.exact_div(other.den)
        return RatMatFun(self.numerator * a + other.numerator * b, lcm)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return RatMatFun(-self.numerator, self.den)

    def __sub__(self, other):
        return self + (-_coerce_rmf(other, self.n))

    def __rsub__(self, other):
        return _coerce_rmf(other, self.n) - self

    def __mul__(self, other):
        if isinstance(other, (RatMatFun, MatPoly)):
            other = _coerce_rmf(other, self.n)
            return RatMatFun(self.numerator * other.numerator, self.den * other.den)
        r = RatFun.coerce(other)
        return RatMatFun(self.numerator * r.num, self.den * r.den)

    def __rmul__(self, other):
        if isinstance(other, MatPoly):
            return RatMatFun(other * self.numerator, self.den)
        return self * other

    def apply(self, vec) -> list:
        """Q(z) v(z) for a vector of polynomials or rational functions."""
        vec = [RatFun.coerce(v) for v in vec]
        common = ONE_POLY
        for v in vec:
            if v.den.degree > 0:
                common = poly_lcm(common, v.den)
        polys = [v.num * common.exact_div(v.den) for v in vec]
        num = self.numerator.apply(polys)
        den = self.den * common
        return [RatFun(p, den) for p in num]

    def transpose(self) -> RatMatFun:
        return RatMatFun(self.numerator.transpose(), self.den)

    def conj_transpose(self) -> RatMatFun:
        """Entries Q_ji with conjugated coefficients: the function z -> Q(conj z)^*."""
        return RatMatFun(self.numerator.transpose().conj(), self.den.conj())

    def is_symmetric(self) -> bool:
        """Q(conj z)^* == Q(z)."""
        return self.conj_transpose() == self

    def det(self) -> RatFun:
        return determinant(self)

    def inverse(self) -> RatMatFun:
        return inverse(self)

    def deriv(self) -> RatMatFun:
        return derivative(self)

    def invert_variable(self) -> RatMatFun:
        return invert_variable(self)

    def __call__(self, z0):
        return evaluate(self, z0)

    # numerics ------------------------------------------------------------
    def coefficient_arrays(self):
        return self.numerator.coefficient_array(), self.den.to_numpy()

    def __eq__(self, other):
        if not isinstance(other, RatMatFun):
            return NotImplemented
        return self.den == other.den and self.numerator == other.numerator

    def __hash__(self):
        return hash((self.numerator, self.den))

    def __repr__(self):
        rows = ", ".join("[" + ", ".join(str(e) for e in row) + "]" for row in self.entries())
        return f"RatMatFun([{rows}])"


def _coerce_rmf(x, n: int) -> RatMatFun:
    if isinstance(x, RatMatFun):
        return x
    if isinstance(x, MatPoly):
        return RatMatFun(x)
    r = RatFun.coerce(x)
    return RatMatFun(MatPoly.identity(n) * r.num, r.den)


def ratmat_from_entries(entries) -> RatMatFun:
    """Canonical L/q form from a square grid of rational functions."""
    grid = [[RatFun.coerce(e) for e in row] for row in entries]
    n = len(grid)
    if any(len(row) != n for row in grid):
        raise NonSquare("entry grid must be square")
    den = ONE_POLY
    for row in grid:
        for e in row:
            if e.den.degree > 0:
                den = poly_lcm(den, e.den)
    num = [[e.num * den.exact_div(e.den) for e in row] for row in grid]
    return RatMatFun(MatPoly(num), den)


def determinant(Q: RatMatFun) -> RatFun:
    return RatFun(poly_det(Q.numerator), Q.den ** Q.n)


def inverse(Q: RatMatFun) -> RatMatFun:
    """Adjugate over determinant: Q^-1 = q adj(L) / det(L)."""
    detL = poly_det(Q.numerator)
    if not detL:
        raise SingularFunction("det Q vanishes identically")
    return RatMatFun(poly_adjugate(Q.numerator) * Q.den, detL)


def derivative(Q: RatMatFun) -> RatMatFun:
    q = Q.den
    dq = q.deriv()
    num = Q.numerator.map(lambda p: p.deriv() * q - p * dq)
    return RatMatFun(num, q * q)


def invert_variable(Q: RatMatFun) -> RatMatFun:
    """g(zeta) = Q(1/zeta), canonical."""
    d = max(Q.numerator.degree(), Q.den.degree, 0)
    return RatMatFun(Q.numerator.map(lambda p: p.reverse(d) if p else p), Q.den.reverse(d))


def evaluate(Q: RatMatFun, z0):
    """Entrywise value at z0; exact for GaussRat/int/Fraction, complex otherwise."""
    if isinstance(z0, (complex, float)) or isinstance(z0, np.generic):
        z0 = complex(z0)
        d = Q.den(z0)
        if abs(d) <= POLE_GUARD:
            raise EvalAtPole(f"|q({z0})| = {abs(d):.3e} is within the pole guard")
        return np.array([[p(z0) / d for p in row] for row in Q.numerator.rows], dtype=np.complex128)
    if isinstance(z0, (int, Fraction)):
        z0 = GaussRat(z0)
    z0 = GaussRat.coerce(z0)
    d = Q.den(z0)
    if not d:
        raise EvalAtPole(f"{z0} is a pole")
    inv = d.inv()
    return [[p(z0) * inv for p in row] for row in Q.numerator.rows]
