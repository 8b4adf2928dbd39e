"""Unimodular diagonalization D(z) = S(z) L(z) T(z).

The elimination is the classical Smith-form procedure over Q(i)[z]:
minimal-degree pivot (ties broken row-major), Euclidean reduction of the
pivot row and column, and a divisibility repair step.  The diagonal is then
made monic and sorted by ``Poly.sort_key``, so the output is deterministic.

Every elementary operation is recorded in a transcript.  ``S_inv`` and
``T_inv`` are built by applying the inverse operations as they happen,
never by inverting S or T afterwards.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NotUnimodular, SingularInput, VerificationError
from .exactalg import ONE, ONE_POLY, ZERO_POLY, GaussRat, Poly, RatFun, format_gaussrat, format_poly
from .matfun import MatPoly, RatMatFun, poly_det

__all__ = [
    "ElementaryOp",
    "SmithResult",
    "DiagRatForm",
    "smith_diagonalize",
    "diag_rational",
    "verify_unimodular",
    "replay",
]


@dataclass(frozen=True)
class ElementaryOp:
    """One unimodular step.

    kind is one of ``swap_rows``, ``swap_cols`` (exchange ``i`` and ``j``),
    ``add_row`` (row i += factor * row j), ``add_col`` (col i += factor *
    col j), ``scale_row`` and ``scale_col`` (line i *= unit).
    """

    kind: str
    i: int
    j: int = -1
    factor: Poly | None = None
    unit: GaussRat | None = None

    def to_json(self) -> dict:
        out = {"op": self.kind, "i": self.i}
        if self.j >= 0:
            out["j"] = self.j
        if self.factor is not None:
            out["factor"] = format_poly(self.factor)
        if self.unit is not None:
            out["unit"] = format_gaussrat(self.unit)
        return out


@dataclass(frozen=True)
class SmithResult:
    S: MatPoly
    D: MatPoly
    T: MatPoly
    S_inv: MatPoly
    T_inv: MatPoly
    det_S: GaussRat
    det_T: GaussRat
    transcript: tuple = field(default_factory=tuple)

    @property
    def diagonal(self) -> list:
        return self.D.diagonal()

    def check(self, L: MatPoly) -> None:
        """Raise VerificationError unless every reconstruction identity holds."""
        n = L.n
        eye = MatPoly.identity(n)
        if self.S * L * self.T != self.D:
            raise VerificationError("S L T != D")
        if self.S * self.S_inv != eye or self.T * self.T_inv != eye:
            raise VerificationError("transformation inverse mismatch")
        if not self.D.is_diagonal():
            raise VerificationError("D is not diagonal")
        if replay(self.transcript, L) != self.D:
            raise VerificationError("transcript replay does not reproduce D")


@dataclass(frozen=True)
class DiagRatForm:
    """Reduced diagonal entries d_i = D_ii / q with the Smith data behind them."""

    dtilde: tuple
    smith: SmithResult

    def matrix(self) -> RatMatFun:
        return RatMatFun.diagonal(list(self.dtilde))

    def check(self, Q: RatMatFun) -> None:
        S = RatMatFun(self.smith.S)
        T = RatMatFun(self.smith.T)
        if S * Q * T != self.matrix():
            raise VerificationError("S Q T != diag(d)")


class _Elimination:
    def __init__(self, L: MatPoly):
        n = L.n
        self.n = n
        self.A = [list(r) for r in L.rows]
        eye = MatPoly.identity(n).rows
        self.S = [list(r) for r in eye]
        self.S_inv = [list(r) for r in eye]
        self.T = [list(r) for r in eye]
        self.T_inv = [list(r) for r in eye]
        self.det_S = ONE
        self.det_T = ONE
        self.ops: list = []

    # row operations act on A and S from the left, their inverses on S_inv
    # from the right; column operations mirror this with T and T_inv.
    def swap_rows(self, i, j):
        if i == j:
            return
        for M in (self.A, self.S):
            M[i], M[j] = M[j], M[i]
        for row in self.S_inv:
            row[i], row[j] = row[j], row[i]
        self.det_S = -self.det_S
        self.ops.append(ElementaryOp("swap_rows", i, j))

    def swap_cols(self, i, j):
        if i == j:
            return
        for M in (self.A, self.T):
            for row in M:
                row[i], row[j] = row[j], row[i]
        self.T_inv[i], self.T_inv[j] = self.T_inv[j], self.T_inv[i]
        self.det_T = -self.det_T
        self.ops.append(ElementaryOp("swap_cols", i, j))

    def add_row(self, i, j, f: Poly):
        """row i += f * row j"""
        for M in (self.A, self.S):
            ri, rj = M[i], M[j]
            for c in range(self.n):
                if rj[c]:
                    ri[c] = ri[c] + f * rj[c]
        for row in self.S_inv:
            if row[i]:
                row[j] = row[j] - row[i] * f
        self.ops.append(ElementaryOp("add_row", i, j, factor=f))

    def add_col(self, i, j, f: Poly):
        """col i += f * col j"""
        for M in (self.A, self.T):
            for row in M:
                if row[j]:
                    row[i] = row[i] + row[j] * f
        ri, rj = self.T_inv[i], self.T_inv[j]
        for c in range(self.n):
            if ri[c]:
                rj[c] = rj[c] - f * ri[c]
        self.ops.append(ElementaryOp("add_col", i, j, factor=f))

    def scale_row(self, i, u: GaussRat):
        inv = u.inv()
        for M in (self.A, self.S):
            M[i] = [p * u for p in M[i]]
        for row in self.S_inv:
            row[i] = row[i] * inv
        self.det_S = self.det_S * u
        self.ops.append(ElementaryOp("scale_row", i, unit=u))

    def run(self):
        n, A = self.n, self.A
        for k in range(n):
            while True:
                best = None
                for i in range(k, n):
                    for j in range(k, n):
                        p = A[i][j]
                        if p and (best is None or p.degree < best[0]):
                            best = (p.degree, i, j)
                if best is None:
                    raise SingularInput("det L vanishes identically")
                _, pi, pj = best
                self.swap_rows(k, pi)
                self.swap_cols(k, pj)
                piv = A[k][k]
                clean = True
                for i in range(k + 1, n):
                    if A[i][k]:
                        q, r = A[i][k].divrem(piv)
                        if q:
                            self.add_row(i, k, -q)
                        if r:
                            clean = False
                for j in range(k + 1, n):
                    if A[k][j]:
                        q, r = A[k][j].divrem(piv)
                        if q:
                            self.add_col(j, k, -q)
                        if r:
                            clean = False
                if not clean:
                    continue
                bad = None
                if piv.degree > 0:
                    for i in range(k + 1, n):
                        for j in range(k + 1, n):
                            if A[i][j] and A[i][j].divrem(piv)[1]:
                                bad = i
                                break
                        if bad is not None:
                            break
                if bad is None:
                    break
                self.add_row(k, bad, ONE_POLY)
            lc = A[k][k].lc
            if lc != ONE:
                self.scale_row(k, lc.inv())
        # sort the diagonal; a Smith chain is already ordered, this is a guard
        for k in range(n):
            m = min(range(k, n), key=lambda t: A[t][t].sort_key())
            if A[m][m].sort_key() < A[k][k].sort_key():
                self.swap_rows(k, m)
                self.swap_cols(k, m)

    def result(self) -> SmithResult:
        return SmithResult(
            S=MatPoly(self.S),
            D=MatPoly(self.A),
            T=MatPoly(self.T),
            S_inv=MatPoly(self.S_inv),
            T_inv=MatPoly(self.T_inv),
            det_S=self.det_S,
            det_T=self.det_T,
            transcript=tuple(self.ops),
        )


def smith_diagonalize(L: MatPoly, check: bool = True) -> SmithResult:
    """Diagonalize L by unimodular row and column operations."""
    elim = _Elimination(L)
    elim.run()
    res = elim.result()
    if check:
        res.check(L)
    return res


def replay(transcript, L: MatPoly) -> MatPoly:
    """Apply a recorded transcript to L."""
    A = [list(r) for r in L.rows]
    n = L.n
    for op in transcript:
        if op.kind == "swap_rows":
            A[op.i], A[op.j] = A[op.j], A[op.i]
        elif op.kind == "swap_cols":
            for row in A:
                row[op.i], row[op.j] = row[op.j], row[op.i]
        elif op.kind == "add_row":
            A[op.i] = [a + op.factor * b for a, b in zip(A[op.i], A[op.j])]
        elif op.kind == "add_col":
            for row in A:
                row[op.i] = row[op.i] + row[op.j] * op.factor
        elif op.kind == "scale_row":
            A[op.i] = [p * op.unit for p in A[op.i]]
        elif op.kind == "scale_col":
            for row in A:
                row[op.i] = row[op.i] * op.unit
        else:
            raise ValueError(f"unknown operation {op.kind!r}")
    return MatPoly(A) if n else L


def diag_rational(Q: RatMatFun, check: bool = True) -> DiagRatForm:
    """d_i = D_ii / q reduced, where D is the diagonalization of the numerator."""
    smith = smith_diagonalize(Q.numerator, check=check)
    dtilde = tuple(RatFun(d, Q.den) for d in smith.D.diagonal())
    # S (L/q) T = D/q follows from the checked polynomial identity
    return DiagRatForm(dtilde, smith)


def verify_unimodular(M: MatPoly) -> GaussRat:
    """Return the constant determinant, or raise NotUnimodular."""
    det = poly_det(M)
    if det.degree != 0:
        raise NotUnimodular(f"determinant {det} is not a nonzero constant")
    return det.coeffs[0]


