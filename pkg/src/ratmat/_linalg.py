"""Exact dense linear algebra over Q(i) for small constant matrices."""

from .exactalg import ONE, ZERO, GaussRat


def _copy(M):
    return [[GaussRat.coerce(x) for x in row] for row in M]


def row_echelon(M):
    """Reduced row echelon form and pivot columns."""
    A = _copy(M)
    rows = len(A)
    cols = len(A[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if A[i][c]), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = A[r][c].inv()
        A[r] = [x * inv for x in A[r]]
        for i in range(rows):
            if i != r and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return A, pivots


def rank(M) -> int:
    if not M or not M[0]:
        return 0
    return len(row_echelon(M)[1])


def nullspace(M):
    """Basis of {x : M x = 0}."""
    cols = len(M[0])
    R, pivots = row_echelon(M)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        x = [ZERO] * cols
        x[f] = ONE
        for r, pc in enumerate(pivots):
            x[pc] = -R[r][f]
        basis.append(x)
    return basis


def matvec(M, v):
    out = []
    for row in M:
        acc = ZERO
        for a, b in zip(row, v):
            if a and b:
                acc = acc + a * b
        out.append(acc)
    return out


def conj_transpose(M):
    return [[M[j][i].conj() for j in range(len(M))] for i in range(len(M[0]))]


def is_hermitian(M) -> bool:
    n = len(M)
    return all(M[i][j] == M[j][i].conj() for i in range(n) for j in range(n))
