"""Floating-point inner loops.

Two hot paths live here: Aberth polishing of polynomial roots and the
per-node integrand of the logarithmic residue.  Each has a numba-compiled
version and a pure numpy version with identical semantics.  Set
``RATMAT_DISABLE_NUMBA=1`` (or run without numba installed) to force the
numpy path.
"""

import os

import numpy as np

ABERTH_MAXITER = 200
ABERTH_TOL = 1e-15


def _env_disabled() -> bool:
    return os.environ.get("RATMAT_DISABLE_NUMBA", "").strip().lower() in ("1", "true", "yes", "on")


try:
    if _env_disabled():
        raise ImportError("numba disabled by RATMAT_DISABLE_NUMBA")
    import numba as nb

    HAVE_NUMBA = True
except ImportError:
    nb = None
    HAVE_NUMBA = False


# ----------------------------------------------------------------------
# numpy reference implementations


def aberth_numpy(coeffs, start, maxiter=ABERTH_MAXITER, tol=ABERTH_TOL):
    """Aberth-Ehrlich iteration; ``coeffs`` lowest degree first, monic."""
    c = np.asarray(coeffs, dtype=np.complex128)
    z = np.array(start, dtype=np.complex128)
    d = len(c) - 1
    dc = c[1:] * np.arange(1, d + 1)
    for _ in range(maxiter):
        p = np.polyval(c[::-1], z)
        dp = np.polyval(dc[::-1], z)
        diff = z[:, None] - z[None, :]
        np.fill_diagonal(diff, 1.0)
        inv = 1.0 / diff
        np.fill_diagonal(inv, 0.0)
        s = inv.sum(axis=1)
        done = p == 0
        ratio = np.where(done, 0.0, p / np.where(dp == 0, 1.0, dp))
        denom = 1.0 - ratio * s
        w = np.where(done, 0.0, ratio / np.where(denom == 0, 1.0, denom))
        z = z - w
        if np.all(np.abs(w) <= tol * (1.0 + np.abs(z))):
            break
    return z


def contour_integrand_numpy(Lc, qc, nodes):
    """tr(L'(z) L(z)^-1) - n q'(z)/q(z) at every node.

    ``Lc`` has shape (deg+1, n, n), ``qc`` shape (deg_q+1,), both lowest first.
    """
    Lc = np.asarray(Lc, dtype=np.complex128)
    qc = np.asarray(qc, dtype=np.complex128)
    z = np.asarray(nodes, dtype=np.complex128)
    n = Lc.shape[1]
    M = np.zeros((len(z), n, n), dtype=np.complex128)
    dM = np.zeros_like(M)
    zz = z[:, None, None]
    for k in range(Lc.shape[0] - 1, -1, -1):
        dM = dM * zz + M
        M = M * zz + Lc[k]
    X = np.linalg.solve(M, dM)
    tr = np.trace(X, axis1=1, axis2=2)
    q = np.polyval(qc[::-1], z)
    dq = np.polyval((qc[1:] * np.arange(1, len(qc)))[::-1], z) if len(qc) > 1 else np.zeros_like(z)
    return tr - n * dq / q


# ----------------------------------------------------------------------
# numba implementations

if HAVE_NUMBA:

    @nb.njit(cache=True)
    def _aberth_nb(c, z, maxiter, tol):
        d = c.shape[0] - 1
        m = z.shape[0]
        for _ in range(maxiter):
            wmax = 0.0
            for i in range(m):
                zi = z[i]
                p = c[d]
                dp = 0.0 + 0.0j
                for k in range(d - 1, -1, -1):
                    dp = dp * zi + p
                    p = p * zi + c[k]
                if p == 0:
                    continue
                s = 0.0 + 0.0j
                for j in range(m):
                    if j != i:
                        s += 1.0 / (zi - z[j])
                ratio = p / dp if dp != 0 else p
                denom = 1.0 - ratio * s
                w = ratio / denom if denom != 0 else ratio
                z[i] = zi - w
                rel = abs(w) / (1.0 + abs(z[i]))
                if rel > wmax:
                    wmax = rel
            if wmax <= tol:
                break
        return z

    @nb.njit(cache=True)
    def _contour_nb(Lc, qc, nodes):
        nd = Lc.shape[0]
        n = Lc.shape[1]
        out = np.empty(nodes.shape[0], dtype=np.complex128)
        M = np.empty((n, n), dtype=np.complex128)
        dM = np.empty((n, n), dtype=np.complex128)
        for t in range(nodes.shape[0]):
            z = nodes[t]
            M[:, :] = 0.0
            dM[:, :] = 0.0
            for k in range(nd - 1, -1, -1):
                for a in range(n):
                    for b in range(n):
                        dM[a, b] = dM[a, b] * z + M[a, b]
                        M[a, b] = M[a, b] * z + Lc[k, a, b]
            # Gaussian elimination with partial pivoting on [M | dM]
            for col in range(n):
                piv = col
                best = abs(M[col, col])
                for r in range(col + 1, n):
                    if abs(M[r, col]) > best:
                        best = abs(M[r, col])
                        piv = r
                if piv != col:
                    for b in range(n):
                        tmp = M[col, b]
                        M[col, b] = M[piv, b]
                        M[piv, b] = tmp
                        tmp = dM[col, b]
                        dM[col, b] = dM[piv, b]
                        dM[piv, b] = tmp
                for r in range(col + 1, n):
                    f = M[r, col] / M[col, col]
                    if f != 0:
                        for b in range(col, n):
                            M[r, b] -= f * M[col, b]
                        for b in range(n):
                            dM[r, b] -= f * dM[col, b]
            # back substitution, keeping only the diagonal of X
            X = np.empty((n, n), dtype=np.complex128)
            for b in range(n):
                for r in range(n - 1, -1, -1):
                    acc = dM[r, b]
                    for k in range(r + 1, n):
                        acc -= M[r, k] * X[k, b]
                    X[r, b] = acc / M[r, r]
            tr = 0.0 + 0.0j
            for a in range(n):
                tr += X[a, a]
            q = 0.0 + 0.0j
            dq = 0.0 + 0.0j
            for k in range(qc.shape[0] - 1, -1, -1):
                dq = dq * z + q
                q = q * z + qc[k]
            out[t] = tr - n * dq / q
        return out


def aberth(coeffs, start, maxiter=ABERTH_MAXITER, tol=ABERTH_TOL, use_numba=None):
    if use_numba is None:
        use_numba = HAVE_NUMBA
    c = np.ascontiguousarray(coeffs, dtype=np.complex128)
    z = np.array(start, dtype=np.complex128)
    if use_numba and HAVE_NUMBA:
        return _aberth_nb(c, z, maxiter, tol)
    return aberth_numpy(c, z, maxiter, tol)


def contour_integrand(Lc, qc, nodes, use_numba=None):
    if use_numba is None:
        use_numba = HAVE_NUMBA
    Lc = np.ascontiguousarray(Lc, dtype=np.complex128)
    qc = np.ascontiguousarray(qc, dtype=np.complex128)
    nodes = np.ascontiguousarray(nodes, dtype=np.complex128)
    if use_numba and HAVE_NUMBA:
        return _contour_nb(Lc, qc, nodes)
    return contour_integrand_numpy(Lc, qc, nodes)
