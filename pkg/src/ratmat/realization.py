"""Operator representations of symmetric rational matrix functions with a pole at infinity.

A symmetric Q with a pole of order m at infinity is shifted to a real
regular point beta, Q~(z) = Q(z) / (z - beta)^m, which is holomorphic at
infinity.  When every finite pole of Q~ is simple and real, Q~ is written
exactly as

    Q~(z) = S + sum_k eps_k w_k g_k g_k^* / (lambda_k - z),

i.e. S + Gamma^* J W (A~ - z)^-1 Gamma with A~ = diag(lambda_k),
J = diag(eps_k) and Gamma rows g_k^*.  The residues R = -Res Q~ are split
into signed rank-one terms by pivoted Hermitian elimination over Q(i).
Weights w_k differ from 1 only when a pivot is not a rational square.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (
    BadHint,
    LimitUndefined,
    NoRegularPoint,
    NonRealPole,
    NotHermitian,
    NotSimplePole,
    NotSymmetric,
    NumericPole,
    PoleAtInfinity,
    SignUndetermined,
    SingularFunction,
    UnsupportedJordanStructure,
    VerificationError,
)
from .exactalg import ONE, ZERO, GaussRat, Poly, RatFun, roots_with_multiplicity
from .matfun import MatPoly, RatMatFun, invert_variable, poly_det
from .structure import StructureReport, zero_pole_structure

__all__ = [
    "Factorization",
    "Realization",
    "IndexReport",
    "ChainSign",
    "factor_at_regular_point",
    "limit_at_infinity",
    "residue_matrix",
    "signed_rank_factorization",
    "build_realization",
    "verify_realization",
    "sign_limit",
    "chain_signs",
    "kappa_report",
    "negative_index",
]

BETA_SEARCH_LIMIT = 1000


@dataclass(frozen=True)
class Factorization:
    beta: GaussRat
    m: int
    Qtilde: RatMatFun
    S_limit: tuple

    def check(self, Q: RatMatFun) -> bool:
        shift = RatMatFun(MatPoly.identity(Q.n)) * RatFun(Poly.linear_root(self.beta) ** self.m)
        return shift * self.Qtilde == Q


@dataclass(frozen=True)
class Realization:
    """Semisimple state-space data; state k has eigenvalue A_tilde[k]."""

    dim_K: int
    A_tilde: tuple
    J_signs: tuple
    Gamma: tuple
    S_limit: tuple
    weights: tuple = ()
    beta: GaussRat | None = None
    m: int = 0

    def __post_init__(self):
        if not self.weights:
            object.__setattr__(self, "weights", tuple(GaussRat(1) for _ in range(self.dim_K)))

    def A_matrix(self) -> list:
        k = self.dim_K
        return [[self.A_tilde[i] if i == j else ZERO for j in range(k)] for i in range(k)]

    def J_matrix(self) -> list:
        k = self.dim_K
        return [[GaussRat(self.J_signs[i]) if i == j else ZERO for j in range(k)] for i in range(k)]

    def reconstruct(self) -> RatMatFun:
        n = len(self.S_limit)
        out = RatMatFun.constant(self.S_limit)
        for lam, eps, w, row in zip(self.A_tilde, self.J_signs, self.weights, self.Gamma):
            c = w * eps
            # g = conj(row) as a column; g g^* has entries conj(row_i) row_j
            M = [[row[i].conj() * row[j] * c for j in range(n)] for i in range(n)]
            out = out + RatMatFun(MatPoly([[Poly.const(x) for x in r] for r in M]), -Poly.linear_root(lam))
        return out


@dataclass(frozen=True)
class ChainSign:
    length: int
    sign: int | None


@dataclass(frozen=True)
class IndexReport:
    d_beta: int
    d_inf: int
    kappa_beta: int
    kappa_inf: int
    kappa_delta: int
    chains_beta: tuple = ()
    chains_inf: tuple = ()


# ----------------------------------------------------------------------
# factorization at a regular point


def _is_real(x: GaussRat) -> bool:
    return x.im == 0


def _regular(Q: RatMatFun, beta: GaussRat, detL: Poly) -> bool:
    return _is_real(beta) and bool(Q.den(beta)) and bool(detL(beta))


def _beta_candidates():
    yield GaussRat(0)
    for k in range(1, BETA_SEARCH_LIMIT + 1):
        yield GaussRat(k)
        yield GaussRat(-k)


def factor_at_regular_point(Q: RatMatFun, beta_hint=None) -> Factorization:
    """Q = (z - beta)^m Q~ with m the pole order of Q at infinity."""
    if not Q.is_symmetric():
        raise NotSymmetric("Q(conj z)^* != Q(z)")
    detL = poly_det(Q.numerator)
    if not detL:
        raise SingularFunction("det Q vanishes identically")
    m = max(Q.degree_at_infinity(), 0)
    if beta_hint is not None:
        beta = GaussRat.coerce(beta_hint)
        if not _regular(Q, beta, detL):
            raise BadHint(f"beta = {beta} is not a real regular point of Q")
    else:
        beta = next((b for b in _beta_candidates() if _regular(Q, b, detL)), None)
        if beta is None:
            raise NoRegularPoint(f"no regular point among the integers up to {BETA_SEARCH_LIMIT}")
    Qt = RatMatFun(Q.numerator, Q.den * Poly.linear_root(beta) ** m)
    return Factorization(beta, m, Qt, limit_at_infinity(Qt))


def limit_at_infinity(Q: RatMatFun) -> tuple:
    """Entrywise limit as z -> infinity (exact)."""
    if Q.degree_at_infinity() > 0:
        raise PoleAtInfinity("Q has a pole at infinity")
    dq = Q.den.degree
    lc = Q.den.lc
    return tuple(tuple(p.coeff(dq) / lc for p in row) for row in Q.numerator.rows)


# ----------------------------------------------------------------------
# residues and signed rank-one splitting


def residue_matrix(Qt: RatMatFun, lam) -> tuple:
    """R = -Res_{z=lam} Q~ at a simple pole."""
    lam = GaussRat.coerce(lam)
    f = Poly.linear_root(lam)
    k = 0
    den = Qt.den
    while den.degree > 0 and not den.divrem(f)[1]:
        den = den.exact_div(f)
        k += 1
    n = Qt.n
    if k > 1:
        raise NotSimplePole(f"pole of order {k} at {lam}")
    if k == 0:
        return tuple(tuple(ZERO for _ in range(n)) for _ in range(n))
    c = den(lam)
    R = tuple(tuple(-(p(lam) / c) for p in row) for row in Qt.numerator.rows)
    if any(R[i][j] != R[j][i].conj() for i in range(n) for j in range(n)):
        raise NotHermitian(f"residue at {lam} is not Hermitian")
    return R


def _rational_sqrt(x: Fraction):
    if x < 0:
        return None
    a, b = math.isqrt(x.numerator), math.isqrt(x.denominator)
    if a * a == x.numerator and b * b == x.denominator:
        return Fraction(a, b)
    return None


def _normalize_unit(v):
    """Multiply by a unit in {1, -1, i, -i} so the first nonzero entry has re > 0 (or re = 0, im > 0)."""
    first = next((x for x in v if x), None)
    if first is None:
        return list(v)
    for u in (ONE, -ONE, GaussRat(0, 1), GaussRat(0, -1)):
        y = first * u
        if y.re > 0 or (y.re == 0 and y.im > 0):
            return [x * u for x in v]
    return list(v)


def _signed_terms(R):
    """[(g, eps, weight)] with R = sum eps * weight * g g^*."""
    n = len(R)
    A = [[GaussRat.coerce(x) for x in row] for row in R]
    if any(A[i][j] != A[j][i].conj() for i in range(n) for j in range(n)):
        raise NotHermitian("matrix is not Hermitian")
    terms = []
    while True:
        diag = [(A[i][i].norm(), i) for i in range(n) if A[i][i]]
        if diag:
            best = max(d for d, _ in diag)
            i = next(i for d, i in diag if d == best)
            u = [ONE if t == i else ZERO for t in range(n)]
        else:
            off = [(A[i][j].norm(), i, j) for i in range(n) for j in range(n) if i != j and A[i][j]]
            if not off:
                break
            best = max(d for d, _, _ in off)
            _, i, j = next(t for t in off if t[0] == best)
            u = [ZERO] * n
            u[i] = ONE
            u[j] = A[i][j].conj()
        w = [sum((A[r][c] * u[c] for c in range(n)), ZERO) for r in range(n)]
        d = sum((u[r].conj() * w[r] for r in range(n)), ZERO).re
        eps = 1 if d > 0 else -1
        root = _rational_sqrt(abs(d))
        if root is not None:
            g = [x / GaussRat(root) for x in w]
            weight = ONE
        else:
            g = list(w)
            weight = GaussRat(1 / abs(d))
        g = _normalize_unit(g)
        terms.append((tuple(g), eps, weight))
        # A <- A - w w^* / d
        for r in range(n):
            for c in range(n):
                if w[r] and w[c]:
                    A[r][c] = A[r][c] - w[r] * w[c].conj() / GaussRat(d)
    return terms


def signed_rank_factorization(R) -> list:
    """[(g, eps)] with R = sum eps g g^*; requires rational-square pivots.

    Use :func:`_signed_terms` semantics via ``build_realization`` when a
    pivot is not a rational square: then the term keeps an explicit weight.
    """
    out = []
    for g, eps, weight in _signed_terms(R):
        if weight != ONE:
            raise ValueError("pivot is not a rational square; use signed_rank_terms")
        out.append((g, eps))
    return out


def signed_rank_terms(R) -> list:
    """[(g, eps, weight)] with R = sum eps * weight * g g^*, weight > 0 rational."""
    return _signed_terms(R)


__all__.append("signed_rank_terms")


# ----------------------------------------------------------------------
# realization


def _finite_poles(Qt: RatMatFun) -> list:
    if Qt.den.degree < 1:
        return []
    rs = roots_with_multiplicity(Qt.den)
    if rs.numeric_roots:
        raise NumericPole(f"pole locations {[r for r, _, _ in rs.numeric_roots]} are not in Q(i)")
    for r, mult in rs.exact_roots:
        if not _is_real(r):
            raise NonRealPole(f"pole {r} is not real")
        if mult > 1:
            raise UnsupportedJordanStructure(f"pole {r} has order {mult}; only simple poles are realized")
    poles = [r for r, _ in rs.exact_roots]
    poles.sort(key=lambda r: (abs(r.re), r.re))
    return poles


def build_realization(fact: Factorization) -> Realization:
    """Exact semisimple realization of Q~, verified before it is returned."""
    Qt = fact.Qtilde
    lams, signs, rows, weights = [], [], [], []
    for lam in _finite_poles(Qt):
        R = residue_matrix(Qt, lam)
        terms = _signed_terms(R)
        rep = zero_pole_structure(Qt, lam)
        if len(terms) != rep.total_pole_mult:
            raise VerificationError(f"rank of the residue at {lam} differs from the pole multiplicity")
        for g, eps, w in terms:
            lams.append(lam)
            signs.append(eps)
            rows.append(tuple(x.conj() for x in g))
            weights.append(w)
    real = Realization(
        dim_K=len(lams),
        A_tilde=tuple(lams),
        J_signs=tuple(signs),
        Gamma=tuple(rows),
        S_limit=fact.S_limit,
        weights=tuple(weights),
        beta=fact.beta,
        m=fact.m,
    )
    if not verify_realization(real, Qt):
        raise VerificationError("realization does not reproduce Q~")
    return real


def verify_realization(real: Realization, Qt: RatMatFun) -> bool:
    try:
        return real.reconstruct() == Qt
    except (ArithmeticError, ValueError):
        return False


def negative_index(real: Realization) -> int:
    """Number of negative squares of the state space, i.e. of -1 entries in J."""
    return sum(1 for s in real.J_signs if s < 0)


# ----------------------------------------------------------------------
# sign characteristic and index bookkeeping


def _inner(x, y) -> RatFun:
    """(x, y) = sum x_i conj(y_i), conjugating coefficients (exact for real z)."""
    acc = RatFun.coerce(0)
    for a, b in zip(x, y):
        acc = acc + RatFun.coerce(a) * RatFun.coerce(b).conj()
    return acc


def sign_limit(Qt: RatMatFun, psi, phihat, beta, t: int) -> GaussRat:
    """lim_{z -> beta} (psi(z), phihat(z)) / (z - beta)^t."""
    beta = GaussRat.coerce(beta)
    f = Poly.linear_root(beta)
    ip = _inner(psi, phihat)
    if not ip:
        return ZERO
    v = ip.valuation(f)
    if v < t:
        raise LimitUndefined(f"the inner product vanishes only to order {v} < {t}")
    if v > t:
        return ZERO
    return (ip / RatFun(f**t))(beta)


def _chains(rep: StructureReport, Q: RatMatFun, loc) -> list:
    """Per odd-length group, signature of the Gram matrix of limits of (-psi_i, S^_j)."""
    out = []
    groups: dict = {}
    for idx, t in enumerate(rep.partial_pole_mults):
        groups.setdefault(t, []).append(idx)
    for t in sorted(groups, reverse=True):
        idxs = groups[t]
        if t % 2 == 0:
            out.extend(ChainSign(t, None) for _ in idxs)
            continue
        G = []
        for a in idxs:
            psi = [-p for p in rep.pole_cancellation_functions[a]]
            G.append([sign_limit(Q, psi, rep.pole_functions[b], loc, t) for b in idxs])
        G = [[G[b][a] for b in range(len(idxs))] for a in range(len(idxs))]
        try:
            terms = _signed_terms(G)
        except NotHermitian as exc:
            raise SignUndetermined(f"sign matrix of chains of length {t} is not Hermitian") from exc
        if len(terms) != len(idxs):
            raise SignUndetermined(f"sign matrix of chains of length {t} is degenerate")
        out.extend(ChainSign(t, eps) for _, eps, _ in terms)
    return out


def chain_signs(Q: RatMatFun, point) -> list:
    """Chain lengths with signs (None for even lengths) at a real pole of Q."""
    rep = zero_pole_structure(Q, point)
    loc = ZERO if rep.point.is_infinity else rep.point.location
    return _chains(rep, Q, loc)


def _kappa(chains) -> int:
    return sum(c.length // 2 + (1 if c.length % 2 and c.sign < 0 else 0) for c in chains)


def kappa_report(Q: RatMatFun, beta) -> IndexReport:
    """Dimensions and negative indices of the root spaces at beta (for Q~) and at infinity (for Q)."""
    fact = factor_at_regular_point(Q, beta)
    Qt = fact.Qtilde
    cb = chain_signs(Qt, fact.beta)
    L0 = -invert_variable(Q)
    ci = chain_signs(L0, ZERO) if fact.m > 0 else []
    d_beta = sum(c.length for c in cb)
    d_inf = sum(c.length for c in ci)
    kb, ki = _kappa(cb), _kappa(ci)
    return IndexReport(d_beta, d_inf, kb, ki, kb - ki, tuple(cb), tuple(ci))
