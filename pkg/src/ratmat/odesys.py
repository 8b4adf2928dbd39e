"""Exponential solutions of the reciprocal-derivative systems

    A_m (1/u^(m)) + ... + A_1 (1/u') + A_0 (1/u) = 0,

where 1/v is taken componentwise.  Substituting u = phi^{-1} e^{alpha t}
turns the system into Q(alpha) phi = 0 with
Q(z) = z^{-m} (A_m + A_{m-1} z + ... + A_0 z^m), so every eigenvector of Q
at a zero alpha without vanishing components yields a solution.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import _linalg
from .errors import SingularFunction, TrivialSystem, ZeroComponent, ZeroLeading
from .exactalg import ZERO, GaussRat, Poly
from .matfun import MatPoly, RatMatFun, poly_det
from .structure import analyze

__all__ = [
    "OdeSystem",
    "OdeSolution",
    "EigenSurvey",
    "build_Q_from_system",
    "eigenvector_survey",
    "solve_system",
    "combine_eigenvectors",
    "residual_check",
    "demonstrate_nonlinearity",
    "DEFAULT_T_SAMPLES",
]

DEFAULT_T_SAMPLES = (0.0, 0.5, 1.0, 2.0)


@dataclass(frozen=True)
class OdeSystem:
    """Coefficient matrices A_0 .. A_m (A[k] multiplies 1/u^(k))."""

    m: int
    A: tuple

    def __post_init__(self):
        mats = tuple(tuple(tuple(GaussRat.coerce(x) for x in row) for row in M) for M in self.A)
        object.__setattr__(self, "A", mats)
        if self.m < 1:
            raise ValueError("order m must be at least 1")
        if len(mats) != self.m + 1:
            raise ValueError(f"expected {self.m + 1} matrices, got {len(mats)}")
        n = len(mats[0])
        if n < 1 or any(len(M) != n or any(len(r) != n for r in M) for M in mats):
            raise ValueError("coefficient matrices must be square and of equal size")
        if self.m == 1 and n == 1:
            raise TrivialSystem("m = n = 1 is the trivial scalar case")
        if all(not x for row in mats[-1] for x in row):
            raise ZeroLeading("A_m must be nonzero")

    @property
    def n(self) -> int:
        return len(self.A[0])


@dataclass(frozen=True)
class OdeSolution:
    """u(t) = u_components * exp(alpha t) with u_components = 1/eigenvector."""

    alpha: object
    eigenvector: tuple
    u_components: tuple
    index: int | None = None
    coeffs: tuple | None = None

    @property
    def exact(self) -> bool:
        return isinstance(self.alpha, GaussRat) and all(isinstance(c, GaussRat) for c in self.u_components)

    def __call__(self, t: float) -> np.ndarray:
        return np.array([complex(c) for c in self.u_components]) * np.exp(complex(self.alpha) * t)

    def scaled(self, c) -> OdeSolution:
        c = GaussRat.coerce(c)
        return OdeSolution(
            self.alpha,
            tuple(v / c for v in self.eigenvector),
            tuple(u * c for u in self.u_components),
            self.index,
            self.coeffs,
        )


@dataclass(frozen=True)
class EigenSurvey:
    """Eigenvectors T_j(alpha), j in the zero index set, split by admissibility."""

    alpha: object
    geometric_multiplicity: int
    admissible: tuple = ()
    excluded: tuple = ()
    reasons: dict = field(default_factory=dict)
    eigenvectors: dict = field(default_factory=dict)


def build_Q_from_system(sys: OdeSystem) -> RatMatFun:
    m = sys.m
    num = MatPoly.from_coefficients([sys.A[m - k] for k in range(m + 1)])
    return RatMatFun(num, Poly.monomial(m))


def _is_zero(x) -> bool:
    if isinstance(x, GaussRat):
        return not x
    return abs(x) <= 1e-12


def _reciprocal(vec):
    return tuple(x.inv() if isinstance(x, GaussRat) else 1.0 / complex(x) for x in vec)


def eigenvector_survey(sys: OdeSystem) -> list:
    Q = build_Q_from_system(sys)
    if not poly_det(Q.numerator):
        raise SingularFunction("det Q vanishes identically")
    out = []
    for rep in analyze(Q, include_infinity=False):
        if not rep.omega0:
            continue
        alpha = rep.point.location
        vecs = dict(zip(rep.omega0, (tuple(v) for v in rep.eigenvectors())))
        admissible, excluded, reasons = [], [], {}
        for j, v in vecs.items():
            if _is_zero(alpha):
                excluded.append(j)
                reasons[j] = "alpha = 0: the derivatives of a constant vanish"
            elif any(_is_zero(x) for x in v):
                excluded.append(j)
                reasons[j] = "eigenvector has a zero component"
            else:
                admissible.append(j)
        out.append(EigenSurvey(alpha, len(rep.omega0), tuple(admissible), tuple(excluded), reasons, vecs))
    return out


def _combination_search(vectors, limit: int = 3):
    """Small integer coefficients making every component of sum c_j v_j nonzero."""
    k = len(vectors)
    for bound in range(1, limit + 1):
        for coeffs in itertools.product(range(1, bound + 1), repeat=k):
            if bound > 1 and max(coeffs) < bound:
                continue
            comb = _combine(vectors, coeffs)
            if not any(_is_zero(x) for x in comb):
                return tuple(GaussRat(c) for c in coeffs), comb
    return None


def _combine(vectors, coeffs):
    n = len(vectors[0])
    out = []
    for i in range(n):
        acc = ZERO if all(isinstance(v[i], GaussRat) for v in vectors) else 0j
        for c, v in zip(coeffs, vectors):
            term = v[i] * GaussRat.coerce(c) if isinstance(v[i], GaussRat) else complex(v[i]) * complex(GaussRat.coerce(c))
            acc = acc + term
        out.append(acc)
    return tuple(out)


def solve_system(sys: OdeSystem) -> list:
    """One solution per admissible eigenvector T_j(alpha).

    When every eigenvector at alpha is excluded for having a zero component
    but alpha itself is usable, a combination sum c_j T_j(alpha) with small
    positive integer c_j is searched for and emitted instead.
    """
    sols = []
    for sv in eigenvector_survey(sys):
        for j in sv.admissible:
            v = sv.eigenvectors[j]
            sols.append(OdeSolution(sv.alpha, v, _reciprocal(v), index=j))
        if not sv.admissible and sv.excluded and not _is_zero(sv.alpha) and len(sv.excluded) > 1:
            found = _combination_search([sv.eigenvectors[j] for j in sv.excluded])
            if found is not None:
                coeffs, v = found
                sols.append(OdeSolution(sv.alpha, v, _reciprocal(v), coeffs=coeffs))
    return sols


def combine_eigenvectors(sys: OdeSystem, alpha, coeffs) -> OdeSolution:
    """Solution built from phi(alpha) = sum_j c_j T_j(alpha)."""
    target = alpha if not isinstance(alpha, (int, float)) else GaussRat.coerce(alpha)
    for sv in eigenvector_survey(sys):
        if _same_point(sv.alpha, target):
            if len(coeffs) != sv.geometric_multiplicity:
                raise ValueError(f"need {sv.geometric_multiplicity} coefficients, got {len(coeffs)}")
            vecs = [sv.eigenvectors[j] for j in sorted(sv.eigenvectors)]
            v = _combine(vecs, [GaussRat.coerce(c) for c in coeffs])
            if any(_is_zero(x) for x in v):
                raise ZeroComponent(f"combination {v} has a vanishing component")
            return OdeSolution(sv.alpha, v, _reciprocal(v), coeffs=tuple(GaussRat.coerce(c) for c in coeffs))
    raise ValueError(f"{alpha} is not a zero of the associated matrix function")


def _same_point(a, b) -> bool:
    if isinstance(a, GaussRat) and not isinstance(b, complex):
        return a == GaussRat.coerce(b)
    return abs(complex(a) - complex(b)) < 1e-9


def _exact_residual_vector(sys: OdeSystem, sol: OdeSolution):
    """sum_k A_k phi alpha^{-k}; the residual is this vector times exp(-alpha t)."""
    phi = _reciprocal(sol.u_components)
    acc = [ZERO] * sys.n
    for k, A in enumerate(sys.A):
        w = sol.alpha ** (-k)
        acc = [a + w * b for a, b in zip(acc, _linalg.matvec(A, phi))]
    return acc


def _terms_residual(sys: OdeSystem, terms, ts) -> float:
    """Residual of u(t) = sum_r c_r exp(a_r t) substituted into the system."""
    A = [np.array([[complex(x) for x in row] for row in M]) for M in sys.A]
    worst = 0.0
    for t in ts:
        r = np.zeros(sys.n, dtype=np.complex128)
        for k in range(sys.m + 1):
            deriv = sum(np.array([complex(x) for x in c]) * complex(a) ** k * np.exp(complex(a) * t) for c, a in terms)
            r = r + A[k] @ (1.0 / deriv)
        worst = max(worst, float(np.linalg.norm(r)))
    return worst


def residual_check(sys: OdeSystem, sol: OdeSolution, t_samples=DEFAULT_T_SAMPLES) -> float:
    """max_t |residual of u(t)|; exactly 0.0 when the exact substitution vanishes."""
    if any(_is_zero(c) for c in sol.u_components):
        raise ZeroComponent("solution has a vanishing component")
    if sol.exact and sol.alpha:
        vec = _exact_residual_vector(sys, sol)
        if all(not x for x in vec):
            return 0.0
        scale = max(abs(np.exp(-complex(sol.alpha) * t)) for t in t_samples)
        return float(np.linalg.norm([complex(x) for x in vec])) * scale
    return _terms_residual(sys, [(sol.u_components, sol.alpha)], t_samples)


def demonstrate_nonlinearity(sys: OdeSystem, sol_a: OdeSolution, sol_b: OdeSolution, t_samples=DEFAULT_T_SAMPLES) -> float:
    """Residual of u_a + u_b; a clearly nonzero value witnesses the lack of superposition."""
    if sol_a == sol_b:
        raise ValueError("need two different solutions")
    return _terms_residual(sys, [(sol_a.u_components, sol_a.alpha), (sol_b.u_components, sol_b.alpha)], t_samples)
