"""Zero/pole structure together with root and pole-cancellation functions.

Everything is read off the reduced diagonal d_i = D_ii/q of the unimodular
diagonalization S Q T = diag(d_i):

* the partial zero (pole) multiplicities at a point are the positive
  (negative) valuations of the d_i there;
* columns of T with a zero index are root functions, ``T_j / d_j`` are pole
  cancellation functions, columns of S^-1 are pole functions and
  ``S^-1_i d_i`` are pole cancellation functions of Q^-1.

A point is described by an exact square-free polynomial (``z - alpha`` for
points in Q(i)); valuations along it are exact even when the location is
only known numerically.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from . import _linalg
from .errors import EigvecZero, LimitInfinite, LimitZero, PremiseViolated, SingularFunction, VerificationError
from .exactalg import ZERO, GaussRat, Poly, RatFun, coprime_base, roots_with_multiplicity
from .matfun import RatMatFun, invert_variable, poly_det
from .smithform import DiagRatForm, diag_rational

__all__ = [
    "INFINITY",
    "CriticalPoint",
    "StructureReport",
    "critical_points",
    "zero_pole_structure",
    "structure_at_infinity",
    "analyze",
    "verify_order",
    "product_valuation",
    "verify_pole_cancellation",
    "proposition_L_equivalence",
    "taylor_jordan_vectors",
]


class _Infinity:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

Location = Union[GaussRat, complex, _Infinity]


@dataclass(frozen=True)
class CriticalPoint:
    """A point of the extended plane.

    ``factor`` is the exact monic square-free polynomial whose roots all
    carry the same structure; it is ``z - location`` for exact points and
    ``zeta`` for infinity (analyzed in zeta = 1/z).
    """

    location: Location
    kind: str = "unknown"
    factor: Poly | None = None

    @property
    def is_exact(self) -> bool:
        return isinstance(self.location, GaussRat)

    @property
    def is_infinity(self) -> bool:
        return self.location is INFINITY

    def with_kind(self, kind: str) -> CriticalPoint:
        return CriticalPoint(self.location, kind, self.factor)


@dataclass(frozen=True)
class StructureReport:
    """Local structure of Q at one point.

    Index sets are 0-based positions in the normalized diagonal.  For the
    point at infinity every function is expressed in zeta = 1/z.
    """

    point: CriticalPoint
    omega0: tuple = ()
    omegaP: tuple = ()
    partial_zero_mults: tuple = ()
    partial_pole_mults: tuple = ()
    root_functions: tuple = ()
    pole_cancellation_functions: tuple = ()
    pole_functions: tuple = ()
    inverse_pole_cancellation: tuple = ()
    variable: str = "z"
    form: DiagRatForm | None = field(default=None, repr=False, compare=False)

    @property
    def geometric_mult_zero(self) -> int:
        return len(self.omega0)

    @property
    def geometric_mult_pole(self) -> int:
        return len(self.omegaP)

    @property
    def total_zero_mult(self) -> int:
        return sum(self.partial_zero_mults)

    @property
    def total_pole_mult(self) -> int:
        return sum(self.partial_pole_mults)

    N = total_zero_mult
    P = total_pole_mult

    @property
    def kind(self) -> str:
        return self.point.kind

    def is_empty(self) -> bool:
        return not self.omega0 and not self.omegaP

    def eigenvectors(self):
        """Values T_i(alpha) for i in omega0 (exact or complex)."""
        loc = self.point.location
        if self.point.is_infinity:
            loc = ZERO
        return [[c(loc) for c in phi] for phi in self.root_functions]


def _kind(omega0, omegaP) -> str:
    if omega0 and omegaP:
        return "both"
    if omega0:
        return "zero"
    if omegaP:
        return "pole"
    return "regular"


def _analyze_at(form: DiagRatForm, point: CriticalPoint, variable: str = "z") -> StructureReport:
    f = point.factor
    vals = [d.valuation(f) for d in form.dtilde]
    omega0 = tuple(i for i, v in enumerate(vals) if v > 0)
    omegaP = tuple(i for i, v in enumerate(vals) if v < 0)
    T, S_inv = form.smith.T, form.smith.S_inv
    roots = tuple(tuple(T.column(i)) for i in omega0)
    pcf = tuple(tuple(RatFun(p) / form.dtilde[j] for p in T.column(j)) for j in omegaP)
    polef = tuple(tuple(S_inv.column(j)) for j in omegaP)
    ipcf = tuple(tuple(RatFun(p) * form.dtilde[i] for p in S_inv.column(i)) for i in omega0)
    return StructureReport(
        point=point.with_kind(_kind(omega0, omegaP)),
        omega0=omega0,
        omegaP=omegaP,
        partial_zero_mults=tuple(vals[i] for i in omega0),
        partial_pole_mults=tuple(-vals[j] for j in omegaP),
        root_functions=roots,
        pole_cancellation_functions=pcf,
        pole_functions=polef,
        inverse_pole_cancellation=ipcf,
        variable=variable,
        form=form,
    )


def _form(Q: RatMatFun, form: DiagRatForm | None) -> DiagRatForm:
    if form is not None:
        return form
    return _cached_form(Q)


@functools.lru_cache(maxsize=256)
def _cached_form(Q: RatMatFun) -> DiagRatForm:
    if not poly_det(Q.numerator):
        raise SingularFunction("det Q vanishes identically")
    return diag_rational(Q)


def critical_points(Q: RatMatFun, form: DiagRatForm | None = None) -> list:
    """All finite zeros and poles, exact ones first, each with its factor."""
    form = _form(Q, form)
    polys = []
    for d in form.dtilde:
        polys.append(d.num)
        polys.append(d.den)
    exact, numeric = [], []
    for b in coprime_base(polys):
        rs = roots_with_multiplicity(b)
        for r, _ in rs.exact_roots:
            exact.append(CriticalPoint(r, factor=Poly.linear_root(r)))
        for rest, _ in rs.residual_factors:
            for r, _, _ in rs.numeric_roots:
                if abs(rest(r)) <= 1e-8 * (1 + float(np.sum(np.abs(rest.to_numpy())))):
                    numeric.append(CriticalPoint(complex(r), factor=rest))
    exact.sort(key=lambda p: (p.location.re, p.location.im))
    numeric.sort(key=lambda p: (p.location.real, p.location.imag))
    return [_analyze_at(form, p).point for p in exact + numeric]


def _resolve_point(point, form: DiagRatForm) -> CriticalPoint:
    if isinstance(point, CriticalPoint):
        if point.factor is not None or point.is_infinity:
            return point
        point = point.location
    if point is INFINITY:
        return CriticalPoint(INFINITY)
    if isinstance(point, (complex, float)) or isinstance(point, np.generic):
        z0 = complex(point)
        polys = [p for d in form.dtilde for p in (d.num, d.den)]
        best, best_val = None, None
        for b in coprime_base(polys):
            scale = 1 + float(np.sum(np.abs(b.to_numpy())))
            val = abs(b(z0)) / scale
            if best_val is None or val < best_val:
                best, best_val = b, val
        if best is not None and best_val < 1e-8:
            if best.degree == 1:
                return CriticalPoint(-best.coeffs[0], factor=best)
            return CriticalPoint(z0, factor=best)
        return CriticalPoint(z0, factor=Poly.linear_root(GaussRat.coerce(z0)))
    alpha = GaussRat.coerce(point)
    return CriticalPoint(alpha, factor=Poly.linear_root(alpha))


def zero_pole_structure(Q: RatMatFun, point, form: DiagRatForm | None = None) -> StructureReport:
    """Partial multiplicities and canonical functions of Q at ``point``.

    ``point`` may be a number, a :class:`CriticalPoint` or ``INFINITY``.  A
    regular point yields an empty report.
    """
    form = _form(Q, form)
    cp = _resolve_point(point, form)
    if cp.is_infinity:
        return structure_at_infinity(Q)
    return _analyze_at(form, cp)


def structure_at_infinity(Q: RatMatFun) -> StructureReport:
    """Structure of g(zeta) = Q(1/zeta) at zeta = 0, relabeled to infinity."""
    g = invert_variable(Q)
    form = _form(g, None)
    zeta = Poly.linear_root(0)
    rep = _analyze_at(form, CriticalPoint(ZERO, factor=zeta), variable="zeta")
    pt = CriticalPoint(INFINITY, rep.point.kind, zeta)
    return StructureReport(
        point=pt,
        omega0=rep.omega0,
        omegaP=rep.omegaP,
        partial_zero_mults=rep.partial_zero_mults,
        partial_pole_mults=rep.partial_pole_mults,
        root_functions=rep.root_functions,
        pole_cancellation_functions=rep.pole_cancellation_functions,
        pole_functions=rep.pole_functions,
        inverse_pole_cancellation=rep.inverse_pole_cancellation,
        variable="zeta",
        form=form,
    )


def analyze(Q: RatMatFun, include_infinity: bool = True) -> list:
    """Reports for every finite critical point, then infinity if it is critical."""
    form = _form(Q, None)
    reports = [_analyze_at(form, p) for p in critical_points(Q, form)]
    inf = structure_at_infinity(Q)
    _check_balance(Q, reports, inf)
    if include_infinity and not inf.is_empty():
        reports.append(inf)
    return reports


def _check_balance(Q: RatMatFun, finite: list, inf: StructureReport) -> None:
    """Finite N - P equals deg num - deg den of det Q, and the extended-plane total is 0."""
    det = RatFun(poly_det(Q.numerator), Q.den**Q.n)
    finite_sum = sum(r.N - r.P for r in finite)
    if finite_sum != det.num.degree - det.den.degree or finite_sum + inf.N - inf.P != 0:
        raise VerificationError("zero/pole multiplicities do not balance against det Q")


# ----------------------------------------------------------------------
# verification of individual functions


def _factor_of(alpha) -> tuple:
    if isinstance(alpha, CriticalPoint):
        loc = ZERO if alpha.is_infinity else alpha.location
        return alpha.factor, loc
    a = GaussRat.coerce(alpha)
    return Poly.linear_root(a), a


def product_valuation(Q: RatMatFun, vec, alpha) -> int:
    """min over nonzero components of the valuation of Q(z) vec(z) at alpha."""
    f, _ = _factor_of(alpha)
    prod = Q.apply(vec)
    vals = [c.valuation(f) for c in prod if c]
    if not vals:
        raise SingularFunction("Q(z) v(z) vanishes identically")
    return min(vals)


def verify_order(Q: RatMatFun, phi, alpha) -> int:
    """Exact order of phi as a root function of Q at alpha (0 if not a root function).

    A negative valuation (Q phi has a pole at alpha) is also reported as 0;
    use :func:`product_valuation` to see the sign.
    """
    _, loc = _factor_of(alpha)
    phi = [RatFun.coerce(p) for p in phi]
    if all(not _value(p, loc) for p in phi):
        raise EigvecZero("phi(alpha) = 0")
    return max(product_valuation(Q, phi, alpha), 0)


def _value(r: RatFun, loc):
    if isinstance(loc, complex):
        v = r(loc)
        return v if abs(v) > 1e-12 else 0
    return r(loc)


def verify_pole_cancellation(Q: RatMatFun, psi, beta):
    """(order of vanishing of psi at beta, lim Q(z) psi(z)).

    Raises LimitInfinite if Q psi has a pole at beta and LimitZero if the
    limit vanishes.  An order of 0 means psi is not a pole cancellation
    function even though the limit is finite and nonzero.
    """
    f, loc = _factor_of(beta)
    psi = [RatFun.coerce(p) for p in psi]
    prod = Q.apply(psi)
    vals = [c.valuation(f) if c else None for c in prod]
    finite = [v for v in vals if v is not None]
    if not finite:
        raise LimitZero("Q psi vanishes identically")
    low = min(finite)
    if low < 0:
        raise LimitInfinite(f"Q psi has a pole of order {-low} at beta")
    if low > 0:
        raise LimitZero("Q psi vanishes at beta")
    limit = [c(loc) if v == 0 else (0j if isinstance(loc, complex) else ZERO) for c, v in zip(prod, vals)]
    order = min(p.valuation(f) for p in psi if p)
    return order, limit


def proposition_L_equivalence(Q: RatMatFun, phi, alpha) -> bool:
    """Root orders of Q and of L = q Q agree at a zero alpha that is not a pole."""
    f, loc = _factor_of(alpha)
    if Q.den.degree > 0 and not Q.den.divrem(f)[1]:
        raise PremiseViolated("alpha is a pole of Q")
    L = RatMatFun(Q.numerator)
    return verify_order(Q, phi, alpha) == verify_order(L, phi, alpha)


def taylor_jordan_vectors(phi, alpha, l: int) -> list:
    """[phi_0, ..., phi_{l-1}] with phi(z) = sum_j (z - alpha)^j phi_j + O((z - alpha)^l)."""
    if l < 1:
        raise ValueError("l must be at least 1")
    alpha = GaussRat.coerce(alpha)
    shifted = [(p if isinstance(p, Poly) else Poly.const(p)).shift(alpha) for p in phi]
    return [[s.coeff(j) for s in shifted] for j in range(l)]


def eigenvector_rank(report: StructureReport) -> int:
    vecs = report.eigenvectors()
    if not vecs:
        return 0
    if report.point.is_exact or report.point.is_infinity:
        return _linalg.rank(vecs)
    return int(np.linalg.matrix_rank(np.array(vecs, dtype=np.complex128), tol=1e-9))
