"""Logarithmic residue (1/2 pi i) tr \\oint Q'(z) Q(z)^-1 dz on circles.

For Q = L/q the integrand simplifies to tr(L' L^-1) - n q'/q, which is what
the kernels evaluate node by node (numeric LU per node, no symbolic inverse).
The periodic trapezoid rule converges geometrically for this analytic
integrand; the node count is doubled until two successive values agree.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import ContourThroughSingularity, NonConvergent, SingularFunction
from .exactalg import roots_with_multiplicity
from .matfun import RatMatFun, derivative, inverse, poly_det
from .structure import StructureReport

__all__ = ["Contour", "LogResidue", "log_residue", "residue_consistency", "contour_for_report"]

DEFAULT_NODES = 1024
MAX_NODES = 2**16
CLEARANCE = 1e-6
DOUBLING_TOL = 1e-6
IMAG_TOL = 1e-6


@dataclass(frozen=True)
class Contour:
    center: complex
    radius: float
    nodes: int = DEFAULT_NODES

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("contour radius must be positive")
        if self.nodes < 64:
            raise ValueError("a contour needs at least 64 nodes")

    def points(self, nodes: int | None = None) -> np.ndarray:
        m = self.nodes if nodes is None else nodes
        theta = 2.0 * np.pi * np.arange(m) / m
        return complex(self.center) + self.radius * np.exp(1j * theta)


@dataclass(frozen=True)
class LogResidue:
    value: complex
    nearest_int: int
    gap: float
    nodes: int
    doubling_change: float

    def __iter__(self):
        return iter((self.value, self.nearest_int, self.gap))


def singular_points(Q: RatMatFun) -> list:
    """Complex locations of every root of q and of det L."""
    return list(_singular_points(Q))


@functools.lru_cache(maxsize=256)
def _singular_points(Q: RatMatFun) -> tuple:
    out = []
    for p in (Q.den, poly_det(Q.numerator)):
        if p.degree < 1:
            continue
        rs = roots_with_multiplicity(p)
        out.extend(complex(r) for r, _ in rs.exact_roots)
        out.extend(r for r, _, _ in rs.numeric_roots)
    return tuple(out)


def _check_contour(Q: RatMatFun, c: Contour, singular=None) -> None:
    pts = singular_points(Q) if singular is None else singular
    for s in pts:
        if abs(abs(s - complex(c.center)) - c.radius) < CLEARANCE:
            raise ContourThroughSingularity(f"contour passes within {CLEARANCE:g} of {s}")


def _trapezoid(Lc, qc, c: Contour, nodes: int, use_numba, slow_path_Q=None) -> complex:
    z = c.points(nodes)
    if slow_path_Q is None:
        f = _kernels.contour_integrand(Lc, qc, z, use_numba=use_numba)
    else:
        f = _slow_integrand(slow_path_Q, z)
    return complex(np.mean(f * (z - complex(c.center))))


def _slow_integrand(Q: RatMatFun, z) -> np.ndarray:
    """Cross-check path: tr(Q' Q^-1) from the symbolic derivative and inverse."""
    dQ, Qi = derivative(Q), inverse(Q)
    prod = dQ * Qi
    tr = None
    for i in range(Q.n):
        e = prod.entry(i, i)
        tr = e if tr is None else tr + e
    num, den = tr.num.to_numpy(), tr.den.to_numpy()
    return np.polyval(num[::-1], z) / np.polyval(den[::-1], z)


def log_residue(Q: RatMatFun, c: Contour, use_numba=None, symbolic_check: bool = False) -> LogResidue:
    """Winding integral of det Q around the circle, i.e. enclosed N - P."""
    if not poly_det(Q.numerator):
        raise SingularFunction("det Q vanishes identically")
    _check_contour(Q, c)
    Lc, qc = Q.coefficient_arrays()
    slow = Q if symbolic_check else None
    nodes = c.nodes
    value = _trapezoid(Lc, qc, c, nodes, use_numba, slow)
    while True:
        doubled = _trapezoid(Lc, qc, c, 2 * nodes, use_numba, slow)
        change = abs(doubled - value)
        nodes *= 2
        value = doubled
        if change <= DOUBLING_TOL:
            break
        if nodes >= MAX_NODES:
            raise NonConvergent(f"node doubling still changes the value by {change:.3e} at {nodes} nodes")
    if not math.isfinite(value.real) or abs(value.imag) >= IMAG_TOL:
        raise NonConvergent(f"imaginary part {value.imag:.3e} is not negligible")
    k = int(round(value.real))
    return LogResidue(value, k, abs(value - k), nodes, change)


def contour_for_report(Q: RatMatFun, report: StructureReport, nodes: int = DEFAULT_NODES) -> Contour:
    """Circle around the report's point that encloses no other singular point."""
    center = complex(report.point.location)
    others = [s for s in singular_points(Q) if abs(s - center) > 1e-9]
    radius = 0.5 * min((abs(s - center) for s in others), default=2.0)
    return Contour(center, min(radius, 1.0), nodes)


def residue_consistency(Q: RatMatFun, report: StructureReport, contour: Contour | None = None) -> bool:
    """Does the contour integral around the point reproduce N - P of the report?"""
    if report.point.is_infinity:
        raise ValueError("residue_consistency needs a finite point")
    c = contour if contour is not None else contour_for_report(Q, report)
    res = log_residue(Q, c)
    return res.nearest_int == report.N - report.P and res.gap < 1e-6
