"""Command-line front end: ``ratmat analyze | smith | logres | solve-ode | realize``.

Input is JSON, either ``{"matrix": [["expr", ...], ...]}`` or
``{"ode": {"m": int, "matrices": [A_0, ..., A_m]}}``.  The report goes to
stdout as canonical JSON (sorted keys, exact rational strings); diagnostics
go to stderr.  Exit codes: 0 success, 1 input error, 2 math-domain error,
3 failed internal verification.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys

from . import __version__
from .errors import InputError, MathDomainError, VerificationError
from .exactalg import GaussRat, Poly, RatFun, format_gaussrat, format_poly
from .logres import Contour, log_residue
from .matfun import RatMatFun, determinant, ratmat_from_entries
from .odesys import OdeSystem, eigenvector_survey, residual_check, solve_system
from .parser import parse_ratfun
from .realization import build_realization, factor_at_regular_point, kappa_report, negative_index
from .smithform import diag_rational
from .structure import INFINITY, StructureReport, analyze, zero_pole_structure

__all__ = ["main", "run_command", "SCHEMA_VERSION"]

SCHEMA_VERSION = 1
EXIT_OK, EXIT_INPUT, EXIT_DOMAIN, EXIT_VERIFY = 0, 1, 2, 3

log = logging.getLogger("ratmat")


# ----------------------------------------------------------------------
# JSON encoding of exact objects


def _num(x):
    if isinstance(x, GaussRat):
        return format_gaussrat(x)
    if isinstance(x, complex):
        return {"re": x.real, "im": x.imag}
    if isinstance(x, Poly):
        return format_poly(x)
    if isinstance(x, RatFun):
        return str(x)
    return x


def _vec(v):
    return [_num(x) for x in v]


def _mat(M):
    rows = M.rows if hasattr(M, "rows") else M
    return [_vec(r) for r in rows]


def _location(report: StructureReport):
    pt = report.point
    if pt.is_infinity:
        return "inf"
    if pt.is_exact:
        return format_gaussrat(pt.location)
    return {"re": pt.location.real, "im": pt.location.imag, "tol": 1e-10, "factor": format_poly(pt.factor)}


def _report_json(rep: StructureReport) -> dict:
    return {
        "location": _location(rep),
        "kind": rep.kind,
        "variable": rep.variable,
        "omega0": list(rep.omega0),
        "omegaP": list(rep.omegaP),
        "partial_zero_mults": list(rep.partial_zero_mults),
        "partial_pole_mults": list(rep.partial_pole_mults),
        "N": rep.N,
        "P": rep.P,
        "root_functions": [_vec(v) for v in rep.root_functions],
        "pole_cancellation_functions": [_vec(v) for v in rep.pole_cancellation_functions],
        "pole_functions": [_vec(v) for v in rep.pole_functions],
        "inverse_pole_cancellation": [_vec(v) for v in rep.inverse_pole_cancellation],
    }


# ----------------------------------------------------------------------
# input


def _constant(src) -> GaussRat:
    r = parse_ratfun(src)
    if r.den.degree != 0 or r.num.degree > 0:
        raise InputError(f"expected a constant, got {src!r}")
    return r.num.coeff(0) / r.den.coeff(0)


def _load(args) -> tuple:
    try:
        if args.input in (None, "-"):
            raw = sys.stdin.buffer.read()
        else:
            with open(args.input, "rb") as fh:
                raw = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read input: {exc}") from exc
    try:
        doc = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise InputError(f"input is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise InputError("input must be a JSON object")
    return doc, hashlib.sha256(raw).hexdigest()


def _matrix(doc) -> RatMatFun:
    rows = doc.get("matrix")
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputError('expected {"matrix": [[...], ...]}')
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InputError("matrix must be square")
    return ratmat_from_entries([[parse_ratfun(x) for x in r] for r in rows])


def _ode(doc) -> OdeSystem:
    spec = doc.get("ode", doc)
    if not isinstance(spec, dict) or "m" not in spec or "matrices" not in spec:
        raise InputError('expected {"ode": {"m": int, "matrices": [...]}}')
    m = spec["m"]
    if not isinstance(m, int) or isinstance(m, bool):
        raise InputError("m must be an integer")
    mats = spec["matrices"]
    if not isinstance(mats, list) or not all(isinstance(M, list) and all(isinstance(r, list) for r in M) for M in mats):
        raise InputError("matrices must be a list of square matrices")
    try:
        return OdeSystem(m, [[[_constant(x) for x in r] for r in M] for M in mats])
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _point(text: str):
    if text.strip().lower() in ("inf", "infinity", "oo"):
        return INFINITY
    return _constant(text)


# ----------------------------------------------------------------------
# commands


def cmd_analyze(args, doc) -> dict:
    Q = _matrix(doc)
    form = diag_rational(Q)
    if args.point is not None:
        reports = [zero_pole_structure(Q, _point(args.point), form)]
    else:
        reports = analyze(Q)
    finite = [r for r in reports if not r.point.is_infinity]
    return {
        "det": str(determinant(Q)),
        "dtilde": [str(d) for d in form.dtilde],
        "points": [_report_json(r) for r in reports],
        "finite_N_minus_P": sum(r.N - r.P for r in finite),
    }


def cmd_smith(args, doc) -> dict:
    Q = _matrix(doc)
    form = diag_rational(Q)
    s = form.smith
    out = {
        "den": format_poly(Q.den),
        "numerator": _mat(Q.numerator),
        "S": _mat(s.S),
        "D": _mat(s.D),
        "T": _mat(s.T),
        "S_inv": _mat(s.S_inv),
        "T_inv": _mat(s.T_inv),
        "det_S": _num(s.det_S),
        "det_T": _num(s.det_T),
        "dtilde": [str(d) for d in form.dtilde],
    }
    if args.emit_transcript:
        out["transcript"] = [op.to_json() for op in s.transcript]
    return out


def cmd_logres(args, doc) -> dict:
    Q = _matrix(doc)
    center = _constant(args.center)
    c = Contour(complex(center), float(args.radius), int(args.nodes))
    res = log_residue(Q, c)
    inside = 0
    for rep in analyze(Q, include_infinity=False):
        # one report per root, numeric roots included
        if abs(complex(rep.point.location) - c.center) < c.radius:
            inside += rep.N - rep.P
    return {
        "center": _num(center),
        "radius": c.radius,
        "value": {"re": res.value.real, "im": res.value.imag},
        "nearest_int": res.nearest_int,
        "gap": res.gap,
        "nodes": res.nodes,
        "doubling_change": res.doubling_change,
        "tolerance": 1e-6,
        "structure_N_minus_P": inside,
    }


def cmd_solve_ode(args, doc) -> dict:
    sys_ = _ode(doc)
    sols = solve_system(sys_)
    survey = eigenvector_survey(sys_)
    return {
        "m": sys_.m,
        "n": sys_.n,
        "solutions": [
            {
                "alpha": _num(s.alpha),
                "u": _vec(s.u_components),
                "eigenvector": _vec(s.eigenvector),
                "index": s.index,
                "coeffs": None if s.coeffs is None else _vec(s.coeffs),
                "residual": residual_check(sys_, s),
                "residual_tol": 1e-12,
            }
            for s in sols
        ],
        "survey": [
            {
                "alpha": _num(sv.alpha),
                "geometric_multiplicity": sv.geometric_multiplicity,
                "admissible": list(sv.admissible),
                "excluded": {str(k): v for k, v in sv.reasons.items()},
            }
            for sv in survey
        ],
    }


def cmd_realize(args, doc) -> dict:
    Q = _matrix(doc)
    hint = None if args.beta is None else _constant(args.beta)
    fact = factor_at_regular_point(Q, hint)
    real = build_realization(fact)
    idx = kappa_report(Q, fact.beta)
    return {
        "beta": _num(fact.beta),
        "m": fact.m,
        "S": _mat(fact.S_limit),
        "Qtilde": [[str(e) for e in row] for row in fact.Qtilde.entries()],
        "dim_K": real.dim_K,
        "A_tilde": _vec(real.A_tilde),
        "J": list(real.J_signs),
        "Gamma": [_vec(r) for r in real.Gamma],
        "weights": _vec(real.weights),
        "negative_index": negative_index(real),
        "index_report": {
            "d_beta": idx.d_beta,
            "d_inf": idx.d_inf,
            "kappa_beta": idx.kappa_beta,
            "kappa_inf": idx.kappa_inf,
            "kappa_delta": idx.kappa_delta,
        },
    }


COMMANDS = {
    "analyze": cmd_analyze,
    "smith": cmd_smith,
    "logres": cmd_logres,
    "solve-ode": cmd_solve_ode,
    "realize": cmd_realize,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ratmat", description="Zero/pole structure of rational matrix functions.")
    p.add_argument("--version", action="version", version=f"ratmat {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("--input", "-i", default="-", help="JSON input file ('-' for stdin)")
        sp.add_argument("--json", action="store_true", help="compact single-line output")
        if name == "analyze":
            sp.add_argument("--point", help="a+bi or inf; default: every critical point")
        if name == "smith":
            sp.add_argument("--emit-transcript", action="store_true")
        if name == "logres":
            sp.add_argument("--center", default="0")
            sp.add_argument("--radius", type=float, default=1.0)
            sp.add_argument("--nodes", type=int, default=1024)
        if name == "realize":
            sp.add_argument("--beta")
    return p


def dumps(doc: dict, compact: bool = False) -> str:
    if compact:
        return json.dumps(doc, sort_keys=True, separators=(",", ":"), allow_nan=False)
    return json.dumps(doc, sort_keys=True, indent=2, allow_nan=False)


def run_command(argv) -> tuple:
    """(exit code, report dict or None)."""
    args = build_parser().parse_args(argv)
    doc, digest = _load(args)
    result = COMMANDS[args.command](args, doc)
    report = {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "ratmat", "version": __version__},
        "input_sha256": digest,
        "command": args.command,
        "result": result,
    }
    return EXIT_OK, report, args


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="ratmat: %(message)s", stream=sys.stderr)
    argv = sys.argv[1:] if argv is None else argv
    compact = "--json" in argv
    try:
        code, report, _ = run_command(argv)
    except Exception as exc:  # mapped onto the exit-code contract below
        code = exit_code_for(exc)
        if code is None:
            raise
        log.error("%s: %s", type(exc).__name__, exc)
        report = _error_doc(exc)
    sys.stdout.write(dumps(report, compact) + "\n")
    return code


def exit_code_for(exc):
    if isinstance(exc, VerificationError):
        return EXIT_VERIFY
    if isinstance(exc, MathDomainError):
        return EXIT_DOMAIN
    if isinstance(exc, (InputError, ValueError, KeyError, TypeError)):
        return EXIT_INPUT
    if isinstance(exc, ArithmeticError):
        return EXIT_DOMAIN
    return None


def _error_doc(exc) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": {"name": "ratmat", "version": __version__},
        "error": {"type": type(exc).__name__, "message": str(exc)},
    }


if __name__ == "__main__":
    sys.exit(main())
