"""Command-line surface tying the pipeline together.

Every subcommand emits a JSON document with stable field names (schema in
holofol/schemas/output.schema.json); `trace` additionally writes the trace
CSV and `plot` an SVG.  Exit codes: 0 success, 1 usage/parse error, 2 gate
failure, 3 symbolic mismatch, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import json
import shlex
import sys
from dataclasses import dataclass
from typing import List, Optional

from . import __version__
from .bipoly import BiPoly
from .errors import (
    BaseOnInvariantLine,
    ExprSyntaxError,
    GateFailure,
    HolofolError,
    InvalidInput,
    InvalidParams,
    IrrationalLambda1,
    NearPole,
    NotDeckInvariant,
    NotDivisible,
    NotPComplete,
    NotRiccati,
    PathThroughSingularity,
    ShapeMismatch,
    StepUnderflow,
    UndefinedOnTrace,
)
from .first_integral import (
    FirstIntegralForm,
    first_integral_xy,
    verify_first_integral,
)
from .foliation import XY, VectorField2, pullback_field, pushforward_field, times_form
from .normal_forms import (
    SaitoSuzukiParams,
    build_H,
    build_P,
    build_Y,
    extract_pullback_shape,
    special_values,
)
from .parsing import (
    parse_expression,
    parse_polynomial,
    parse_vector_field,
    print_bipoly,
    print_one_form,
    print_ratfunc,
    print_vector_field,
)
from .poly import UniPoly
from .ratfunc import RatFunc
from .tracer import (
    ComplexPoint,
    conservation_check,
    elapsed_time_via_tau,
    integrate_ray,
    trace_to_csv_rows,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_GATE = 2
EXIT_SYMBOLIC = 3
EXIT_NUMERICAL = 4

_GATE_ERRORS = (
    GateFailure,
    IrrationalLambda1,
    NotDeckInvariant,
    ShapeMismatch,
    NotPComplete,
    NotRiccati,
    BaseOnInvariantLine,
)
_NUMERICAL_ERRORS = (NearPole, StepUnderflow, UndefinedOnTrace, PathThroughSingularity)


@dataclass
class JobConfig:
    """Validated run configuration for the numerical subcommands."""

    tol: float = 1e-10
    escape_radius: float = 1e8
    pole_guard: float = 1e-12
    T: float = 1.0
    direction: complex = 1.0 + 0.0j
    output: Optional[str] = None

    def validate(self):
        if not (1e-14 <= self.tol <= 1e-3):
            raise InvalidInput(f"tol = {self.tol} outside [1e-14, 1e-3]")
        if self.escape_radius <= 0:
            raise InvalidInput("escape radius must be positive")
        if self.T < 0:
            raise InvalidInput("T must be nonnegative")


def _params_from_args(args) -> SaitoSuzukiParams:
    p_expr = parse_expression(args.p, vars=XY)
    p_poly = p_expr.as_bipoly()
    if p_poly.depends_on("y"):
        raise InvalidParams("p must be a polynomial in x alone")
    p = UniPoly("x", {i: c for (i, j), c in p_poly.terms.items()})
    return SaitoSuzukiParams(m=args.m, n=args.n, l=args.l, p=p)


def _parse_complex(text: str) -> complex:
    try:
        value = parse_expression(text, vars=XY)
        if value.is_constant():
            return complex(value.constant_value())
    except ExprSyntaxError:
        pass
    try:
        return complex(text.replace("i", "j"))
    except ValueError as exc:
        raise InvalidInput(f"cannot parse complex number {text!r}") from exc


def _emit(doc: dict, args) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True)
    if getattr(args, "json_out", None):
        with open(args.json_out, "w") as fh:
            fh.write(text + "\n")
    print(text)


def _params_doc(params: SaitoSuzukiParams) -> dict:
    return {
        "m": params.m,
        "n": params.n,
        "l": params.l,
        "p": print_bipoly(BiPoly.from_unipoly(params.p, XY)),
    }


def _first_integral_doc(G: FirstIntegralForm) -> dict:
    return {
        "q": G.q_hat,
        "p": G.p_hat,
        "n": G.n,
        "sigma": str(G.sigma),
        "sbar": str(G.sbar),
        "P": print_bipoly(G.P),
        "description": G.describe(),
    }


def _load_first_integral(path: str) -> FirstIntegralForm:
    with open(path) as fh:
        doc = json.load(fh)
    if "G" in doc:
        doc = doc["G"]
    sigma_rf = parse_expression(doc["sigma"].replace("z", "x"), vars=XY)
    sigma_bi = sigma_rf.as_bipoly()
    sigma = UniPoly("z", {i: c for (i, j), c in sigma_bi.terms.items()})
    sbar = UniPoly("z", {e * doc["n"]: c for e, c in sigma.terms.items()})
    return FirstIntegralForm(
        q_hat=doc["q"],
        p_hat=doc["p"],
        n=doc["n"],
        sbar=sbar,
        sigma=sigma,
        P=parse_polynomial(doc["P"], vars=XY),
    )


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_normal_form(args) -> int:
    params = _params_from_args(args)
    P = build_P(params)
    Y = build_Y(params)
    doc = {
        "command": "normal-form",
        "params": _params_doc(params),
        "P": print_bipoly(P) if isinstance(P, BiPoly) else print_ratfunc(P),
        "P_is_polynomial": isinstance(P, BiPoly),
        "Y": print_vector_field(Y),
    }
    if params.covering_ready:
        H = build_H(params)
        doc["H"] = {"x": print_ratfunc(H.x_comp), "y": print_ratfunc(H.y_comp)}
    else:
        doc["H"] = None
    _emit(doc, args)
    return EXIT_OK


def _cmd_pullback(args) -> int:
    params = _params_from_args(args)
    X = parse_vector_field(args.field)
    W = pullback_field(build_H(params), X)
    _emit(
        {
            "command": "pullback",
            "params": _params_doc(params),
            "field": print_vector_field(W),
        },
        args,
    )
    return EXIT_OK


def _cmd_pushforward(args) -> int:
    params = _params_from_args(args)
    Z = parse_vector_field(args.field)
    X = pushforward_field(build_H(params), Z)
    _emit(
        {
            "command": "pushforward",
            "params": _params_doc(params),
            "field": print_vector_field(X),
        },
        args,
    )
    return EXIT_OK


def _cmd_times_form(args) -> int:
    params = _params_from_args(args)
    X = parse_vector_field(args.field)
    tf = times_form(X, params)
    doc = {
        "command": "times-form",
        "params": _params_doc(params),
        "eta": print_one_form(tf.eta),
        "eta_of_X": print_bipoly(tf.eta_of_X),
        "alpha": tf.alpha,
        "beta": tf.beta,
        "unit": str(tf.unit_const),
        "tau": print_one_form(tf.tau),
    }
    try:
        pb = extract_pullback_shape(pullback_field(build_H(params), X), params.n)
        if tf.beta != pb.N:
            raise ShapeMismatch(f"beta = {tf.beta} does not equal N = {pb.N}")
        k_expected = params.n * (tf.alpha - 1) - params.m * (pb.N - 1)
        doc["k_identity"] = {
            "k": pb.k,
            "N": pb.N,
            "expected": k_expected,
            "holds": pb.k == k_expected,
        }
    except _GATE_ERRORS as exc:
        doc["k_identity"] = {"error": str(exc)}
    _emit(doc, args)
    return EXIT_OK


def _cmd_first_integral(args) -> int:
    params = _params_from_args(args)
    X = parse_vector_field(args.field)
    pb = extract_pullback_shape(pullback_field(build_H(params), X), params.n)
    G = first_integral_xy(params, pb)
    verdict = verify_first_integral(G, X)
    doc = {
        "command": "first-integral",
        "params": _params_doc(params),
        "shape": {"k": pb.k, "a": str(pb.a), "c": str(pb.c), "N": pb.N},
        "G": _first_integral_doc(G),
        "verdict": verdict.kind,
    }
    _emit(doc, args)
    return EXIT_OK if verdict.is_exact_zero else EXIT_SYMBOLIC


def _cmd_verify(args) -> int:
    G = _load_first_integral(args.g_file)
    X = parse_vector_field(args.field)
    verdict = verify_first_integral(G, X)
    doc = {
        "command": "verify",
        "verdict": verdict.kind,
        "residual": print_ratfunc(verdict.residual) if verdict.residual else None,
    }
    _emit(doc, args)
    return EXIT_OK if verdict.is_exact_zero else EXIT_SYMBOLIC


def _cmd_special_values(args) -> int:
    P = parse_polynomial(args.P, vars=XY)
    X = parse_vector_field(args.field)
    report = special_values(P, X)
    doc = {
        "command": "special-values",
        "critical_values": [str(v) for v in report.critical_values],
        "residual": str(report.residual),
        "invariant_fiber_components": [
            print_bipoly(g) for g in report.invariant_fiber_components
        ],
    }
    _emit(doc, args)
    return EXIT_OK


def _trace_from_args(args):
    cfg = JobConfig(
        tol=args.tol,
        escape_radius=args.escape_radius,
        T=args.T,
        direction=_parse_complex(args.direction),
        output=getattr(args, "output", None),
    )
    mag = abs(cfg.direction)
    if mag == 0:
        raise InvalidInput("direction must be nonzero")
    cfg.direction /= mag
    cfg.validate()
    X = parse_vector_field(args.field)
    G = _load_first_integral(args.g_file) if args.g_file else None
    z0 = ComplexPoint(_parse_complex(args.x0), _parse_complex(args.y0))
    tr = integrate_ray(
        X,
        z0,
        cfg.direction,
        cfg.T,
        cfg.tol,
        escape_radius=cfg.escape_radius,
        first_integral=G,
    )
    return cfg, X, G, tr


def _cmd_trace(args) -> int:
    cfg, X, G, tr = _trace_from_args(args)
    rows = trace_to_csv_rows(tr)
    if cfg.output:
        with open(cfg.output, "w", newline="") as fh:
            csv.writer(fh).writerows(rows)
    doc = {
        "command": "trace",
        "status": tr.status,
        "steps": tr.stats.steps,
        "rejected_steps": tr.stats.rejected_steps,
        "samples": len(tr.samples),
        "csv": cfg.output,
    }
    if G is not None and len(tr.samples) >= 2:
        doc["max_drift"] = conservation_check(tr, G)
    if args.elapsed_time and args.m is not None:
        params = _params_from_args(args)
        tf = times_form(X, params)
        elapsed = elapsed_time_via_tau(tf, tr)
        doc["elapsed_time"] = {"re": elapsed.real, "im": elapsed.imag}
    _emit(doc, args)
    if tr.status == "step-underflow":
        return EXIT_NUMERICAL
    return EXIT_OK


def _cmd_plot(args) -> int:
    from .plotting import plot_trace_svg

    if args.csv:
        with open(args.csv, newline="") as fh:
            rows = list(csv.reader(fh))
    else:
        _, _, _, tr = _trace_from_args(args)
        rows = trace_to_csv_rows(tr)
    cmdline = "holofol " + " ".join(shlex.quote(a) for a in args.raw_argv)
    plot_trace_svg(rows, args.svg_out, cmdline)
    _emit({"command": "plot", "svg": args.svg_out}, args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument wiring
# ---------------------------------------------------------------------------


def _add_params_opts(sp, required=True):
    sp.add_argument("-m", type=int, required=required, default=None)
    sp.add_argument("-n", type=int, required=required, default=1)
    sp.add_argument("-l", type=int, default=0)
    sp.add_argument("-p", type=str, default="0", help="polynomial in x, e.g. \"1+2*x\"")


def _add_json_out(sp):
    sp.add_argument("--json-out", type=str, default=None, help="also write the JSON document here")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="holofol",
        description="Normal forms, times forms and first integrals of "
        "fiber-complete polynomial vector fields on C^2.",
    )
    ap.add_argument("--version", action="version", version=f"holofol {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("normal-form", help="emit P, Y, H for the given parameters")
    _add_params_opts(sp)
    _add_json_out(sp)
    sp.set_defaults(func=_cmd_normal_form)

    sp = sub.add_parser("pullback", help="pull a (x,y) field back to (u,v)")
    _add_params_opts(sp)
    sp.add_argument("-X", dest="field", required=True)
    _add_json_out(sp)
    sp.set_defaults(func=_cmd_pullback)

    sp = sub.add_parser("pushforward", help="push a deck-invariant (u,v) field to (x,y)")
    _add_params_opts(sp)
    sp.add_argument("-Z", dest="field", required=True)
    _add_json_out(sp)
    sp.set_defaults(func=_cmd_pushforward)

    sp = sub.add_parser("times-form", help="eta, exponents, tau and the k identity")
    _add_params_opts(sp)
    sp.add_argument("-X", dest="field", required=True)
    _add_json_out(sp)
    sp.set_defaults(func=_cmd_times_form)

    sp = sub.add_parser("first-integral", help="synthesize G^(nq) and verify it")
    _add_params_opts(sp)
    sp.add_argument("-X", dest="field", required=True)
    _add_json_out(sp)
    sp.set_defaults(func=_cmd_first_integral)

    sp = sub.add_parser("verify", help="exact first-integral verdict")
    sp.add_argument("-G", dest="g_file", required=True, help="JSON file with a G document")
    sp.add_argument("-X", dest="field", required=True)
    _add_json_out(sp)
    sp.set_defaults(func=_cmd_verify)

    sp = sub.add_parser("special-values", help="critical values and invariant fiber components")
    sp.add_argument("-P", required=True)
    sp.add_argument("-X", dest="field", required=True)
    _add_json_out(sp)
    sp.set_defaults(func=_cmd_special_values)

    sp = sub.add_parser("trace", help="trace a trajectory and write CSV")
    sp.add_argument("-X", dest="field", required=True)
    sp.add_argument("--x0", required=True)
    sp.add_argument("--y0", required=True)
    sp.add_argument("--direction", default="1")
    sp.add_argument("-T", type=float, default=1.0)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--escape-radius", type=float, default=1e8)
    sp.add_argument("-G", dest="g_file", default=None)
    sp.add_argument("-o", dest="output", default=None, help="CSV output path")
    sp.add_argument("--elapsed-time", action="store_true",
                    help="also reconstruct flow time via the one-form of times "
                    "(requires -m/-n/-l/-p)")
    _add_params_opts(sp, required=False)
    _add_json_out(sp)
    sp.set_defaults(func=_cmd_trace)

    sp = sub.add_parser("plot", help="SVG projections of a trace")
    sp.add_argument("--csv", default=None, help="existing trace CSV to plot")
    sp.add_argument("-X", dest="field", default=None)
    sp.add_argument("--x0", default="1")
    sp.add_argument("--y0", default="1")
    sp.add_argument("--direction", default="1")
    sp.add_argument("-T", type=float, default=1.0)
    sp.add_argument("--tol", type=float, default=1e-10)
    sp.add_argument("--escape-radius", type=float, default=1e8)
    sp.add_argument("-G", dest="g_file", default=None)
    sp.add_argument("-o", dest="svg_out", required=True)
    _add_json_out(sp)
    sp.set_defaults(func=_cmd_plot)

    return ap


def main(argv: Optional[List[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    args.raw_argv = argv
    try:
        return args.func(args)
    except _GATE_ERRORS as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_GATE
    except (NotDivisible,) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_SYMBOLIC
    except _NUMERICAL_ERRORS as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_NUMERICAL
    except (ExprSyntaxError, InvalidInput, InvalidParams, HolofolError, OSError) as exc:
        print(json.dumps({"error": type(exc).__name__, "message": str(exc)}), file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
