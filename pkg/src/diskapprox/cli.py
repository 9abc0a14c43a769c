"""Command-line front end.

Subcommands: norms, approx, estimate, integer, matrix.  Reports go to
stdout or --output as CSV, JSON, or an aligned table; --figures renders a
PNG next to the output file.  Exit codes: 0 success, 2 configuration error,
3 accuracy error (an artifact could not be certified at full fidelity;
whatever was computed is still emitted), 4 infeasible space.

The environment variable DISKAPPROX_OUTDIR redirects relative output paths.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path

from .approximation import approx_profile
from .errors import (
    AccuracyError,
    InfeasibleSpaceError,
    InsufficientDataError,
    SpecParseError,
    UnsupportedSpaceError,
)
from .estimators import build_report
from .functions import catalog, parse_function
from .integer_approx import (
    infimum_probe,
    integer_approx_error,
    lacunary_construct,
    obstruction_profile,
)
from .numerics import NEG_INF
from .spaces import (
    Bergman,
    Dirichlet,
    DirichletWeights,
    Hardy,
    monomial_norm,
    norm_profile,
    parse_space,
    quoted_closed_form,
    separable_weights,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_ACCURACY = 3
EXIT_INFEASIBLE = 4

# the estimate grid: seven growth oracles by three coefficient-separable
# spaces, plus the geometric discrimination rows
MATRIX_SPACES = (
    "hardy:p=2",
    "bergman:p=2",
    "dirichlet:p=2,weights=power(-1)",
)
MATRIX_FUNCTIONS = (
    "exp:lambda=1",
    "exp:lambda=2",
    "cossqrt",
    "synthetic:rho=1,sigma=1",
    "synthetic:rho=2,sigma=1",
    "power:rho=0.5",
    "power:rho=2",
)
MATRIX_GEOMETRIC = ("geometric:r=0.5", "geometric:r=0.9", "geometric:r=0.99")


def _lin(log_value, digits=12):
    """Linear-scale rendering with 12 significant digits; '0' for -inf."""
    if log_value is None:
        return ""
    if log_value == NEG_INF:
        return "0"
    return f"{math.exp(log_value):.{digits - 1}e}"


def _error_record(kind, message):
    print(json.dumps({"error": kind, "message": str(message)}), file=sys.stderr)


def _resolve_output(path_str):
    path = Path(path_str)
    outdir = os.environ.get("DISKAPPROX_OUTDIR")
    if outdir and not path.is_absolute():
        path = Path(outdir) / path
    return path


def _emit(text, args):
    if args.output is None:
        sys.stdout.write(text)
        return None
    path = _resolve_output(args.output)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    return path


def _emit_figure(fig, args, out_path):
    if not args.figures:
        return
    if out_path is None:
        raise SpecParseError("--figures needs --output to place the image next to")
    fig_path = out_path.with_suffix(".png")
    fig.savefig(fig_path, dpi=150)


# ---------------------------------------------------------------------------
# Subcommands


def _cmd_norms(args):
    space = parse_space(args.space)
    profile = norm_profile(space, args.n_max)
    quoted = None
    if args.compare_quoted:
        quoted = [quoted_closed_form(space, n) for n in range(args.n_max + 1)]

    if args.format == "json":
        doc = profile.to_json_dict()
        if quoted is not None:
            doc["quoted_log_norms"] = quoted
        text = json.dumps(doc, sort_keys=True) + "\n"
    else:
        header = "n,norm,lower,upper,root"
        if quoted is not None:
            header += ",quoted"
        lines = [header]
        for n, v in enumerate(profile.values):
            root = "" if n == 0 else f"{profile.stats.roots[n - 1]:.12g}"
            row = f"{n},{_lin(v.log_value)},{_lin(v.log_lower)},{_lin(v.log_upper)},{root}"
            if quoted is not None:
                row += f",{_lin(quoted[n])}"
            lines.append(row)
        if args.format == "table":
            lines.append(
                f"# mu probes [{profile.stats.mu_lo:.12g}, {profile.stats.mu_hi:.12g}]"
                f"  inf ||z^n|| = {_lin(profile.stats.log_inf)} at n = {profile.stats.arg_inf}"
            )
            text = "\n".join(line.replace(",", "\t") for line in lines) + "\n"
        else:
            text = "\n".join(lines) + "\n"

    out = _emit(text, args)
    if args.figures:
        from .plotting import plot_norm_profile

        _emit_figure(plot_norm_profile(profile, quoted), args, out)
    return EXIT_OK


def _cmd_approx(args):
    space = parse_space(args.space)
    oracle = parse_function(args.function)
    profile = approx_profile(space, oracle, args.n_max, args.tail_budget)
    if args.format == "json":
        text = profile.to_json() + "\n"
    elif args.format == "csv":
        text = profile.to_csv()
    else:
        lines = ["n\tlower\texact\tupper\tflag"]
        for e in profile.entries:
            lines.append(
                f"{e.n}\t{_lin(e.log_lower)}\t"
                f"{'' if e.log_exact is None else _lin(e.log_exact)}\t"
                f"{_lin(e.log_upper)}\t{e.flag or ''}"
            )
        text = "\n".join(lines) + "\n"
    out = _emit(text, args)
    if args.figures:
        from .plotting import plot_approx_profile

        _emit_figure(plot_approx_profile(profile), args, out)
    flagged = sum(1 for e in profile.entries if e.flag)
    if flagged:
        _error_record("accuracy", f"{flagged} entries carry uncertified tails")
        return EXIT_ACCURACY
    return EXIT_OK


def _cmd_estimate(args):
    space = parse_space(args.space)
    oracle = parse_function(args.function)
    report = build_report(
        space,
        oracle,
        n_max=args.n_max,
        tail_budget=args.tail_budget,
        rho_for_type=args.rho,
        cross_tolerance=args.cross_tol,
        cross_type_tolerance=args.cross_type_tol,
    )
    if args.format == "json":
        text = report.to_json() + "\n"
    elif args.format == "csv":
        order = dict(report.order_raw)
        typ = dict(report.type_raw)
        lines = ["n,root,order_seq,type_seq"]
        for n, root in report.roots:
            o = f"{order[n]:.12g}" if n in order else ""
            t = f"{typ[n]:.12g}" if n in typ else ""
            lines.append(f"{n},{root:.12g},{o},{t}")
        lines.append(f"# rho_hat={report.rho_hat} sigma_hat={report.sigma_hat} "
                     f"rho_coeff={report.rho_coeff} sigma_coeff={report.sigma_coeff} "
                     f"verdict={report.verdict}")
        text = "\n".join(lines) + "\n"
    else:
        text = report.to_table()
    out = _emit(text, args)
    if args.figures:
        from .plotting import plot_estimate_report

        _emit_figure(plot_estimate_report(report), args, out)
    return EXIT_OK


def _cmd_integer(args):
    space = parse_space(args.space)
    if args.function is None and args.lacunary is None:
        raise SpecParseError(
            "integer needs --function and/or --lacunary", parameter="function"
        )
    rows = []
    oracle = None
    if args.function is not None:
        oracle = parse_function(args.function)
        obstructions = obstruction_profile(space, oracle, args.n_max)
        separable = separable_weights(space) is not None
        for n in range(1, args.n_max + 1):
            err = None
            if separable:
                err = integer_approx_error(space, oracle, n, args.tail_budget)
            rows.append((n, obstructions[n - 1], err))

    lac = None
    if args.lacunary is not None:
        exponents, lac_oracle = lacunary_construct(space, args.lacunary)
        lac = {"exponents": list(exponents)}
        if separable_weights(space) is not None:
            lac["errors_after_prefix"] = [
                {
                    "k": k + 1,
                    "n": exponents[k] + 1,
                    "error": _lin(
                        integer_approx_error(space, lac_oracle, exponents[k] + 1)
                    ),
                }
                for k in range(len(exponents))
            ]

    log_inf, trend = infimum_probe(space, max(args.n_max, 100))

    if args.format == "json":
        doc = {
            "schema": "diskapprox/integer-report/1",
            "space": space.canonical(),
            "function": oracle.name if oracle else None,
            "rows": [
                {
                    "n": n,
                    "log_obstruction": None if ob == NEG_INF else ob,
                    "log_error": None if err is None else (None if err == NEG_INF else err),
                }
                for n, ob, err in rows
            ],
            "lacunary": lac,
            "infimum_probe": {
                "log_inf": None if log_inf == NEG_INF else log_inf,
                "trend": trend,
            },
        }
        text = json.dumps(doc, sort_keys=True) + "\n"
    else:
        sep = "," if args.format == "csv" else "\t"
        lines = [sep.join(("n", "obstruction", "integer_error"))]
        for n, ob, err in rows:
            lines.append(
                sep.join((str(n), _lin(ob), "" if err is None else _lin(err)))
            )
        if args.format == "table":
            lines.append(f"# infimum probe: {_lin(log_inf)} ({trend})")
            if lac is not None:
                lines.append(f"# lacunary exponents: {lac['exponents']}")
                for item in lac.get("errors_after_prefix", []):
                    lines.append(
                        f"#   after n_{item['k']} (degree < {item['n']}):"
                        f" error {item['error']}"
                    )
        text = "\n".join(lines) + "\n"
    out = _emit(text, args)
    if args.figures and rows:
        from .plotting import plot_integer_rows

        _emit_figure(
            plot_integer_rows(rows, f"{oracle.name} in {space.canonical()}"), args, out
        )
    return EXIT_OK


def _declared(oracle):
    return oracle.order, oracle.type_


def _cmd_matrix(args):
    rows = []
    for space_str in MATRIX_SPACES:
        space = parse_space(space_str)
        for fn_str in MATRIX_FUNCTIONS + MATRIX_GEOMETRIC:
            oracle = parse_function(fn_str)
            rho_decl, sigma_decl = _declared(oracle)
            report = build_report(
                space,
                oracle,
                n_max=args.n_max,
                tail_budget=args.tail_budget,
                rho_for_type=rho_decl,
            )
            rows.append(
                {
                    "space": space.canonical(),
                    "function": oracle.name,
                    "rho_declared": rho_decl,
                    "rho_hat": report.rho_hat,
                    "rho_coeff": report.rho_coeff,
                    "sigma_declared": sigma_decl,
                    "sigma_hat": report.sigma_hat,
                    "sigma_coeff": report.sigma_coeff,
                    "verdict": report.verdict,
                    "cross_pass": None if report.cross is None else report.cross.passed,
                }
            )
    rows.sort(key=lambda r: (r["space"], r["function"]))

    if args.format == "json":
        text = json.dumps(
            {"schema": "diskapprox/matrix/1", "n_max": args.n_max, "cells": rows},
            sort_keys=True,
        ) + "\n"
    else:
        sep = "," if args.format == "csv" else "\t"
        cols = (
            "space,function,rho_declared,rho_hat,rho_coeff,"
            "sigma_declared,sigma_hat,sigma_coeff,verdict,cross_pass"
        ).split(",")
        lines = [sep.join(cols)]
        for r in rows:
            lines.append(
                sep.join(
                    ""
                    if r[c] is None
                    else (f"{r[c]:.12g}" if isinstance(r[c], float) else str(r[c]))
                    for c in cols
                )
            )
        text = "\n".join(lines) + "\n"
    out = _emit(text, args)
    if args.figures:
        from .plotting import plot_matrix_summary

        _emit_figure(plot_matrix_summary(rows), args, out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Argument plumbing


def _add_common(sub, space=True, function=False):
    if space:
        sub.add_argument("--space", required=True, help="space spec, e.g. bergman:p=2")
    if function:
        sub.add_argument(
            "--function", help="function spec, e.g. exp:lambda=1 or poly:1,0,0.5"
        )
    sub.add_argument("--n-max", type=int, default=2000, dest="n_max")
    sub.add_argument("--tail-budget", type=int, default=None, dest="tail_budget")
    sub.add_argument(
        "--format", choices=("csv", "json", "table"), default="table"
    )
    sub.add_argument("--output", default=None, help="file path; default stdout")
    sub.add_argument(
        "--figures",
        action="store_true",
        help="render a PNG figure next to --output",
    )
    sub.add_argument(
        "--config",
        default=None,
        help="flat JSON override bundle (inline string or file path)",
    )


def build_parser():
    parser = argparse.ArgumentParser(
        prog="diskapprox",
        description="Monomial norms, best-approximation errors, and growth "
        "recovery in analytic function spaces on the unit disk.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("norms", help="monomial norm profile of one space")
    _add_common(p)
    p.add_argument(
        "--compare-quoted",
        action="store_true",
        help="also emit the simplified closed forms quoted in the literature",
    )
    p.set_defaults(run=_cmd_norms)

    p = subs.add_parser("approx", help="best-approximation error profile")
    _add_common(p, function=True)
    p.set_defaults(run=_cmd_approx)

    p = subs.add_parser("estimate", help="entirety, growth order and type recovery")
    _add_common(p, function=True)
    p.add_argument("--rho", type=float, default=None,
                   help="order to use for the type estimate (default: extrapolated)")
    p.add_argument("--cross-tol", type=float, default=0.02, dest="cross_tol")
    p.add_argument("--cross-type-tol", type=float, default=0.03, dest="cross_type_tol")
    p.set_defaults(run=_cmd_estimate)

    p = subs.add_parser("integer", help="integer-coefficient approximation study")
    _add_common(p, function=True)
    p.add_argument("--lacunary", type=int, default=None, metavar="K",
                   help="construct the minimal gap series with K exponents")
    p.set_defaults(run=_cmd_integer)

    p = subs.add_parser("matrix", help="the full verification grid")
    _add_common(p, space=False)
    p.set_defaults(run=_cmd_matrix)

    return parser


def _apply_config(args, parser):
    if not args.config:
        return
    raw = args.config.strip()
    if raw.startswith("{"):
        blob = raw
    else:
        path = Path(raw)
        if not path.exists():
            raise SpecParseError(f"config file {raw!r} not found", parameter="config")
        blob = path.read_text()
    try:
        overrides = json.loads(blob)
    except json.JSONDecodeError as exc:
        raise SpecParseError(f"config is not valid JSON: {exc}", parameter="config")
    if not isinstance(overrides, dict):
        raise SpecParseError("config must be a flat JSON object", parameter="config")
    for key, value in overrides.items():
        attr = key.replace("-", "_")
        if not hasattr(args, attr) or attr in ("command", "run", "config"):
            raise SpecParseError(f"unknown config key {key!r}", parameter=key)
        setattr(args, attr, value)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        _apply_config(args, parser)
        if args.command in ("approx", "estimate") and args.function is None:
            raise SpecParseError(
                f"{args.command} needs --function", parameter="function"
            )
        return args.run(args)
    except SpecParseError as exc:
        _error_record("config", exc)
        return EXIT_CONFIG
    except (InsufficientDataError, ValueError) as exc:
        _error_record("config", exc)
        return EXIT_CONFIG
    except AccuracyError as exc:
        _error_record("accuracy", exc)
        return EXIT_ACCURACY
    except InfeasibleSpaceError as exc:
        _error_record("infeasible-space", exc)
        return EXIT_INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
