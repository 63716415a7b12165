"""Command-line front end: point evaluations and the ``verify-all`` sweep.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 numerical non-convergence.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from .coherent import CoherentParams, coherent_eval_compact, coherent_eval_series
from .errors import DomainError, NonConvergenceError
from .genfun import (DEFAULT_SERIES_TOL, DEFAULT_TRUNCATION, GenFunQuery,
                     genfun_even_closed, genfun_even_series, genfun_fixed_m_closed,
                     genfun_fixed_m_series, genfun_odd_closed, genfun_odd_series)
from .harmonics import spherical_harmonic
from .legendre import assoc_legendre
from .verify import SUITES, VerifyConfig, run_all

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_NONCONVERGENCE = 3

OUTPUT_DIR_ENV = "LEGCOH_OUTPUT_DIR"


def fmt(v: float) -> str:
    """17 significant digits; parses back to the same double."""
    return format(float(v), ".17g")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output-format", choices=("human", "csv", "json"), default="human")
    common.add_argument("--output", "-o", metavar="PATH",
                        help=f"write to PATH (relative paths resolve against ${OUTPUT_DIR_ENV})")

    parser = _Parser(prog="legcoh", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("legendre", parents=[common], help="evaluate P_l^(m)(x)")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--x", type=float, required=True)

    p = sub.add_parser("genfun", parents=[common], help="evaluate a generating function")
    p.add_argument("--family", choices=("even", "odd", "fixed-m"), required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--form", choices=("series", "closed", "both"), default="both")
    p.add_argument("--truncation", "-M", type=int, default=DEFAULT_TRUNCATION)
    p.add_argument("--series-tol", type=float, default=DEFAULT_SERIES_TOL)

    p = sub.add_parser("harmonics", parents=[common], help="evaluate Y_l^m(theta, phi)")
    p.add_argument("--l", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--phi", type=float, required=True)

    p = sub.add_parser("coherent", parents=[common], help="evaluate the coherent state |z>_k")
    p.add_argument("--k", type=int, default=0)
    p.add_argument("--z", type=float, nargs=2, metavar=("RE", "IM"), required=True)
    p.add_argument("--theta", type=float, required=True)
    p.add_argument("--phi", type=float, required=True)
    p.add_argument("--form", choices=("series", "compact", "both"), default="both")
    p.add_argument("--m-max", type=int)

    p = sub.add_parser("verify-all", parents=[common], help="run every identity check")
    p.add_argument("--tolerance", type=float,
                   help="override every suite's default tolerance")
    p.add_argument("--n-theta", type=int, default=32)
    p.add_argument("--n-phi", type=int, default=64)
    p.add_argument("--m-max", type=int)
    p.add_argument("--truncation", "-M", type=int, default=VerifyConfig.truncation)
    p.add_argument("--suite", action="append", choices=sorted(SUITES),
                   help="run only this suite (repeatable)")
    p.add_argument("--timing", action="store_true",
                   help="include wall times (output is then not reproducible)")
    return parser


# --- point evaluations ---------------------------------------------------

def _rows_legendre(args):
    v = assoc_legendre((args.l, args.m), args.x)
    return ["l", "m", "x"], [[args.l, args.m, args.x, v, 0.0, "rodrigues"]], True


_FAMILIES = {
    "even": (genfun_even_series, genfun_even_closed),
    "odd": (genfun_odd_series, genfun_odd_closed),
    "fixed-m": (genfun_fixed_m_series, genfun_fixed_m_closed),
}


def _rows_genfun(args):
    key = "m" if args.family == "fixed-m" else "k"
    index = getattr(args, key)
    if index is None:
        raise DomainError(f"--{key} is required for the {args.family} family")
    q = GenFunQuery(args.x, args.t, index, truncation=args.truncation,
                    tolerance=args.series_tol)
    series, closed = _FAMILIES[args.family]
    rows = []
    converged = True
    values = {}
    if args.form in ("series", "both"):
        s = series(q)
        converged = s.converged
        values["series"] = s.value
    if args.form in ("closed", "both"):
        values["closed"] = closed(q)
    for form, v in values.items():
        rows.append([args.family, index, args.x, args.t, complex(v).real, complex(v).imag, form])
    return ["family", key, "x", "t"], rows, converged


def _rows_harmonics(args):
    v = spherical_harmonic((args.l, args.m), args.theta, args.phi)
    return ["l", "m", "theta", "phi"], [[args.l, args.m, args.theta, args.phi,
                                         v.real, v.imag, "direct"]], True


def _rows_coherent(args):
    p = CoherentParams(args.k, complex(*args.z))
    values = {}
    if args.form in ("series", "both"):
        values["series"] = coherent_eval_series(p, args.theta, args.phi, args.m_max)
    if args.form in ("compact", "both"):
        values["compact"] = coherent_eval_compact(p, args.theta, args.phi)
    rows = [[args.k, args.z[0], args.z[1], args.theta, args.phi, v.real, v.imag, form]
            for form, v in values.items()]
    return ["k", "z_re", "z_im", "theta", "phi"], rows, True


def _point_table(inputs, rows):
    # rows: inputs..., value_re, value_im, form
    comparing = len(rows) == 2
    header = inputs + ["value_re", "value_im", "form"] + (["abs_err"] if comparing else [])
    table = []
    if comparing:
        a = complex(rows[0][-3], rows[0][-2])
        b = complex(rows[1][-3], rows[1][-2])
        err = abs(a - b)
    for r in rows:
        table.append(list(r) + ([err] if comparing else []))
    return header, table


def _cell(v):
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, float):
        return fmt(v)
    return str(v)


def _render_table(header, table, style):
    if style == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(header)
        for row in table:
            w.writerow([_cell(v) for v in row])
        return buf.getvalue()
    if style == "json":
        return json.dumps([dict(zip(header, row)) for row in table], indent=2) + "\n"
    lines = []
    for row in table:
        d = dict(zip(header, row))
        ins = ", ".join(f"{k}={_cell(d[k])}" for k in header
                        if k not in ("value_re", "value_im", "form", "abs_err"))
        val = complex(d["value_re"], d["value_im"])
        shown = fmt(val.real) if val.imag == 0 else f"{fmt(val.real)}{val.imag:+.17g}j"
        extra = f"  (abs_err {d['abs_err']:.3g})" if "abs_err" in d else ""
        lines.append(f"{d['form']:>8}: {shown}   [{ins}]{extra}")
    return "\n".join(lines) + "\n"


# --- verify-all ----------------------------------------------------------

_REPORT_FIELDS = ["identity", "grid", "tolerance", "n_points", "max_abs_err", "max_rel_err",
                  "worst_case", "passed", "converged", "diagnostics"]


def _render_reports(reports, style, timing):
    dicts = [r.to_dict(timing=timing) for r in reports]
    if style == "json":
        return json.dumps(dicts, indent=2) + "\n"
    if style == "csv":
        buf = io.StringIO()
        fields = _REPORT_FIELDS + (["wall_time"] if timing else [])
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(fields)
        for d in dicts:
            w.writerow([json.dumps(d[f], sort_keys=True) if f == "worst_case" else _cell(d[f])
                        for f in fields])
        return buf.getvalue()
    lines = []
    for r in reports:
        status = "PASS" if r.passed else ("NONCONV" if not r.converged else "FAIL")
        line = (f"{status:7} {r.identity:28} max_rel={r.max_rel_err:.3e} "
                f"tol={r.tolerance:.0e} n={r.n_points}")
        if timing:
            line += f" t={r.wall_time:.2f}s"
        lines.append(line)
        if not r.passed:
            lines.append(f"        worst at {json.dumps(r.worst_case, sort_keys=True)}")
            if r.diagnostics:
                lines.append(f"        {r.diagnostics}")
    n_pass = sum(r.passed for r in reports)
    lines.append(f"{n_pass}/{len(reports)} identities verified")
    return "\n".join(lines) + "\n"


def _emit(text, args):
    if not args.output:
        sys.stdout.write(text)
        return
    path = Path(args.output)
    if not path.is_absolute() and os.environ.get(OUTPUT_DIR_ENV):
        path = Path(os.environ[OUTPUT_DIR_ENV]) / path
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify-all":
            if args.tolerance is not None and not args.tolerance > 0:
                raise DomainError("--tolerance must be positive")
            cfg = VerifyConfig(n_theta=args.n_theta, n_phi=args.n_phi,
                               truncation=args.truncation, m_max=args.m_max,
                               tolerance=args.tolerance)
            reports = run_all(cfg, args.suite)
            _emit(_render_reports(reports, args.output_format, args.timing), args)
            if not all(r.converged for r in reports):
                return EXIT_NONCONVERGENCE
            return EXIT_OK if all(r.passed for r in reports) else EXIT_FAILED

        handler = {"legendre": _rows_legendre, "genfun": _rows_genfun,
                   "harmonics": _rows_harmonics, "coherent": _rows_coherent}[args.command]
        inputs, rows, converged = handler(args)
        header, table = _point_table(inputs, rows)
        _emit(_render_table(header, table, args.output_format), args)
        if not converged:
            print("series did not converge within the term cap", file=sys.stderr)
            return EXIT_NONCONVERGENCE
        return EXIT_OK
    except DomainError as exc:
        print(f"legcoh: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NonConvergenceError as exc:
        print(f"legcoh: non-convergence: {exc}", file=sys.stderr)
        return EXIT_NONCONVERGENCE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
