"""Command-line front end: ``heunconv {domain,table,region,sum,maier}``.

Exit codes: 0 success, 1 usage or other errors, 2 no solution (a = 0),
3 excluded point of a transformed solution.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from .domains import CellClass, Status, domain_verdict, region_scan
from .errors import ExcludedPointError, NoSolutionError
from .maier import VARIANT_IDS, get_variant, maier_condition, maier_transformed_params
from .recurrence import HeunParameters
from .scaled import sr_to_fixed, sr_to_sci
from .summation import direct_sum, partial_grid, rect_double_sum, sum_report

EXIT_OK, EXIT_ERROR, EXIT_NO_SOLUTION, EXIT_EXCLUDED = 0, 1, 2, 3

DEFAULT_N_LIST = (10, 50, 100, 200, 300, 400, 500, 600, 700, 800, 900, 1000)

# table id -> (summation, a, x, formatter)
TABLES = {
    3: (direct_sum, 0.8, 0.3, "fixed"),
    4: (rect_double_sum, 0.8, 0.3, "fixed"),
    5: (rect_double_sum, 0.8, 0.7, "sci"),
    6: (direct_sum, 0.8, 0.7, "fixed"),
}

_TABLE_HELP = """\
Reproduce a results table at the default N list 10, 50, 100, 200, ..., 1000.
  3: single power series, a=0.8, x=0.3
  4: square-truncated double series, a=0.8, x=0.3
  5: square-truncated double series, a=0.8, x=0.7 (diverges; scientific format)
  6: single power series, a=0.8, x=0.7
Tables 5 and 6 are assigned by their numbers: the diverging column comes from
the double series, the convergent one (limit 80/3) from the single series.
"""

_CLASS_GLYPH = {CellClass.OUTSIDE: ".", CellClass.PP_ONLY: "+", CellClass.BOTH: "#",
                CellClass.UNDEFINED: "|"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _range(text: str) -> tuple[float, float]:
    try:
        lo, hi = (float(p) for p in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}") from None
    if not lo < hi:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return lo, hi


def _res(text: str) -> tuple[int, int]:
    try:
        rows, cols = (int(p) for p in text.lower().split("x"))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected RxC, got {text!r}") from None
    if rows < 1 or cols < 1:
        raise argparse.ArgumentTypeError("resolution must be positive")
    return rows, cols


def _n_list(values: list[str]) -> list[int]:
    out = []
    for v in values:
        out.extend(int(p) for p in v.split(",") if p)
    if not out or min(out) < 0:
        raise ValueError("N values must be nonnegative integers")
    return sorted(set(out))


def _num(v) -> str:
    if isinstance(v, complex):
        return repr(v)
    return repr(float(v))


def _g(v) -> str:
    if v is None:
        return "none"
    if isinstance(v, complex):
        return f"{v:.6g}"
    return f"{float(v):.6g}"


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="heunconv", description="Convergence domains and partial sums of "
                "power series solutions of the Heun equation about x = 0.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, default="pretty"):
        sp.add_argument("--format", choices=("csv", "json", "pretty"), default=default,
                        help=f"output format (default: {default})")
        sp.add_argument("--output", "-o", help="write to this file instead of standard output")

    sp = sub.add_parser("domain", help="characteristic-root radius and absolute boundary at a")
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--x", type=float)
    common(sp)

    sp = sub.add_parser("table", help="reproduce results table 3, 4, 5 or 6",
                        description=_TABLE_HELP, formatter_class=argparse.RawDescriptionHelpFormatter)
    sp.add_argument("--id", type=int, required=True, choices=sorted(TABLES))
    sp.add_argument("--n-list", nargs="+", metavar="N",
                    help="truncation indices, space or comma separated "
                         "(default: 10 50 100 200 ... 1000)")
    common(sp, "csv")

    sp = sub.add_parser("region", help="classify a grid of (a, x) cells",
                        description="Classes: 0 outside both, 1 characteristic-root disk only, "
                                    "2 both, 3 undefined (a = 0 or a = -1). Write negative "
                                    "ranges as --a-range=-3:3.")
    sp.add_argument("--a-range", type=_range, default=(-3.0, 3.0), metavar="LO:HI",
                    help="default -3:3")
    sp.add_argument("--x-range", type=_range, default=(-1.5, 1.5), metavar="LO:HI",
                    help="default -1.5:1.5")
    sp.add_argument("--res", type=_res, default=(300, 300), metavar="RxC",
                    help="rows (x) by columns (a), default 300x300")
    common(sp, "csv")

    sp = sub.add_parser("sum", help="partial sums with a convergence verdict")
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--x", type=float, required=True)
    sp.add_argument("--n", type=int, required=True, help="largest truncation index")
    sp.add_argument("--method", choices=("direct", "double", "diagonal"), default="direct")
    sp.add_argument("--heun", action="store_true",
                    help="sum the full Heun series instead (needs --q --alpha --beta --gamma --delta)")
    for name in ("q", "alpha", "beta", "gamma", "delta"):
        sp.add_argument(f"--{name}", type=float)
    sp.add_argument("--lam", type=float, default=0.0, help="exponent of the series (default 0)")
    common(sp)

    sp = sub.add_parser("maier", help="convergence condition of a transformed local solution")
    sp.add_argument("--variant", required=True, type=str.lower, choices=VARIANT_IDS)
    sp.add_argument("--a", type=float, required=True)
    sp.add_argument("--x", type=float, required=True)
    for name in ("q", "alpha", "beta", "gamma", "delta"):
        sp.add_argument(f"--{name}", type=float)
    common(sp)
    return p


# -- commands ----------------------------------------------------------------

def cmd_domain(args) -> str:
    v = domain_verdict(args.a, args.x)
    if v.status is Status.NO_SOLUTION:
        raise NoSolutionError()
    b = v.abs_bound
    rec = {"a": v.a, "pp_radius": v.pp_radius, "abs_lower": b.lower, "abs_upper": b.upper,
           "abs_radius": b.radius, "status": v.status.value}
    if args.x is not None:
        rec.update(x=args.x, in_pp=v.in_pp, in_abs=v.in_abs)
    if args.format == "json":
        return json.dumps({k: (_num(val) if isinstance(val, float) else val)
                           for k, val in rec.items()}) + "\n"
    if args.format == "csv":
        keys = list(rec)
        vals = [_num(val) if isinstance(val, float) else str(val).lower() for val in rec.values()]
        return ",".join(keys) + "\n" + ",".join(vals) + "\n"
    lines = [f"a = {_g(v.a)}",
             f"pp radius = {_g(v.pp_radius)}",
             f"abs radius = {_g(b.radius)}",
             f"abs interval = ({_g(b.lower)}, {_g(b.upper)})"]
    if v.status is Status.PP_INDETERMINATE:
        lines.append("note: the root-moduli ratio test is indeterminate at a = -1")
    if args.x is not None:
        lines += [f"x = {_g(args.x)}", f"in pp region = {str(v.in_pp).lower()}",
                  f"in abs region = {str(v.in_abs).lower()}"]
    return "\n".join(lines) + "\n"


def table_rows(table_id: int, ns) -> list[tuple[int, str]]:
    fn, a, x, style = TABLES[table_id]
    fmt = (lambda s: sr_to_fixed(s, 12)) if style == "fixed" else (lambda s: sr_to_sci(s, 6))
    return [(N, fmt(fn(a, x, N))) for N in ns]


def _emit_pairs(rows, fmt: str) -> str:
    if fmt == "json":
        return json.dumps([{"N": N, "value": v} for N, v in rows]) + "\n"
    if fmt == "csv":
        return "N,value\n" + "".join(f"{N},{v}\n" for N, v in rows)
    width = max(len(str(N)) for N, _ in rows)
    return "".join(f"{N:>{width}}  {v}\n" for N, v in rows)


def cmd_table(args) -> str:
    ns = _n_list(args.n_list) if args.n_list else list(DEFAULT_N_LIST)
    return _emit_pairs(table_rows(args.id, ns), args.format)


def cmd_region(args) -> str:
    rows, cols = args.res
    grid = region_scan(*args.a_range, *args.x_range, res_a=cols, res_x=rows)
    if args.format == "json":
        return grid.to_json() + "\n"
    if args.format == "csv":
        return grid.to_csv()
    lines = [f"a in [{args.a_range[0]:g}, {args.a_range[1]:g}] left to right, "
             f"x in [{args.x_range[0]:g}, {args.x_range[1]:g}] bottom to top",
             "legend: # both  + pp only  . outside  | undefined"]
    for i in reversed(range(rows)):
        lines.append("".join(_CLASS_GLYPH[CellClass(int(c))] for c in grid.cells[i]))
    return "\n".join(lines) + "\n"


def _heun_params(args) -> HeunParameters | None:
    names = ("q", "alpha", "beta", "gamma", "delta")
    given = [getattr(args, n) for n in names]
    if all(v is None for v in given):
        return None
    if any(v is None for v in given):
        missing = [n for n, v in zip(names, given) if v is None]
        raise ValueError("missing Heun parameters: " + ", ".join(f"--{n}" for n in missing))
    return HeunParameters(args.a, *given)


def cmd_sum(args) -> str:
    if args.a == 0:
        raise NoSolutionError()
    ns = partial_grid(args.n)
    if args.heun:
        params = _heun_params(args)
        if params is None:
            raise ValueError("--heun needs --q --alpha --beta --gamma --delta")
        report = sum_report("heun", args.a, args.x, ns, params=params, lam=args.lam)
    else:
        report = sum_report(args.method, args.a, args.x, ns)
    verdict = report.verdict
    if args.format == "csv":
        return report.to_csv()
    if args.format == "json":
        out = {"partials": [{"N": N, "value": sr_to_sci(v, 13)} for N, v in report.partials],
               "verdict": verdict.kind}
        if verdict.kind == "converged":
            out.update(value=sr_to_sci(verdict.value, 13), at_N=verdict.at_N)
        elif verdict.kind == "diverging":
            out["ratio"] = repr(verdict.ratio)
        return json.dumps(out) + "\n"
    rows = [(N, sr_to_sci(v, 13)) for N, v in report.partials]
    body = _emit_pairs(rows, "pretty")
    if verdict.kind == "converged":
        tail = f"converged {sr_to_fixed(verdict.value, 12)} at N={verdict.at_N}"
    else:
        tail = verdict.describe()
    return body + tail + "\n"


def cmd_maier(args) -> str:
    v = get_variant(args.variant)
    ok = maier_condition(v, args.a, args.x)
    params = _heun_params(args)
    t = v._arg(args.a, args.x)
    rec = {"variant": v.id, "a": args.a, "x": args.x, "converges": ok,
           "a_prime": v.a_map, "t": v.t_map, "t_value": t, "prefactor": v.prefactor}
    if params is not None:
        tr = maier_transformed_params(v, params)
        p = tr.params
        rec.update(a_prime=p.a, q=p.q, alpha=p.alpha, beta=p.beta, gamma=p.gamma,
                   delta=p.delta, epsilon=p.epsilon)
    else:
        rec["solution"] = v.solution
    if args.format == "json":
        return json.dumps({k: (_num(val) if isinstance(val, float) else val)
                           for k, val in rec.items()}) + "\n"
    if args.format == "csv":
        vals = []
        for val in rec.values():
            s = _num(val) if isinstance(val, float) else str(val).lower() \
                if isinstance(val, bool) else str(val)
            vals.append(f'"{s}"' if "," in s else s)
        return ",".join(rec) + "\n" + ",".join(vals) + "\n"
    lines = [f"{v.id}: {'true' if ok else 'false'}"]
    for k, val in rec.items():
        if k in ("variant", "converges"):
            continue
        lines.append(f"{k} = {_g(val) if isinstance(val, float) else val}")
    return "\n".join(lines) + "\n"


COMMANDS = {"domain": cmd_domain, "table": cmd_table, "region": cmd_region, "sum": cmd_sum,
            "maier": cmd_maier}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    try:
        text = COMMANDS[args.command](args)
    except NoSolutionError as exc:
        print(f"heunconv: {exc}", file=sys.stderr)
        return EXIT_NO_SOLUTION
    except ExcludedPointError as exc:
        print(f"heunconv: {exc}", file=sys.stderr)
        return EXIT_EXCLUDED
    except (ValueError, ArithmeticError, OverflowError) as exc:
        print(f"heunconv: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        try:
            sys.stdout.write(text)
            sys.stdout.flush()
        except BrokenPipeError:
            # reader went away (e.g. piped into head); silence the flush at exit
            sys.stdout = open(os.devnull, "w")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
