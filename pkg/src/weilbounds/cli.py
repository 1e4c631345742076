"""Command-line front end for the point-count bound computations.

Subcommands: bound (per-order bounds for one q, g), table (sweep over genus
ranges and several q), threshold (smallest applicable genus of an order),
asymptotic (infinite-genus slopes), defect (tower defect sums), relative and
fiber (covering bounds), audit (consistency of claimed point counts), and
plotdata (per-order bound columns as CSV for plotting).

Machine output is CSV (RFC-4180 style, header row, UTF-8) or JSON (a single
object with a "rows" array); identical invocations produce byte-identical
output.  Exit codes: 0 success, 2 usage or validation error, 3 numerical
failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor

from . import bounds, optimize
from .domain import (
    CurveCounts,
    IharaLine,
    ihara_slacks,
    in_closed_domain,
    point_from_counts,
    second_extension_bound,
)

__all__ = ["main", "build_parser"]

TOL_ENV_VAR = "WEILBOUNDS_TOL"


class CLIError(Exception):
    """Invalid arguments detected after parsing; maps to exit code 2."""


# ---------------------------------------------------------------------------
# argument parsing helpers

def _is_prime_power(n: int) -> bool:
    if n < 2:
        return False
    smallest = None
    factor = 2
    while factor * factor <= n:
        if n % factor == 0:
            smallest = factor
            break
        factor += 1
    if smallest is None:
        return True
    m = n
    while m % smallest == 0:
        m //= smallest
    return m == 1


def _validated_q(value: int) -> int:
    if not _is_prime_power(value):
        raise CLIError(f"q must be a prime power, got {value}")
    return value


def _parse_q_list(text: str) -> list[int]:
    try:
        values = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise CLIError(f"bad q list {text!r}: {exc}") from None
    if not values:
        raise CLIError("empty q list")
    return [_validated_q(v) for v in values]


def _parse_genus_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo_text, hi_text = text.split("..", 1)
            lo, hi = int(lo_text), int(hi_text)
        else:
            lo = hi = int(text)
    except ValueError as exc:
        raise CLIError(f"bad genus range {text!r}: {exc}") from None
    if lo < 1 or hi < lo:
        raise CLIError(f"genus range must satisfy 1 <= lo <= hi, got {lo}..{hi}")
    return lo, hi


def _parse_orders(text: str) -> list[int]:
    try:
        orders = [int(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise CLIError(f"bad order list {text!r}: {exc}") from None
    if not orders or any(o < 1 or o > 12 for o in orders):
        raise CLIError("orders must be a nonempty subset of 1..12")
    return sorted(set(orders))


def _parse_counts(text: str) -> tuple[int, ...]:
    try:
        counts = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise CLIError(f"bad counts {text!r}: {exc}") from None
    if not counts:
        raise CLIError("empty counts")
    return counts


def _parse_betas(text: str) -> tuple[float, ...]:
    try:
        betas = tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise CLIError(f"bad betas {text!r}: {exc}") from None
    if not betas:
        raise CLIError("empty betas")
    return betas


def _tolerance(args: argparse.Namespace) -> float:
    if getattr(args, "tol", None) is not None:
        value = args.tol
    else:
        env = os.environ.get(TOL_ENV_VAR)
        if env is None:
            return optimize.ROOT_TOL
        try:
            value = float(env)
        except ValueError:
            raise CLIError(f"bad {TOL_ENV_VAR} value {env!r}") from None
    if not 0 < value < 1:
        raise CLIError(f"tolerance must be in (0, 1), got {value}")
    return value


# ---------------------------------------------------------------------------
# output rendering

def _cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _human_cell(value) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, float):
        return f"{value:.6f}"
    return str(value)


def _emit(rows: list[dict], columns: list[str], fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "json":
        json.dump({"rows": rows}, out, indent=2)
        out.write("\n")
    elif fmt == "csv":
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(c)) for c in columns])
    else:
        cells = [[_human_cell(row.get(c)) for c in columns] for row in rows]
        widths = [max(len(col), *(len(r[i]) for r in cells)) if cells else len(col)
                  for i, col in enumerate(columns)]
        out.write("  ".join(col.ljust(w) for col, w in zip(columns, widths)).rstrip() + "\n")
        for r in cells:
            out.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")


# ---------------------------------------------------------------------------
# subcommands

BOUND_COLUMNS = [
    "q", "g", "order", "min_x1", "real_bound", "int_bound",
    "applicable", "certified", "best_int", "best_order",
]


def _report_rows(report: bounds.BestBoundReport) -> list[dict]:
    rows = []
    for entry in report.per_order:
        rows.append(
            {
                "q": report.q,
                "g": report.genus,
                "order": entry.order,
                "min_x1": entry.min_x1,
                "real_bound": entry.real_bound,
                "int_bound": entry.int_bound,
                "applicable": entry.applicable,
                "certified": entry.certified,
                "best_int": report.best_int,
                "best_order": report.best_order,
            }
        )
    return rows


def _print_verbose_orders(q: int, genus: float, max_order: int) -> None:
    for order in range(2, max_order + 1):
        found = optimize.min_x1(q, genus, order)
        if found is None:
            print(f"# order {order}: line misses the domain", file=sys.stderr)
            break
        value, report = found
        print(
            f"# order {order}: min_x1={value!r} minus={report.minus_value:.3e} "
            f"partials_ok={report.partials_ok} directional={report.directional:.6g} "
            f"certified={report.certified}",
            file=sys.stderr,
        )


def cmd_bound(args: argparse.Namespace) -> int:
    q = _validated_q(args.q)
    if args.g < 1:
        raise CLIError("genus must be >= 1")
    report = bounds.best_bound(q, args.g, args.max_order, _tolerance(args))
    if args.verbose:
        _print_verbose_orders(q, args.g, args.max_order)
    _emit(_report_rows(report), BOUND_COLUMNS, args.format)
    if args.format == "table":
        print(f"best bound {report.best_int} at order {report.best_order}")
    return 0


def _table_columns(max_order: int) -> list[str]:
    return ["q", "g", "best_bound", "best_order"] + [
        f"order_{n}" for n in range(1, max_order + 1)
    ]


def _table_row(task: tuple[int, int, int, float]) -> dict:
    q, genus, max_order, tol = task
    report = bounds.best_bound(q, genus, max_order, tol)
    row = {"q": q, "g": genus, "best_bound": report.best_int, "best_order": report.best_order}
    for entry in report.per_order:
        row[f"order_{entry.order}"] = entry.real_bound if entry.applicable else None
    return row


def _map_rows(tasks: list[tuple]) -> list[dict]:
    workers = os.cpu_count() or 1
    if workers > 1 and len(tasks) >= 16:
        # map preserves input order, so parallel output stays deterministic
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(_table_row, tasks))
    return [_table_row(task) for task in tasks]


def cmd_table(args: argparse.Namespace) -> int:
    qs = _parse_q_list(args.q)
    lo, hi = _parse_genus_range(args.g_range if args.g_range else args.g)
    tol = _tolerance(args)
    tasks = [(q, genus, args.max_order, tol) for q in qs for genus in range(lo, hi + 1)]
    rows = _map_rows(tasks)
    _emit(rows, _table_columns(args.max_order), args.format)
    return 0


def cmd_threshold(args: argparse.Namespace) -> int:
    q = _validated_q(args.q)
    if args.n < 2:
        raise CLIError("threshold needs an order >= 2")
    result = optimize.threshold_genus(q, args.n, args.tol if args.tol else 1e-9)
    rows = [
        {
            "q": q,
            "order": result.order,
            "genus": result.genus,
            "bracket_low": result.bracket[0],
            "bracket_high": result.bracket[1],
        }
    ]
    _emit(rows, ["q", "order", "genus", "bracket_low", "bracket_high"], args.format)
    return 0


def cmd_asymptotic(args: argparse.Namespace) -> int:
    q = _validated_q(args.q)
    if args.max_order < 1:
        raise CLIError("max order must be >= 1")
    rows = []
    for order in range(1, args.max_order + 1):
        row = {"q": q, "order": order, "bound": bounds.asymptotic_order_bound(q, order),
               "printed_bound": None, "note": None}
        if order == 3:
            row["printed_bound"] = bounds.order3_asymptotic_printed(q)
            row["note"] = "printed closed form disagrees; quadratic-derived value reported"
        rows.append(row)
    rows.append(
        {"q": q, "order": None, "bound": bounds.drinfeld_vladut_bound(q),
         "printed_bound": None, "note": "Drinfeld-Vladut limit"}
    )
    _emit(rows, ["q", "order", "bound", "printed_bound", "note"], args.format)
    return 0


def cmd_defect(args: argparse.Namespace) -> int:
    q = _validated_q(args.q)
    tower = bounds.TowerSpec(q=q, betas=_parse_betas(args.betas))
    defect = bounds.tsfasman_defect(tower)
    row = {
        "q": q,
        "betas": ";".join(repr(b) for b in tower.betas),
        "defect": defect,
        "satisfies_tsfasman": defect >= 0,
        "partial_depth": None,
        "partial_value": None,
    }
    if args.depth is not None:
        if args.depth < 1:
            raise CLIError("depth must be >= 1")
        row["partial_depth"] = args.depth
        row["partial_value"] = bounds.tsfasman_partial(tower, args.depth)
    _emit([row], ["q", "betas", "defect", "satisfies_tsfasman", "partial_depth", "partial_value"],
          args.format)
    if args.format == "table" and defect < 0:
        print("warning: defect is negative, the tower data violates the Tsfasman bound")
    return 0


def cmd_relative(args: argparse.Namespace) -> int:
    q = _validated_q(args.q)
    first = bounds.relative_weil(q, args.gx, args.gy)
    row = {
        "q": q,
        "genus_x": args.gx,
        "genus_y": args.gy,
        "first_order_bound": first,
        "delta_n1": args.dn1,
        "second_order_bound": None,
    }
    if args.dn1 is not None:
        row["second_order_bound"] = bounds.relative_order2(q, args.gx, args.gy, args.dn1)
    _emit([row], ["q", "genus_x", "genus_y", "first_order_bound", "delta_n1",
                  "second_order_bound"], args.format)
    return 0


def cmd_fiber(args: argparse.Namespace) -> int:
    q = _validated_q(args.q)
    import warnings as _warnings

    with _warnings.catch_warnings(record=True) as caught:
        _warnings.simplefilter("always")
        value = bounds.fiber_product_bound(q, args.gx, args.gy1, args.gy2, args.gz)
    hypothesis_ok = not any(issubclass(w.category, RuntimeWarning) for w in caught)
    row = {
        "q": q, "genus_x": args.gx, "genus_y1": args.gy1, "genus_y2": args.gy2,
        "genus_z": args.gz, "bound": value, "hypothesis_ok": hypothesis_ok,
    }
    _emit([row], ["q", "genus_x", "genus_y1", "genus_y2", "genus_z", "bound",
                  "hypothesis_ok"], args.format)
    if not hypothesis_ok:
        print("warning: negative bound, the fiber-product hypothesis must fail",
              file=sys.stderr)
    return 0


def cmd_audit(args: argparse.Namespace) -> int:
    q = _validated_q(args.q)
    if args.g < 1:
        raise CLIError("genus must be >= 1")
    counts = CurveCounts(q=q, genus=args.g, counts=_parse_counts(args.counts))
    point = point_from_counts(counts)
    reasons = []
    for i, x in enumerate(point.coords, start=1):
        if abs(x) > 1 + 1e-9:
            reasons.append(f"x_{i} = {x:.6g} outside [-1, 1] (Weil violation)")
    violations = counts.ihara_violations()
    if violations:
        degrees = ",".join(str(d) for d in violations)
        reasons.append(f"Ihara violation: N_i < N_1 at extension degrees {degrees}")
    verdict = in_closed_domain(point)
    if not verdict.inside_closed and not reasons:
        reasons.append(
            f"Gram matrix not positive semidefinite (min eigenvalue {verdict.min_eigenvalue:.3e})"
        )
    max_slack = None
    if counts.order >= 2:
        line = IharaLine(q=q, genus=args.g, order=counts.order)
        max_slack = float(max(ihara_slacks(line, point)))
        limit = second_extension_bound(q, args.g, counts.counts[0])
        if counts.counts[1] > limit + 1e-9:
            reasons.append(
                f"second-extension bound exceeded: N_2 = {counts.counts[1]} > {limit:.6g}"
            )
    row = {
        "q": q,
        "g": args.g,
        "counts": ";".join(str(c) for c in counts.counts),
        "verdict": "consistent" if not reasons else "infeasible (" + "; ".join(reasons) + ")",
        "min_eigenvalue": verdict.min_eigenvalue,
        "max_ihara_slack": max_slack,
    }
    _emit([row], ["q", "g", "counts", "verdict", "min_eigenvalue", "max_ihara_slack"],
          args.format)
    return 0


def cmd_plotdata(args: argparse.Namespace) -> int:
    q = _validated_q(args.q)
    lo, hi = _parse_genus_range(args.g_range if args.g_range else args.g)
    orders = _parse_orders(args.orders)
    tol = _tolerance(args)
    columns = ["g"] + [f"order_{n}" for n in orders]
    rows = []
    for genus in range(lo, hi + 1):
        report = bounds.best_bound(q, genus, max(orders), tol)
        row = {"g": genus}
        for n in orders:
            entry = report.per_order[n - 1]
            row[f"order_{n}"] = entry.real_bound if entry.applicable else None
        rows.append(row)
    _emit(rows, columns, "csv")
    return 0


# ---------------------------------------------------------------------------
# parser wiring

def _add_common(parser: argparse.ArgumentParser, with_format: bool = True) -> None:
    if with_format:
        parser.add_argument("--format", choices=("table", "csv", "json"), default="table",
                            help="output format (default: table)")
    parser.add_argument("--tol", type=float, default=None,
                        help=f"numeric tolerance (default from ${TOL_ENV_VAR} or built-in)")
    parser.add_argument("--verbose", action="store_true",
                        help="per-order diagnostics on stderr")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="weilbounds",
        description="Order-n upper bounds for point counts of curves over finite fields",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bound", help="per-order bounds for one field size and genus")
    p.add_argument("--q", type=int, required=True, help="field size (prime power)")
    p.add_argument("--g", type=int, required=True, help="genus (integer >= 1)")
    p.add_argument("--max-order", type=int, default=bounds.DEFAULT_MAX_ORDER)
    _add_common(p)
    p.set_defaults(func=cmd_bound)

    p = sub.add_parser("table", help="best bounds over a genus range for several q")
    p.add_argument("--q", required=True, help="comma-separated field sizes, e.g. 2,3")
    p.add_argument("--g", default=None, help="genus or range a..b")
    p.add_argument("--g-range", dest="g_range", default=None, help="alias for --g a..b")
    p.add_argument("--max-order", type=int, default=bounds.DEFAULT_MAX_ORDER)
    _add_common(p)
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("threshold", help="smallest genus at which an order applies")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--n", type=int, required=True, help="order (>= 2)")
    _add_common(p)
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("asymptotic", help="infinite-genus slopes per order")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--max-order", type=int, default=8)
    _add_common(p)
    p.set_defaults(func=cmd_asymptotic)

    p = sub.add_parser("defect", help="Tsfasman defect of tower limit ratios")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--betas", required=True, help="comma-separated beta_1,beta_2,...")
    p.add_argument("--depth", type=int, default=None, help="also report the truncated sum")
    _add_common(p)
    p.set_defaults(func=cmd_defect)

    p = sub.add_parser("relative", help="covering bounds |#X - #Y|")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--gx", type=float, required=True)
    p.add_argument("--gy", type=float, required=True)
    p.add_argument("--dn1", type=float, default=None,
                   help="N_X(q) - N_Y(q), enables the second-extension refinement")
    _add_common(p)
    p.set_defaults(func=cmd_relative)

    p = sub.add_parser("fiber", help="fiber-product covering bound")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--gx", type=float, required=True)
    p.add_argument("--gy1", type=float, required=True)
    p.add_argument("--gy2", type=float, required=True)
    p.add_argument("--gz", type=float, required=True)
    _add_common(p)
    p.set_defaults(func=cmd_fiber)

    p = sub.add_parser("audit", help="consistency check of claimed point counts")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--g", type=int, required=True)
    p.add_argument("--counts", required=True, help="comma-separated N_1,N_2,...")
    _add_common(p)
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("plotdata", help="per-order real bounds as CSV for plotting")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--g", default=None, help="genus range a..b")
    p.add_argument("--g-range", dest="g_range", default=None, help="alias for --g a..b")
    p.add_argument("--orders", default="1,2,3,4,5", help="comma-separated orders")
    _add_common(p, with_format=False)
    p.set_defaults(func=cmd_plotdata)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "verbose", False):
        logging.basicConfig(level=logging.INFO, stream=sys.stderr)
    try:
        if getattr(args, "command", None) in ("table", "plotdata") and not (
            getattr(args, "g", None) or getattr(args, "g_range", None)
        ):
            raise CLIError("a genus range is required (--g a..b)")
        return args.func(args)
    except CLIError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except optimize.NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
