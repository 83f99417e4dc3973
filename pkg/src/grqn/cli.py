"""Command-line surface: single cells, tables, sweeps, cofiber reports.

Cells are pure computations, so the sweep runs them in a process pool and a
single writer appends finished records to a JSON-lines cache.  Outputs use a
fixed field order to stay byte-reproducible.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import comb

from .formulas import InvalidCell, predicted_cofiber_k, predicted_delta_rank, predicted_k
from .homology import GridTooSmall, ideal_subcomplex, qn_homology, twisted_complex
from .schubert import Grid, derivation_qn_matrix, lenart_qn_matrix

CELL_LIMIT_ENV = "GRQN_CELL_LIMIT"
DEFAULT_CELL_LIMIT = 5_000_000
BOTH_METHOD_LIMIT = 10_000

STATUS_PROVEN = "Proven"
STATUS_CONJECTURE = "ConjectureMatch"
STATUS_MISMATCH = "Mismatch"
STATUS_PREDICTED_ONLY = "predicted-only"

METHOD_LENART = "Lenart"
METHOD_DERIVATION = "Derivation"
METHOD_BOTH = "Both"

CSV_HEADER = "d,c,value,status,method"


class CellTooLarge(RuntimeError):
    """The cell's basis exceeds the configured size cutoff."""


class CacheCorrupt(RuntimeError):
    """The result cache holds a line that does not parse."""


class LowerBoundViolation(RuntimeError):
    """A computed total fell below the proven lower bound; this is a bug."""


@dataclass
class ResultRecord:
    """One verified cell."""

    n: int
    d: int
    m: int
    computed_total: int
    per_degree: tuple[tuple[int, int], ...]
    predicted: int
    status: str
    method: str
    elapsed_ms: int

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "d": self.d,
                "m": self.m,
                "computed_total": self.computed_total,
                "per_degree": [[t, v] for t, v in self.per_degree],
                "predicted": self.predicted,
                "status": self.status,
                "method": self.method,
                "elapsed_ms": self.elapsed_ms,
            }
        )

    @classmethod
    def from_dict(cls, raw: dict) -> "ResultRecord":
        return cls(
            n=raw["n"],
            d=raw["d"],
            m=raw["m"],
            computed_total=raw["computed_total"],
            per_degree=tuple((t, v) for t, v in raw["per_degree"]),
            predicted=raw["predicted"],
            status=raw["status"],
            method=raw["method"],
            elapsed_ms=raw["elapsed_ms"],
        )


def cell_limit() -> int:
    raw = os.environ.get(CELL_LIMIT_ENV)
    return int(raw) if raw else DEFAULT_CELL_LIMIT


def default_method(n: int, d: int, m: int) -> str:
    """Run both constructions while cheap, the strip formula alone beyond."""
    return METHOD_BOTH if comb(m, d) <= BOTH_METHOD_LIMIT else METHOD_LENART


def _build_matrix(n: int, grid: Grid, method: str):
    if method == METHOD_LENART:
        return lenart_qn_matrix(n, grid)
    if method == METHOD_DERIVATION:
        return derivation_qn_matrix(n, grid)
    if method == METHOD_BOTH:
        a = lenart_qn_matrix(n, grid)
        b = derivation_qn_matrix(n, grid)
        if a != b:
            raise RuntimeError(f"matrix constructions disagree at n={n} grid={grid}")
        return a
    raise ValueError(f"unknown method {method!r}")


def compute_cell(n: int, d: int, m: int, basis: str = "auto", limit: int | None = None) -> ResultRecord:
    """Build the cell's differential, take homology, compare with prediction."""
    if n < 0 or d < 0 or m < 0 or d > m:
        raise InvalidCell(f"invalid cell n={n} d={d} m={m}")
    size = comb(m, d)
    cap = cell_limit() if limit is None else limit
    if size > cap:
        raise CellTooLarge(f"basis size {size} exceeds limit {cap}")
    method = {
        "auto": default_method(n, d, m),
        "lenart": METHOD_LENART,
        "derivation": METHOD_DERIVATION,
        "both": METHOD_BOTH,
    }[basis]
    start = time.perf_counter()
    matrix = _build_matrix(n, Grid(d, m - d), method)
    profile = qn_homology(matrix)
    elapsed_ms = int((time.perf_counter() - start) * 1000)
    predicted = predicted_k(n, d, m)
    computed = profile.total
    if computed < predicted:
        raise LowerBoundViolation(
            f"computed {computed} < lower bound {predicted} at n={n} d={d} m={m}"
        )
    if computed != predicted:
        status = STATUS_MISMATCH
    elif m <= 2 ** (n + 1) or d <= 2:
        status = STATUS_PROVEN
    else:
        status = STATUS_CONJECTURE
    return ResultRecord(
        n=n,
        d=d,
        m=m,
        computed_total=computed,
        per_degree=tuple(sorted(profile.per_degree.items())),
        predicted=predicted,
        status=status,
        method=method,
        elapsed_ms=elapsed_ms,
    )


def table_rows(n: int, dmax: int, cmax: int, limit: int | None = None) -> list[dict]:
    """The (d, c) grid of computed totals, with oversize cells predicted only."""
    rows = []
    values: dict[tuple[int, int], int] = {}
    for d in range(1, dmax + 1):
        for c in range(1, cmax + 1):
            try:
                rec = compute_cell(n, d, d + c, limit=limit)
                row = {
                    "d": d,
                    "c": c,
                    "value": rec.computed_total,
                    "status": rec.status,
                    "method": rec.method,
                }
                values[(d, c)] = rec.computed_total
            except CellTooLarge:
                row = {
                    "d": d,
                    "c": c,
                    "value": predicted_k(n, d, d + c),
                    "status": STATUS_PREDICTED_ONLY,
                    "method": "none",
                }
            rows.append(row)
    for (d, c), v in values.items():
        w = values.get((c, d))
        if w is not None and w != v:
            raise RuntimeError(f"table symmetry violated at ({d},{c}): {v} vs {w}")
    return rows


def table_csv(rows: list[dict]) -> str:
    lines = [CSV_HEADER]
    for row in sorted(rows, key=lambda r: (r["d"], r["c"])):
        lines.append(f"{row['d']},{row['c']},{row['value']},{row['status']},{row['method']}")
    return "\n".join(lines) + "\n"


def cofiber_report(n: int, d: int, m: int, limit: int | None = None) -> dict:
    """Reduced cofiber homology, connecting rank, predictions, twist check."""
    if n < 0 or d < 1 or d > m:
        raise InvalidCell(f"invalid cell n={n} d={d} m={m}")
    if m - d < 1:
        raise GridTooSmall(f"cofiber needs m - d >= 1, got d={d} m={m}")
    size = comb(m, d)
    cap = cell_limit() if limit is None else limit
    if size > cap:
        raise CellTooLarge(f"basis size {size} exceeds limit {cap}")
    grid = Grid(d, m - d)
    full = qn_homology(lenart_qn_matrix(n, grid))
    sub, quot = ideal_subcomplex(n, grid)
    sub_profile = qn_homology(sub)
    quot_profile = qn_homology(quot)
    excess = sub_profile.total + quot_profile.total - full.total
    if excess < 0 or excess % 2:
        raise RuntimeError(f"exactness defect {excess} at n={n} d={d} m={m}")
    twisted = qn_homology(twisted_complex(n, d, m))
    return {
        "n": n,
        "d": d,
        "m": m,
        "cofiber_total": sub_profile.total,
        "per_degree": [[t, v] for t, v in sorted(sub_profile.per_degree.items())],
        "predicted_cofiber": predicted_cofiber_k(n, d, m),
        "connecting_rank": excess // 2,
        "predicted_delta_rank": predicted_delta_rank(n, d, m),
        "twisted_match": twisted.shifted(m - d) == sub_profile,
    }


def load_cache(path: str) -> dict[tuple[int, int, int, str], ResultRecord]:
    records: dict[tuple[int, int, int, str], ResultRecord] = {}
    if not os.path.exists(path):
        return records
    with open(path, "r", encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rec = ResultRecord.from_dict(json.loads(line))
            except (ValueError, KeyError, TypeError) as exc:
                raise CacheCorrupt(f"cache line {lineno} is unreadable: {exc}") from exc
            records[(rec.n, rec.d, rec.m, rec.method)] = rec
    return records


def _sweep_cell(args: tuple[int, int, int, int]) -> tuple[str, ResultRecord | str | None]:
    n, d, m, cap = args
    try:
        return "ok", compute_cell(n, d, m, limit=cap)
    except CellTooLarge:
        return "too_large", None
    except LowerBoundViolation as exc:
        return "lower_bound", str(exc)


def verify_sweep(
    n_range: range,
    d_range: range,
    c_range: range,
    jobs: int = 1,
    cache_path: str = "grqn_cache.jsonl",
    limit: int | None = None,
) -> dict:
    """Evaluate every cell in range, skipping cache hits; append new records."""
    cap = cell_limit() if limit is None else limit
    cache = load_cache(cache_path)
    counts = {STATUS_PROVEN: 0, STATUS_CONJECTURE: 0, STATUS_MISMATCH: 0, "Skipped": 0}
    violations = 0
    todo: list[tuple[int, int, int, int]] = []
    for n in n_range:
        for d in d_range:
            for c in c_range:
                m = d + c
                key = (n, d, m, default_method(n, d, m))
                if key in cache:
                    counts[cache[key].status] += 1
                    counts["Skipped"] += 1
                else:
                    todo.append((n, d, m, cap))

    if jobs > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_cell, todo))
    else:
        results = [_sweep_cell(cell) for cell in todo]

    with open(cache_path, "a", encoding="utf-8") as handle:
        for tag, payload in results:
            if tag == "too_large":
                counts["Skipped"] += 1
            elif tag == "lower_bound":
                violations += 1
            else:
                rec = payload
                counts[rec.status] += 1
                handle.write(rec.to_json() + "\n")
    return {
        "proven": counts[STATUS_PROVEN],
        "conjecture_match": counts[STATUS_CONJECTURE],
        "mismatch": counts[STATUS_MISMATCH],
        "skipped": counts["Skipped"],
        "lower_bound_violations": violations,
    }


def _parse_range(raw: str) -> range:
    if ".." in raw:
        lo, hi = raw.split("..", 1)
        return range(int(lo), int(hi) + 1)
    v = int(raw)
    return range(v, v + 1)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grqn",
        description="Exact degree-shifted homology of real Grassmannians over F_2.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_compute = sub.add_parser("compute", help="compute one cell")
    p_compute.add_argument("--n", type=int, required=True)
    p_compute.add_argument("--d", type=int, required=True)
    p_compute.add_argument("--m", type=int, required=True)
    p_compute.add_argument(
        "--basis", choices=["lenart", "derivation", "both", "auto"], default="auto"
    )
    p_compute.add_argument("--format", choices=["json", "csv"], default="json")

    p_table = sub.add_parser("table", help="compute a d x c table for fixed n")
    p_table.add_argument("--n", type=int, required=True)
    p_table.add_argument("--dmax", type=int, required=True)
    p_table.add_argument("--cmax", type=int, required=True)
    p_table.add_argument("--format", choices=["csv", "json"], default="csv")

    p_verify = sub.add_parser("verify", help="sweep a range of cells against predictions")
    p_verify.add_argument("--n", type=_parse_range, required=True, metavar="A..B")
    p_verify.add_argument("--d", type=_parse_range, required=True, metavar="A..B")
    p_verify.add_argument("--c", type=_parse_range, required=True, metavar="A..B")
    p_verify.add_argument("--jobs", type=int, default=1)
    p_verify.add_argument("--cache", default="grqn_cache.jsonl")

    p_cofiber = sub.add_parser("cofiber", help="report on one inclusion cofiber")
    p_cofiber.add_argument("--n", type=int, required=True)
    p_cofiber.add_argument("--d", type=int, required=True)
    p_cofiber.add_argument("--m", type=int, required=True)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    out = sys.stdout
    if args.command == "compute":
        rec = compute_cell(args.n, args.d, args.m, basis=args.basis)
        if args.format == "json":
            out.write(rec.to_json() + "\n")
        else:
            out.write("n,d,m,value,predicted,status,method\n")
            out.write(
                f"{rec.n},{rec.d},{rec.m},{rec.computed_total},"
                f"{rec.predicted},{rec.status},{rec.method}\n"
            )
        return 0
    if args.command == "table":
        rows = table_rows(args.n, args.dmax, args.cmax)
        if args.format == "csv":
            out.write(table_csv(rows))
        else:
            out.write(json.dumps(rows) + "\n")
        return 0
    if args.command == "verify":
        summary = verify_sweep(args.n, args.d, args.c, jobs=args.jobs, cache_path=args.cache)
        out.write(json.dumps(summary) + "\n")
        ok = summary["mismatch"] == 0 and summary["lower_bound_violations"] == 0
        return 0 if ok else 1
    if args.command == "cofiber":
        report = cofiber_report(args.n, args.d, args.m)
        out.write(json.dumps(report) + "\n")
        return 0
    raise AssertionError(f"unhandled command {args.command}")


if __name__ == "__main__":
    sys.exit(main())
