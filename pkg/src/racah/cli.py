"""Command-line front end: identity sweeps, 6j tables, spectra and exports.

Exit codes: 0 when every check passes, 1 for usage errors, 2 when any check
fails, 3 when a grid point has non-generic (degenerate) parameters.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import __version__
from .exact import PoleInC, format_scalar, scalar
from .operators import SingularMatrix
from .report import PASS
from .reps import (
    BASES,
    DegenerateParameters,
    NotLeonard,
    SingularSystem,
    SpectrumMismatch,
    build_rep,
    leonard_triple_certificate,
    racah_overlaps_hypergeometric,
    racah_overlaps_matrix,
    spectra,
)
from .su11 import PAIR_LABELS, RacahParams, normalize_pair, sturm_liouville_operators
from .su2 import quadratic_elements
from .suite import CHECKS, random_triples, run_suite

EXIT_OK, EXIT_USAGE, EXIT_FAIL, EXIT_DEGENERATE = 0, 1, 2, 3
NON_GENERIC = (DegenerateParameters, SingularSystem, PoleInC, SingularMatrix)
GRID_KEYS = ("nu1", "nu2", "nu3", "M")


class UsageError(ValueError):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage, which here means "a check failed"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def parse_rational(text: str):
    try:
        return scalar(text.strip())
    except (TypeError, ValueError) as exc:
        raise UsageError(f"not an exact rational: {text!r} (use integers or p/q)") from exc


def parse_m_values(text: str) -> list[int]:
    """'3', '0..4' (inclusive) or a comma list of either."""
    values: list[int] = []
    for part in text.split(","):
        part = part.strip()
        try:
            if ".." in part:
                lo, hi = (int(v) for v in part.split(".."))
                if hi < lo:
                    raise UsageError(f"empty range {part!r}")
                values.extend(range(lo, hi + 1))
            else:
                values.append(int(part))
        except ValueError as exc:
            raise UsageError(f"bad M value {part!r}") from exc
    return values


def parse_nu(text: str) -> tuple:
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError(f"--nu needs three comma-separated rationals, got {text!r}")
    return tuple(parse_rational(p) for p in parts)


def parse_grid(items: list[str]) -> dict[str, list]:
    grid: dict[str, list] = {}
    for item in items:
        key, sep, values = item.partition("=")
        key = key.strip()
        if not sep or key not in GRID_KEYS:
            raise UsageError(f"grid entries look like nu1=1,2 or M=0..3; got {item!r}")
        if key == "M":
            grid[key] = parse_m_values(values)
        else:
            grid[key] = [parse_rational(v) for v in values.split(",")]
    return grid


def grid_points(args) -> list[RacahParams]:
    """All parameter points named by --nu/--M, --grid or --random, sorted."""
    m_values = parse_m_values(args.M) if args.M is not None else None
    if args.grid:
        grid = parse_grid(args.grid)
        if "M" not in grid:
            if m_values is None:
                raise UsageError("grid needs M=... or --M")
            grid["M"] = m_values
        if args.nu:
            for key, v in zip(GRID_KEYS, parse_nu(args.nu)):
                grid.setdefault(key, [v])
        missing = [k for k in GRID_KEYS if k not in grid]
        if missing:
            raise UsageError(f"grid is missing {', '.join(missing)}")
        triples = list(itertools.product(grid["nu1"], grid["nu2"], grid["nu3"]))
        m_values = grid["M"]
    elif args.random:
        triples = random_triples(args.random, args.seed)
    elif args.nu:
        triples = [parse_nu(args.nu)]
    else:
        raise UsageError("give --nu, --grid or --random")
    if m_values is None:
        raise UsageError("give --M")
    too_big = [m for m in m_values if m > args.max_M]
    if too_big:
        raise UsageError(f"M={too_big[0]} exceeds the cap --max-M {args.max_M}")
    try:
        points = {RacahParams.of(*t, m) for t in triples for m in m_values}
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if not points:
        raise UsageError("empty parameter grid")
    return sorted(points, key=lambda p: (p.nu1, p.nu2, p.nu3, p.M))


def config_echo(args, points: list[RacahParams]) -> dict:
    echo = {
        "command": args.command,
        "format": args.format,
        "seed": args.seed,
        "max_M": args.max_M,
        "keep_going": args.keep_going,
        "timing": args.timing,
        "points": [p.to_json() for p in points],
    }
    for key in ("pair", "basis", "artifact", "checks"):
        if hasattr(args, key):
            echo[key] = getattr(args, key)
    return echo


def _verify_point(job) -> dict:
    params, checks, timing = job
    try:
        reports = run_suite(params, checks)
    except NON_GENERIC as exc:
        return {"params": params, "degenerate": str(exc), "reports": []}
    return {"params": params, "degenerate": None, "reports": [r.to_json(timing) for r in reports]}


def _map(fn, jobs, n_workers: int):
    if n_workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=n_workers) as pool:
            return list(pool.map(fn, jobs))
    return [fn(j) for j in jobs]


def cmd_verify(args, points):
    checks = args.checks.split(",") if args.checks else list(CHECKS)
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise UsageError(f"unknown check {unknown[0]!r}; choose from {', '.join(CHECKS)}")
    outcomes = _map(_verify_point, [(p, checks, args.timing) for p in points], args.jobs)
    results, code = [], EXIT_OK
    for out in outcomes:
        point = out["params"]
        if out["degenerate"]:
            print(f"DEGENERATE {point}: {out['degenerate']}", file=sys.stderr)
            results.append({
                "check_name": "generic_parameters",
                "params": point.to_json(),
                "status": "degenerate",
                "residual": None,
                "elapsed_ms": None,
                "metadata": {"error": out["degenerate"]},
            })
            code = EXIT_DEGENERATE
        failed = [r for r in out["reports"] if r["status"] != PASS]
        for r in failed:
            print(f"FAIL {r['check_name']} at {point}", file=sys.stderr)
        results.extend(out["reports"])
        if failed and code == EXIT_OK:
            code = EXIT_FAIL
        if code != EXIT_OK and not args.keep_going:
            break
    return results, code


def _verify_csv(results) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["nu1", "nu2", "nu3", "M", "check_name", "status", "elapsed_ms", "failed"])
    for r in results:
        p = r["params"]
        failed = ";".join(r["metadata"].get("failed", []))
        elapsed = "" if r["elapsed_ms"] is None else r["elapsed_ms"]
        w.writerow([p["nu1"], p["nu2"], p["nu3"], p["M"], r["check_name"], r["status"], elapsed, failed])
    return buf.getvalue()


def _verify_pretty(results) -> str:
    lines = []
    for r in results:
        p = r["params"]
        point = f"nu=({p['nu1']},{p['nu2']},{p['nu3']}) M={p['M']}"
        line = f"{r['status']:<10} {r['check_name']:<24} {point}"
        if r["metadata"].get("failed"):
            line += "  failed: " + ", ".join(r["metadata"]["failed"])
        lines.append(line)
    return "\n".join(lines) + "\n"


def _parse_pair(text: str) -> tuple[str, str]:
    parts = text.split(",")
    if len(parts) != 2:
        raise UsageError(f"--pair needs two labels such as 12,23; got {text!r}")
    try:
        a, b = (normalize_pair(p.strip()) for p in parts)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if a == b:
        raise UsageError("--pair labels must differ")
    return a, b


def _sixj_point(job):
    params, pair = job
    try:
        hyp = racah_overlaps_hypergeometric(params, pair)
        mat = racah_overlaps_matrix(params, pair)
    except NON_GENERIC as exc:
        return params, None, str(exc)
    det = hyp.W.det()
    hyp.metadata = {
        "methods_agree": hyp.W == mat.W,
        "det_W": format_scalar(det),
        "invertible": bool(det),
    }
    hyp.method = "hypergeometric+matrix"
    return params, hyp, None


def cmd_sixj(args, points):
    pair = _parse_pair(args.pair)
    outcomes = _map(_sixj_point, [(p, pair) for p in points], args.jobs)
    tables, code = [], EXIT_OK
    for params, table, err in outcomes:
        if err:
            print(f"DEGENERATE {params}: {err}", file=sys.stderr)
            code = EXIT_DEGENERATE
        else:
            tables.append(table)
            if not (table.metadata["methods_agree"] and table.metadata["invertible"]):
                print(f"FAIL overlap agreement at {params}", file=sys.stderr)
                code = max(code, EXIT_FAIL)
        if code != EXIT_OK and not args.keep_going:
            break
    return tables, code


def _sixj_csv(tables) -> str:
    if len(tables) == 1:
        return tables[0].to_csv()
    blocks = [f"# {t.params}\n{t.to_csv()}" for t in tables]
    return "\n".join(blocks)


def _matrix_pretty(rows) -> str:
    cells = [[format_scalar(v) for v in row] for row in rows]
    width = max(len(c) for row in cells for c in row)
    return "\n".join("  ".join(c.rjust(width) for c in row) for row in cells)


def _sixj_pretty(tables) -> str:
    out = []
    for t in tables:
        a, b = t.pair
        agree = "agree" if t.metadata["methods_agree"] else "DISAGREE"
        out.append(f"{t.params}  W[n{a}, n{b}]  methods {agree}, det W = {t.metadata['det_W']}")
        out.append(_matrix_pretty(t.W.entries))
    return "\n".join(out) + "\n"


def _spectrum_record(params: RacahParams) -> dict:
    sp = spectra(params)
    return {"params": params.to_json(), **{k: [format_scalar(v) for v in vs] for k, vs in sp.items()}}


def cmd_spectrum(args, points):
    return [_spectrum_record(p) for p in points], EXIT_OK


def _spectrum_csv(records) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["nu1", "nu2", "nu3", "M", "n", "lambda_A", "lambda_B", "nu12", "nu23"])
    for r in records:
        p = r["params"]
        for n in range(p["M"] + 1):
            w.writerow([p["nu1"], p["nu2"], p["nu3"], p["M"], n,
                        r["lambda_A"][n], r["lambda_B"][n], r["nu12"][n], r["nu23"][n]])
    return buf.getvalue()


def _spectrum_pretty(records) -> str:
    lines = []
    for r in records:
        p = r["params"]
        lines.append(f"nu=({p['nu1']},{p['nu2']},{p['nu3']}) M={p['M']}")
        for key in ("lambda_A", "lambda_B", "nu12", "nu23"):
            lines.append(f"  {key:<9} " + ", ".join(r[key]))
    return "\n".join(lines) + "\n"


def _export_record(params: RacahParams, artifact: str, basis: str) -> dict:
    record = {"params": params.to_json(), "artifact": artifact}
    if artifact == "rep":
        rep = build_rep(params, basis)
        record.update(basis=basis, A=rep.A.to_json(), B=rep.B.to_json(), C=rep.C.to_json())
    elif artifact == "certificate":
        try:
            record["certificate"] = leonard_triple_certificate(params).to_json()
        except NotLeonard as exc:
            record["certificate"] = exc.certificate.to_json()
    else:
        S = dict(zip(PAIR_LABELS, sturm_liouville_operators(params)))
        G = quadratic_elements(params)
        record["operators"] = {
            **{f"S{k}": op.to_json() for k, op in S.items()},
            **{f"G{i}": op.to_json() for i, op in enumerate(G, start=1)},
        }
    return record


def cmd_export(args, points):
    if args.format == "csv":
        raise UsageError("export writes json or pretty; use sixj or spectrum for csv")
    records, code = [], EXIT_OK
    for p in points:
        try:
            rec = _export_record(p, args.artifact, args.basis)
        except NON_GENERIC + (SpectrumMismatch,) as exc:
            print(f"DEGENERATE {p}: {exc}", file=sys.stderr)
            code = EXIT_DEGENERATE
            if not args.keep_going:
                break
            continue
        if rec.get("certificate", {}).get("status") == "fail":
            code = max(code, EXIT_FAIL)
        records.append(rec)
    return records, code


def _pretty_json(records) -> str:
    return "\n".join(json.dumps(r, sort_keys=True) for r in records) + "\n"


COMMANDS = {
    "verify": (cmd_verify, lambda rs: rs, _verify_csv, _verify_pretty),
    "sixj": (cmd_sixj, lambda ts: [t.to_json() for t in ts], _sixj_csv, _sixj_pretty),
    "spectrum": (cmd_spectrum, lambda rs: rs, _spectrum_csv, _spectrum_pretty),
    "export": (cmd_export, lambda rs: rs, None, _pretty_json),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--nu", help="three rationals nu1,nu2,nu3, e.g. 1/2,3/2,2")
    common.add_argument("--M", help="level M: an integer, a range a..b, or a comma list")
    common.add_argument("--grid", nargs="+", metavar="KEY=LIST",
                        help="sweep, e.g. nu1=1,2 nu2=1 nu3=1 M=0..3")
    common.add_argument("--random", type=int, metavar="N",
                        help="N random rational triples (numerators, denominators <= 12)")
    common.add_argument("--seed", type=int, default=0, help="seed for --random (default 0)")
    common.add_argument("--format", choices=("json", "csv", "pretty"), default="json")
    common.add_argument("--out", help="output file (default stdout)")
    common.add_argument("--keep-going", action="store_true",
                        help="evaluate every grid point instead of stopping at the first failure")
    common.add_argument("--timing", action="store_true",
                        help="record elapsed_ms (output is then not byte-reproducible)")
    common.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    common.add_argument("--max-M", dest="max_M", type=int, default=16, help="cap on M (default 16)")

    parser = _Parser(prog="racah", description="Exact checks for the su(1,1) Racah problem.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    verify = sub.add_parser("verify", parents=[common], help="run the identity suite")
    verify.add_argument("--checks", help=f"comma list drawn from: {', '.join(CHECKS)}")
    sixj = sub.add_parser("sixj", parents=[common], help="Racah overlap table W")
    sixj.add_argument("--pair", default="12,23", help="intermediate Casimir pair (default 12,23)")
    sub.add_parser("spectrum", parents=[common], help="closed-form spectra of A and B")
    export = sub.add_parser("export", parents=[common], help="export representations, certificates, operators")
    export.add_argument("--artifact", choices=("rep", "certificate", "operators"), default="rep")
    export.add_argument("--basis", choices=BASES, default="monomial")
    return parser


def render(args, payload) -> str:
    _, to_json, to_csv, to_pretty = COMMANDS[args.command]
    if args.format == "csv":
        return to_csv(payload)
    if args.format == "pretty":
        return to_pretty(payload)
    return json.dumps(
        {"tool_version": __version__, "config_echo": args._echo, "results": to_json(payload)},
        sort_keys=True,
        indent=2,
    ) + "\n"


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.jobs < 1:
            raise UsageError("--jobs must be at least 1")
        points = grid_points(args)
        args._echo = config_echo(args, points)
        payload, code = COMMANDS[args.command][0](args, points)
        text = render(args, payload)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"racah: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        Path(args.out).parent.mkdir(parents=True, exist_ok=True)
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
