"""Command-line interface: ``signvar <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import cache
from .identities import cm_grid, corollary_ds, verify_point
from .ordercomplex import (
    DEFAULT_FACE_CAP,
    CapExceeded,
    complex_report,
    f_vector,
    h_vector,
)
from .partition import DEFAULT_FIBER_CAP, ChainError, partition, phi
from .signvec import SignVectorError, parse_chain
from .sperm import SignedPermError, bottom_chain, chain_of_perm, d_table_json, descent_data, eulerian_d, parse_window

log = logging.getLogger("signvar")

CSV_COLUMNS = ["n", "m", "j", "f_j", "h_j", "D(n,j)"]


class UsageError(ValueError):
    pass


def _check_nm(n: int, m: int) -> None:
    if n < 1:
        raise UsageError("--n must be positive")
    if not 0 <= m <= n - 1:
        raise UsageError(f"--m must satisfy 0 <= m <= n-1, got m={m} for n={n}")


def _cache_dir(args) -> Path | None:
    if args.no_cache:
        return None
    return Path(args.cache_dir) if args.cache_dir else cache.default_cache_dir()


def _dump_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def _fh_rows(n: int, m: int, f: list[int], h: list[int], D: list[int] | None) -> list[list]:
    rows = []
    for j in range(max(len(f), len(h))):
        rows.append([
            n,
            m,
            j,
            f[j] if j < len(f) else "",
            h[j] if j < len(h) else "",
            D[j] if D is not None and j < len(D) else "",
        ])
    return rows


def _csv(rows: list[list], header=CSV_COLUMNS) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def cmd_complex(args) -> tuple[str, int]:
    _check_nm(args.n, args.m)
    K = cache.get_complex(args.n, args.m, _cache_dir(args), args.cap)
    if args.dot:
        Path(args.dot).write_text(K.poset.to_dot())
    report = complex_report(K, with_flag=args.flag, with_betti=not args.no_betti)
    if args.format == "json":
        return _dump_json(report), 0
    if args.format == "csv":
        D = eulerian_d(args.n) if args.m == args.n - 1 else None
        return _csv(_fh_rows(args.n, args.m, report["f"], report["h"], D)), 0
    lines = [
        f"n={args.n} m={args.m}",
        f"f = {tuple(report['f'])}",
        f"h = {tuple(report['h'])}",
        f"reduced Euler characteristic = {report['euler_reduced']}",
    ]
    if "betti" in report:
        lines.append(f"reduced Betti (Q) = {tuple(report['betti'])} [{report['homology_mode']}]")
    if "flag" in report:
        for entry in report["flag"]:
            lines.append(f"  S={tuple(entry['S'])} flag_f={entry['f']} flag_h={entry['h']}")
    return "\n".join(lines) + "\n", 0


def cmd_phi(args) -> tuple[str, int]:
    chain = parse_chain(args.chain)
    if not chain and args.n is None:
        raise UsageError("--n is required for the empty chain")
    n = args.n if args.n is not None else chain[0].n
    res = phi(chain, n)
    window = ",".join(str(a) for a in res.perm.window)
    if args.format == "json":
        return _dump_json({
            "window": window,
            "blocks": [list(b) for b in res.blocks],
            "ell": list(res.lengths),
            "descents": sorted(descent_data(res.perm).descent_set),
        }), 0
    return window + "\n", 0


def cmd_partition(args) -> tuple[str, int]:
    _check_nm(args.n, args.m)
    K = cache.get_complex(args.n, args.m, _cache_dir(args), args.cap)
    cert = partition(args.n, args.m, K, fiber_cap=args.fiber_cap)
    status = 0 if cert.verified else 1
    if args.format == "json":
        return _dump_json(cert.to_json(with_fibers=args.fibers)), status
    lines = [f"n={args.n} m={args.m} verdict={cert.verdict}"]
    lines += [f"  {name}: {'pass' if ok else 'FAIL'}" for name, ok in sorted(cert.checks.items())]
    lines.append(f"  h from f-vector      = {tuple(cert.h_from_f)}")
    lines.append(f"  h from descent count = {tuple(cert.h_from_partition)}")
    return "\n".join(lines) + "\n", status


def cmd_eulerian_d(args) -> tuple[str, int]:
    if args.n < 1:
        raise UsageError("--n must be positive")
    table = eulerian_d(args.n)
    if args.format == "json":
        return _dump_json(d_table_json(args.n, table)), 0
    if args.format == "csv":
        rows = [[args.n, "", j, "", "", d] for j, d in enumerate(table)]
        return _csv(rows), 0
    return " ".join(str(d) for d in table) + "\n", 0


def _verify_task(n: int, m: int, cache_dir, cap: int):
    K = cache.get_complex(n, m, cache_dir, cap)
    f = f_vector(K)
    return n, m, f, h_vector(f, len(f) - 1), verify_point(n, m, cap, K)


def cmd_verify(args) -> tuple[str, int]:
    if args.n_max < 1:
        raise UsageError("--n-max must be positive")
    grid = cm_grid(args.n_max)
    cache_dir = _cache_dir(args)
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            results = list(pool.map(_verify_task, *zip(*[(n, m, cache_dir, args.cap) for n, m in grid])))
    else:
        results = [_verify_task(n, m, cache_dir, args.cap) for n, m in grid]
    reports = [r for *_, rs in results for r in rs]
    cor_max = args.corollary_n_max if args.corollary_n_max is not None else args.n_max
    tables = {n: eulerian_d(n) for n in range(1, cor_max + 1)}
    for n, table in tables.items():
        reports.extend(corollary_ds(n, table))
    failed = [r for r in reports if not r.passed]
    status = 1 if failed else 0

    if args.format == "json":
        return _dump_json({
            "n_max": args.n_max,
            "corollary_n_max": cor_max,
            "all_pass": not failed,
            "num_reports": len(reports),
            "num_failed": len(failed),
            "reports": [r.to_json() for r in reports],
        }), status
    if args.format == "csv":
        rows = []
        for n, m, f, h, _ in results:
            D = tables.get(n) if m == n - 1 else None
            rows.extend(_fh_rows(n, m, f, h, D))
        return _csv(rows), status
    lines = [f"{len(reports)} identity reports, {len(failed)} failed"]
    lines += [f"FAIL {r.name} {r.parameters}: {r.lhs} != {r.rhs}" for r in failed]
    return "\n".join(lines) + "\n", status


def cmd_perm2chain(args) -> tuple[str, int]:
    p = parse_window(args.window)
    top = chain_of_perm(p)
    bottom = bottom_chain(p)
    if args.format == "json":
        return _dump_json({
            "window": str(p),
            "descents": sorted(descent_data(p).descent_set),
            "top_chain": [str(v) for v in top],
            "bottom_chain": [str(v) for v in bottom],
        }), 0
    return (
        "C^pi: " + " < ".join(str(v) for v in top) + "\n"
        + "C_pi: " + " < ".join(str(v) for v in bottom) + "\n"
    ), 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="signvar", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt_default="text", formats=("json", "csv", "text")):
        p.add_argument("--format", choices=formats, default=fmt_default)
        p.add_argument("--output", "-o", help="write the report here instead of stdout")

    def caching(p):
        p.add_argument("--cache-dir", help=f"cache directory (default ${cache.ENV_VAR} or ~/.cache/signvar)")
        p.add_argument("--no-cache", action="store_true")
        p.add_argument("--cap", type=int, default=DEFAULT_FACE_CAP, help="maximum number of faces")

    p = sub.add_parser("complex", help="f/h/flag vectors, Euler characteristic and Betti numbers")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--flag", action="store_true", help="include flag f/h vectors")
    p.add_argument("--no-betti", action="store_true", help="skip the homology computation")
    p.add_argument("--dot", help="write the Hasse diagram of P_{n,m} as DOT to this path")
    common(p)
    caching(p)
    p.set_defaults(func=cmd_complex)

    p = sub.add_parser("phi", help="apply the face-to-permutation map to a chain")
    p.add_argument("--n", type=int)
    p.add_argument("--chain", required=True, help='comma-separated sign vectors, e.g. "0+,++"')
    common(p, formats=("json", "text"))
    p.set_defaults(func=cmd_phi)

    p = sub.add_parser("partition", help="Boolean-interval partition certificate")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--fibers", action="store_true", help="dump every fiber (large)")
    p.add_argument("--fiber-cap", type=int, default=DEFAULT_FIBER_CAP)
    common(p, formats=("json", "text"))
    caching(p)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("eulerian-d", help="D(n, k) table by exhaustive counting")
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(func=cmd_eulerian_d)

    p = sub.add_parser("verify", help="run every identity check on the grid n <= n-max")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--corollary-n-max", type=int, help="range for the D(n, k) symmetry checks")
    p.add_argument("--jobs", type=int, default=1)
    common(p)
    caching(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("perm2chain", help="saturated chain and its bottom for a window")
    p.add_argument("--window", required=True, help='e.g. "-2,3,1,5,-4"')
    common(p, formats=("json", "text"))
    p.set_defaults(func=cmd_perm2chain)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        text, status = args.func(args)
    except (UsageError, SignVectorError, SignedPermError, ChainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
