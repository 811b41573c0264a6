"""Command-line front end: flownum, batch, verify, pair, export-milp, bounds.

Exit codes: 0 success (and: flow file valid for `verify`), 2 parse error,
3 no flow possible (bridge), 4 contract violation or unsupported mode,
5 verification failed, 1 unexpected error.

Results of `flownum` are cached append-only (JSON lines) when a cache
directory is configured via --cache-dir or the NZFLOW_CACHE_DIR environment
variable; a cache hit reproduces the original payload byte for byte.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import __version__
from .bounds import bounds_csv, bounds_record
from .errors import ContractViolation, GraphParseError, NoFlowPossible
from .flows import CHEBYSHEV, MANHATTAN, format_flow, parse_flow, verify
from .graphs import MultiGraph, named_graph, named_graph_names, parse_edge_list, parse_graph6
from .milp import emit_lp
from .pairs import chnzf_from_pair, find_t_flow_pair, format_pair, nzf1d_from_pair
from .search import flow_number

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARSE = 2
EXIT_NO_FLOW = 3
EXIT_CONTRACT = 4
EXIT_INVALID = 5


def _load_graph(args) -> MultiGraph:
    if args.graph:
        return named_graph(args.graph)
    if args.graph6:
        return parse_graph6(args.graph6)
    text = Path(args.input).read_text()
    first = text.lstrip().splitlines()[0] if text.strip() else ""
    toks = first.split()
    if len(toks) == 2 and all(t.isdigit() for t in toks):
        return parse_edge_list(text)
    return parse_graph6(first)


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", metavar="NAME",
                     help=f"named graph ({', '.join(named_graph_names())})")
    src.add_argument("--graph6", metavar="G6", help="literal graph6 line")
    src.add_argument("--input", metavar="PATH",
                     help="file holding a graph6 line or an edge list (header 'n m')")


def _frac_str(x: Fraction | None) -> str | None:
    if x is None:
        return None
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _cache_path(args) -> Path | None:
    directory = getattr(args, "cache_dir", None) or os.environ.get("NZFLOW_CACHE_DIR")
    if not directory:
        return None
    path = Path(directory)
    path.mkdir(parents=True, exist_ok=True)
    return path / "results.jsonl"


def _cache_lookup(path: Path | None, key: dict) -> str | None:
    if path is None or not path.exists():
        return None
    for line in path.read_text().splitlines():
        try:
            record = json.loads(line)
        except json.JSONDecodeError:
            continue
        if record.get("key") == key:
            return record["payload"]
    return None


def _cache_store(path: Path | None, key: dict, payload: str) -> None:
    if path is None:
        return
    with path.open("a") as fh:
        fh.write(json.dumps({"key": key, "payload": payload}, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# subcommands

def cmd_flownum(args) -> int:
    g = _load_graph(args)
    cache = _cache_path(args)
    key = {"command": "flownum", "graph": g.graph_key(), "dim": args.dim,
           "norm": args.norm, "qmax": args.qmax}
    cached = _cache_lookup(cache, key)
    if cached is not None:
        sys.stdout.write(cached)
        print("cache hit", file=sys.stderr)
        return EXIT_OK
    res = flow_number(g, args.dim, args.norm, args.qmax,
                      node_budget=args.budget)
    witness_file = None
    if res.witness is not None and args.witness_out:
        Path(args.witness_out).write_text(format_flow(res.witness))
        witness_file = args.witness_out
    record = {
        "graph": g.graph_key(), "dim": args.dim, "norm": args.norm,
        "qmax": args.qmax, "status": res.status,
        "value": _frac_str(res.value),
        "bracket": [_frac_str(res.bracket[0]), _frac_str(res.bracket[1])]
        if res.bracket else None,
        "witness_file": witness_file,
        "nodes": res.stats.nodes, "seconds": round(res.stats.seconds, 3),
    }
    payload = json.dumps(record, sort_keys=True) + "\n"
    sys.stdout.write(payload)
    _cache_store(cache, key, payload)
    return EXIT_OK


_TABLE_COLUMNS = (Fraction(9, 4), Fraction(7, 3), Fraction(5, 2))


def _batch_worker(task):
    idx, line, dim, norm_kind, qmax, budget = task
    g = parse_graph6(line)
    try:
        res = flow_number(g, dim, norm_kind, qmax, node_budget=budget)
        return (idx, g.vertex_count, g.edge_count, g.graph_hash()[:12],
                res.status, res.value, None)
    except Exception as exc:  # per-graph failures recorded, batch continues
        return (idx, g.vertex_count, g.edge_count, g.graph_hash()[:12],
                "error", None, str(exc))


def batch_csv(lines, dim, norm_kind, qmax, jobs=1, budget=None) -> str:
    """One row per graph plus a flow-number histogram per order, in the shape
    of the snark survey table (columns 2+1/4, 2+1/3, 2+1/2, total).

    The output is byte-identical for any jobs count: aggregation follows
    corpus order.
    """
    tasks = [(i, ln, dim, norm_kind, qmax, budget) for i, ln in enumerate(lines)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_batch_worker, tasks))
    else:
        rows = [_batch_worker(t) for t in tasks]
    rows.sort(key=lambda r: r[0])
    out = ["index,n,m,graph,status,value"]
    for idx, n, m, ghash, status, value, err in rows:
        val = _frac_str(value) if value is not None else (err or "")
        out.append(f"{idx},{n},{m},{ghash},{status},{val}")
    out.append("")
    out.append("order,2+1/4,2+1/3,2+1/2,total")
    per_order: dict[int, list] = {}
    for idx, n, m, ghash, status, value, err in rows:
        per_order.setdefault(n, []).append(value)
    for n in sorted(per_order):
        values = per_order[n]
        counts = [sum(1 for v in values if v == c) for c in _TABLE_COLUMNS]
        out.append(f"{n},{counts[0]},{counts[1]},{counts[2]},{len(values)}")
    return "\n".join(out) + "\n"


def cmd_batch(args) -> int:
    lines = [ln.strip() for ln in Path(args.corpus).read_text().splitlines()
             if ln.strip()]
    csv = batch_csv(lines, args.dim, args.norm, args.qmax, jobs=args.jobs,
                    budget=args.budget)
    if args.out:
        Path(args.out).write_text(csv)
    else:
        sys.stdout.write(csv)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = _load_graph(args)
    fa = parse_flow(Path(args.flow).read_text(), g)
    report = verify(fa)
    record = {
        "valid": report.valid,
        "conservation_violations": [
            [w, i, _frac_str(s)] for w, i, s in report.conservation_violations],
        "window_violations": [
            [e, _frac_str(nv)] for e, nv in report.window_violations],
    }
    print(json.dumps(record, sort_keys=True))
    return EXIT_OK if report.valid else EXIT_INVALID


def cmd_pair(args) -> int:
    g = _load_graph(args)
    num, _, den = args.t.partition("/")
    p, q = int(num), int(den) if den else 1
    outcome = find_t_flow_pair(g, p, q, node_budget=args.budget)
    if outcome.value is None:
        print(json.dumps({"found": False, "exhaustive": outcome.exhaustive,
                          "nodes": outcome.nodes}, sort_keys=True))
        return EXIT_OK if outcome.exhaustive else EXIT_ERROR
    fp = outcome.value
    ch = chnzf_from_pair(fp)
    nz = nzf1d_from_pair(fp)
    files = {}
    if args.out:
        files = {
            "pair": f"{args.out}.pair",
            "chnzf": f"{args.out}.chnzf.flow",
            "nzf1": f"{args.out}.nzf1.flow",
        }
        Path(files["pair"]).write_text(format_pair(fp))
        Path(files["chnzf"]).write_text(format_flow(ch))
        Path(files["nzf1"]).write_text(format_flow(nz))
    record = {
        "found": True, "t": f"{fp.p}/{fp.q}", "nodes": outcome.nodes,
        "chnzf_r": _frac_str(ch.r), "chnzf_valid": verify(ch).valid,
        "nzf1_r": _frac_str(nz.r), "nzf1_valid": verify(nz).valid,
        "files": files or None,
    }
    print(json.dumps(record, sort_keys=True))
    return EXIT_OK


def cmd_export_milp(args) -> int:
    g = _load_graph(args)
    lam = Fraction(args.lam)
    text = emit_lp(g, lam)
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_bounds(args) -> int:
    g = _load_graph(args)
    rec = bounds_record(g, compute=args.compute, qmax=args.qmax)
    sys.stdout.write(bounds_csv([rec]))
    return EXIT_OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nzflow",
        description="Exact nowhere-zero flow numbers under the Manhattan "
                    "and Chebyshev norms.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("flownum", help="compute a flow number")
    _add_graph_args(p)
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--norm", choices=(MANHATTAN, CHEBYSHEV), default=CHEBYSHEV)
    p.add_argument("--qmax", type=int, default=6)
    p.add_argument("--budget", type=int, default=None,
                   help="node budget; exceeding it degrades the result to an interval")
    p.add_argument("--witness-out", metavar="PATH",
                   help="write the witness flow file here")
    p.add_argument("--cache-dir", default=None)
    p.set_defaults(func=cmd_flownum)

    p = sub.add_parser("batch", help="flow numbers for a graph6 corpus, as CSV")
    p.add_argument("corpus", help="file with one graph6 line per graph")
    p.add_argument("--dim", type=int, default=2)
    p.add_argument("--norm", choices=(MANHATTAN, CHEBYSHEV), default=CHEBYSHEV)
    p.add_argument("--qmax", type=int, default=4)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--out", metavar="PATH", help="write the CSV here")
    p.set_defaults(func=cmd_batch)

    p = sub.add_parser("verify", help="verify a flow file against a graph")
    _add_graph_args(p)
    p.add_argument("--flow", required=True, metavar="PATH")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pair", help="search for a t-flow-pair and derive flows")
    _add_graph_args(p)
    p.add_argument("--t", required=True, metavar="P/Q", help="ratio, e.g. 1/2")
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--out", metavar="PREFIX",
                   help="write PREFIX.pair, PREFIX.chnzf.flow, PREFIX.nzf1.flow")
    p.set_defaults(func=cmd_pair)

    p = sub.add_parser("export-milp", help="emit the flow-number MILP as an LP file")
    _add_graph_args(p)
    p.add_argument("--lam", default="2", help="big-M constant (default 2)")
    p.add_argument("--out", metavar="PATH")
    p.set_defaults(func=cmd_export_milp)

    p = sub.add_parser("bounds", help="snark bounds and flow-number ratios")
    _add_graph_args(p)
    p.add_argument("--compute", action="store_true",
                   help="also compute both flow numbers and their ratio")
    p.add_argument("--qmax", type=int, default=6)
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except GraphParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NoFlowPossible as exc:
        print(f"no flow possible: {exc}", file=sys.stderr)
        return EXIT_NO_FLOW
    except ContractViolation as exc:
        print(f"contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
