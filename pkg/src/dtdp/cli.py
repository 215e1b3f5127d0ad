"""Command-line front end: graphs in, JSON verdicts out."""

from __future__ import annotations

import argparse
import json
import os
import signal
import sys
from contextlib import contextmanager
from . import catalog, characterize, domination, families, goodsub, minimality
from .multigraph import (
    GraphFormatError,
    Multigraph,
    from_graph6,
    parse_mgf,
    to_graph6,
)
from .subdivision import (
    canonical_dt_pair,
    partition_from_spec,
    s2_full,
    theta_from_spec,
)

EXIT_OK = 0
EXIT_NO = 1
EXIT_ERROR = 2

TIME_LIMIT_ENV = "DTDP_TIME_LIMIT_MS"


class SolverTimeout(Exception):
    pass


@contextmanager
def _time_limit():
    """Cap one solver call via SIGALRM when DTDP_TIME_LIMIT_MS is set."""
    raw = os.environ.get(TIME_LIMIT_ENV)
    if not raw or not hasattr(signal, "setitimer"):
        yield
        return
    try:
        seconds = max(int(raw), 1) / 1000.0
    except ValueError:
        raise ValueError(f"{TIME_LIMIT_ENV} must be an integer (milliseconds)")

    def on_alarm(signum, frame):
        raise SolverTimeout

    previous = signal.signal(signal.SIGALRM, on_alarm)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, previous)


def load_graph(spec: str) -> Multigraph:
    """A graph argument is a family spec or a path to an MGF/graph6 file."""
    if ":" in spec and not os.path.exists(spec):
        return families.from_family_spec(spec)
    if os.path.exists(spec):
        with open(spec, "r", encoding="utf-8") as handle:
            text = handle.read()
        return _sniff(text)
    raise ValueError(f"graph argument {spec!r} is neither a family spec nor a file")


def _sniff(text: str) -> Multigraph:
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) == 2 and all(t.lstrip("-").isdigit() for t in tokens):
            return parse_mgf(text)
        return from_graph6(line)
    raise GraphFormatError("empty graph file")


def _emit(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True, separators=(",", ":")))


def _write_dot(path: str | None, g: Multigraph, pair: domination.DtPair | None) -> None:
    if path is None:
        return
    d = pair.d if pair else None
    t = pair.t if pair else None
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(g.to_dot(d, t))


def _load_json(path: str):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _cmd_check(args) -> int:
    g = load_graph(args.graph)
    with _time_limit():
        pair = domination.find_dt_pair(g)
    _emit({"dtdp": pair is not None, "pair": pair.to_json() if pair else None})
    _write_dot(args.dot, g, pair)
    return EXIT_OK if pair else EXIT_NO


def _cmd_minimal(args) -> int:
    g = load_graph(args.graph)
    with _time_limit():
        minimal, witness = minimality.is_minimal_dtdp(g)
    payload = {
        "minimal": minimal,
        "witness_edge": witness[0] if witness else None,
        "witness_pair": witness[1].to_json() if witness else None,
    }
    _emit(payload)
    if witness:
        _write_dot(args.dot, g.delete_edge(witness[0]), witness[1])
    else:
        _write_dot(args.dot, g, None)
    return EXIT_OK if minimal else EXIT_NO


def _cmd_pairs(args) -> int:
    g = load_graph(args.graph)
    with _time_limit():
        pairs = domination.enumerate_dt_pairs(g, args.limit)
        covering = domination.count_covering_pairs(g, args.limit)
    if args.limit is not None and len(pairs) >= args.limit:
        count: int | str = f"{args.limit}+"
    else:
        count = len(pairs)
    _emit(
        {
            "dtdp": bool(pairs),
            "pair": pairs[0].to_json() if pairs else None,
            "count": count,
            "covering": covering,
            "pairs": [p.to_json() for p in pairs],
        }
    )
    _write_dot(args.dot, g, pairs[0] if pairs else None)
    return EXIT_OK


def _cmd_s2(args) -> int:
    h = load_graph(args.graph)
    partition = (
        partition_from_spec(h, _load_json(args.partition)) if args.partition else None
    )
    theta = theta_from_spec(_load_json(args.theta)) if args.theta else None
    with _time_limit():
        g, labels = s2_full(h, partition, theta)
    pair = canonical_dt_pair(labels)
    _emit(
        {
            "mgf": g.to_mgf(),
            "vo": sorted(labels.vo),
            "vn": sorted(labels.vn),
            "pair": pair.to_json(),
        }
    )
    _write_dot(args.dot, g, pair)
    return EXIT_OK


def _cmd_good(args) -> int:
    h = load_graph(args.graph)
    with _time_limit():
        if args.edge is not None:
            cert = goodsub.edge_good_certificate(h, args.edge)
        elif args.loop is not None:
            cert = goodsub.loop_good_certificate(h, args.loop)
        else:
            exists = goodsub.has_good_subgraph(h)
            _emit({"exists": exists, "certificate": None})
            return EXIT_OK if exists else EXIT_NO
    _emit(
        {
            "exists": cert is not None,
            "certificate": cert.to_json() if cert else None,
        }
    )
    return EXIT_OK if cert else EXIT_NO


def _cmd_recognize(args) -> int:
    g = load_graph(args.graph)
    with _time_limit():
        result = characterize.classify_minimal(g)
    _emit(result.to_json())
    if result.decomposition is not None:
        pair = domination.DtPair(
            result.decomposition.labels.vo, result.decomposition.labels.vn
        )
        _write_dot(args.dot, g, pair)
    else:
        _write_dot(args.dot, g, None)
    return EXIT_OK if result.verdict != characterize.VERDICT_NOT_MINIMAL else EXIT_NO


def _cmd_witness(args) -> int:
    h = load_graph(args.graph)
    partition = (
        partition_from_spec(h, _load_json(args.partition)) if args.partition else None
    )
    theta = theta_from_spec(_load_json(args.theta)) if args.theta else None
    with _time_limit():
        result = characterize.construct_nonminimal_witness(h, partition, theta)
    _emit(
        {
            "subdivision": result.subdivision.to_mgf(),
            "witness": result.witness.to_mgf(),
            "deleted_edges": list(result.deleted_edges),
            "pair": result.pair.to_json(),
        }
    )
    _write_dot(args.dot, result.witness, result.pair)
    return EXIT_OK


def _cmd_verify(args) -> int:
    tags = args.tags.split(",") if args.tags else None
    with _time_limit():
        reports = catalog.run_verification_suite(args.max_n, tags, jobs=args.jobs)
    lines = [r.to_json_line() for r in reports]
    for line in lines:
        print(line)
    if args.jsonl:
        with open(args.jsonl, "w", encoding="utf-8") as handle:
            handle.write("\n".join(lines) + "\n")
    if args.figures:
        from .report import save_sweep_figures

        for written in save_sweep_figures(reports, args.figures):
            print(f"figure: {written}", file=sys.stderr)
    return EXIT_OK if all(r.passed for r in reports) else EXIT_NO


def _cmd_domgg(args) -> int:
    g = load_graph(args.graph)
    with _time_limit():
        value = catalog.dom_gg_t(g)
    _emit({"dom_gg_t": value})
    return EXIT_OK


def _cmd_convert(args) -> int:
    g = load_graph(args.graph)
    if args.to == "mgf":
        sys.stdout.write(g.to_mgf())
    elif args.to == "graph6":
        print(to_graph6(g))
    else:
        sys.stdout.write(g.to_dot())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dtdp",
        description=(
            "Decide, enumerate and certify disjoint dominating / total dominating"
            " partitions; graphs are MGF or graph6 files, or family specs"
            f" ({families.FAMILY_SPEC_HELP})."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def graph_cmd(name: str, help_text: str, dot: bool = True):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("graph", help="graph file or family spec")
        if dot:
            p.add_argument("--dot", help="write a DOT rendering with D/T colors")
        return p

    graph_cmd("check", "decide whether the graph is a DTDP-graph").set_defaults(
        func=_cmd_check
    )
    graph_cmd("minimal", "decide minimality, with a deletion witness").set_defaults(
        func=_cmd_minimal
    )
    p = graph_cmd("pairs", "enumerate DT-pairs")
    p.add_argument("--limit", type=int, help="stop after this many pairs")
    p.set_defaults(func=_cmd_pairs)

    p = graph_cmd("s2", "build the 2-subdivision graph S2(H, P, theta)")
    p.add_argument("--partition", help="partition spec JSON file")
    p.add_argument("--theta", help="theta spec JSON file")
    p.set_defaults(func=_cmd_s2)

    p = graph_cmd("good", "good-subgraph certificates and existence", dot=False)
    group = p.add_mutually_exclusive_group()
    group.add_argument("--edge", type=int, help="certificate for this edge id")
    group.add_argument("--loop", type=int, help="certificate for this loop id")
    group.add_argument("--exists", action="store_true", help="existence only")
    p.set_defaults(func=_cmd_good)

    graph_cmd("recognize", "three-way minimal-DTDP classification").set_defaults(
        func=_cmd_recognize
    )

    p = graph_cmd("witness", "non-minimality witness for S2(H, P, theta)")
    p.add_argument("--partition", help="partition spec JSON file")
    p.add_argument("--theta", help="theta spec JSON file")
    p.set_defaults(func=_cmd_witness)

    p = sub.add_parser("verify", help="run the theorem-verification sweeps")
    p.add_argument("--max-n", type=int, default=6, dest="max_n")
    p.add_argument("--tags", help="comma-separated sweep tags")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--jsonl", help="also write the JSONL report here")
    p.add_argument("--figures", help="directory for matplotlib summary figures")
    p.set_defaults(func=_cmd_verify)

    graph_cmd("domgg", "domatic-total-domatic number", dot=False).set_defaults(
        func=_cmd_domgg
    )

    p = graph_cmd("convert", "re-encode a graph", dot=False)
    p.add_argument("--to", choices=("mgf", "graph6", "dot"), default="mgf")
    p.set_defaults(func=_cmd_convert)
    return parser


def dispatch(argv: list[str]) -> int:
    """Run one subcommand; 0 yes/done, 1 no-verdict, 2 usage or input error."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as ex:
        return EXIT_ERROR if ex.code else EXIT_OK
    try:
        return args.func(args)
    except SolverTimeout:
        print("timeout", file=sys.stderr)
        return EXIT_ERROR
    except (ValueError, OSError, json.JSONDecodeError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return EXIT_ERROR


def main(argv: list[str] | None = None) -> int:
    return dispatch(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    raise SystemExit(main())
