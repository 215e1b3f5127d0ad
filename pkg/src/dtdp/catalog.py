"""Small-graph enumeration, theorem sweeps, and the domatic-total-domatic number."""

from __future__ import annotations

import dataclasses
import json
import random
import time
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Sequence

from .characterize import (
    VERDICT_NOT_MINIMAL,
    check_thm51_properties,
    classify_minimal,
    construct_nonminimal_witness,
    decompose_to_subdivision,
)
from .domination import enumerate_dt_pairs, find_dt_pair, is_valid_dt_pair
from .families import (
    FamilyFClass,
    RootedTree,
    corona,
    cycle,
    expected_status,
    family_f_class,
    path,
    sk_class,
    spider,
    complete,
)
from .goodsub import has_good_subgraph
from .minimality import brute_force_minimal_oracle, is_minimal_dtdp
from .multigraph import Multigraph, are_isomorphic
from .subdivision import random_partition_family, random_theta, s2

ENUMERATION_MAX_ORDER = 8
DOM_GG_MAX_ORDER = 12


@dataclasses.dataclass
class SweepReport:
    """Outcome of one theorem-verification sweep."""

    tag: str
    parameter_range: str
    checked: int
    discrepancies: list[dict]
    elapsed_ms: float

    @property
    def passed(self) -> bool:
        return not self.discrepancies

    def to_json(self) -> dict:
        return {
            "tag": self.tag,
            "range": self.parameter_range,
            "checked": self.checked,
            "discrepancies": self.discrepancies,
            "passed": self.passed,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }

    def to_json_line(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, separators=(",", ":"))


class _IsoRejector:
    """Accepts one representative per isomorphism class, bucketed by invariants."""

    def __init__(self) -> None:
        self._buckets: dict[tuple, list[Multigraph]] = {}

    @staticmethod
    def _key(g: Multigraph) -> tuple:
        profile = tuple(
            sorted(
                (
                    g.degree(v),
                    g.loop_count(v),
                    tuple(sorted((g.multiplicity(v, u), g.degree(u)) for u in g.neighbors(v) if u != v)),
                )
                for v in range(g.n)
            )
        )
        return (g.n, g.m, profile)

    def add(self, g: Multigraph) -> bool:
        bucket = self._buckets.setdefault(self._key(g), [])
        for seen in bucket:
            if are_isomorphic(seen, g) is not None:
                return False
        bucket.append(g)
        return True


@lru_cache(maxsize=None)
def enumerate_trees(n: int) -> tuple[Multigraph, ...]:
    """All trees on n vertices up to isomorphism, by leaf augmentation."""
    if n < 1:
        raise ValueError("tree order must be >= 1")
    if n == 1:
        return (Multigraph.from_edges(1, []),)
    out: list[Multigraph] = []
    rejector = _IsoRejector()
    for parent in enumerate_trees(n - 1):
        for v in range(parent.n):
            pairs = [(a, b) for _, a, b in parent.edge_list()] + [(v, parent.n)]
            candidate = Multigraph.from_edges(parent.n + 1, pairs)
            if rejector.add(candidate):
                out.append(candidate)
    return tuple(out)


@lru_cache(maxsize=None)
def _connected_graphs(n: int) -> tuple[Multigraph, ...]:
    if n == 1:
        return (Multigraph.from_edges(1, []),)
    out: list[Multigraph] = list(enumerate_trees(n))
    rejector = _IsoRejector()
    for g in out:
        rejector.add(g)
    level = list(out)
    max_edges = n * (n - 1) // 2
    for _ in range(n - 1, max_edges):
        nxt: list[Multigraph] = []
        for g in level:
            for u in range(n):
                for v in range(u + 1, n):
                    if g.multiplicity(u, v) == 0:
                        candidate = g.add_edge(u, v)
                        if rejector.add(candidate):
                            nxt.append(candidate)
        out.extend(nxt)
        level = nxt
    return tuple(out)


def enumerate_connected_graphs(n: int) -> Iterator[Multigraph]:
    """Connected simple loop-free graphs on n vertices, one per class.

    Trees seed the stream and each later level adds one edge to the
    previous one, rejecting isomorphic duplicates; the order is
    deterministic.
    """
    if not 1 <= n <= ENUMERATION_MAX_ORDER:
        raise ValueError(f"order must be within 1..{ENUMERATION_MAX_ORDER}")
    yield from _connected_graphs(n)


@lru_cache(maxsize=None)
def _connected_multigraphs_by_edges(m: int) -> tuple[Multigraph, ...]:
    if m == 0:
        return (Multigraph.from_edges(1, []),)
    rejector = _IsoRejector()
    out: list[Multigraph] = []
    for parent in _connected_multigraphs_by_edges(m - 1):
        candidates: list[Multigraph] = []
        for u in range(parent.n):
            for v in range(u, parent.n):
                candidates.append(parent.add_edge(u, v))
        for v in range(parent.n):
            pairs = [(a, b) for _, a, b in parent.edge_list()] + [(v, parent.n)]
            candidates.append(Multigraph.from_edges(parent.n + 1, pairs))
        for candidate in candidates:
            if rejector.add(candidate):
                out.append(candidate)
    return tuple(out)


def enumerate_connected_multigraphs(max_edges: int) -> Iterator[Multigraph]:
    """Connected multigraphs (loops and parallel edges) with 1..max_edges edges,
    one representative per isomorphism class, smallest edge counts first."""
    if max_edges < 1:
        raise ValueError("edge bound must be >= 1")
    for m in range(1, max_edges + 1):
        yield from _connected_multigraphs_by_edges(m)


# -- domatic-total-domatic number --------------------------------------------


def dom_gg_t(g: Multigraph) -> int:
    """Largest k with a k-part vertex partition, each part inducing a DTDP-graph.

    0 when no part count works, i.e. when G itself is not a DTDP-graph.
    Exhaustive assignment search with memoized DTDP checks on induced parts.
    """
    if g.n > DOM_GG_MAX_ORDER:
        raise ValueError(f"size guard exceeded: n={g.n} > {DOM_GG_MAX_ORDER}")
    memo: dict[frozenset[int], bool] = {}

    def part_ok(vertices: frozenset[int]) -> bool:
        if vertices not in memo:
            sub, _ = g.induced(vertices)
            memo[vertices] = find_dt_pair(sub) is not None
        return memo[vertices]

    def feasible(k: int) -> bool:
        blocks: list[set[int]] = [set() for _ in range(k)]

        def assign(v: int, used: int) -> bool:
            if v == g.n:
                return used == k and all(part_ok(frozenset(b)) for b in blocks)
            remaining = g.n - v
            deficit = sum(max(0, 3 - len(b)) for b in blocks[:used]) + 3 * (k - used)
            if deficit > remaining:
                return False
            top = min(used + 1, k)
            for i in range(top):
                blocks[i].add(v)
                if assign(v + 1, max(used, i + 1)):
                    return True
                blocks[i].remove(v)
            return False

        return assign(0, 0)

    for k in range(g.n // 3, 0, -1):
        if feasible(k):
            return k
    return 0


# -- verification sweeps ------------------------------------------------------


def _mgf(g: Multigraph) -> str:
    return g.to_mgf().replace("\n", ";")


def _sweep(tag: str, parameter_range: str, body: Callable[[list[dict]], int]) -> SweepReport:
    start = time.perf_counter()
    discrepancies: list[dict] = []
    checked = body(discrepancies)
    elapsed = (time.perf_counter() - start) * 1000.0
    return SweepReport(tag, parameter_range, checked, discrepancies, elapsed)


def _sweep_obs23(kind: str, builder, span: Iterable[int]) -> Callable:
    def body(discrepancies: list[dict]) -> int:
        checked = 0
        for n in span:
            g = builder(n)
            expected = expected_status(kind, n)
            got_dtdp = find_dt_pair(g) is not None
            got_min = is_minimal_dtdp(g)[0] if g.is_connected() else False
            got = (got_dtdp, got_min)
            if got != expected:
                discrepancies.append(
                    {"graph": _mgf(g), "expected": repr(expected), "got": repr(got)}
                )
            checked += 1
        return checked

    return body


def _sweep_corona(max_n: int) -> Callable:
    def body(discrepancies: list[dict]) -> int:
        checked = 0
        for n in range(1, min(max_n, 5) + 1):
            for h in enumerate_connected_graphs(n):
                if h.m == 0:
                    continue
                g = corona(h)
                is_star = h.m == h.n - 1 and sum(
                    1 for v in range(h.n) if h.degree(v) >= 2
                ) <= 1
                expected = (True, is_star)
                got = (find_dt_pair(g) is not None, is_minimal_dtdp(g)[0])
                if got != expected:
                    discrepancies.append(
                        {"graph": _mgf(g), "expected": repr(expected), "got": repr(got)}
                    )
                checked += 1
        g = corona(cycle(1))
        got = (find_dt_pair(g) is not None, is_minimal_dtdp(g)[0])
        if got != (True, True):
            discrepancies.append(
                {"graph": _mgf(g), "expected": "(True, True)", "got": repr(got)}
            )
        return checked + 1

    return body


def _rooted_trees(max_n: int) -> Iterator[RootedTree]:
    for n in range(1, max_n + 1):
        for tree in enumerate_trees(n):
            for root in range(tree.n):
                yield RootedTree(tree, root)


def _sweep_sk_trees(max_n: int) -> Callable:
    cap = min(max_n, 9)

    def body(discrepancies: list[dict]) -> int:
        checked = 0
        for rooted in _rooted_trees(cap):
            k = sk_class(rooted)
            if k is None or k > 3:
                continue
            g = rooted.tree
            if k <= 2:
                expected = "non-DTDP"
                got = "non-DTDP" if find_dt_pair(g) is None else "DTDP"
            else:
                expected = "minimal"
                got = "minimal" if is_minimal_dtdp(g)[0] else "not minimal"
            if got != expected:
                discrepancies.append(
                    {"graph": _mgf(g), "expected": expected, "got": got}
                )
            checked += 1
        return checked

    return body


def _leg_multisets(total_max: int) -> Iterator[tuple[int, ...]]:
    def rec(remaining: int, minimum: int, acc: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
        if acc:
            yield acc
        for leg in range(minimum, remaining + 1):
            yield from rec(remaining - leg, leg, acc + (leg,))

    yield from rec(total_max, 1, ())


def _sweep_family_f(max_n: int) -> Callable:
    cap = min(max_n, 13)

    def body(discrepancies: list[dict]) -> int:
        checked = 0
        for legs in _leg_multisets(cap - 1):
            if len(legs) < 2:
                continue
            g = spider(legs)
            rooted = RootedTree(g, 0)
            cls = family_f_class(rooted)
            if cls is FamilyFClass.NOT_MEMBER:
                continue
            dtdp = find_dt_pair(g) is not None
            if not dtdp:
                discrepancies.append(
                    {"graph": _mgf(g), "expected": "DTDP", "got": "non-DTDP"}
                )
            if cls is FamilyFClass.WOUNDED_SPIDER and not is_minimal_dtdp(g)[0]:
                discrepancies.append(
                    {"graph": _mgf(g), "expected": "minimal", "got": "not minimal"}
                )
            checked += 1
        return checked

    return body


def _sweep_remark49(
    builder, span: Iterable[int], minimal_orders: tuple[int, ...]
) -> Callable:
    def body(discrepancies: list[dict]) -> int:
        checked = 0
        for k in span:
            g, _ = s2(builder(k))
            expected = (True, k in minimal_orders)
            got = (find_dt_pair(g) is not None, is_minimal_dtdp(g)[0])
            if got != expected:
                discrepancies.append(
                    {"graph": _mgf(g), "expected": repr(expected), "got": repr(got)}
                )
            checked += 1
        return checked

    return body


def _sweep_thm47(max_edges: int = 6, samples: int = 120, seed: int = 2025) -> Callable:
    def body(discrepancies: list[dict]) -> int:
        rng = random.Random(seed)
        hosts = [
            h
            for h in enumerate_connected_multigraphs(max_edges)
            if has_good_subgraph(h)
        ]
        checked = 0
        while checked < samples:
            h = hosts[checked % len(hosts)]
            partition = random_partition_family(h, rng, allow_twin=False)
            theta = random_theta(h, partition, rng)
            witness = construct_nonminimal_witness(h, partition, theta)
            ok = (
                is_valid_dt_pair(witness.witness, witness.pair)
                and witness.witness.m < witness.subdivision.m
                and not is_minimal_dtdp(witness.subdivision)[0]
            )
            if not ok:
                discrepancies.append(
                    {
                        "graph": _mgf(h),
                        "expected": "proper spanning DTDP witness",
                        "got": "invalid witness",
                    }
                )
            checked += 1
        return checked

    return body


def _loop_free(g: Multigraph) -> bool:
    return all(g.loop_count(v) == 0 for v in range(g.n))


def _sweep_thm52(max_n: int) -> Callable:
    def body(discrepancies: list[dict]) -> int:
        checked = 0
        for n in range(3, max_n + 1):
            for g in enumerate_connected_graphs(n):
                verdict = classify_minimal(g).verdict != VERDICT_NOT_MINIMAL
                decided = is_minimal_dtdp(g)[0]
                oracle = (
                    brute_force_minimal_oracle(g) if g.m <= 16 else decided
                )
                if not verdict == decided == oracle:
                    discrepancies.append(
                        {
                            "graph": _mgf(g),
                            "expected": "agreement",
                            "got": f"classify={verdict} deletion={decided} oracle={oracle}",
                        }
                    )
                checked += 1
        return checked

    return body


def _sweep_thm51(max_n: int) -> Callable:
    def body(discrepancies: list[dict]) -> int:
        checked = 0
        for n in range(3, max_n + 1):
            for g in enumerate_connected_graphs(n):
                if not is_minimal_dtdp(g)[0]:
                    continue
                pairs = enumerate_dt_pairs(g)
                for pair in pairs:
                    if not check_thm51_properties(g, pair).all_hold:
                        discrepancies.append(
                            {
                                "graph": _mgf(g),
                                "expected": "properties hold",
                                "got": f"failed on pair {pair.to_json()}",
                            }
                        )
                dec = decompose_to_subdivision(g)
                if dec is None:
                    discrepancies.append(
                        {
                            "graph": _mgf(g),
                            "expected": "2-subdivision decomposition",
                            "got": "none",
                        }
                    )
                else:
                    max_deg = max(dec.h.degree(v) for v in range(dec.h.n))
                    cyclic = g.n in (3, 6, 9) and are_isomorphic(g, cycle(g.n))
                    if max_deg >= 3 and not cyclic and len(pairs) != 1:
                        discrepancies.append(
                            {
                                "graph": _mgf(g),
                                "expected": "unique DT-pair",
                                "got": f"{len(pairs)} pairs",
                            }
                        )
                checked += 1
        return checked

    return body


def _sweep_domgg(
    graph_cap: int,
    tree_cap: int,
    include_samples: bool,
    seed: int = 7,
    samples: int = 200,
) -> Callable:
    def body(discrepancies: list[dict]) -> int:
        checked = 0

        def check(g: Multigraph, bound: int) -> None:
            nonlocal checked
            value = dom_gg_t(g)
            if value > bound:
                discrepancies.append(
                    {"graph": _mgf(g), "expected": f"<= {bound}", "got": str(value)}
                )
            if (value >= 1) != (find_dt_pair(g) is not None):
                discrepancies.append(
                    {"graph": _mgf(g), "expected": "dom>=1 iff DTDP", "got": str(value)}
                )
            checked += 1

        for n in range(1, graph_cap + 1):
            for g in enumerate_connected_graphs(n):
                check(g, g.n // 3)
        if include_samples:
            rng = random.Random(seed)
            for _ in range(samples):
                n = 9
                pairs = {(u, v) for u in range(n) for v in range(u + 1, n)}
                keep = [p for p in sorted(pairs) if rng.random() < 0.35]
                g = Multigraph.from_edges(n, keep)
                check(g, n // 3)
        for n in range(1, tree_cap + 1):
            for tree in enumerate_trees(n):
                check(tree, tree.n // 4)
        for g, expected in ((cycle(5), 0), (complete(9), 3)):
            got = dom_gg_t(g)
            if got != expected:
                discrepancies.append(
                    {"graph": _mgf(g), "expected": str(expected), "got": str(got)}
                )
            checked += 1
        return checked

    return body


def available_tags(max_n: int) -> dict[str, tuple[str, Callable]]:
    return {
        "obs23-paths": (f"paths n<=16", _sweep_obs23("path", path, range(1, 17))),
        "obs23-cycles": (f"cycles n<=12", _sweep_obs23("cycle", cycle, range(1, 13))),
        "obs23-complete": (
            f"complete n<=7",
            _sweep_obs23("complete", complete, range(1, 8)),
        ),
        "prop25-corona": ("connected H, n<=5, plus C1", _sweep_corona(5)),
        "prop26-sk-trees": ("rooted trees n<=9", _sweep_sk_trees(9)),
        "cor36-family-f": ("root-anchored spiders n<=13", _sweep_family_f(13)),
        "remark49-cycles": (
            "S2(C_m) m<=6",
            _sweep_remark49(cycle, range(1, 7), (1, 2, 3)),
        ),
        "remark49-paths": (
            "S2(P_n) n<=7",
            _sweep_remark49(path, range(2, 8), (2, 3, 4, 5)),
        ),
        "thm47": ("hosts m<=6, sampled partitions", _sweep_thm47()),
        "thm52": (f"connected simple 3<=n<={max_n}", _sweep_thm52(max_n)),
        "thm51": (f"minimal graphs 3<=n<={max_n}", _sweep_thm51(max_n)),
        "domgg-bounds": (
            f"graphs n<={min(max_n + 1, 8)} exhaustive"
            + (", n=9 sampled" if max_n >= 7 else "")
            + f", trees n<={min(max_n + 4, 11)}",
            _sweep_domgg(
                graph_cap=min(max_n + 1, 8),
                tree_cap=min(max_n + 4, 11),
                include_samples=max_n >= 7,
            ),
        ),
    }


def run_verification_suite(
    max_n: int = 6,
    tags: Sequence[str] | None = None,
    jobs: int = 1,
) -> list[SweepReport]:
    """Run the theorem sweeps and return one report per tag.

    `jobs` > 1 fans the per-tag bodies out to worker processes.
    """
    if max_n > ENUMERATION_MAX_ORDER:
        raise ValueError(f"max_n must be <= {ENUMERATION_MAX_ORDER}")
    registry = available_tags(max_n)
    selected = list(registry) if tags is None else list(tags)
    unknown = [t for t in selected if t not in registry]
    if unknown:
        raise ValueError(f"unknown sweep tags: {unknown}")
    if jobs > 1 and len(selected) > 1:
        import concurrent.futures

        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
            futures = {
                tag: pool.submit(_run_one_tag, max_n, tag) for tag in selected
            }
            return [futures[tag].result() for tag in selected]
    return [_run_one_tag(max_n, tag) for tag in selected]


def _run_one_tag(max_n: int, tag: str) -> SweepReport:
    parameter_range, body = available_tags(max_n)[tag]
    return _sweep(tag, parameter_range, body)
