"""Structure of minimal DTDP-graphs: extraction, recognition, witnesses."""

from __future__ import annotations

import dataclasses
from typing import Iterator, Mapping

from .domination import DtPair, enumerate_dt_pairs, find_dt_pair, is_valid_dt_pair
from .families import cycle
from .goodsub import has_good_subgraph
from .minimality import is_minimal_dtdp
from .multigraph import IsoCertificate, Multigraph, are_isomorphic
from .subdivision import (
    BlockKind,
    HalfEdge,
    PartitionFamily,
    SubdivisionLabels,
    classify_partition,
    partition_to_spec,
    s2_full,
    theta_to_spec,
)

VERDICT_CYCLE = "cycle369"
VERDICT_SUBDIVISION = "subdivision"
VERDICT_NOT_MINIMAL = "not_minimal"


@dataclasses.dataclass
class PairStructureReport:
    """Independent checks of the three structural DT-pair properties."""

    d_maximal_independent: bool
    t_components_stars_or_loops: bool
    t_neighborhood_condition: bool

    @property
    def all_hold(self) -> bool:
        return (
            self.d_maximal_independent
            and self.t_components_stars_or_loops
            and self.t_neighborhood_condition
        )


def check_thm51_properties(g: Multigraph, pair: DtPair) -> PairStructureReport:
    """Evaluate the minimal-graph DT-pair properties on any valid pair."""
    if not is_valid_dt_pair(g, pair):
        raise ValueError("not a valid DT-pair of the graph")
    d, t = pair.d, pair.t

    independent = all(
        not ({u, v} <= d) for _, u, v in g.edge_list()
    ) and all(g.loop_count(v) == 0 for v in d)
    maximal = independent and all(
        (g.neighbors(y) & d) or y in g.neighbors(y) for y in range(g.n) if y not in d
    )

    sub, old_ids = g.induced(t)
    stars_ok = True
    for comp in sub.connected_components():
        comp_graph, _ = sub.induced(comp)
        if comp_graph.n == 1:
            if comp_graph.m != 1 or comp_graph.loop_count(0) != 1:
                stars_ok = False
        else:
            is_star = (
                comp_graph.m == comp_graph.n - 1
                and all(not comp_graph.is_loop(e) for e in comp_graph.edge_ids())
                and sum(1 for v in range(comp_graph.n) if comp_graph.degree(v) >= 2) <= 1
            )
            if not is_star:
                stars_ok = False

    pos = {v: i for i, v in enumerate(old_ids)}
    leaves = g.leaves()
    neigh_ok = True
    for x in sorted(t):
        out = g.neighbors(x) - t
        if not (len(out) == 1 or (out and out <= leaves)):
            neigh_ok = False
            break
        inner = sub.degree(pos[x])
        comp = next(c for c in sub.connected_components() if pos[x] in c)
        if inner == 1 and len(comp) >= 3:
            # leaf of a star of order >= 3: the outside neighbors must be leaves
            if not (out and out <= leaves):
                neigh_ok = False
                break
    return PairStructureReport(maximal, stars_ok, neigh_ok)


@dataclasses.dataclass
class Decomposition:
    """A reconstruction G ≅ S2(H, P, theta) with its certifying isomorphism."""

    h: Multigraph
    partition: PartitionFamily
    theta: dict[int, int]
    reconstruction: Multigraph
    iso: IsoCertificate  # reconstruction vertex -> input vertex
    labels: SubdivisionLabels  # pulled back to the input graph's vertices


@dataclasses.dataclass
class MinimalClassification:
    verdict: str
    decomposition: Decomposition | None = None
    reason: str | None = None

    def to_json(self) -> dict:
        dec = self.decomposition
        return {
            "verdict": self.verdict,
            "H": dec.h.to_mgf() if dec else None,
            "P": partition_to_spec(dec.partition) if dec else None,
            "theta": theta_to_spec(dec.theta) if dec else None,
            "reason": self.reason,
        }


def _reconstruct_from_t(g: Multigraph, t: frozenset[int]):
    """Rebuild (H, P, theta) from the normalized pair (V \\ T, T), or None.

    Leaves sharing a support collapse into one H-vertex with theta equal to
    the group size; H keeps one edge per edge of G[T], joining the merged
    images of the outside neighborhoods.
    """
    d = frozenset(range(g.n)) - t
    for _, u, v in g.edge_list():
        if u in d and v in d:
            return None

    leaves = g.leaves()
    image: dict[int, int] = {}
    group_size: dict[int, int] = {}
    next_h = 0
    group_of_support: dict[int, int] = {}
    for x in sorted(d):
        if x in leaves:
            support = next(iter(g.neighbors(x)))
            if support in group_of_support:
                hv = group_of_support[support]
                image[x] = hv
                group_size[hv] += 1
                continue
            group_of_support[support] = next_h
        image[x] = next_h
        group_size[next_h] = 1
        next_h += 1

    anchors: dict[int, int] = {}
    for x in sorted(t):
        seen = {image[y] for y in g.neighbors(x) & d}
        if len(seen) != 1:
            return None
        anchors[x] = next(iter(seen))

    h_edges: list[tuple[int, int]] = []
    slot_info: list[tuple[int, dict[int, int]]] = []  # (h-edge id, endpoint slots)
    gt_edges = [
        (eid, u, v)
        for eid, u, v in g.edge_list()
        if u in t and v in t
    ]
    blocks_raw: dict[int, dict[int, list[HalfEdge]]] = {}
    for hid, (eid, u, v) in enumerate(gt_edges):
        if u == v:
            hv = anchors[u]
            h_edges.append((hv, hv))
            blocks_raw.setdefault(hv, {}).setdefault(u, []).extend(
                (HalfEdge(hid, 0, hv), HalfEdge(hid, 1, hv))
            )
        else:
            a, b = anchors[u], anchors[v]
            if a == b:
                h_edges.append((a, a))
                lo, hi = (u, v) if u < v else (v, u)
                blocks_raw.setdefault(a, {}).setdefault(lo, []).append(HalfEdge(hid, 0, a))
                blocks_raw.setdefault(a, {}).setdefault(hi, []).append(HalfEdge(hid, 1, a))
            else:
                lo_anchor = min(a, b)
                h_edges.append((a, b))
                slot_u = 0 if anchors[u] == lo_anchor else 1
                blocks_raw.setdefault(a, {}).setdefault(u, []).append(
                    HalfEdge(hid, slot_u, a)
                )
                blocks_raw.setdefault(b, {}).setdefault(v, []).append(
                    HalfEdge(hid, 1 - slot_u, b)
                )

    h = Multigraph.from_edges(next_h, h_edges)
    raw = {
        hv: [blocks_raw.get(hv, {}).get(x, []) for x in sorted(blocks_raw.get(hv, {}))]
        for hv in range(next_h)
    }
    try:
        partition = PartitionFamily.validate(h, raw)
    except ValueError:
        return None
    theta = {
        hv: size for hv, size in group_size.items() if len(partition.at(hv)) == 1
    }
    return h, partition, theta


def _candidates(g: Multigraph) -> Iterator[Decomposition]:
    seen: set[frozenset[int]] = set()
    for pair in enumerate_dt_pairs(g):
        if pair.t in seen:
            continue
        seen.add(pair.t)
        built = _reconstruct_from_t(g, pair.t)
        if built is None:
            continue
        h, partition, theta = built
        try:
            recon, labels = s2_full(h, partition, theta)
        except ValueError:
            continue
        iso = are_isomorphic(recon, g)
        if iso is None:
            continue
        pulled = labels.remap_vertices({v: iso.apply(v) for v in range(recon.n)})
        yield Decomposition(h, partition, theta, recon, iso, pulled)


def decompose_to_subdivision(g: Multigraph) -> Decomposition | None:
    """First DT-pair-derived (H, P, theta) whose reconstruction matches G."""
    if not g.is_connected():
        raise ValueError("decomposition is defined for connected graphs")
    return next(_candidates(g), None)


def _pendant_adjacency_ok(h: Multigraph) -> bool:
    """Every non-pendant edge and every loop touches a pendant edge."""
    leaves = h.leaves()
    supports = h.supports()
    for e, u, v in h.edge_list():
        pendant = u != v and (u in leaves or v in leaves)
        if pendant:
            continue
        if not ({u, v} & supports):
            return False
    return True


def classify_minimal(g: Multigraph, cross_check: bool = False) -> MinimalClassification:
    """Three-way recognition of connected loop-free minimal DTDP-graphs.

    Returns the cycle verdict for C3/C6/C9, otherwise hunts for a
    2-subdivision decomposition whose base graph has every non-pendant edge
    next to a pendant one and whose partition contracts only far parts.
    """
    if not g.is_connected():
        raise ValueError("classification is defined for connected graphs")
    if g.n < 3:
        raise ValueError("classification requires order at least 3")
    if any(g.loop_count(v) for v in range(g.n)):
        raise ValueError("classification covers loop-free graphs only")

    result: MinimalClassification | None = None
    if g.n in (3, 6, 9) and are_isomorphic(g, cycle(g.n)) is not None:
        result = MinimalClassification(VERDICT_CYCLE)
    else:
        reason = None
        found_pair = bool(enumerate_dt_pairs(g, limit=1))
        candidates = 0
        for dec in _candidates(g):
            candidates += 1
            if dec.h.n < 2:
                continue
            if not _pendant_adjacency_ok(dec.h):
                reason = reason or (
                    "base graph has an edge or loop away from all pendant edges"
                    " (a good subgraph exists)"
                )
                continue
            kinds = classify_partition(dec.h, dec.partition).kinds()
            if kinds - {BlockKind.SINGLETON, BlockKind.FAR_PARTS}:
                reason = reason or "partition contracts more than far parts"
                continue
            result = MinimalClassification(VERDICT_SUBDIVISION, dec)
            break
        if result is None:
            if not found_pair:
                reason = "not a DTDP-graph"
            elif candidates == 0:
                reason = reason or "no 2-subdivision decomposition"
            result = MinimalClassification(VERDICT_NOT_MINIMAL, reason=reason)

    if cross_check:
        expect = is_minimal_dtdp(g)[0]
        got = result.verdict != VERDICT_NOT_MINIMAL
        if expect != got:
            raise AssertionError(
                f"classification disagrees with the deletion decider on {g!r}"
            )
    return result


@dataclasses.dataclass
class WitnessResult:
    """A proper spanning DTDP subgraph certifying non-minimality."""

    subdivision: Multigraph
    labels: SubdivisionLabels
    witness: Multigraph
    deleted_edges: tuple[int, ...]
    pair: DtPair


def construct_nonminimal_witness(
    h: Multigraph,
    partition: PartitionFamily | None = None,
    theta: Mapping[int, int] | None = None,
) -> WitnessResult:
    """Build a proper spanning DTDP subgraph of S2(H, P, theta).

    Requires H to have a good subgraph generated by an edge or loop and P
    to contract no twin parts.  When P merges something other than far
    parts the single-edge contraction witness applies; otherwise the
    generator's subdivided middle edge is removed together with the head
    attachment of the last arc of every certificate walk.  The DT-pair is
    assembled per component by the solver.
    """
    if not h.is_connected():
        raise ValueError("the base graph must be connected")
    if partition is None:
        partition = PartitionFamily.identity(h)
    classification = classify_partition(h, partition)
    if classification.loop_creating:
        raise ValueError("partition contracts twin parts of a loop")
    if not has_good_subgraph(h):
        raise ValueError("the base graph has no good subgraph")

    sub, labels = s2_full(h, partition, theta)
    mixed = [
        (v, block)
        for v, block, kind in classification.entries
        if kind is BlockKind.MIXED_ILLEGAL
    ]
    if mixed:
        deleted = [_contraction_witness_edge(h, partition, labels, *mixed[0])]
    else:
        deleted = _generator_witness_edges(h, partition, labels)

    witness = sub
    for e in sorted(set(deleted)):
        witness = witness.delete_edge(e)
    if len(set(deleted)) != len(deleted):
        raise RuntimeError("internal: duplicate witness deletions")
    pair = find_dt_pair(witness)
    if pair is None:
        raise RuntimeError("internal: witness subgraph is not a DTDP-graph")
    return WitnessResult(sub, labels, witness, tuple(sorted(set(deleted))), pair)


def _contraction_witness_edge(
    h: Multigraph,
    partition: PartitionFamily,
    labels: SubdivisionLabels,
    v: int,
    block,
) -> int:
    """Single deletion certifying non-minimality for an illegal contraction."""
    non_pendant = sorted(
        {he.edge for he in block if not _is_pendant(h, he.edge)}
    )
    e = non_pendant[0]
    u, w = h.endpoints(e)
    if u == w:
        slots_here = {he.slot for he in block if he.edge == e}
        if slots_here == {0, 1}:
            raise RuntimeError("internal: twin contraction slipped through")
        other_slot = 1 - next(iter(slots_here))
        other_block = partition.block_of(HalfEdge(e, other_slot, v))
        if len(other_block) == 1:
            anchors = labels.anchor_edges[labels.new_vertex(v, other_block)]
            if len(anchors) != 1:
                raise RuntimeError("internal: contracted loop slot on a replaced leaf")
            return anchors[0]
        return labels.mid_edge[e]
    other = w if v == u else u
    other_block = partition.block_of(
        HalfEdge(e, 0 if other == min(u, w) else 1, other)
    )
    if len(other_block) == 1:
        anchors = labels.anchor_edges[labels.new_vertex(other, other_block)]
        if len(anchors) != 1:
            raise RuntimeError("internal: non-pendant edge anchored on a replaced leaf")
        return anchors[0]
    return labels.mid_edge[e]


def _is_pendant(h: Multigraph, e: int) -> bool:
    u, v = h.endpoints(e)
    leaves = h.leaves()
    return u != v and (u in leaves or v in leaves)


def _generator_witness_edges(
    h: Multigraph,
    partition: PartitionFamily,
    labels: SubdivisionLabels,
) -> list[int]:
    from .goodsub import edge_good_certificate, loop_good_certificate

    supports = h.supports()
    cert = None
    for e in h.edge_ids():
        if h.is_loop(e) and h.endpoints(e)[0] not in supports:
            cert = loop_good_certificate(h, e)
            if cert is not None:
                break
    if cert is None:
        for e in h.edge_ids():
            if not h.is_loop(e) and not (set(h.endpoints(e)) & supports):
                cert = edge_good_certificate(h, e)
                if cert is not None:
                    break
    if cert is None:
        raise RuntimeError("internal: good-subgraph predicate held but no generator")

    generator = next(iter(cert.q))
    deleted = [labels.mid_edge[generator]]
    arcs = cert.view.arcs
    for _, walks in sorted(cert.families.items()):
        for walk in walks:
            last = walk[-1]
            tail, head = arcs[last]
            if h.is_loop(last):
                half = HalfEdge(last, 1, head)
            else:
                a, b = h.endpoints(last)
                half = HalfEdge(last, 0 if head == min(a, b) else 1, head)
            block = partition.block_of(half)
            anchors = labels.anchor_edges[labels.new_vertex(head, block)]
            if len(anchors) != 1:
                raise RuntimeError("internal: walk head landed on a replaced leaf")
            deleted.append(anchors[0])
    return deleted
