"""2-subdivision graphs: construction, partition families, contractions."""

from __future__ import annotations

import dataclasses
import enum
import random
from typing import Iterable, Mapping

from .domination import DtPair
from .multigraph import Multigraph


@dataclasses.dataclass(frozen=True, order=True)
class HalfEdge:
    """One of the two inserted-vertex positions of an edge or loop.

    A non-loop edge {u, v} with u <= v has slot 0 anchored at u and slot 1
    anchored at v; a loop has both slots anchored at its vertex.
    """

    edge: int
    slot: int
    anchor: int


def halfedges_at(g: Multigraph, v: int) -> tuple[HalfEdge, ...]:
    """Half-edges anchored at v, sorted by (edge, slot); in bijection with
    the inserted neighbors of v in the plain 2-subdivision."""
    out = []
    for e in g.edges_at(v):
        u, w = g.endpoints(e)
        if u == w:
            out.append(HalfEdge(e, 0, v))
            out.append(HalfEdge(e, 1, v))
        else:
            out.append(HalfEdge(e, 0 if v == u else 1, v))
    return tuple(sorted(out))


def _halfedge_of(g: Multigraph, e: int, at: int) -> HalfEdge:
    u, w = g.endpoints(e)
    if u == w:
        raise ValueError("loop half-edges need an explicit slot")
    return HalfEdge(e, 0 if at == u else 1, at)


def _block_key(block: frozenset[HalfEdge]) -> tuple:
    return tuple(sorted((h.edge, h.slot) for h in block))


Block = frozenset  # frozenset[HalfEdge]


@dataclasses.dataclass(frozen=True)
class PartitionFamily:
    """Per-vertex partitions of the half-edges anchored there, canonically ordered."""

    blocks: tuple[tuple[frozenset[HalfEdge], ...], ...]

    def at(self, v: int) -> tuple[frozenset[HalfEdge], ...]:
        return self.blocks[v]

    @classmethod
    def identity(cls, g: Multigraph) -> PartitionFamily:
        return cls.validate(
            g, {v: [[h] for h in halfedges_at(g, v)] for v in range(g.n)}
        )

    @classmethod
    def validate(
        cls,
        g: Multigraph,
        raw: Mapping[int, Iterable[Iterable[HalfEdge]]],
    ) -> PartitionFamily:
        """Check blocks are nonempty, disjoint and cover each anchored set."""
        per_vertex: list[tuple[frozenset[HalfEdge], ...]] = []
        for v in range(g.n):
            universe = set(halfedges_at(g, v))
            blocks = [frozenset(b) for b in raw.get(v, [])]
            seen: set[HalfEdge] = set()
            for block in blocks:
                if not block:
                    raise ValueError(f"empty partition block at vertex {v}")
                for h in block:
                    if h.anchor != v or h not in universe:
                        raise ValueError(
                            f"half-edge {h} does not belong to vertex {v}"
                        )
                    if h in seen:
                        raise ValueError(f"half-edge {h} appears in two blocks")
                    seen.add(h)
            if seen != universe:
                raise ValueError(f"partition at vertex {v} does not cover its half-edges")
            per_vertex.append(tuple(sorted(blocks, key=_block_key)))
        return cls(tuple(per_vertex))

    def block_of(self, h: HalfEdge) -> frozenset[HalfEdge]:
        for block in self.blocks[h.anchor]:
            if h in block:
                return block
        raise ValueError(f"half-edge {h} not covered")


class BlockKind(enum.Enum):
    SINGLETON = "singleton"
    FAR_PARTS = "far_parts"
    TWIN_PARTS = "twin_parts"
    MIXED_ILLEGAL = "mixed_illegal"


@dataclasses.dataclass(frozen=True)
class PartitionClassification:
    entries: tuple[tuple[int, frozenset[HalfEdge], BlockKind], ...]
    minimality_safe: bool
    loop_creating: bool

    def kinds(self) -> set[BlockKind]:
        return {kind for _, _, kind in self.entries}


def classify_partition(g: Multigraph, p: PartitionFamily) -> PartitionClassification:
    """Label every non-singleton block as far-part, twin-part or illegal.

    A far-part block merges support-side half-edges of pendant edges at a
    common support; a twin-part block merges exactly the two slots of one
    loop; anything else mixes different edges with a non-pendant one and
    forces non-minimality of the contracted subdivision.
    """
    leaves = g.leaves()
    entries = []
    safe = True
    loopy = False
    for v in range(g.n):
        for block in p.at(v):
            if len(block) == 1:
                kind = BlockKind.SINGLETON
            else:
                edges = {h.edge for h in block}
                if len(edges) == 1:
                    kind = BlockKind.TWIN_PARTS  # both slots of one loop
                elif all(
                    not g.is_loop(h.edge)
                    and next(iter(set(g.endpoints(h.edge)) - {v}), v) in leaves
                    for h in block
                ):
                    kind = BlockKind.FAR_PARTS
                else:
                    kind = BlockKind.MIXED_ILLEGAL
            if kind is BlockKind.TWIN_PARTS:
                loopy = True
            if kind in (BlockKind.TWIN_PARTS, BlockKind.MIXED_ILLEGAL):
                safe = False
            entries.append((v, block, kind))
    return PartitionClassification(tuple(entries), safe, loopy)


@dataclasses.dataclass
class SubdivisionLabels:
    """Vertex and edge origins of a constructed 2-subdivision graph.

    vo holds old vertices plus theta leaf copies, vn the contracted
    half-edge vertices.  Edge provenance (mid_edge, anchor_edges) refers to
    the constructed graph's edge ids.
    """

    vo: frozenset[int]
    vn: frozenset[int]
    old_origin: dict[int, int]  # vo vertex -> source H-vertex
    copy_index: dict[int, int]  # vo vertex -> 1-based copy number (theta copies)
    new_origin: dict[int, tuple[int, frozenset[HalfEdge]]]  # vn vertex -> (v, block)
    mid_edge: dict[int, int]  # H-edge id -> edge joining its two inserted vertices
    anchor_edges: dict[int, tuple[int, ...]]  # vn vertex -> its edges into vo

    def old_ids(self) -> dict[int, tuple[int, ...]]:
        """H-vertex -> its representatives (several for theta-copied leaves)."""
        out: dict[int, list[int]] = {}
        for vid in sorted(self.old_origin):
            out.setdefault(self.old_origin[vid], []).append(vid)
        return {v: tuple(ids) for v, ids in out.items()}

    def new_vertex(self, v: int, block: frozenset[HalfEdge]) -> int:
        for vid, (w, b) in self.new_origin.items():
            if w == v and b == block:
                return vid
        raise ValueError(f"no contracted vertex for ({v}, block of {len(block)})")

    def remap_vertices(self, image: Mapping[int, int]) -> SubdivisionLabels:
        """Pull the vertex labelling back through an isomorphism image map.

        Edge provenance is not remapped; it stays relative to the graph the
        labels were built for.
        """
        return SubdivisionLabels(
            vo=frozenset(image[v] for v in self.vo),
            vn=frozenset(image[v] for v in self.vn),
            old_origin={image[v]: h for v, h in self.old_origin.items()},
            copy_index={image[v]: i for v, i in self.copy_index.items()},
            new_origin={image[v]: o for v, o in self.new_origin.items()},
            mid_edge=dict(self.mid_edge),
            anchor_edges=dict(self.anchor_edges),
        )


def canonical_dt_pair(labels: SubdivisionLabels) -> DtPair:
    """The (V^o, V^n) pair, a DT-pair in every constructed 2-subdivision graph."""
    return DtPair(labels.vo, labels.vn)


def intermediate_leaves(g: Multigraph, p: PartitionFamily) -> frozenset[int]:
    """Leaves of the contracted subdivision: old vertices with one block."""
    return frozenset(v for v in range(g.n) if len(p.at(v)) == 1)


def _validate_theta(
    g: Multigraph, p: PartitionFamily, theta: Mapping[int, int] | None
) -> dict[int, int]:
    leaves = intermediate_leaves(g, p)
    full = {v: 1 for v in leaves}
    if theta:
        for key, value in theta.items():
            if key not in leaves:
                raise ValueError(f"theta key {key} is not a leaf of the contracted graph")
            if not isinstance(value, int) or value < 1:
                raise ValueError(f"theta value for {key} must be a positive integer")
            full[key] = value
    return full


def s2_full(
    h: Multigraph,
    p: PartitionFamily | None = None,
    theta: Mapping[int, int] | None = None,
) -> tuple[Multigraph, SubdivisionLabels]:
    """Build the 2-subdivision graph of H contracted by P and leaf-copied by theta.

    Vertices 0..n-1 of the result are the old H-vertices (or their theta
    copies); contracted half-edge vertices follow, one per partition block,
    in vertex-then-block order.  Edge multiplicities follow the contraction
    counting rule: each old vertex meets each of its blocks through exactly
    one edge, and each H-edge contributes one edge (or loop) between the
    blocks holding its two half-edges.
    """
    if any(h.degree(v) == 0 for v in range(h.n)):
        raise ValueError("2-subdivision requires a graph without isolated vertices")
    if p is None:
        p = PartitionFamily.identity(h)
    theta_full = _validate_theta(h, p, theta)

    block_vertex: dict[tuple[int, frozenset[HalfEdge]], int] = {}
    nxt = h.n
    for v in range(h.n):
        for block in p.at(v):
            block_vertex[(v, block)] = nxt
            nxt += 1

    # (u, v, provenance) rows; anchors first, then the subdivided H-edges
    rows: list[tuple[int, int, tuple]] = []
    for v in range(h.n):
        for block in p.at(v):
            rows.append((v, block_vertex[(v, block)], ("anchor", v, block)))
    for e in h.edge_ids():
        u, w = h.endpoints(e)
        if u == w:
            a = block_vertex[(u, p.block_of(HalfEdge(e, 0, u)))]
            b = block_vertex[(u, p.block_of(HalfEdge(e, 1, u)))]
        else:
            a = block_vertex[(u, p.block_of(HalfEdge(e, 0, u)))]
            b = block_vertex[(w, p.block_of(HalfEdge(e, 1, w)))]
        rows.append((a, b, ("mid", e)))

    replaced = {v: k for v, k in theta_full.items() if k > 1}
    if replaced:
        remap: dict[int, list[int]] = {}
        pos = 0
        for v in range(h.n):
            count = theta_full.get(v, 1) if v in replaced else 1
            remap[v] = list(range(pos, pos + count))
            pos += count
        for vid in range(h.n, nxt):
            remap[vid] = [pos]
            pos += 1
        expanded: list[tuple[int, int, tuple]] = []
        for u, v, tag in rows:
            if tag[0] == "anchor" and tag[1] in replaced:
                hv = tag[1]
                for i, copy in enumerate(remap[hv], start=1):
                    expanded.append((copy, remap[v][0], ("anchor_copy", hv, tag[2], i)))
            else:
                expanded.append((remap[u][0], remap[v][0], tag))
        rows = expanded
        total = pos
    else:
        remap = {vid: [vid] for vid in range(nxt)}
        total = nxt

    graph = Multigraph.from_edges(total, [(u, v) for u, v, _ in rows])

    old_origin: dict[int, int] = {}
    copy_index: dict[int, int] = {}
    for v in range(h.n):
        for i, vid in enumerate(remap[v], start=1):
            old_origin[vid] = v
            if v in replaced:
                copy_index[vid] = i
    new_origin = {
        remap[vid][0]: key for key, vid in block_vertex.items()
    }
    mid_edge: dict[int, int] = {}
    anchor_edges: dict[int, list[int]] = {}
    for eid, (u, v, tag) in enumerate(rows):
        if tag[0] == "mid":
            mid_edge[tag[1]] = eid
        else:
            vn_id = remap[block_vertex[(tag[1], tag[2])]][0]
            anchor_edges.setdefault(vn_id, []).append(eid)

    labels = SubdivisionLabels(
        vo=frozenset(old_origin),
        vn=frozenset(new_origin),
        old_origin=old_origin,
        copy_index=copy_index,
        new_origin=new_origin,
        mid_edge=mid_edge,
        anchor_edges={v: tuple(ids) for v, ids in anchor_edges.items()},
    )
    return graph, labels


def s2(h: Multigraph) -> tuple[Multigraph, SubdivisionLabels]:
    """Plain 2-subdivision: two new vertices inserted into every edge and loop."""
    return s2_full(h, PartitionFamily.identity(h), None)


# -- JSON specs --------------------------------------------------------------


def partition_from_spec(g: Multigraph, obj: Mapping) -> PartitionFamily:
    """Parse the JSON partition spec; vertices not listed keep singletons.

    Half-edges are {"edge": id, "slot": 0|1}; the slot only matters for
    loops, non-loop half-edges are resolved from the keyed vertex.
    """
    raw: dict[int, list[list[HalfEdge]]] = {
        v: [[h] for h in halfedges_at(g, v)] for v in range(g.n)
    }
    for key, block_lists in obj.items():
        v = int(key)
        g._check_vertex(v)
        blocks = []
        for block in block_lists:
            members = []
            for item in block:
                e = int(item["edge"])
                if not g.has_edge_id(e):
                    raise ValueError(f"partition spec names unknown edge {e}")
                if g.is_loop(e):
                    slot = int(item.get("slot", 0))
                    if slot not in (0, 1):
                        raise ValueError("loop half-edge slot must be 0 or 1")
                    members.append(HalfEdge(e, slot, v))
                else:
                    members.append(_halfedge_of(g, e, v))
            blocks.append(members)
        raw[v] = blocks
    return PartitionFamily.validate(g, raw)


def partition_to_spec(p: PartitionFamily) -> dict:
    return {
        str(v): [
            [{"edge": h.edge, "slot": h.slot} for h in sorted(block)]
            for block in blocks
        ]
        for v, blocks in enumerate(p.blocks)
    }


def theta_from_spec(obj: Mapping) -> dict[int, int]:
    return {int(k): int(v) for k, v in obj.items()}


def theta_to_spec(theta: Mapping[int, int]) -> dict:
    return {str(k): int(v) for k, v in sorted(theta.items())}


# -- random sampling (sweeps and property tests) -----------------------------


def random_partition_family(
    g: Multigraph, rng: random.Random, allow_twin: bool = False
) -> PartitionFamily:
    """Random valid partition family; twin-part blocks are split unless allowed."""
    raw: dict[int, list[list[HalfEdge]]] = {}
    for v in range(g.n):
        blocks: list[list[HalfEdge]] = []
        for h in halfedges_at(g, v):
            if blocks and rng.random() < 0.45:
                rng.choice(blocks).append(h)
            else:
                blocks.append([h])
        if not allow_twin:
            fixed: list[list[HalfEdge]] = []
            for block in blocks:
                by_edge: dict[int, list[HalfEdge]] = {}
                for h in block:
                    by_edge.setdefault(h.edge, []).append(h)
                twins = [hs[1] for hs in by_edge.values() if len(hs) == 2]
                if twins:
                    fixed.append([h for h in block if h not in twins])
                    fixed.extend([[h] for h in twins])
                else:
                    fixed.append(block)
            blocks = fixed
        raw[v] = blocks
    return PartitionFamily.validate(g, raw)


def random_far_partition_family(g: Multigraph, rng: random.Random) -> PartitionFamily:
    """Random partition merging only far parts of pendant edges at supports."""
    leaves = g.leaves()
    raw: dict[int, list[list[HalfEdge]]] = {}
    for v in range(g.n):
        far = []
        rest = []
        for h in halfedges_at(g, v):
            other = set(g.endpoints(h.edge)) - {v}
            if not g.is_loop(h.edge) and other and next(iter(other)) in leaves:
                far.append(h)
            else:
                rest.append(h)
        blocks = [[h] for h in rest]
        merged: list[list[HalfEdge]] = []
        for h in far:
            if merged and rng.random() < 0.6:
                rng.choice(merged).append(h)
            else:
                merged.append([h])
        raw[v] = blocks + merged
    return PartitionFamily.validate(g, raw)


def random_theta(
    g: Multigraph,
    p: PartitionFamily,
    rng: random.Random,
    max_copies: int = 3,
) -> dict[int, int]:
    return {v: rng.randint(1, max_copies) for v in sorted(intermediate_leaves(g, p))}
