"""Generators and predicates for the named graph families."""

from __future__ import annotations

import dataclasses
import enum
from collections import deque
from typing import Sequence

from .multigraph import Multigraph


def path(n: int) -> Multigraph:
    if n < 1:
        raise ValueError("path order must be >= 1")
    return Multigraph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Multigraph:
    """C_n; C_1 is one vertex with a loop, C_2 two vertices with a double edge."""
    if n < 1:
        raise ValueError("cycle order must be >= 1")
    if n == 1:
        return Multigraph.from_edges(1, [(0, 0)])
    if n == 2:
        return Multigraph.from_edges(2, [(0, 1), (0, 1)])
    return Multigraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Multigraph:
    if n < 1:
        raise ValueError("complete graph order must be >= 1")
    return Multigraph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def k1s(s: int) -> Multigraph:
    """One vertex carrying s loops."""
    if s < 0:
        raise ValueError("loop count must be >= 0")
    return Multigraph.from_edges(1, [(0, 0)] * s)


def k2s(s: int) -> Multigraph:
    """Two vertices joined by s parallel edges."""
    if s < 1:
        raise ValueError("parallel edge count must be >= 1")
    return Multigraph.from_edges(2, [(0, 1)] * s)


def star(leaves: int) -> Multigraph:
    if leaves < 1:
        raise ValueError("star needs at least one leaf")
    return Multigraph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def spider(legs: Sequence[int]) -> Multigraph:
    """Paths of the given lengths glued at a common center (vertex 0)."""
    if not legs or any(length < 1 for length in legs):
        raise ValueError("spider legs must be positive lengths")
    pairs = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            pairs.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Multigraph.from_edges(nxt, pairs)


def corona(h: Multigraph) -> Multigraph:
    """H ∘ K_1: one new pendant leaf attached to every vertex of H."""
    pairs = [(u, v) for _, u, v in h.edge_list()]
    pairs.extend((v, h.n + v) for v in range(h.n))
    return Multigraph.from_edges(2 * h.n, pairs)


def expected_status(kind: str, n: int) -> tuple[bool, bool]:
    """(is_dtdp, is_minimal) golden table for paths, cycles, complete graphs."""
    if n < 1:
        raise ValueError("order must be >= 1")
    if kind == "path":
        return n not in (1, 2, 3, 5, 6, 9), n in (4, 7, 10, 13)
    if kind == "cycle":
        return n >= 3 and n != 5, n in (3, 6, 9)
    if kind == "complete":
        return n >= 3, n == 3
    raise ValueError(f"unknown family kind {kind!r}")


@dataclasses.dataclass(frozen=True)
class RootedTree:
    tree: Multigraph
    root: int

    def __post_init__(self) -> None:
        t = self.tree
        if any(u == v for _, u, v in t.edge_list()):
            raise ValueError("rooted tree must be loop-free")
        if t.m != t.n - 1 or not t.is_connected():
            raise ValueError("rooted tree must be connected and acyclic")
        t._check_vertex(self.root)

    def distances(self) -> list[int]:
        dist = [-1] * self.tree.n
        dist[self.root] = 0
        queue = deque([self.root])
        while queue:
            x = queue.popleft()
            for y in self.tree.neighbors(x):
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        return dist


def sk_class(t: RootedTree) -> int | None:
    """k when every leaf sits at distance exactly k from the root, else None.

    The root counts as a leaf when its degree is at most 1, so the
    one-vertex tree lands in class 0.
    """
    g = t.tree
    if g.n == 1:
        return 0
    leaves = {v for v in range(g.n) if g.degree(v) == 1}
    dist = t.distances()
    values = {dist[v] for v in leaves}
    if len(values) == 1:
        return values.pop()
    return None


class FamilyFClass(enum.Enum):
    NOT_MEMBER = "not_member"
    MEMBER = "member"
    WOUNDED_SPIDER = "wounded_spider"


def family_f_class(t: RootedTree) -> FamilyFClass:
    """Classify a rooted tree against the root-anchored spider family.

    Membership needs degree <= 2 off the root, between 1 and deg(root)-1
    root-adjacent leaves, and every other leaf at distance 2 mod 3 from the
    root; wounded spiders have those distances exactly 2.
    """
    g = t.tree
    r = t.root
    if g.n < 2:
        return FamilyFClass.NOT_MEMBER
    if any(g.degree(x) > 2 for x in range(g.n) if x != r):
        return FamilyFClass.NOT_MEMBER
    leaves = {v for v in range(g.n) if g.degree(v) == 1}
    near = g.neighbors(r) & leaves
    if not 1 <= len(near) <= g.degree(r) - 1:
        return FamilyFClass.NOT_MEMBER
    dist = t.distances()
    far = leaves - g.neighbors(r) - {r}
    if any(dist[x] % 3 != 2 for x in far):
        return FamilyFClass.NOT_MEMBER
    if all(dist[x] == 2 for x in far):
        return FamilyFClass.WOUNDED_SPIDER
    return FamilyFClass.MEMBER


FAMILY_SPEC_HELP = "path:N cycle:N complete:N k1s:S k2s:S spider:a,b,c corona:<spec>"


def from_family_spec(spec: str) -> Multigraph:
    """Build a graph from a CLI family spec such as `cycle:9` or `corona:path:3`."""
    kind, sep, rest = spec.partition(":")
    if not sep:
        raise ValueError(f"not a family spec: {spec!r} (expected {FAMILY_SPEC_HELP})")
    if kind == "corona":
        return corona(from_family_spec(rest))
    if kind == "spider":
        try:
            legs = [int(tok) for tok in rest.split(",")]
        except ValueError:
            raise ValueError(f"bad spider legs in {spec!r}") from None
        return spider(legs)
    try:
        n = int(rest)
    except ValueError:
        raise ValueError(f"bad parameter in family spec {spec!r}") from None
    builders = {"path": path, "cycle": cycle, "complete": complete, "k1s": k1s, "k2s": k2s}
    if kind not in builders:
        raise ValueError(f"unknown family {kind!r} (expected {FAMILY_SPEC_HELP})")
    return builders[kind](n)
