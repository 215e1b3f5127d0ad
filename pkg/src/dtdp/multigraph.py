"""Core multigraph model: loops, parallel edges, file formats, isomorphism."""

from __future__ import annotations

import dataclasses
from collections import Counter, deque
from typing import Iterable, Mapping


class GraphFormatError(ValueError):
    """Malformed MGF or graph6 input."""


@dataclasses.dataclass(frozen=True)
class IsoCertificate:
    """Vertex bijection witnessing a multiplicity-preserving isomorphism.

    `mapping[u]` is the image of vertex `u` of the first graph in the second.
    """

    mapping: tuple[int, ...]

    def apply(self, v: int) -> int:
        return self.mapping[v]


class Multigraph:
    """Undirected multigraph with loops and parallel edges.

    Vertices are dense integers 0..n-1.  Edges carry stable integer ids;
    a loop is stored with both endpoints equal.  A loop adds 2 to its
    vertex's degree and puts the vertex in its own neighborhood.  Values
    are immutable after construction, so they are safe to share.
    """

    __slots__ = ("n", "_edges", "_neigh", "_deg", "_loops")

    def __init__(self, n: int, edges: Mapping[int, tuple[int, int]]):
        if n < 0:
            raise ValueError("vertex count must be nonnegative")
        self.n = n
        store: dict[int, tuple[int, int]] = {}
        for eid in sorted(edges):
            u, v = edges[eid]
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {eid} endpoint out of range: ({u}, {v})")
            store[eid] = (u, v) if u <= v else (v, u)
        self._edges = store
        neigh: list[set[int]] = [set() for _ in range(n)]
        deg = [0] * n
        loops = [0] * n
        for u, v in store.values():
            if u == v:
                neigh[u].add(u)
                deg[u] += 2
                loops[u] += 1
            else:
                neigh[u].add(v)
                neigh[v].add(u)
                deg[u] += 1
                deg[v] += 1
        self._neigh = [frozenset(s) for s in neigh]
        self._deg = deg
        self._loops = loops

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[tuple[int, int]]) -> Multigraph:
        """Build a graph with dense edge ids 0..m-1 in the given order."""
        return cls(n, {i: (u, v) for i, (u, v) in enumerate(pairs)})

    def __reduce__(self):
        return (Multigraph, (self.n, self._edges))

    # -- basic accessors -------------------------------------------------

    @property
    def m(self) -> int:
        return len(self._edges)

    def edge_ids(self) -> list[int]:
        return sorted(self._edges)

    def edge_list(self) -> list[tuple[int, int, int]]:
        """All edges as (id, u, v) with u <= v, in id order."""
        return [(eid, u, v) for eid, (u, v) in sorted(self._edges.items())]

    def has_edge_id(self, e: int) -> bool:
        return e in self._edges

    def endpoints(self, e: int) -> tuple[int, int]:
        try:
            return self._edges[e]
        except KeyError:
            raise ValueError(f"unknown edge id {e}") from None

    def is_loop(self, e: int) -> bool:
        u, v = self.endpoints(e)
        return u == v

    def degree(self, v: int) -> int:
        self._check_vertex(v)
        return self._deg[v]

    def loop_count(self, v: int) -> int:
        self._check_vertex(v)
        return self._loops[v]

    def neighbors(self, v: int) -> frozenset[int]:
        """N(v); contains v itself iff a loop is incident with v."""
        self._check_vertex(v)
        return self._neigh[v]

    def closed_neighbors(self, v: int) -> frozenset[int]:
        return self.neighbors(v) | {v}

    def multiplicity(self, u: int, v: int) -> int:
        """Number of edges joining u and v (number of loops when u == v)."""
        self._check_vertex(u)
        self._check_vertex(v)
        a, b = (u, v) if u <= v else (v, u)
        return sum(1 for pair in self._edges.values() if pair == (a, b))

    def _check_vertex(self, v: int) -> None:
        if not (0 <= v < self.n):
            raise ValueError(f"vertex {v} out of range for order {self.n}")

    # -- derived vertex classes ------------------------------------------

    def leaves(self) -> frozenset[int]:
        return frozenset(v for v in range(self.n) if self._deg[v] == 1)

    def supports(self) -> frozenset[int]:
        leaves = self.leaves()
        return frozenset(v for v in range(self.n) if self._neigh[v] & leaves)

    def strong_supports(self) -> frozenset[int]:
        leaves = self.leaves()
        return frozenset(
            v for v in range(self.n) if len(self._neigh[v] & leaves - {v}) >= 2
        )

    def weak_supports(self) -> frozenset[int]:
        return self.supports() - self.strong_supports()

    def edges_at(self, v: int) -> list[int]:
        """Ids of edges incident with v, loops included once."""
        self._check_vertex(v)
        return [eid for eid, (a, b) in sorted(self._edges.items()) if v in (a, b)]

    def loops_at(self, v: int) -> list[int]:
        self._check_vertex(v)
        return [eid for eid, (a, b) in sorted(self._edges.items()) if a == b == v]

    def edges_between(self, aset: Iterable[int], bset: Iterable[int]) -> list[int]:
        """Ids of edges joining a vertex of A with a vertex of B (A, B disjoint)."""
        a = frozenset(aset)
        b = frozenset(bset)
        if a & b:
            raise ValueError("edge sets between overlapping vertex sets are undefined")
        out = []
        for eid, (u, v) in sorted(self._edges.items()):
            if (u in a and v in b) or (u in b and v in a):
                out.append(eid)
        return out

    # -- structural operations --------------------------------------------

    def delete_edge(self, e: int) -> Multigraph:
        """Same vertex set without edge e; all other edge ids are preserved."""
        if e not in self._edges:
            raise ValueError(f"unknown edge id {e}")
        remaining = dict(self._edges)
        del remaining[e]
        return Multigraph(self.n, remaining)

    def add_edge(self, u: int, v: int) -> Multigraph:
        """New graph with one extra edge (a loop when u == v); fresh edge id."""
        self._check_vertex(u)
        self._check_vertex(v)
        edges = dict(self._edges)
        edges[max(edges, default=-1) + 1] = (u, v)
        return Multigraph(self.n, edges)

    def spanning(self, edge_ids: Iterable[int]) -> Multigraph:
        """Spanning subgraph keeping only the given edge ids (ids preserved)."""
        keep = set(edge_ids)
        missing = keep - set(self._edges)
        if missing:
            raise ValueError(f"unknown edge ids {sorted(missing)}")
        return Multigraph(self.n, {e: self._edges[e] for e in keep})

    def induced(self, vertices: Iterable[int]) -> tuple[Multigraph, list[int]]:
        """Induced subgraph on the given vertices plus the old-id list.

        Vertex i of the result corresponds to old_ids[i]; edges are renumbered
        densely in original id order.
        """
        old_ids = sorted(set(vertices))
        for v in old_ids:
            self._check_vertex(v)
        pos = {v: i for i, v in enumerate(old_ids)}
        pairs = [
            (pos[u], pos[v])
            for _, u, v in self.edge_list()
            if u in pos and v in pos
        ]
        return Multigraph.from_edges(len(old_ids), pairs), old_ids

    def connected_components(self) -> list[frozenset[int]]:
        """Maximal connected vertex sets, sorted by smallest member."""
        seen = [False] * self.n
        comps = []
        for start in range(self.n):
            if seen[start]:
                continue
            comp = {start}
            seen[start] = True
            queue = deque([start])
            while queue:
                x = queue.popleft()
                for y in self._neigh[x]:
                    if not seen[y]:
                        seen[y] = True
                        comp.add(y)
                        queue.append(y)
            comps.append(frozenset(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n > 0 and len(self.connected_components()) == 1

    # -- formats -----------------------------------------------------------

    def to_mgf(self) -> str:
        """Normalized MGF text: header line then one `u v` line per edge."""
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u} {v}" for _, u, v in self.edge_list())
        return "\n".join(lines) + "\n"

    def to_dot(
        self,
        d: Iterable[int] | None = None,
        t: Iterable[int] | None = None,
    ) -> str:
        """DOT text; D-vertices get color=blue, T-vertices color=red."""
        dset = frozenset(d) if d is not None else frozenset()
        tset = frozenset(t) if t is not None else frozenset()
        lines = ["graph g {"]
        for v in range(self.n):
            if v in dset:
                lines.append(f"  {v} [color=blue];")
            elif v in tset:
                lines.append(f"  {v} [color=red];")
            else:
                lines.append(f"  {v};")
        for _, u, v in self.edge_list():
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def __repr__(self) -> str:
        return f"Multigraph(n={self.n}, edges={[(u, v) for _, u, v in self.edge_list()]})"


def parse_mgf(text: str) -> Multigraph:
    """Parse MGF text: `#` comments, `n m` header, then m lines `u v`."""
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line.split()))
    if not rows:
        raise GraphFormatError("empty MGF input")
    lineno, head = rows[0]
    if len(head) != 2:
        raise GraphFormatError(f"line {lineno}: header must be 'n m'")
    n = _mgf_int(head[0], lineno)
    m = _mgf_int(head[1], lineno)
    if n < 0 or m < 0:
        raise GraphFormatError(f"line {lineno}: negative header value")
    if len(rows) - 1 != m:
        raise GraphFormatError(
            f"line {lineno}: header announces {m} edges, found {len(rows) - 1}"
        )
    pairs = []
    for lineno, tokens in rows[1:]:
        if len(tokens) != 2:
            raise GraphFormatError(f"line {lineno}: edge line must be 'u v'")
        u = _mgf_int(tokens[0], lineno)
        v = _mgf_int(tokens[1], lineno)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"line {lineno}: vertex index out of range")
        pairs.append((u, v))
    return Multigraph.from_edges(n, pairs)


def _mgf_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(f"line {lineno}: non-integer token {token!r}") from None


_G6_HEADER = ">>graph6<<"


def from_graph6(code: str) -> Multigraph:
    """Decode a graph6 string (simple loop-free graphs only)."""
    s = code.strip()
    if s.startswith(_G6_HEADER):
        s = s[len(_G6_HEADER):]
    if not s:
        raise GraphFormatError("empty graph6 input")
    data = []
    for ch in s:
        o = ord(ch)
        if not (63 <= o <= 126):
            raise GraphFormatError(f"character {ch!r} outside the graph6 alphabet")
        data.append(o - 63)
    n, data = _g6_read_order(data)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(data) != need:
        raise GraphFormatError(
            f"graph6 bit vector has {len(data)} chars, expected {need} for order {n}"
        )
    bits = []
    for value in data:
        bits.extend((value >> shift) & 1 for shift in (5, 4, 3, 2, 1, 0))
    pairs = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                pairs.append((i, j))
            k += 1
    return Multigraph.from_edges(n, pairs)


def _g6_read_order(data: list[int]) -> tuple[int, list[int]]:
    if data[0] != 63:
        return data[0], data[1:]
    if len(data) >= 2 and data[1] != 63:
        if len(data) < 4:
            raise GraphFormatError("truncated graph6 order field")
        n = (data[1] << 12) | (data[2] << 6) | data[3]
        return n, data[4:]
    if len(data) < 8:
        raise GraphFormatError("truncated graph6 order field")
    n = 0
    for value in data[2:8]:
        n = (n << 6) | value
    return n, data[8:]


def to_graph6(g: Multigraph) -> str:
    """Encode a simple loop-free graph as graph6."""
    adj = [[False] * g.n for _ in range(g.n)]
    for _, u, v in g.edge_list():
        if u == v:
            raise GraphFormatError("graph6 cannot encode loops")
        if adj[u][v]:
            raise GraphFormatError("graph6 cannot encode parallel edges")
        adj[u][v] = adj[v][u] = True
    n = g.n
    if n <= 62:
        out = [n + 63]
    elif n <= 258047:
        out = [126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63]
    else:
        out = [126, 126] + [((n >> shift) & 63) + 63 for shift in range(30, -1, -6)]
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if adj[i][j] else 0)
    while len(bits) % 6:
        bits.append(0)
    for k in range(0, len(bits), 6):
        value = 0
        for b in bits[k:k + 6]:
            value = (value << 1) | b
        out.append(value + 63)
    return "".join(chr(o) for o in out)


# -- isomorphism -----------------------------------------------------------


def _vertex_profile(g: Multigraph, v: int) -> tuple:
    around = tuple(
        sorted(
            (g.multiplicity(v, u), g.degree(u), g.loop_count(u))
            for u in g.neighbors(v)
            if u != v
        )
    )
    return (g.degree(v), g.loop_count(v), around)


def _adjacency_counts(g: Multigraph) -> list[Counter]:
    counts: list[Counter] = [Counter() for _ in range(g.n)]
    for _, u, v in g.edge_list():
        counts[u][v] += 1
        if u != v:
            counts[v][u] += 1
    return counts


def are_isomorphic(g1: Multigraph, g2: Multigraph) -> IsoCertificate | None:
    """Multiplicity-preserving isomorphism by backtracking; None when absent.

    Pruning uses degree, loop count and neighbor-degree profiles; intended
    for desk-scale graphs (n up to roughly 30).
    """
    if g1.n != g2.n or g1.m != g2.m:
        return None
    n = g1.n
    prof1 = [_vertex_profile(g1, v) for v in range(n)]
    prof2 = [_vertex_profile(g2, v) for v in range(n)]
    if sorted(prof1) != sorted(prof2):
        return None
    candidates = {v: [w for w in range(n) if prof2[w] == prof1[v]] for v in range(n)}
    # Most-constrained vertex first, ties broken by degree then id.
    order = sorted(range(n), key=lambda v: (len(candidates[v]), -g1.degree(v), v))
    adj1 = _adjacency_counts(g1)
    adj2 = _adjacency_counts(g2)
    mapping = [-1] * n
    used = [False] * n

    def extend(idx: int) -> bool:
        if idx == n:
            return True
        v = order[idx]
        for w in candidates[v]:
            if used[w]:
                continue
            ok = adj1[v].get(v, 0) == adj2[w].get(w, 0)
            if ok:
                # every assigned neighbor of v must land on a neighbor of w
                # with the same multiplicity
                for x in g1.neighbors(v):
                    if x != v and mapping[x] >= 0 and adj1[v][x] != adj2[w].get(mapping[x], 0):
                        ok = False
                        break
            if ok:
                # and no assigned non-neighbor may land inside N(w)
                mapped_fwd = sum(1 for x in adj1[v] if x != v and mapping[x] >= 0)
                mapped_back = sum(1 for y in adj2[w] if y != w and used[y])
                if mapped_back != mapped_fwd:
                    ok = False
            if ok:
                mapping[v] = w
                used[w] = True
                if extend(idx + 1):
                    return True
                mapping[v] = -1
                used[w] = False
        return False

    if extend(0):
        return IsoCertificate(tuple(mapping))
    return None


def verify_iso_certificate(g1: Multigraph, g2: Multigraph, cert: IsoCertificate) -> bool:
    """Independent multiplicity re-check of an isomorphism certificate."""
    if g1.n != g2.n or sorted(cert.mapping) != list(range(g1.n)):
        return False
    mapped = Counter()
    for _, u, v in g1.edge_list():
        a, b = cert.apply(u), cert.apply(v)
        mapped[(a, b) if a <= b else (b, a)] += 1
    actual = Counter((u, v) for _, u, v in g2.edge_list())
    return mapped == actual
