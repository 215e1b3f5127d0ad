"""Good subgraphs: certificate checking, constructions, and the brute oracle.

A certificate for a good subgraph Q of H consists of an orientation A_E of
an edge set E (sandwiched between the edges touching Q and the complement
of Q) together with per-vertex families of arc-disjoint directed walks.
The checked conditions:

  range          E_Q^- ⊆ E ⊆ E_H \\ E_Q
  families       the walks use every arc of A_E exactly once
  condition (1)  each family of walks is nonempty and starts at its vertex
  condition (2)  out-degree at most 1 outside V_Q
  condition (3)  in-degree strictly below the H-degree everywhere
  condition (4)  no vertex sends arcs inside two different families

Nonemptiness in (1) is forced by the source results: with empty families
allowed, single edges of C_2 and C_3 would verify, contradicting the
characterization of edge-generated good subgraphs, and leaves could join Q.
"""

from __future__ import annotations

import dataclasses
from itertools import combinations, product
from typing import Iterable, Mapping, Sequence

from .multigraph import Multigraph

BRUTE_FORCE_EDGE_LIMIT = 10


class CertificateError(ValueError):
    """Structurally broken certificate (dangling ids), distinct from False."""


@dataclasses.dataclass(frozen=True)
class OrientedView:
    """Partial orientation of H: the edges of E replaced by arcs."""

    base: Multigraph
    edges: frozenset[int]
    arcs: Mapping[int, tuple[int, int]]  # edge id -> (tail, head); loops tail == head

    def out_degree(self, v: int) -> int:
        return sum(1 for t, _ in self.arcs.values() if t == v)

    def in_degree(self, v: int) -> int:
        return sum(1 for _, h in self.arcs.values() if h == v)

    def h0(self) -> tuple[Multigraph, list[int]]:
        """Subgraph induced by the vertices that start no arc (exposed only;
        the verification conditions never reference it)."""
        sources = {t for t, _ in self.arcs.values()}
        keep = [v for v in range(self.base.n) if v not in sources]
        return self.base.induced(keep)


@dataclasses.dataclass(frozen=True)
class GoodCertificate:
    q: frozenset[int]
    view: OrientedView
    families: Mapping[int, tuple[tuple[int, ...], ...]]  # v -> walks as edge-id rows

    def to_json(self) -> dict:
        return {
            "Q": sorted(self.q),
            "E": sorted(self.view.edges),
            "A": {str(e): list(th) for e, th in sorted(self.view.arcs.items())},
            "families": {
                str(v): [list(walk) for walk in walks]
                for v, walks in sorted(self.families.items())
            },
        }


def certificate_from_json(h: Multigraph, obj: Mapping) -> GoodCertificate:
    view = OrientedView(
        base=h,
        edges=frozenset(int(e) for e in obj["E"]),
        arcs={int(e): (int(t[0]), int(t[1])) for e, t in obj["A"].items()},
    )
    return GoodCertificate(
        q=frozenset(int(e) for e in obj["Q"]),
        view=view,
        families={
            int(v): tuple(tuple(int(e) for e in walk) for walk in walks)
            for v, walks in obj["families"].items()
        },
    )


def q_vertices(h: Multigraph, q: Iterable[int]) -> frozenset[int]:
    out = set()
    for e in q:
        out.update(h.endpoints(e))
    return frozenset(out)


def boundary_edges(h: Multigraph, q: Iterable[int]) -> frozenset[int]:
    """E_Q^-: edges outside Q incident with a vertex of Q."""
    qset = frozenset(q)
    vq = q_vertices(h, qset)
    return frozenset(
        e
        for e, u, v in h.edge_list()
        if e not in qset and (u in vq or v in vq)
    )


def verify_good_certificate(cert: GoodCertificate) -> tuple[bool, str | None]:
    """Full certificate check; on failure names the first violated condition."""
    h = cert.view.base
    if not cert.q:
        raise CertificateError("Q must contain at least one edge")
    for e in cert.q:
        if not h.has_edge_id(e):
            raise CertificateError(f"Q names unknown edge {e}")
    for e in cert.view.edges:
        if not h.has_edge_id(e):
            raise CertificateError(f"E names unknown edge {e}")
    if set(cert.view.arcs) != set(cert.view.edges):
        raise CertificateError("A_E must orient exactly the edges of E")
    for e, (t, head) in cert.view.arcs.items():
        u, v = h.endpoints(e)
        if {t, head} != {u, v} and not (u == v and t == head == u):
            raise CertificateError(f"arc for edge {e} does not match its endpoints")
    vq = q_vertices(h, cert.q)
    for v in cert.families:
        if v not in vq:
            raise CertificateError(f"family owner {v} is not a vertex of Q")
    for walks in cert.families.values():
        for walk in walks:
            for e in walk:
                if e not in cert.view.arcs:
                    raise CertificateError(f"walk uses edge {e} outside A_E")

    required = boundary_edges(h, cert.q)
    if not (required <= cert.view.edges and cert.view.edges <= frozenset(h.edge_ids()) - cert.q):
        return False, "range"

    used: set[int] = set()
    for walks in cert.families.values():
        for walk in walks:
            for e in walk:
                if e in used:
                    return False, "families"
                used.add(e)
    if used != set(cert.view.arcs):
        return False, "families"

    arcs = cert.view.arcs
    for v in sorted(vq):
        walks = cert.families.get(v, ())
        if not walks:
            return False, "condition (1)"
        for walk in walks:
            if not walk:
                return False, "condition (1)"
            at = v
            for e in walk:
                tail, head = arcs[e]
                if tail != at:
                    return False, "condition (1)"
                at = head

    for u in range(h.n):
        if u not in vq and cert.view.out_degree(u) > 1:
            return False, "condition (2)"
    for u in range(h.n):
        if cert.view.in_degree(u) >= h.degree(u):
            return False, "condition (3)"

    senders: dict[int, int] = {}
    for v, walks in cert.families.items():
        for walk in walks:
            for e in walk:
                tail = arcs[e][0]
                if senders.setdefault(tail, v) != v:
                    return False, "condition (4)"
    return True, None


def _make_view(h: Multigraph, arcs: dict[int, tuple[int, int]]) -> OrientedView:
    return OrientedView(base=h, edges=frozenset(arcs), arcs=dict(arcs))


def _finish(
    h: Multigraph,
    q: frozenset[int],
    arcs: dict[int, tuple[int, int]],
    families: dict[int, list[list[int]]],
) -> GoodCertificate:
    cert = GoodCertificate(
        q=q,
        view=_make_view(h, arcs),
        families={v: tuple(tuple(w) for w in walks) for v, walks in families.items()},
    )
    ok, why = verify_good_certificate(cert)
    if not ok:
        raise RuntimeError(f"internal: constructed certificate violates {why}")
    return cert


def loop_good_certificate(h: Multigraph, e: int) -> GoodCertificate | None:
    """Certificate for the subgraph generated by loop e, when one exists.

    Exists iff H is not C_1 and the loop's vertex is no support.  The
    orientation: other loops become 1-cycles, edges toward attached-only
    neighbors pair into 2-cycles (one edge back, the rest out), and edges
    toward the remaining neighbors point away; everything is owned by the
    loop vertex.
    """
    if not h.is_connected():
        raise ValueError("good subgraphs are defined for connected graphs")
    if not h.is_loop(e):
        raise ValueError(f"edge {e} is not a loop")
    v = h.endpoints(e)[0]
    if h.n == 1 and h.m == 1:  # C_1
        return None
    if v in h.supports():
        return None

    q = frozenset([e])
    arcs: dict[int, tuple[int, int]] = {}
    walks: list[list[int]] = []
    own_loops = [l for l in h.loops_at(v) if l != e]
    for l in own_loops:
        arcs[l] = (v, v)
        walks.append([l])
    for x in sorted(h.neighbors(v) - {v}):
        joining = h.edges_between([v], [x])
        if h.neighbors(x) == {v}:
            f, gedge = joining[0], joining[1]  # parallel by construction
            arcs[f] = (x, v)
            arcs[gedge] = (v, x)
            walks.append([gedge, f])
            for other in joining[2:]:
                arcs[other] = (v, x)
                walks.append([other])
        else:
            for k in joining:
                arcs[k] = (v, x)
                walks.append([k])
    return _finish(h, q, arcs, {v: walks})


def _is_c2(h: Multigraph) -> bool:
    return h.n == 2 and h.m == 2 and all(not h.is_loop(e) for e in h.edge_ids())


def _is_c3(h: Multigraph) -> bool:
    return (
        h.n == 3
        and h.m == 3
        and all(not h.is_loop(e) for e in h.edge_ids())
        and all(h.multiplicity(u, v) <= 1 for u in range(3) for v in range(u + 1, 3))
    )


def edge_good_certificate(h: Multigraph, e: int) -> GoodCertificate | None:
    """Certificate for the subgraph generated by a non-loop edge e.

    Exists iff H is neither C_2 nor C_3 and no endpoint of e is a support.
    The construction follows the case split on the joint neighborhood of
    the endpoints; ties are broken by smallest edge id.
    """
    if not h.is_connected():
        raise ValueError("good subgraphs are defined for connected graphs")
    if h.is_loop(e):
        raise ValueError(f"edge {e} is a loop")
    v, u = h.endpoints(e)
    if _is_c2(h) or _is_c3(h):
        return None
    supports = h.supports()
    if v in supports or u in supports:
        return None

    q = frozenset([e])
    arcs: dict[int, tuple[int, int]] = {}
    fam: dict[int, list[list[int]]] = {v: [], u: []}

    outer = sorted(set().union(h.neighbors(v), h.neighbors(u)) - {v, u})
    extras = [f for f in h.edges_between([v], [u]) if f != e]

    if not outer:
        # order-2 graphs: split loops per side, orient extras so both
        # families are inhabited
        for x in (v, u):
            for l in h.loops_at(x):
                arcs[l] = (x, x)
                fam[x].append([l])
        if len(extras) == 1:
            tail, head = (v, u) if h.loops_at(u) and not h.loops_at(v) else (u, v)
            arcs[extras[0]] = (tail, head)
            fam[tail].append([extras[0]])
        elif extras:
            arcs[extras[0]] = (v, u)
            fam[v].append([extras[0]])
            for f in extras[1:]:
                arcs[f] = (u, v)
                fam[u].append([f])
        if not fam[v] or not fam[u]:
            return None  # C_2 shapes are caught above; loopless K_2 is leaf-bound
        return _finish(h, q, arcs, fam)

    n1 = {v: [], u: []}  # attached-only neighbors per endpoint
    nvu1 = []            # neighbors seeing exactly both endpoints
    outer2 = []          # neighbors with a third contact
    for x in outer:
        nx = h.neighbors(x)
        if nx == {v}:
            n1[v].append(x)
        elif nx == {u}:
            n1[u].append(x)
        elif nx == {v, u}:
            nvu1.append(x)
        else:
            outer2.append(x)

    # rule 1: loops at the endpoints stay with their owner
    for x in (v, u):
        for l in h.loops_at(x):
            arcs[l] = (x, x)
            fam[x].append([l])
    # rule 2: arcs toward neighbors that have other contacts
    for x in (v, u):
        for y in outer2:
            for f in h.edges_between([x], [y]):
                arcs[f] = (x, y)
                fam[x].append([f])
    # rule 3: 2-cycles through attached-only neighbors (parallel edges)
    for x in (v, u):
        for y in n1[x]:
            joining = h.edges_between([x], [y])
            back, out = joining[0], joining[1]
            arcs[back] = (y, x)
            arcs[out] = (x, y)
            fam[x].append([out, back])
            for other in joining[2:]:
                arcs[other] = (x, y)
                fam[x].append([other])

    if nvu1:
        side_content = {
            x: bool(n1[x]) or bool(h.loops_at(x)) for x in (v, u)
        }
        if side_content[v] or side_content[u]:
            anchor, other = (v, u) if side_content[v] else (u, v)
            for z in nvu1:
                fz = h.edges_between([anchor], [z])[0]
                gz = h.edges_between([other], [z])[0]
                arcs[fz] = (z, anchor)
                arcs[gz] = (other, z)
                fam[other].append([gz, fz])
                for l in h.edges_between([other], [z]):
                    if l not in (gz,):
                        arcs[l] = (other, z)
                        fam[other].append([l])
                for l in h.edges_between([anchor], [z]):
                    if l not in (fz,):
                        arcs[l] = (anchor, z)
                        fam[anchor].append([l])
            for k in extras:
                arcs[k] = (other, anchor)
                fam[other].append([k])
        elif len(nvu1) >= 2:
            cover = _minimum_endpoint_cover(h, v, u, nvu1)
            covered_pairs = {}
            for fz in cover:
                a, b = h.endpoints(fz)
                z = a if a in nvu1 else b
                covered_pairs[z] = fz
            for z in nvu1:
                fz = covered_pairs[z]
                xi = next(iter(set(h.endpoints(fz)) - {z}))
                yi = u if xi == v else v
                gz = h.edges_between([yi], [z])[0]
                arcs[fz] = (z, xi)
                arcs[gz] = (yi, z)
                fam[yi].append([gz, fz])
                for l in h.edges_between([v], [z]) + h.edges_between([u], [z]):
                    if l not in (fz, gz):
                        x = v if v in h.endpoints(l) else u
                        arcs[l] = (x, z)
                        fam[x].append([l])
            for k in extras:
                arcs[k] = (u, v)
                fam[u].append([k])
        else:
            z = nvu1[0]
            built = _single_shared_neighbor(h, e, v, u, z, extras, arcs, fam)
            if built is None:
                return None
            arcs, fam = built
    elif extras:
        # leftover parallel edges with no shared attached-only neighbor
        if fam[v]:
            for f in extras:
                arcs[f] = (u, v)
                fam[u].append([f])
        else:
            for f in extras:
                arcs[f] = (v, u)
                fam[v].append([f])

    if not fam[v] or not fam[u]:
        return None
    return _finish(h, q, arcs, fam)


def _minimum_endpoint_cover(
    h: Multigraph, v: int, u: int, shared: Sequence[int]
) -> list[int]:
    """Smallest set of {v,u}-to-shared edges covering both endpoints and all
    shared vertices; searched exhaustively in size-then-id order."""
    pool = h.edges_between([v, u], shared)
    targets = set(shared) | {v, u}
    for size in range(1, len(pool) + 1):
        for combo in combinations(pool, size):
            hit = set()
            for f in combo:
                hit.update(h.endpoints(f))
            if targets <= hit:
                return list(combo)
    raise RuntimeError("internal: no endpoint cover in a connected instance")


def _single_shared_neighbor(h, e, v, u, z, extras, arcs, fam):
    """Shared neighbor case with |N_vu^1| = 1: route the 2-path through z,
    trying both role assignments so the receiving side keeps a walk."""
    for a, b in ((v, u), (u, v)):
        trial_arcs = dict(arcs)
        trial_fam = {v: [list(w) for w in fam[v]], u: [list(w) for w in fam[u]]}
        fz = h.edges_between([a], [z])[0]
        gz = h.edges_between([b], [z])[0]
        trial_arcs[fz] = (z, a)
        trial_arcs[gz] = (b, z)
        trial_fam[b].append([gz, fz])
        for l in h.edges_between([b], [z]):
            if l != gz:
                trial_arcs[l] = (b, z)
                trial_fam[b].append([l])
        for l in h.edges_between([a], [z]):
            if l != fz:
                trial_arcs[l] = (a, z)
                trial_fam[a].append([l])
        for k in extras:
            trial_arcs[k] = (a, b)
            trial_fam[a].append([k])
        if trial_fam[v] and trial_fam[u]:
            return trial_arcs, trial_fam
    return None


def has_good_subgraph(h: Multigraph) -> bool:
    """Cor.-style criterion: some edge or loop away from all pendant edges.

    Equivalent to the existence of a good subgraph generated by a single
    edge or loop, which in turn decides general existence.
    """
    if not h.is_connected():
        raise ValueError("good subgraphs are defined for connected graphs")
    if (h.n == 1 and h.m == 1) or _is_c2(h) or _is_c3(h):
        return False
    blocked = h.leaves() | h.supports()
    return any(not (set(h.endpoints(e)) & blocked) for e in h.edge_ids())


def induced_good_condition(h: Multigraph, vertices: Iterable[int]) -> bool:
    """Sufficient condition for an induced subgraph H[I] to be good:
    every I-vertex keeps some but not all of its degree inside I, and
    every outside neighbor of I has a neighbor outside I."""
    iset = frozenset(vertices)
    for v in iset:
        h._check_vertex(v)
    if not iset or iset == frozenset(range(h.n)):
        raise ValueError("I must be a proper nonempty subset of the vertices")
    sub, old_ids = h.induced(iset)
    pos = {v: i for i, v in enumerate(old_ids)}
    for v in iset:
        inner = sub.degree(pos[v])
        if not 1 <= inner < h.degree(v):
            return False
    outside = set()
    for v in iset:
        outside.update(h.neighbors(v))
    for x in outside - iset:
        if not (h.neighbors(x) - iset):
            return False
    return True


# -- brute-force oracle ------------------------------------------------------


def brute_force_good_search(h: Multigraph, q: Iterable[int]) -> GoodCertificate | None:
    """Exhaustive transcription of the definition, for cross-checking.

    Scans E-supersets of the boundary in size order, all orientations with
    local pruning, all assignments of stray out-arcs to families, and all
    walk decompositions; returns the first verifying certificate.
    """
    qset = frozenset(q)
    if not qset:
        raise ValueError("Q must contain at least one edge")
    for e in qset:
        if not h.has_edge_id(e):
            raise ValueError(f"unknown edge id {e}")
    if h.m > BRUTE_FORCE_EDGE_LIMIT:
        raise ValueError(f"size guard exceeded: m={h.m} > {BRUTE_FORCE_EDGE_LIMIT}")
    required = sorted(boundary_edges(h, qset))
    vq = q_vertices(h, qset)
    pool = [e for e in h.edge_ids() if e not in qset and e not in set(required)]
    for size in range(len(pool) + 1):
        for extra in combinations(pool, size):
            cert = _search_orientations(h, qset, vq, required + list(extra))
            if cert is not None:
                return cert
    return None


def _search_orientations(
    h: Multigraph,
    qset: frozenset[int],
    vq: frozenset[int],
    eset: Sequence[int],
) -> GoodCertificate | None:
    degree_cap = [h.degree(x) - 1 for x in range(h.n)]  # max allowed in-degree
    in_count = [0] * h.n
    out_count = [0] * h.n
    choice: dict[int, tuple[int, int]] = {}

    def assign(idx: int) -> GoodCertificate | None:
        if idx == len(eset):
            if any(out_count[x] == 0 for x in vq):
                return None
            return _try_families(h, qset, vq, dict(choice))
        e = eset[idx]
        a, b = h.endpoints(e)
        options = [(a, a)] if a == b else [(a, b), (b, a)]
        for tail, head in options:
            if in_count[head] + 1 > degree_cap[head]:
                continue
            if tail not in vq and out_count[tail] + 1 > 1:
                continue
            choice[e] = (tail, head)
            in_count[head] += 1
            out_count[tail] += 1
            found = assign(idx + 1)
            if found is not None:
                return found
            in_count[head] -= 1
            out_count[tail] -= 1
            del choice[e]
        return None

    return assign(0)


def _try_families(
    h: Multigraph,
    qset: frozenset[int],
    vq: frozenset[int],
    arcs: dict[int, tuple[int, int]],
) -> GoodCertificate | None:
    """Given a pruned orientation, look for a family split into start-anchored
    walk decompositions.  Each vertex's out-arcs belong to one family; owners
    of Q-vertices are forced to themselves."""
    stray_tails = sorted(
        {t for t, _ in arcs.values() if t not in vq}
    )
    owners_order = sorted(vq)
    for assignment in product(owners_order, repeat=len(stray_tails)):
        owner = dict(zip(stray_tails, assignment))
        for x in vq:
            owner[x] = x
        grouped: dict[int, list[tuple[int, int, int]]] = {x: [] for x in owners_order}
        for e, (t, head) in sorted(arcs.items()):
            grouped[owner[t]].append((e, t, head))
        families: dict[int, list[list[int]]] = {}
        ok = True
        for x in owners_order:
            walks = _walk_decomposition(grouped[x], x)
            if walks is None or not walks:
                ok = False
                break
            families[x] = walks
        if ok:
            cert = GoodCertificate(
                q=qset,
                view=_make_view(h, arcs),
                families={v: tuple(tuple(w) for w in ws) for v, ws in families.items()},
            )
            verdict, _ = verify_good_certificate(cert)
            if verdict:
                return cert
    return None


def _walk_decomposition(
    items: Sequence[tuple[int, int, int]], start: int
) -> list[list[int]] | None:
    """Split arcs into walks all starting at `start`, or None; the failure
    set is memoized on (remaining-arc mask, current walk end)."""
    if not items:
        return None
    failed: set[tuple[int, int | None]] = set()
    walks: list[list[int]] = []
    current: list[int] = []

    def rec(mask: int, end: int | None) -> bool:
        if mask == 0:
            if current:
                walks.append(list(current))
            return True
        key = (mask, end)
        if key in failed:
            return False
        for i, (e, tail, head) in enumerate(items):
            bit = 1 << i
            if not mask & bit:
                continue
            if end is None:
                if tail != start:
                    continue
            elif tail != end:
                continue
            current.append(e)
            if rec(mask & ~bit, head):
                return True
            current.pop()
        if end is not None and current:
            closed = list(current)
            walks.append(closed)
            current.clear()
            if rec(mask, None):
                return True
            walks.pop()
            current.extend(closed)
        failed.add(key)
        return False

    if rec((1 << len(items)) - 1, None):
        return walks
    return None
