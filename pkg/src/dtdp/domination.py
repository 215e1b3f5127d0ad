"""Dominating sets, total dominating sets, and exact DT-pair search."""

from __future__ import annotations

import dataclasses
from typing import Iterable, Iterator

from .multigraph import Multigraph

_UNKNOWN, _D, _T, _FREE = 0, 1, 2, 3


@dataclasses.dataclass(frozen=True)
class DtPair:
    """Disjoint (D, T): D dominating, T total dominating."""

    d: frozenset[int]
    t: frozenset[int]

    def to_json(self) -> dict:
        return {"D": sorted(self.d), "T": sorted(self.t)}

    @classmethod
    def of(cls, d: Iterable[int], t: Iterable[int]) -> DtPair:
        return cls(frozenset(d), frozenset(t))


def is_dominating(g: Multigraph, dset: Iterable[int]) -> bool:
    """True iff every vertex outside D has a neighbor in D."""
    d = frozenset(dset)
    for v in d:
        g.neighbors(v)  # range check
    return all(v in d or g.neighbors(v) & d for v in range(g.n))


def is_total_dominating(g: Multigraph, tset: Iterable[int]) -> bool:
    """True iff every vertex has a neighbor in T; a loop makes v its own neighbor."""
    t = frozenset(tset)
    for v in t:
        g.neighbors(v)
    return all(g.neighbors(v) & t for v in range(g.n))


def is_valid_dt_pair(g: Multigraph, pair: DtPair) -> bool:
    return (
        not (pair.d & pair.t)
        and is_dominating(g, pair.d)
        and is_total_dominating(g, pair.t)
    )


def is_dtdp(g: Multigraph) -> bool:
    return find_dt_pair(g) is not None


def _forced_assignment(g: Multigraph) -> list[int] | None:
    """Leaves go to D and supports to T; None when the two sets clash."""
    state = [_UNKNOWN] * g.n
    leaves = g.leaves()
    supports = g.supports()
    if leaves & supports:
        return None
    for v in leaves:
        state[v] = _D
    for v in supports:
        state[v] = _T
    return state


def _viable(g: Multigraph, state: list[int], v: int) -> bool:
    dom_possible = state[v] in (_UNKNOWN, _D)
    tot_possible = False
    for u in g.neighbors(v):
        if state[u] == _D or state[u] == _UNKNOWN:
            dom_possible = True
        if state[u] == _T or state[u] == _UNKNOWN:
            tot_possible = True
        if dom_possible and tot_possible:
            return True
    return dom_possible and tot_possible


def _solutions(g: Multigraph) -> Iterator[DtPair]:
    """All assignments V -> {D, T, free} forming DT-pairs, deterministic order.

    Search order is descending degree with ties by id; forced moves put
    leaves in D and supports in T first.
    """
    state = _forced_assignment(g)
    if state is None:
        return
    if not all(_viable(g, state, v) for v in range(g.n)):
        return
    order = [v for v in range(g.n) if state[v] == _UNKNOWN]
    order.sort(key=lambda v: (-g.degree(v), v))

    def rec(idx: int) -> Iterator[DtPair]:
        if idx == len(order):
            yield DtPair.of(
                (v for v in range(g.n) if state[v] == _D),
                (v for v in range(g.n) if state[v] == _T),
            )
            return
        x = order[idx]
        for value in (_D, _T, _FREE):
            state[x] = value
            if all(_viable(g, state, v) for v in g.closed_neighbors(x)):
                yield from rec(idx + 1)
            state[x] = _UNKNOWN

    yield from rec(0)


def find_dt_pair(g: Multigraph) -> DtPair | None:
    """Some DT-pair iff G is a DTDP-graph; solved per connected component."""
    d: set[int] = set()
    t: set[int] = set()
    for comp in g.connected_components():
        sub, old_ids = g.induced(comp)
        pair = next(_solutions(sub), None)
        if pair is None:
            return None
        d.update(old_ids[v] for v in pair.d)
        t.update(old_ids[v] for v in pair.t)
    return DtPair.of(d, t)


def enumerate_dt_pairs(g: Multigraph, limit: int | None = None) -> list[DtPair]:
    """All DT-pairs of G in deterministic order, truncated at limit if given.

    Pairs need not cover V; free vertices are allowed.  limit=2 suffices for
    uniqueness tests.
    """
    if limit is not None and limit <= 0:
        return []
    out = []
    for pair in _solutions(g):
        out.append(pair)
        if limit is not None and len(out) >= limit:
            break
    return out


def count_covering_pairs(g: Multigraph, limit: int | None = None) -> int:
    """Number of DT-pairs with D ∪ T = V (reported separately from the rest)."""
    count = 0
    for pair in _solutions(g):
        if len(pair.d) + len(pair.t) == g.n:
            count += 1
            if limit is not None and count >= limit:
                break
    return count
