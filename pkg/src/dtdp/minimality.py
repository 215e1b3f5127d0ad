"""Minimal DTDP deciders: single-deletion criterion plus the 2^m oracle."""

from __future__ import annotations

from itertools import combinations

from .domination import DtPair, find_dt_pair
from .multigraph import Multigraph

BRUTE_FORCE_EDGE_LIMIT = 16


def is_minimal_dtdp(g: Multigraph) -> tuple[bool, tuple[int, DtPair] | None]:
    """Decide minimality of a connected graph by single edge deletions.

    Single deletions suffice: every proper spanning subgraph sits inside some
    G-e, and being DTDP is upward closed under edge addition.  When the
    answer is False because some G-e stays DTDP, the witness carries that
    edge id and a DT-pair of G-e.
    """
    if not g.is_connected():
        raise ValueError("minimality is defined for connected graphs")
    if find_dt_pair(g) is None:
        return False, None
    for e in g.edge_ids():
        pair = find_dt_pair(g.delete_edge(e))
        if pair is not None:
            return False, (e, pair)
    return True, None


def brute_force_minimal_oracle(g: Multigraph) -> bool:
    """Definitional check over all proper spanning subgraphs (testing only).

    Proper edge subsets are scanned in decreasing size so the common
    witnesses (single deletions) are found first; the scan is exhaustive
    when none exists.
    """
    if not g.is_connected():
        raise ValueError("minimality is defined for connected graphs")
    if g.m > BRUTE_FORCE_EDGE_LIMIT:
        raise ValueError(f"oracle size guard exceeded: m={g.m} > {BRUTE_FORCE_EDGE_LIMIT}")
    if find_dt_pair(g) is None:
        return False
    ids = g.edge_ids()
    for size in range(g.m - 1, -1, -1):
        for subset in combinations(ids, size):
            if find_dt_pair(g.spanning(subset)) is not None:
                return False
    return True
