"""Shared helpers: independent brute-force oracles and random graph corpora."""

from __future__ import annotations

import random
from itertools import product

import pytest

from dtdp.multigraph import Multigraph


def brute_force_dtdp(g: Multigraph) -> bool:
    """Independent DTDP oracle: scan all 3^n (D, T, free) assignments.

    The domination predicates are restated inline so the oracle shares no
    code with the searcher it cross-checks.
    """
    neigh = [set() for _ in range(g.n)]
    for _, u, v in g.edge_list():
        neigh[u].add(v)
        neigh[v].add(u)
    for label in product((0, 1, 2), repeat=g.n):
        d = {v for v in range(g.n) if label[v] == 1}
        t = {v for v in range(g.n) if label[v] == 2}
        if any(v not in d and not (neigh[v] & d) for v in range(g.n)):
            continue
        if any(not (neigh[v] & t) for v in range(g.n)):
            continue
        return True
    return False


def brute_force_pair_count(g: Multigraph) -> int:
    """Independent count of all valid (D, T) assignments, free vertices allowed."""
    neigh = [set() for _ in range(g.n)]
    for _, u, v in g.edge_list():
        neigh[u].add(v)
        neigh[v].add(u)
    count = 0
    for label in product((0, 1, 2), repeat=g.n):
        d = {v for v in range(g.n) if label[v] == 1}
        t = {v for v in range(g.n) if label[v] == 2}
        if any(v not in d and not (neigh[v] & d) for v in range(g.n)):
            continue
        if any(not (neigh[v] & t) for v in range(g.n)):
            continue
        count += 1
    return count


def random_multigraph(rng: random.Random, max_n: int = 6, max_m: int = 9) -> Multigraph:
    """Random multigraph with loops and parallel edges, no isolation guarantee."""
    n = rng.randint(1, max_n)
    m = rng.randint(0, max_m)
    pairs = []
    for _ in range(m):
        u = rng.randrange(n)
        if rng.random() < 0.15:
            pairs.append((u, u))
        else:
            pairs.append((u, rng.randrange(n)))
    return Multigraph.from_edges(n, pairs)


def random_connected_multigraph(
    rng: random.Random, max_n: int = 6, extra: int = 4
) -> Multigraph:
    """Random connected multigraph: random tree plus random extra edges/loops."""
    n = rng.randint(1, max_n)
    pairs = []
    for v in range(1, n):
        pairs.append((rng.randrange(v), v))
    for _ in range(rng.randint(0, extra)):
        u = rng.randrange(n)
        if rng.random() < 0.25:
            pairs.append((u, u))
        else:
            pairs.append((u, rng.randrange(n)))
    if n == 1 and not pairs:
        pairs.append((0, 0))
    return Multigraph.from_edges(n, pairs)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20250809)
