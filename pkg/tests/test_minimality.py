"""Minimality deciders: examples, decider equivalence, structural laws."""

from __future__ import annotations

import pytest

from dtdp.domination import find_dt_pair, is_valid_dt_pair
from dtdp.families import complete, corona, cycle, path
from dtdp.minimality import brute_force_minimal_oracle, is_minimal_dtdp
from dtdp.multigraph import Multigraph

from .conftest import random_connected_multigraph


class TestDecider:
    def test_cycle_examples(self):
        assert is_minimal_dtdp(cycle(9)) == (True, None)
        minimal, witness = is_minimal_dtdp(cycle(12))
        assert not minimal and witness is not None
        edge, pair = witness
        assert is_valid_dt_pair(cycle(12).delete_edge(edge), pair)

    def test_k4_not_minimal(self):
        assert is_minimal_dtdp(complete(4))[0] is False

    def test_non_dtdp_is_not_minimal(self):
        assert is_minimal_dtdp(path(5)) == (False, None)

    def test_disconnected_rejected(self):
        with pytest.raises(ValueError):
            is_minimal_dtdp(Multigraph.from_edges(4, [(0, 1), (2, 3)]))


class TestOracle:
    def test_examples(self):
        assert brute_force_minimal_oracle(path(7)) is True
        assert brute_force_minimal_oracle(cycle(6)) is True
        assert brute_force_minimal_oracle(path(6)) is False

    def test_size_guard(self):
        with pytest.raises(ValueError):
            brute_force_minimal_oracle(complete(7))

    def test_equivalence_exhaustive_multigraphs(self):
        from dtdp.catalog import enumerate_connected_multigraphs

        for g in enumerate_connected_multigraphs(5):
            assert is_minimal_dtdp(g)[0] == brute_force_minimal_oracle(g), g

    def test_equivalence_simple_graphs(self):
        from dtdp.catalog import enumerate_connected_graphs

        for n in range(1, 7):
            for g in enumerate_connected_graphs(n):
                if g.m <= 12:
                    assert is_minimal_dtdp(g)[0] == brute_force_minimal_oracle(g)

    def test_equivalence_random_multigraphs(self, rng):
        for _ in range(80):
            g = random_connected_multigraph(rng, max_n=6, extra=4)
            if g.m <= 9:
                assert is_minimal_dtdp(g)[0] == brute_force_minimal_oracle(g), g


class TestStructuralLaws:
    def test_leaf_extension_invariance(self, rng):
        # adding a leaf at an existing support changes nothing
        for _ in range(60):
            g = random_connected_multigraph(rng, max_n=5, extra=3)
            supports = sorted(g.supports())
            if not supports:
                continue
            v = supports[0]
            pairs = [(a, b) for _, a, b in g.edge_list()] + [(v, g.n)]
            extended = Multigraph.from_edges(g.n + 1, pairs)
            assert is_minimal_dtdp(g)[0] == is_minimal_dtdp(extended)[0]

    def test_corona_law_small(self):
        from dtdp.catalog import enumerate_connected_graphs

        seen = 0
        for n in range(2, 6):
            for h in enumerate_connected_graphs(n):
                g = corona(h)
                assert find_dt_pair(g) is not None
                is_star = h.m == h.n - 1 and sum(
                    1 for v in range(h.n) if h.degree(v) >= 2
                ) <= 1
                assert is_minimal_dtdp(g)[0] == is_star, h
                seen += 1
        assert seen == 30  # all connected H with 2 <= n <= 5

    def test_corona_c1_minimal(self):
        assert is_minimal_dtdp(corona(cycle(1)))[0] is True

    def test_corona_examples(self):
        assert is_minimal_dtdp(corona(path(3)))[0] is True  # P3 is a star
        g = corona(cycle(4))
        assert find_dt_pair(g) is not None
        assert is_minimal_dtdp(g)[0] is False
