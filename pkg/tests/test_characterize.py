"""Structure theorems: property checks, decomposition, recognition, witnesses."""

from __future__ import annotations

import pytest

from dtdp.characterize import (
    VERDICT_CYCLE,
    VERDICT_NOT_MINIMAL,
    VERDICT_SUBDIVISION,
    check_thm51_properties,
    classify_minimal,
    construct_nonminimal_witness,
    decompose_to_subdivision,
)
from dtdp.domination import DtPair, enumerate_dt_pairs, find_dt_pair, is_valid_dt_pair
from dtdp.families import complete, corona, cycle, k2s, path
from dtdp.minimality import is_minimal_dtdp
from dtdp.multigraph import Multigraph, are_isomorphic, verify_iso_certificate
from dtdp.subdivision import (
    HalfEdge,
    PartitionFamily,
    classify_partition,
    halfedges_at,
    random_partition_family,
    random_theta,
    s2_full,
)

from .conftest import random_connected_multigraph


class TestThm51Properties:
    def test_c9_pair_passes(self):
        g = cycle(9)
        for pair in enumerate_dt_pairs(g):
            assert check_thm51_properties(g, pair).all_hold

    def test_p4_pair_passes(self):
        g = path(4)
        assert check_thm51_properties(g, find_dt_pair(g)).all_hold

    def test_k4_pair_fails_neighborhood_condition(self):
        # computed with the brute-force property checks: D={0} is maximal
        # independent in K4 and G[T] is a star, but T-vertices see two
        # non-leaf outside neighbors, so the third property fails
        g = complete(4)
        report = check_thm51_properties(g, DtPair.of({0}, {1, 2}))
        assert report.d_maximal_independent
        assert report.t_components_stars_or_loops
        assert not report.t_neighborhood_condition
        assert not report.all_hold

    def test_loopy_minimal_graph_passes(self):
        g1 = Multigraph.from_edges(2, [(0, 1), (1, 1)])
        pair = find_dt_pair(g1)
        assert check_thm51_properties(g1, pair).all_hold

    def test_invalid_pair_rejected(self):
        with pytest.raises(ValueError):
            check_thm51_properties(path(4), DtPair.of({0}, {1}))


class TestDecomposition:
    def test_c9_to_c3(self):
        dec = decompose_to_subdivision(cycle(9))
        assert dec is not None
        assert are_isomorphic(dec.h, cycle(3))
        assert verify_iso_certificate(dec.reconstruction, cycle(9), dec.iso)

    def test_p10_to_p4(self):
        dec = decompose_to_subdivision(path(10))
        assert dec is not None and are_isomorphic(dec.h, path(4))

    def test_corona_p3(self):
        dec = decompose_to_subdivision(corona(path(3)))
        assert dec is not None and are_isomorphic(dec.h, path(3))
        merged = [b for v in range(3) for b in dec.partition.at(v) if len(b) > 1]
        assert len(merged) == 1  # the far contraction at the center

    def test_theta_reconstruction(self):
        # S2(P2) with a doubled leaf: decomposition recovers theta = 2
        from dtdp.subdivision import s2_full

        base, _ = s2_full(path(2), None, {1: 2})
        dec = decompose_to_subdivision(base)
        assert dec is not None
        assert sorted(dec.theta.values()) == [1, 2]

    def test_loopy_minimal_graph(self):
        g1 = Multigraph.from_edges(2, [(0, 1), (1, 1)])
        dec = decompose_to_subdivision(g1)
        assert dec is not None
        assert dec.h.n == 1 and dec.h.m == 1 and dec.h.is_loop(0)

    def test_non_subdivision_has_none(self):
        # every DT-pair of C4 normalizes with an edge inside D or an
        # ambiguous anchor, so no reconstruction exists
        assert decompose_to_subdivision(cycle(4)) is None
        assert decompose_to_subdivision(cycle(5)) is None  # not even DTDP

    def test_k4_is_a_subdivision_of_triple_loop(self):
        # K4 = S2(K1^3, P) with the loop slots merged pairwise
        dec = decompose_to_subdivision(complete(4))
        assert dec is not None
        assert dec.h.n == 1 and dec.h.m == 3
        assert all(dec.h.is_loop(e) for e in dec.h.edge_ids())

    def test_roundtrip_on_random_subdivisions(self, rng):
        for _ in range(25):
            h = random_connected_multigraph(rng, max_n=4, extra=2)
            p = random_partition_family(h, rng, allow_twin=False)
            theta = random_theta(h, p, rng, max_copies=2)
            g, _ = s2_full(h, p, theta)
            dec = decompose_to_subdivision(g)
            assert dec is not None
            recon, _ = s2_full(dec.h, dec.partition, dec.theta)
            cert = are_isomorphic(recon, g)
            assert cert is not None and verify_iso_certificate(recon, g, cert)


class TestClassification:
    def test_cycles(self):
        assert classify_minimal(cycle(6)).verdict == VERDICT_CYCLE
        assert classify_minimal(cycle(9)).verdict == VERDICT_CYCLE

    def test_p10_subdivision(self):
        result = classify_minimal(path(10))
        assert result.verdict == VERDICT_SUBDIVISION
        assert are_isomorphic(result.decomposition.h, path(4))

    def test_c12_not_minimal_with_reason(self):
        result = classify_minimal(cycle(12))
        assert result.verdict == VERDICT_NOT_MINIMAL
        assert "pendant" in result.reason

    def test_non_dtdp_reason(self):
        assert classify_minimal(cycle(5)).reason == "not a DTDP-graph"

    def test_input_contract(self):
        with pytest.raises(ValueError):
            classify_minimal(cycle(1))  # loop
        with pytest.raises(ValueError):
            classify_minimal(path(2))  # order < 3
        with pytest.raises(ValueError):
            classify_minimal(Multigraph.from_edges(6, [(0, 1), (2, 3), (4, 5)]))

    def test_json_shape(self):
        payload = classify_minimal(path(10)).to_json()
        assert payload["verdict"] == "subdivision"
        assert payload["H"] and payload["P"] is not None and payload["theta"] is not None
        payload = classify_minimal(cycle(6)).to_json()
        assert payload["H"] is None

    def test_agrees_with_decider_on_small_graphs(self):
        from dtdp.catalog import enumerate_connected_graphs

        for n in range(3, 7):
            for g in enumerate_connected_graphs(n):
                got = classify_minimal(g).verdict != VERDICT_NOT_MINIMAL
                assert got == is_minimal_dtdp(g)[0], g

    def test_cross_check_flag(self):
        classify_minimal(path(10), cross_check=True)
        classify_minimal(complete(5), cross_check=True)


class TestWitness:
    def test_c4_identity(self):
        w = construct_nonminimal_witness(cycle(4))
        assert are_isomorphic(w.subdivision, cycle(12))
        assert w.witness.m < w.subdivision.m
        assert w.witness.n == w.subdivision.n
        assert is_valid_dt_pair(w.witness, w.pair)
        assert is_minimal_dtdp(w.subdivision)[0] is False

    def test_k2_3(self):
        w = construct_nonminimal_witness(k2s(3))
        assert is_valid_dt_pair(w.witness, w.pair)

    def test_c3_rejected(self):
        with pytest.raises(ValueError, match="no good subgraph"):
            construct_nonminimal_witness(cycle(3))

    def test_twin_contraction_rejected(self):
        h = Multigraph.from_edges(1, [(0, 0), (0, 0)])  # K1^2 has a good subgraph
        p = PartitionFamily.validate(
            h,
            {
                0: [
                    [HalfEdge(0, 0, 0), HalfEdge(0, 1, 0)],
                    [HalfEdge(1, 0, 0)],
                    [HalfEdge(1, 1, 0)],
                ]
            },
        )
        with pytest.raises(ValueError, match="twin"):
            construct_nonminimal_witness(h, p)

    def test_mixed_partition_route(self):
        h = cycle(4)
        raw = {v: [[x] for x in halfedges_at(h, v)] for v in range(4)}
        raw[2] = [list(halfedges_at(h, 2))]
        p = PartitionFamily.validate(h, raw)
        assert not classify_partition(h, p).minimality_safe
        w = construct_nonminimal_witness(h, p)
        assert len(w.deleted_edges) == 1
        assert is_valid_dt_pair(w.witness, w.pair)
        assert is_minimal_dtdp(w.subdivision)[0] is False

    def test_loop_generator_route(self):
        # loop vertex with outward structure: exercises the loop-case deletions
        h = Multigraph.from_edges(3, [(0, 0), (0, 1), (1, 2), (2, 2)])
        w = construct_nonminimal_witness(h)
        assert is_valid_dt_pair(w.witness, w.pair)
        assert is_minimal_dtdp(w.subdivision)[0] is False

    def test_theta_passthrough(self):
        w = construct_nonminimal_witness(cycle(4), None, None)
        base = w.subdivision
        # no intermediate leaves on a cycle, so theta stays empty
        assert base.n == 12
