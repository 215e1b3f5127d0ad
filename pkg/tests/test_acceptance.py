"""Acceptance criteria: exact reproduction of the finite structural claims.

Every criterion prints one PASS/FAIL line (run with `pytest -s`); all
tolerances are exact (zero discrepancies).  The extended order-8
equivalence sweep is gated behind DTDP_ACCEPT_N8=1.
"""

from __future__ import annotations

import os
import random
import time

import pytest

from dtdp.catalog import (
    dom_gg_t,
    enumerate_connected_graphs,
    enumerate_connected_multigraphs,
    enumerate_trees,
)
from dtdp.characterize import (
    VERDICT_NOT_MINIMAL,
    check_thm51_properties,
    classify_minimal,
    construct_nonminimal_witness,
    decompose_to_subdivision,
)
from dtdp.domination import (
    enumerate_dt_pairs,
    find_dt_pair,
    is_dominating,
    is_total_dominating,
    is_valid_dt_pair,
)
from dtdp.families import (
    FamilyFClass,
    RootedTree,
    complete,
    corona,
    cycle,
    expected_status,
    family_f_class,
    path,
    sk_class,
    spider,
)
from dtdp.goodsub import (
    _is_c2,
    _is_c3,
    brute_force_good_search,
    edge_good_certificate,
    loop_good_certificate,
    verify_good_certificate,
)
from dtdp.minimality import brute_force_minimal_oracle, is_minimal_dtdp
from dtdp.multigraph import are_isomorphic, verify_iso_certificate
from dtdp.subdivision import (
    canonical_dt_pair,
    random_partition_family,
    random_theta,
    s2,
    s2_full,
)

from .conftest import random_connected_multigraph


def _report(number: int, name: str, failures: list, started: float) -> None:
    elapsed = time.perf_counter() - started
    status = "PASS" if not failures else f"FAIL ({len(failures)} discrepancies)"
    print(f"criterion {number:>2} ({name}): {status} [{elapsed:.1f}s]")
    assert not failures, failures[:5]


def test_criterion_01_golden_tables():
    started = time.perf_counter()
    failures = []
    spans = {
        "path": (path, range(1, 17)),
        "cycle": (cycle, range(3, 13)),
        "complete": (complete, range(3, 8)),
    }
    for kind, (builder, span) in spans.items():
        for n in span:
            g = builder(n)
            got = (find_dt_pair(g) is not None, is_minimal_dtdp(g)[0])
            if got != expected_status(kind, n):
                failures.append((kind, n, got))
    _report(1, "path/cycle/complete golden tables", failures, started)


def test_criterion_02_corona_law():
    started = time.perf_counter()
    failures = []
    classes = 0
    for n in range(1, 6):
        for h in enumerate_connected_graphs(n):
            classes += 1
            if h.m == 0:
                continue  # the corona of K1 is K2, size-0 base is out of scope
            g = corona(h)
            if find_dt_pair(g) is None:
                failures.append(("not DTDP", h.to_mgf()))
            is_star = h.m == h.n - 1 and sum(
                1 for v in range(h.n) if h.degree(v) >= 2
            ) <= 1
            if is_minimal_dtdp(g)[0] != is_star:
                failures.append(("minimality", h.to_mgf()))
    if classes != 31:
        failures.append(("class count", classes))
    if not is_minimal_dtdp(corona(cycle(1)))[0]:
        failures.append(("corona(C1)", "expected minimal"))
    _report(2, "corona law", failures, started)


def test_criterion_03_tree_families():
    started = time.perf_counter()
    failures = []
    for n in range(1, 10):
        for tree in enumerate_trees(n):
            for root in range(tree.n):
                k = sk_class(RootedTree(tree, root))
                if k is None or k > 3:
                    continue
                if k <= 2 and find_dt_pair(tree) is not None:
                    failures.append(("S0-2 DTDP", tree.to_mgf(), root))
                if k == 3 and not is_minimal_dtdp(tree)[0]:
                    failures.append(("S3 not minimal", tree.to_mgf(), root))

    def leg_multisets(cap):
        def rec(remaining, minimum, acc):
            if len(acc) >= 2:
                yield acc
            for leg in range(minimum, remaining + 1):
                yield from rec(remaining - leg, leg, acc + (leg,))

        yield from rec(cap, 1, ())

    for legs in leg_multisets(12):
        g = spider(legs)
        cls = family_f_class(RootedTree(g, 0))
        if cls is FamilyFClass.NOT_MEMBER:
            continue
        if find_dt_pair(g) is None:
            failures.append(("family-F not DTDP", legs))
        if cls is FamilyFClass.WOUNDED_SPIDER and not is_minimal_dtdp(g)[0]:
            failures.append(("wounded spider not minimal", legs))
    _report(3, "level and spider tree families", failures, started)


def test_criterion_04_subdivision_canonical_pairs():
    started = time.perf_counter()
    failures = []
    rng = random.Random(40425)
    for case in range(200):
        h = random_connected_multigraph(rng, max_n=8, extra=5)
        p = random_partition_family(h, rng, allow_twin=True)
        theta = random_theta(h, p, rng)
        g, labels = s2_full(h, p, theta)
        pair = canonical_dt_pair(labels)
        if pair.d & pair.t:
            failures.append((case, "overlap"))
        elif not is_dominating(g, pair.d) or not is_total_dominating(g, pair.t):
            failures.append((case, h.to_mgf()))
    _report(4, "canonical DT-pair of 200 random subdivisions", failures, started)


def test_criterion_05_remark_49():
    started = time.perf_counter()
    failures = []
    for m in range(1, 7):
        g, _ = s2(cycle(m))
        if find_dt_pair(g) is None:
            failures.append(("S2(Cm) not DTDP", m))
        if is_minimal_dtdp(g)[0] != (m in (1, 2, 3)):
            failures.append(("S2(Cm) minimality", m))
    for n in range(2, 8):
        g, _ = s2(path(n))
        if find_dt_pair(g) is None:
            failures.append(("S2(Pn) not DTDP", n))
        if is_minimal_dtdp(g)[0] != (n in (2, 3, 4, 5)):
            failures.append(("S2(Pn) minimality", n))
    _report(5, "subdivided path/cycle minimality", failures, started)


def test_criterion_06_good_subgraph_agreement():
    started = time.perf_counter()
    failures = []
    checked = 0
    for h in enumerate_connected_multigraphs(7):
        supports = h.supports()
        for e in h.edge_ids():
            if h.is_loop(e):
                built = loop_good_certificate(h, e)
                predicted = not (h.n == 1 and h.m == 1) and (
                    h.endpoints(e)[0] not in supports
                )
            else:
                built = edge_good_certificate(h, e)
                v, u = h.endpoints(e)
                predicted = (
                    not _is_c2(h)
                    and not _is_c3(h)
                    and v not in supports
                    and u not in supports
                )
            brute = brute_force_good_search(h, [e])
            if (brute is not None) != predicted or (built is not None) != predicted:
                failures.append((h.to_mgf(), e))
            for cert in (built, brute):
                if cert is not None and not verify_good_certificate(cert)[0]:
                    failures.append(("certificate", h.to_mgf(), e))
            checked += 1
    assert checked > 10000
    _report(6, "good-subgraph predicate vs oracle (m<=7)", failures, started)


def test_criterion_07_nonminimality_witnesses():
    started = time.perf_counter()
    failures = []
    from dtdp.goodsub import has_good_subgraph

    hosts = [h for h in enumerate_connected_multigraphs(6) if has_good_subgraph(h)]
    rng = random.Random(40426)
    cases = 0
    while cases < 120:
        h = hosts[cases % len(hosts)]
        p = random_partition_family(h, rng, allow_twin=False)
        theta = random_theta(h, p, rng)
        w = construct_nonminimal_witness(h, p, theta)
        proper = w.witness.m < w.subdivision.m and w.witness.n == w.subdivision.n
        if not proper or not is_valid_dt_pair(w.witness, w.pair):
            failures.append(("witness", h.to_mgf()))
        if is_minimal_dtdp(w.subdivision)[0]:
            failures.append(("subdivision minimal", h.to_mgf()))
        cases += 1
    _report(7, "non-minimality witnesses (>=120 sampled)", failures, started)


def _equivalence_failures(max_n: int) -> tuple[list, list]:
    failures = []
    minimal_graphs = []
    for n in range(3, max_n + 1):
        for g in enumerate_connected_graphs(n):
            recognized = classify_minimal(g).verdict != VERDICT_NOT_MINIMAL
            decided = is_minimal_dtdp(g)[0]
            agreed = recognized == decided
            if agreed and g.m <= 16:
                agreed = decided == brute_force_minimal_oracle(g)
            if not agreed:
                failures.append(g.to_mgf())
            if decided:
                minimal_graphs.append(g)
    return failures, minimal_graphs


def test_criterion_08_thm52_equivalence():
    started = time.perf_counter()
    failures, _ = _equivalence_failures(7)
    _report(8, "recognition/deletion/oracle equivalence (n<=7)", failures, started)


@pytest.mark.skipif(
    os.environ.get("DTDP_ACCEPT_N8") != "1",
    reason="extended order-8 sweep is flag-gated (set DTDP_ACCEPT_N8=1)",
)
def test_criterion_08_extended_order_8():
    started = time.perf_counter()
    failures, _ = _equivalence_failures(8)
    _report(8, "equivalence extended to n=8", failures, started)


def test_criterion_09_thm51_properties_and_roundtrip():
    started = time.perf_counter()
    failures = []
    _, minimal_graphs = _equivalence_failures(7)
    assert minimal_graphs
    for g in minimal_graphs:
        for pair in enumerate_dt_pairs(g):
            if not check_thm51_properties(g, pair).all_hold:
                failures.append(("properties", g.to_mgf()))
        dec = decompose_to_subdivision(g)
        if dec is None:
            failures.append(("no decomposition", g.to_mgf()))
            continue
        recon, _ = s2_full(dec.h, dec.partition, dec.theta)
        cert = are_isomorphic(recon, g)
        if cert is None or not verify_iso_certificate(recon, g, cert):
            failures.append(("round-trip", g.to_mgf()))
    _report(9, "minimal-graph properties and decomposition", failures, started)


def test_criterion_10_domatic_total_domatic_bounds():
    started = time.perf_counter()
    failures = []
    for n in range(1, 9):
        for g in enumerate_connected_graphs(n):
            if dom_gg_t(g) > g.n // 3:
                failures.append(("n/3 bound", g.to_mgf()))
    rng = random.Random(40427)
    from dtdp.multigraph import Multigraph

    for _ in range(200):
        pairs = [
            (u, v) for u in range(9) for v in range(u + 1, 9) if rng.random() < 0.35
        ]
        g = Multigraph.from_edges(9, pairs)
        if dom_gg_t(g) > 3:
            failures.append(("n/3 bound sample", g.to_mgf()))
    for n in range(1, 12):
        for tree in enumerate_trees(n):
            if dom_gg_t(tree) > tree.n // 4:
                failures.append(("n/4 tree bound", tree.to_mgf()))
    if dom_gg_t(cycle(5)) != 0:
        failures.append(("C5", "expected 0"))
    if dom_gg_t(complete(9)) != 3:
        failures.append(("K9", "expected 3"))
    _report(10, "domatic-total-domatic bounds", failures, started)
