"""Multigraph toolkit for disjoint dominating / total dominating partitions."""

from .domination import (
    DtPair,
    enumerate_dt_pairs,
    find_dt_pair,
    is_dominating,
    is_dtdp,
    is_total_dominating,
    is_valid_dt_pair,
)
from .minimality import brute_force_minimal_oracle, is_minimal_dtdp
from .multigraph import (
    GraphFormatError,
    IsoCertificate,
    Multigraph,
    are_isomorphic,
    from_graph6,
    parse_mgf,
    to_graph6,
)
from .subdivision import (
    HalfEdge,
    PartitionFamily,
    SubdivisionLabels,
    canonical_dt_pair,
    classify_partition,
    s2,
    s2_full,
)

__all__ = [
    "DtPair",
    "GraphFormatError",
    "HalfEdge",
    "IsoCertificate",
    "Multigraph",
    "PartitionFamily",
    "SubdivisionLabels",
    "are_isomorphic",
    "brute_force_minimal_oracle",
    "canonical_dt_pair",
    "classify_partition",
    "enumerate_dt_pairs",
    "find_dt_pair",
    "from_graph6",
    "is_dominating",
    "is_dtdp",
    "is_minimal_dtdp",
    "is_total_dominating",
    "is_valid_dt_pair",
    "parse_mgf",
    "s2",
    "s2_full",
    "to_graph6",
]
