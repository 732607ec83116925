"""Top-k query answering over Datalog+/- ontologies ranked by subjective reports."""

from ._reprank import (
    ChaseOptions,
    GReportStore,
    HierarchySet,
    InconsistencyError,
    Ontology,
    ParseError,
    ReportStore,
    Spo,
    ValidationError,
    compare_greports,
    rank_basic,
    rank_generalized,
    rank_hist,
    validate_hierarchical,
)

__all__ = [
    "ChaseOptions",
    "GReportStore",
    "HierarchySet",
    "InconsistencyError",
    "Ontology",
    "ParseError",
    "ReportStore",
    "Spo",
    "ValidationError",
    "compare_greports",
    "rank_basic",
    "rank_generalized",
    "rank_hist",
    "validate_hierarchical",
]
