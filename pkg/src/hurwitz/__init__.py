"""Decide the Hurwitz existence problem for three-point covers of the sphere
by exhaustive constellation search, and study the resulting dessins."""

__version__ = "0.1.0"

from .core import (  # noqa: E402
    BranchDatum,
    Partition,
    control_family_datum,
    paper_family_datum,
    riemann_hurwitz_chi,
    validate_branch_datum,
    validate_partition,
)
from .search import (  # noqa: E402
    Constellation,
    Decision,
    SearchOptions,
    count_constellations,
    decide_realizability,
    verify_witness,
)

__all__ = [
    "BranchDatum",
    "Constellation",
    "Decision",
    "Partition",
    "SearchOptions",
    "control_family_datum",
    "count_constellations",
    "decide_realizability",
    "paper_family_datum",
    "riemann_hurwitz_chi",
    "validate_branch_datum",
    "validate_partition",
    "verify_witness",
]
