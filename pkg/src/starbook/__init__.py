"""Star-forest book layouts: constructions, verification, exact search."""

from .model import (
    BookLayout,
    CircularOrder,
    Edge,
    Page,
    PageKind,
    SimpleGraph,
    arc_contains,
    crosscap_page,
    disk_page,
    edge,
    edge_set,
    identity_order,
    interleaves,
)
from .verify import (
    CrossCapSplit,
    Profile,
    StarForestCheck,
    VerificationReport,
    Violation,
    crosscap_page_valid,
    disk_page_valid,
    is_star_forest,
    verify_layout,
)
from .construct import (
    BoundsSummary,
    StrictLayoutUnavailable,
    bounds,
    complete_graph,
    cycle_power,
    minus_edge,
    octahedron,
    octahedron_pages,
    odd_extension,
    relaxed_complete,
    star_pages,
    strict_complete,
    strict_literal,
)
from .search import (
    ExactValueResult,
    SearchOutcome,
    SearchProblem,
    canonical_orders,
    exact_value,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "BookLayout", "CircularOrder", "Edge", "Page", "PageKind", "SimpleGraph",
    "arc_contains", "crosscap_page", "disk_page", "edge", "edge_set",
    "identity_order", "interleaves",
    "CrossCapSplit", "Profile", "StarForestCheck", "VerificationReport",
    "Violation", "crosscap_page_valid", "disk_page_valid", "is_star_forest",
    "verify_layout",
    "BoundsSummary", "StrictLayoutUnavailable", "bounds", "complete_graph",
    "cycle_power", "minus_edge", "octahedron", "octahedron_pages",
    "odd_extension", "relaxed_complete", "star_pages", "strict_complete",
    "strict_literal",
    "ExactValueResult", "SearchOutcome", "SearchProblem", "canonical_orders",
    "exact_value", "solve",
    "__version__",
]
