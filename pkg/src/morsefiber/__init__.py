"""Rank invariant and line-fibered persistence diagrams of multi-parameter
filtrations, computed from the critical values of a discrete gradient
vector field."""

from .diagram import DiagramPoint, FiberDiagram
from .dgvf import (
    VectorField,
    build_consistent_dgvf,
    check_acyclic,
    check_consistent,
    check_matching,
    collapse_toward,
    critical_cells,
    parse_dgvf,
)
from .filtration import Filtration, leq, lub, parse_filtration, strictly_less
from .gf2 import backend_name
from .homology import betti, betti_numbers, line_persistence_reduction, rank_inclusion
from .line_fiber import (
    LineSignature,
    equivalent,
    fiber_diagram,
    push_ceiling,
    pushed_criticals,
    signature,
    transfer,
)
from .lines import Line, PushResult, parse_line_literal, push
from .query_cache import FiberCache, QueryResult
from .rank_invariant import (
    ClosedCriticalSet,
    RankEngine,
    critical_values,
    lub_closure,
    rank,
)

__version__ = "0.1.0"

__all__ = [
    "ClosedCriticalSet",
    "DiagramPoint",
    "FiberCache",
    "FiberDiagram",
    "Filtration",
    "Line",
    "LineSignature",
    "PushResult",
    "QueryResult",
    "RankEngine",
    "VectorField",
    "backend_name",
    "betti",
    "betti_numbers",
    "build_consistent_dgvf",
    "check_acyclic",
    "check_consistent",
    "check_matching",
    "collapse_toward",
    "critical_cells",
    "critical_values",
    "equivalent",
    "fiber_diagram",
    "leq",
    "line_persistence_reduction",
    "lub",
    "lub_closure",
    "parse_dgvf",
    "parse_filtration",
    "parse_line_literal",
    "push",
    "push_ceiling",
    "pushed_criticals",
    "rank",
    "rank_inclusion",
    "signature",
    "strictly_less",
    "transfer",
]
