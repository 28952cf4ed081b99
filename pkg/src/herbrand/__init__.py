"""Herbrand equivalence analysis over control flow graphs.

Computes, at every program point, the partition of the finite expression
universe into classes of terms that denote the same value under every
interpretation of ``+`` as an uninterpreted operator, and cross-checks the
fixpoint result against an explicit meet-over-all-paths computation.
"""

from .congruence import (
    Base,
    ExtendedValue,
    LatticeElem,
    Pair,
    Partition,
    TOP,
    Top,
    Violation,
    bottom,
    congruence_violations,
    equivalent,
    get_class,
    is_congruence,
    is_top,
    meet,
    meet_all,
    partitions_equal,
    refines,
    term_value,
)
from .dataflow import (
    AnalysisState,
    Confluence,
    Entry,
    FlowGraph,
    Function,
    NodeKind,
    SolveResult,
    SolverConfig,
    composite_step,
    solve,
    solve_jacobi,
    solve_worklist,
    states_equal,
    validate_graph,
)
from .errors import (
    AnalysisError,
    DeclarationError,
    GraphError,
    IterationLimitError,
    ParseError,
    PathLimitError,
    SelfReferenceError,
    UniverseMismatchError,
)
from .mop import (
    VerifyReport,
    enum_paths,
    m_l,
    mop,
    mop_table,
    path_congruence,
    verify_mop_mfp,
)
from .program import parse_program
from .report import emit_report, visible_classes
from .terms import (
    Atom,
    AtomRef,
    Sum,
    Term,
    TermUniverse,
    build_universe,
    depth,
    format_term,
    occurs,
    parse_term,
    substitute,
)
from .transfer import (
    Assign,
    NonDet,
    Statement,
    apply_statement,
    assign_transfer,
    nondet_definitional,
    nondet_transfer,
    y_free_universe_terms,
)

__all__ = [name for name in dir() if not name.startswith("_")]
