"""Control flow graphs and the fixpoint solvers.

A graph has node 1 as the unique entry (no predecessors); every other node
is reachable from the entry and is either a function point (one predecessor,
carries a statement) or a confluence point (exactly two predecessors, merges
with the lattice meet). One synchronous step recomputes every node from the
previous state vector: the entry is pinned to the finest partition, function
points apply their statement to the predecessor value, confluences meet
their two predecessor values.

Two solvers compute the greatest fixpoint of that step starting from the
all-``TOP`` vector: a synchronous (Jacobi) iteration that can retain its full
iterate history, and an in-place sweep (Gauss-Seidel) iteration. Both yield
the same result; the fixpoint is the per-point equivalence analysis answer.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Mapping, Sequence, Union

from .congruence import LatticeElem, TOP, bottom, is_top, meet, partitions_equal
from .errors import GraphError, IterationLimitError
from .terms import TermUniverse
from .transfer import Statement, apply_statement


@dataclass(frozen=True)
class Entry:
    pass


@dataclass(frozen=True)
class Function:
    stmt: Statement


@dataclass(frozen=True)
class Confluence:
    pass


NodeKind = Union[Entry, Function, Confluence]


@dataclass(frozen=True)
class FlowGraph:
    n: int
    kinds: tuple[NodeKind, ...]
    preds: tuple[tuple[int, ...], ...]

    def kind(self, k: int) -> NodeKind:
        return self.kinds[k - 1]

    def pred(self, k: int) -> tuple[int, ...]:
        return self.preds[k - 1]

    @cached_property
    def succs(self) -> tuple[tuple[int, ...], ...]:
        out: list[list[int]] = [[] for _ in range(self.n)]
        for k in range(1, self.n + 1):
            for p in self.pred(k):
                out[p - 1].append(k)
        return tuple(tuple(sorted(s)) for s in out)

    def succ(self, k: int) -> tuple[int, ...]:
        return self.succs[k - 1]


def validate_graph(
    kinds: Mapping[int, NodeKind], preds: Mapping[int, Sequence[int]]
) -> FlowGraph:
    """Check the structural rules and return an immutable graph."""
    ids = sorted(kinds)
    n = len(ids)
    if n == 0:
        raise GraphError("empty graph: node 1 (entry) is required")
    if ids != list(range(1, n + 1)):
        raise GraphError(f"node ids must be 1..{n} without gaps, got {ids}")

    if not isinstance(kinds[1], Entry):
        raise GraphError("node 1 must be the entry point", node=1)
    if preds.get(1):
        raise GraphError("entry node 1 must have no predecessors", node=1)

    pred_tuples: list[tuple[int, ...]] = [()]
    for k in range(2, n + 1):
        kind = kinds[k]
        ps = tuple(preds.get(k, ()))
        for p in ps:
            if not 1 <= p <= n:
                raise GraphError(f"node {k} references missing predecessor {p}", node=k)
        if isinstance(kind, Entry):
            raise GraphError(f"node {k} declared entry; only node 1 may be", node=k)
        if isinstance(kind, Function) and len(ps) != 1:
            raise GraphError(
                f"node {k} is a function point and needs exactly one predecessor, got {len(ps)}",
                node=k,
            )
        if isinstance(kind, Confluence) and len(ps) != 2:
            raise GraphError(
                f"node {k} is a confluence point and needs exactly two predecessors, got {len(ps)}",
                node=k,
            )
        pred_tuples.append(ps)

    graph = FlowGraph(n=n, kinds=tuple(kinds[k] for k in range(1, n + 1)), preds=tuple(pred_tuples))

    reached = {1}
    frontier = [1]
    while frontier:
        node = frontier.pop()
        for s in graph.succ(node):
            if s not in reached:
                reached.add(s)
                frontier.append(s)
    unreachable = [k for k in range(1, n + 1) if k not in reached]
    if unreachable:
        raise GraphError(
            f"node {unreachable[0]} is not reachable from the entry", node=unreachable[0]
        )
    return graph


AnalysisState = tuple[LatticeElem, ...]


def composite_step(
    state: tuple[LatticeElem, ...], graph: FlowGraph, universe: TermUniverse
) -> tuple[LatticeElem, ...]:
    """One synchronous update of every node from the previous state."""
    out: list[LatticeElem] = []
    for k in range(1, graph.n + 1):
        kind = graph.kind(k)
        if isinstance(kind, Entry):
            out.append(bottom(universe))
        elif isinstance(kind, Function):
            (j,) = graph.pred(k)
            out.append(apply_statement(state[j - 1], kind.stmt))
        else:
            i, j = graph.pred(k)
            out.append(meet(state[i - 1], state[j - 1]))
    return tuple(out)


def states_equal(a: tuple[LatticeElem, ...], b: tuple[LatticeElem, ...]) -> bool:
    return len(a) == len(b) and all(partitions_equal(x, y) for x, y in zip(a, b))


@dataclass
class SolverConfig:
    mode: str = "jacobi"
    max_iterations: int | None = None
    trace: bool = False


@dataclass
class SolveResult:
    state: tuple[LatticeElem, ...]
    iterations: int
    trace: list[tuple[LatticeElem, ...]] | None = None


def default_iteration_limit(graph: FlowGraph, universe: TermUniverse) -> int:
    # Each coordinate descends strictly at most |U| + 1 times (TOP plus one
    # step per lost class), so this bound is never reached on valid input.
    return graph.n * (len(universe.terms) + 1) + 1


def solve_jacobi(
    graph: FlowGraph, universe: TermUniverse, config: SolverConfig | None = None
) -> SolveResult:
    """Synchronous iteration from the all-``TOP`` vector to the fixpoint.

    ``iterations`` counts the steps needed to first reach the fixpoint value;
    with tracing on, ``trace[l]`` is the l-th iterate (``trace[0]`` all
    ``TOP``) and the last two entries are equal.
    """
    cfg = config or SolverConfig()
    limit = cfg.max_iterations or default_iteration_limit(graph, universe)
    state: tuple[LatticeElem, ...] = (TOP,) * graph.n
    trace = [state] if cfg.trace else None
    for step in range(1, limit + 1):
        nxt = composite_step(state, graph, universe)
        if trace is not None:
            trace.append(nxt)
        if states_equal(nxt, state):
            assert not any(is_top(v) for v in nxt)
            return SolveResult(state=nxt, iterations=step - 1, trace=trace)
        state = nxt
    raise IterationLimitError(f"no fixpoint within {limit} iterations")


def solve_worklist(
    graph: FlowGraph, universe: TermUniverse, config: SolverConfig | None = None
) -> SolveResult:
    """In-place ascending-id sweeps until a full sweep changes nothing.

    Node 1 is pinned to the finest partition; every other node is recomputed
    from current values, so updates within a sweep are visible immediately.
    ``iterations`` counts full sweeps.
    """
    cfg = config or SolverConfig()
    limit = cfg.max_iterations or default_iteration_limit(graph, universe)
    state: list[LatticeElem] = [TOP] * graph.n
    state[0] = bottom(universe)
    for sweep in range(1, limit + 1):
        changed = False
        for k in range(2, graph.n + 1):
            kind = graph.kind(k)
            if isinstance(kind, Function):
                (j,) = graph.pred(k)
                new = apply_statement(state[j - 1], kind.stmt)
            else:
                i, j = graph.pred(k)
                new = meet(state[i - 1], state[j - 1])
            if not partitions_equal(state[k - 1], new):
                changed = True
            state[k - 1] = new
        if not changed:
            final = tuple(state)
            assert not any(is_top(v) for v in final)
            return SolveResult(state=final, iterations=sweep)
    raise IterationLimitError(f"no fixpoint within {limit} sweeps")


def solve(
    graph: FlowGraph, universe: TermUniverse, config: SolverConfig | None = None
) -> SolveResult:
    cfg = config or SolverConfig()
    if cfg.mode == "worklist":
        return solve_worklist(graph, universe, cfg)
    if cfg.mode == "jacobi":
        return solve_jacobi(graph, universe, cfg)
    raise ValueError(f"unknown solver mode {cfg.mode!r}")
