"""Meet-over-all-paths reference computation.

This module recomputes the per-node analysis values along explicit program
paths, independently of the fixpoint solvers, and checks the two
characterizations against each other:

  * the bounded-length path meet at every node and length equals the
    corresponding synchronous iterate of the solver, and
  * once the path meets stop changing from one length bound to the next,
    they equal the solver's fixpoint exactly.

``enum_paths``, ``path_congruence`` and ``m_l`` are the literal definitions
(every path is rebuilt from scratch). ``mop_table`` enumerates the same
paths breadth-first but carries each path's congruence along, extending it
one edge at a time and memoizing repeated (node, value) steps; this is the
form the verifier uses. Both routes are cross-checked in the test suite.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .congruence import (
    LatticeElem,
    Partition,
    TOP,
    bottom,
    meet,
    meet_all,
    partitions_equal,
)
from .dataflow import FlowGraph, Function, SolverConfig, solve_jacobi, states_equal
from .errors import PathLimitError
from .terms import TermUniverse
from .transfer import apply_statement

Path = tuple[int, ...]

DEFAULT_PATH_CAP = 10**6


def enum_paths(graph: FlowGraph, k: int, bound: int, cap: int = DEFAULT_PATH_CAP) -> list[Path]:
    """All paths from the entry to ``k`` of length strictly below ``bound``.

    Paths are produced breadth-first by length, lexicographically within a
    length. Vertices may repeat (paths traverse loops).
    """
    result: list[Path] = []
    if bound <= 0:
        return result
    frontier: list[Path] = [(1,)]
    if k == 1:
        result.append((1,))
    for _ in range(1, bound):
        nxt: list[Path] = []
        for path in frontier:
            for s in graph.succ(path[-1]):
                nxt.append(path + (s,))
        if len(nxt) > cap:
            raise PathLimitError(f"more than {cap} paths of one length")
        frontier = nxt
        result.extend(p for p in frontier if p[-1] == k)
        if len(result) > cap:
            raise PathLimitError(f"more than {cap} paths to node {k}")
        if not frontier:
            break
    return result


def path_congruence(path: Path, graph: FlowGraph, universe: TermUniverse) -> Partition:
    """Fold the statements along ``path`` starting from the finest partition.

    Function points apply their statement; confluence points copy the value.
    """
    elem: LatticeElem = bottom(universe)
    for v in path[1:]:
        kind = graph.kind(v)
        if isinstance(kind, Function):
            elem = apply_statement(elem, kind.stmt)
    assert isinstance(elem, Partition)
    return elem


def m_l(
    graph: FlowGraph,
    universe: TermUniverse,
    k: int,
    length: int,
    cap: int = DEFAULT_PATH_CAP,
) -> LatticeElem:
    """Meet of the path congruences over all paths to ``k`` shorter than ``length``."""
    paths = enum_paths(graph, k, length, cap)
    return meet_all(path_congruence(p, graph, universe) for p in paths)


def mop_table(
    graph: FlowGraph,
    universe: TermUniverse,
    max_len: int,
    cap: int = DEFAULT_PATH_CAP,
) -> list[tuple[LatticeElem, ...]]:
    """Bounded path meets for every node: ``table[l][k - 1]`` covers paths
    of length below ``l``, for every ``l`` up to ``max_len``."""
    n = graph.n
    cum: list[LatticeElem] = [TOP] * n
    rows: list[tuple[LatticeElem, ...]] = [tuple(cum)]
    frontier: list[tuple[int, Partition]] = [(1, bottom(universe))]
    step_memo: dict[tuple[int, Partition], Partition] = {}
    for _ in range(max_len):
        for end, value in frontier:
            cum[end - 1] = meet(cum[end - 1], value)
        rows.append(tuple(cum))
        nxt: list[tuple[int, Partition]] = []
        for end, value in frontier:
            for s in graph.succ(end):
                key = (s, value)
                out = step_memo.get(key)
                if out is None:
                    kind = graph.kind(s)
                    if isinstance(kind, Function):
                        applied = apply_statement(value, kind.stmt)
                        assert isinstance(applied, Partition)
                        out = applied
                    else:
                        out = value
                    step_memo[key] = out
                nxt.append((s, out))
        if len(nxt) > cap:
            raise PathLimitError(f"more than {cap} paths of one length")
        frontier = nxt
    return rows


def mop(
    graph: FlowGraph,
    universe: TermUniverse,
    k: int,
    max_len: int,
    cap: int = DEFAULT_PATH_CAP,
) -> tuple[LatticeElem, bool]:
    """Meet over all bounded path meets at ``k``, and whether the whole
    table already stabilized (in which case the value is exact)."""
    rows = mop_table(graph, universe, max_len, cap)
    value = meet_all(row[k - 1] for row in rows)
    stabilized = max_len >= 1 and states_equal(rows[max_len - 1], rows[max_len])
    return value, stabilized


@dataclass
class VerifyReport:
    node_count: int
    max_len: int
    stabilized: bool
    checks: int = 0
    iterate_mismatches: list[tuple[int, int]] = field(default_factory=list)
    fixpoint_mismatches: list[int] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.iterate_mismatches and not self.fixpoint_mismatches


def verify_mop_mfp(
    graph: FlowGraph,
    universe: TermUniverse,
    max_len: int,
    cap: int = DEFAULT_PATH_CAP,
) -> VerifyReport:
    """Compare the path-meet table against the solver, length by length.

    Every (node, length) pair up to ``max_len`` is checked for exact
    partition equality; if the table stabilizes within the bound, the
    stabilized values are additionally checked against the fixpoint.
    """
    rows = mop_table(graph, universe, max_len, cap)
    solved = solve_jacobi(graph, universe, SolverConfig(trace=True))
    trace = solved.trace
    assert trace is not None

    def iterate(l: int) -> tuple[LatticeElem, ...]:
        # past stabilization every further iterate equals the fixpoint
        return trace[l] if l < len(trace) else trace[-1]

    report = VerifyReport(
        node_count=graph.n,
        max_len=max_len,
        stabilized=max_len >= 1 and states_equal(rows[max_len - 1], rows[max_len]),
    )
    for l in range(max_len + 1):
        for k in range(1, graph.n + 1):
            report.checks += 1
            if not partitions_equal(rows[l][k - 1], iterate(l)[k - 1]):
                report.iterate_mismatches.append((k, l))
    if report.stabilized:
        for k in range(1, graph.n + 1):
            if not partitions_equal(rows[max_len][k - 1], solved.state[k - 1]):
                report.fixpoint_mismatches.append(k)
    return report
