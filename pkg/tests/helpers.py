"""Shared fixtures-in-code: program loading, hand-built partitions, and the
seeded random generators used by property and acceptance tests."""

from __future__ import annotations

import random
from pathlib import Path

from herbrand import (
    Assign,
    Atom,
    AtomRef,
    NonDet,
    Partition,
    Sum,
    TermUniverse,
    apply_statement,
    bottom,
    build_universe,
    format_term,
    get_class,
    meet,
    parse_program,
    parse_term,
)

ROOT = Path(__file__).resolve().parent.parent
PROGRAMS_DIR = ROOT / "programs"
GOLDEN_DIR = Path(__file__).resolve().parent / "golden"

CORPUS_FILES = [
    "straight_line.dfg",
    "diamond.dfg",
    "loop.dfg",
    "nested_loop.dfg",
    "nondet_copy.dfg",
    "nondet_branch.dfg",
    "self_confluence.dfg",
    "compound_rhs.dfg",
]


def program_text(name: str) -> str:
    return (PROGRAMS_DIR / name).read_text(encoding="utf-8")


def load_program(name: str):
    return parse_program(program_text(name), origin=name)


def make_partition(universe: TermUniverse, groups: list[list[str]]) -> Partition:
    """Partition with the given classes (term texts); everything else singleton."""
    labels: list[object] = list(range(len(universe.terms)))
    for gi, group in enumerate(groups):
        for text in group:
            pos = universe.index[parse_term(text, universe)]
            labels[pos] = ("group", gi)
    return Partition(universe, tuple(labels))


def cls(p: Partition, text: str) -> set[str]:
    """Formatted member set of the class of the given term."""
    return {format_term(t) for t in get_class(parse_term(text, p.universe), p)}


# ---------------------------------------------------------------------------
# seeded random generation
# ---------------------------------------------------------------------------

# every pool stays within 6 atoms including the two reserved constants
UNIVERSE_POOLS: list[tuple[list[str], list[str]]] = [
    (["x", "y"], []),
    (["x"], ["a"]),
    (["x", "y"], ["a"]),
    (["x", "y"], ["a", "b"]),
    (["x", "y", "z"], ["a"]),
]


def rand_universe(rng: random.Random) -> TermUniverse:
    variables, constants = rng.choice(UNIVERSE_POOLS)
    return build_universe(variables, constants)


def rand_rhs(universe: TermUniverse, rng: random.Random, avoid: Atom):
    pool = [a for a in universe.variables + universe.constants if a != avoid]
    if not pool:
        return None
    if rng.random() < 0.5:
        return AtomRef(rng.choice(pool))
    return Sum(AtomRef(rng.choice(pool)), AtomRef(rng.choice(pool)))


def rand_statement(universe: TermUniverse, rng: random.Random):
    target = rng.choice(universe.variables)
    if rng.random() < 0.25:
        return NonDet(target)
    rhs = rand_rhs(universe, rng, target)
    if rhs is None:
        return NonDet(target)
    return Assign(target, rhs)


def rand_partition(universe: TermUniverse, rng: random.Random, steps: int | None = None) -> Partition:
    """A partition generated by random statements and meets from the finest one."""
    if steps is None:
        steps = rng.randrange(0, 8)
    pool = [bottom(universe)]
    current = pool[0]
    for _ in range(steps):
        if rng.random() < 0.3 and len(pool) > 1:
            current = meet(current, rng.choice(pool))
        else:
            current = apply_statement(current, rand_statement(universe, rng))
        pool.append(current)
    return current


def rand_program_text(rng: random.Random, max_nodes: int = 8) -> str:
    """A random valid program: ids are contiguous, every node reachable,
    back edges arise from confluence second-predecessors."""
    variables = ["x", "y", "z"][: rng.randrange(1, 4)]
    constants = ["a", "b"][: rng.randrange(0, 3)]
    n = rng.randrange(2, max_nodes + 1)
    lines = ["vars " + " ".join(variables)]
    if constants:
        lines.append("consts " + " ".join(constants))
    lines.append("node 1 entry")
    for k in range(2, n + 1):
        primary = rng.randrange(1, k)
        if k >= 3 and rng.random() < 0.3:
            secondary = rng.randrange(1, n + 1)
            lines.append(f"node {k} confluence pred {primary} {secondary}")
            continue
        target = rng.choice(variables)
        atoms = [a for a in variables + constants if a != target]
        if not atoms or rng.random() < 0.25:
            lines.append(f"node {k} nondet {target} pred {primary}")
        elif rng.random() < 0.5:
            lines.append(f"node {k} assign {target} := {rng.choice(atoms)} pred {primary}")
        else:
            lhs, rhs = rng.choice(atoms), rng.choice(atoms)
            lines.append(f"node {k} assign {target} := {lhs} + {rhs} pred {primary}")
    return "\n".join(lines) + "\n"


def random_corpus(count: int, seed: int = 20260810) -> list[tuple[str, str]]:
    out = []
    for i in range(count):
        rng = random.Random(seed + i)
        out.append((f"random_{i:02d}", rand_program_text(rng)))
    return out


def full_corpus(random_count: int = 14) -> list[tuple[str, str]]:
    """Named program texts: every checked-in file plus generated ones."""
    named = [(name, program_text(name)) for name in CORPUS_FILES]
    return named + random_corpus(random_count)
