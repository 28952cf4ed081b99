"""Statement semantics on the congruence lattice.

A deterministic assignment ``y := beta`` maps a partition through inverse
substitution: two terms are equivalent afterwards exactly when substituting
``beta`` for ``y`` in both yields equivalent terms beforehand. A
non-deterministic assignment ``y := *`` (input statement) keeps a pair
equivalent only if the equivalence survives every ``y``-free substitution,
which reduces to substituting two distinct fresh constants. Both map ``TOP``
to ``TOP`` without looking at the statement.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .congruence import (
    LatticeElem,
    Partition,
    Base,
    is_top,
    meet_all,
    term_value,
)
from .errors import DeclarationError, SelfReferenceError, UniverseMismatchError
from .terms import Atom, AtomRef, Term, TermUniverse, VARIABLE, occurs, substitute


@dataclass(frozen=True)
class Assign:
    target: Atom
    rhs: Term

    def __post_init__(self) -> None:
        if occurs(self.rhs, self.target):
            raise SelfReferenceError(
                f"right-hand side of {self.target.name!r} assignment mentions the target"
            )


@dataclass(frozen=True)
class NonDet:
    target: Atom


Statement = Union[Assign, NonDet]


def _check_target(universe: TermUniverse, y: Atom) -> None:
    if universe.by_name.get(y.name) != y or y.kind != VARIABLE:
        raise DeclarationError(f"{y.name!r} is not a declared variable")


def _check_rhs(universe: TermUniverse, beta: Term) -> None:
    if beta in universe.index:
        return
    if isinstance(beta, AtomRef):
        raise DeclarationError(f"undeclared atom {beta.atom.name!r}")
    raise UniverseMismatchError("right-hand side must be an atom or a sum of two atoms")


def assign_transfer(elem: LatticeElem, y: Atom, beta: Term) -> LatticeElem:
    """Semantics of ``y := beta``; requires ``y`` not to occur in ``beta``."""
    if is_top(elem):
        return elem
    assert isinstance(elem, Partition)
    _check_target(elem.universe, y)
    _check_rhs(elem.universe, beta)
    if occurs(beta, y):
        raise SelfReferenceError(f"{y.name!r} occurs in its own right-hand side")
    keys = []
    for pos, t in enumerate(elem.universe.terms):
        if occurs(t, y):
            keys.append(term_value(substitute(t, y, beta), elem))
        else:
            keys.append(Base(elem.labels[pos]))
    return Partition(elem.universe, tuple(keys))


def nondet_transfer(elem: LatticeElem, y: Atom) -> LatticeElem:
    """Semantics of ``y := *`` via the two reserved constants."""
    if is_top(elem):
        return elem
    assert isinstance(elem, Partition)
    _check_target(elem.universe, y)
    c1, c2 = elem.universe.reserved
    return meet_all(
        [
            elem,
            assign_transfer(elem, y, AtomRef(c1)),
            assign_transfer(elem, y, AtomRef(c2)),
        ]
    )


def nondet_definitional(elem: LatticeElem, y: Atom, betas: Iterable[Term]) -> LatticeElem:
    """Reference semantics of ``y := *`` over an explicit substitution sample.

    Two terms stay together iff they are equivalent under ``elem`` and remain
    equivalent after substituting each ``beta``. Intended as a test oracle,
    not a production path.
    """
    if is_top(elem):
        return elem
    assert isinstance(elem, Partition)
    _check_target(elem.universe, y)
    betas = tuple(betas)
    for beta in betas:
        if occurs(beta, y):
            raise SelfReferenceError(f"sample substitution for {y.name!r} mentions it")
    keys = []
    for t in elem.universe.terms:
        keys.append(
            (
                term_value(t, elem),
                tuple(term_value(substitute(t, y, beta), elem) for beta in betas),
            )
        )
    return Partition(elem.universe, tuple(keys))


def apply_statement(elem: LatticeElem, stmt: Statement) -> LatticeElem:
    if isinstance(stmt, Assign):
        return assign_transfer(elem, stmt.target, stmt.rhs)
    return nondet_transfer(elem, stmt.target)


def y_free_universe_terms(universe: TermUniverse, y: Atom) -> list[Term]:
    """Universe terms in which ``y`` does not occur."""
    return [t for t in universe.terms if not occurs(t, y)]
