"""Term algebra: atoms, ordered sums, substitution, and the finite universe
of depth-limited expressions the analysis operates on.

Terms are built from declared variables and constants with a single binary
operator ``+`` treated as uninterpreted (no commutativity, no arithmetic).
The universe of a program consists of every atom plus every ordered pair of
atoms under ``+``; deeper expressions exist as ``Term`` trees but are not
universe members.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import DeclarationError, ParseError

VARIABLE = "variable"
CONSTANT = "constant"
RESERVED = "reserved"

IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")

# Two constants that no source program can name ('$' is not a legal
# identifier character), so a pair of fresh distinct constants always exists.
RESERVED_NAMES = ("$nd1", "$nd2")


@dataclass(frozen=True)
class Atom:
    kind: str
    name: str

    def is_constant(self) -> bool:
        return self.kind != VARIABLE

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Term:
    """Base class for term nodes; instances are ``AtomRef`` or ``Sum``."""


@dataclass(frozen=True)
class AtomRef(Term):
    atom: Atom


@dataclass(frozen=True)
class Sum(Term):
    left: Term
    right: Term


def occurs(t: Term, x: Atom) -> bool:
    """True iff the atom ``x`` appears anywhere in ``t``."""
    if isinstance(t, AtomRef):
        return t.atom == x
    assert isinstance(t, Sum)
    return occurs(t.left, x) or occurs(t.right, x)


def substitute(t: Term, x: Atom, alpha: Term) -> Term:
    """Replace every occurrence of the variable ``x`` in ``t`` by ``alpha``."""
    if x.kind != VARIABLE:
        raise ValueError(f"substitution target {x.name!r} is not a variable")
    if isinstance(t, AtomRef):
        return alpha if t.atom == x else t
    assert isinstance(t, Sum)
    if not occurs(t, x):
        return t
    return Sum(substitute(t.left, x, alpha), substitute(t.right, x, alpha))


def depth(t: Term) -> int:
    if isinstance(t, AtomRef):
        return 0
    assert isinstance(t, Sum)
    return 1 + max(depth(t.left), depth(t.right))


@dataclass(frozen=True, eq=False)
class TermUniverse:
    """The finite expression universe: all atoms and all atom pairs.

    ``terms`` holds every atom reference followed by every ordered pair in
    row-major atom order, so ``len(terms) == len(atoms) + len(atoms) ** 2``.
    ``index`` maps each universe term to its dense position. Universes
    compare by identity; one analysis run shares a single universe.
    """

    variables: tuple[Atom, ...]
    constants: tuple[Atom, ...]
    reserved: tuple[Atom, Atom]
    atoms: tuple[Atom, ...]
    terms: tuple[Term, ...]
    index: dict[Term, int]
    by_name: dict[str, Atom]

    def resolve(self, name: str) -> Atom:
        atom = self.by_name.get(name)
        if atom is None:
            raise DeclarationError(f"undeclared name {name!r}")
        return atom

    def pair_operands(self, pos: int) -> tuple[int, int]:
        """Atom positions (left, right) of the compound term at ``pos``."""
        m = len(self.atoms)
        if pos < m:
            raise ValueError(f"term at position {pos} is an atom")
        return divmod(pos - m, m)


def build_universe(variables: list[str], constants: list[str]) -> TermUniverse:
    """Build the universe for the declared names plus the reserved constants."""
    seen: set[str] = set()
    for name in list(variables) + list(constants):
        if not IDENT_RE.match(name):
            raise DeclarationError(f"invalid identifier {name!r}")
        if name in seen:
            raise DeclarationError(f"duplicate declaration of {name!r}")
        seen.add(name)

    var_atoms = tuple(Atom(VARIABLE, n) for n in variables)
    const_atoms = tuple(Atom(CONSTANT, n) for n in constants)
    reserved = (Atom(RESERVED, RESERVED_NAMES[0]), Atom(RESERVED, RESERVED_NAMES[1]))
    atoms = var_atoms + const_atoms + reserved

    terms: list[Term] = [AtomRef(a) for a in atoms]
    for a in atoms:
        for b in atoms:
            terms.append(Sum(AtomRef(a), AtomRef(b)))

    return TermUniverse(
        variables=var_atoms,
        constants=const_atoms,
        reserved=reserved,
        atoms=atoms,
        terms=tuple(terms),
        index={t: i for i, t in enumerate(terms)},
        by_name={a.name: a for a in atoms},
    )


def parse_term(text: str, universe: TermUniverse) -> Term:
    """Parse ``atom`` or ``atom + atom`` against the universe's declarations."""
    parts = text.split("+")
    if len(parts) > 2:
        raise ParseError(f"expression {text.strip()!r} nests more than one '+'")
    names = [p.strip() for p in parts]
    if any(not n for n in names):
        raise ParseError(f"malformed expression {text.strip()!r}")
    for n in names:
        if not IDENT_RE.match(n):
            raise ParseError(f"invalid atom {n!r}")
    refs = [AtomRef(universe.resolve(n)) for n in names]
    if len(refs) == 1:
        return refs[0]
    return Sum(refs[0], refs[1])


def format_term(t: Term) -> str:
    """Render a term; nested sums are fully parenthesized."""
    if isinstance(t, AtomRef):
        return t.atom.name
    assert isinstance(t, Sum)

    def wrap(s: Term) -> str:
        text = format_term(s)
        return f"({text})" if isinstance(s, Sum) else text

    return f"{wrap(t.left)}+{wrap(t.right)}"
