"""SMILES parser producing one MolecularGraph per dot-separated component.

Supports branches, single-digit and %NN ring closures, bond orders, bracket
atoms (isotope, charge, explicit hydrogens, atom maps) and implicit-hydrogen
resolution for organic-subset atoms. Stereochemistry markers are lexed by the
tokenizer but rejected here: the toolkit treats molecules as flat graphs.
"""

import re

from rxnseq.chem.graph import (
    AROMATIC,
    AROMATIC_SUBSET,
    DOUBLE,
    ORGANIC_SUBSET,
    SINGLE,
    TRIPLE,
    Atom,
    Bond,
    MolecularGraph,
    default_implicit_h,
)
from rxnseq.chem.tokenizer import tokenize


class SmilesError(ValueError):
    """Base class for structural SMILES errors."""


class UnbalancedParenthesis(SmilesError):
    pass


class UnmatchedRingClosure(SmilesError):
    def __init__(self, digit: int):
        self.digit = digit
        super().__init__(f"ring closure {digit} opened but never closed")


class EmptyComponent(SmilesError):
    pass


class MalformedBracketAtom(SmilesError):
    def __init__(self, token: str, position: int, reason: str = ""):
        self.token = token
        self.position = position
        detail = f": {reason}" if reason else ""
        super().__init__(f"malformed bracket atom {token!r} at token {position}{detail}")


class UnsupportedStereochemistry(SmilesError):
    def __init__(self, token: str):
        self.token = token
        super().__init__(f"stereochemistry marker {token!r} is not supported")


BOND_TOKENS = {"-": SINGLE, "=": DOUBLE, "#": TRIPLE, ":": AROMATIC}
STEREO_TOKENS = {"/", "\\", "@"}
REJECTED_TOKENS = {"~", "*", "$", "?", ">"}

_BRACKET_RE = re.compile(
    r"^\[(?P<isotope>\d+)?(?P<symbol>[A-Z][a-z]?|[bcnosp])(?P<chiral>@{1,2})?"
    r"(?P<hcount>H\d*)?(?P<charge>\+\d+|-\d+|\++|-+)?(?::(?P<map>\d+))?\]$"
)


def _parse_bracket(token: str, position: int) -> Atom:
    m = _BRACKET_RE.match(token)
    if m is None:
        if "@" in token:
            raise UnsupportedStereochemistry(token)
        raise MalformedBracketAtom(token, position)
    if m.group("chiral"):
        raise UnsupportedStereochemistry(token)
    symbol = m.group("symbol")
    aromatic = symbol[0].islower()
    if aromatic:
        symbol = symbol.upper()
        if symbol not in AROMATIC_SUBSET:
            raise MalformedBracketAtom(token, position, f"{symbol.lower()!r} cannot be aromatic")
    hcount = m.group("hcount")
    if hcount is None:
        explicit_h = 0
    elif hcount == "H":
        explicit_h = 1
    else:
        explicit_h = int(hcount[1:])
    charge_text = m.group("charge")
    if charge_text is None:
        charge = 0
    elif len(charge_text) > 1 and charge_text[1:].isdigit():
        charge = int(charge_text)  # "+2" / "-3"
    else:
        charge = len(charge_text) * (1 if charge_text[0] == "+" else -1)  # "+", "--", ...
    isotope = m.group("isotope")
    atom_map = m.group("map")
    return Atom(
        element=symbol,
        aromatic=aromatic,
        charge=charge,
        explicit_h=explicit_h,
        isotope=int(isotope) if isotope is not None else None,
        atom_map=int(atom_map) if atom_map is not None else None,
        hydrogens=explicit_h,
    )


def _finish_component(
    atoms: list[Atom],
    bonds: list[Bond],
    open_rings: dict[int, tuple[int, int | None]],
    branch_stack: list[int],
) -> MolecularGraph:
    if branch_stack:
        raise UnbalancedParenthesis("unclosed '(' at end of component")
    if open_rings:
        raise UnmatchedRingClosure(next(iter(open_rings)))
    if not atoms:
        raise EmptyComponent("component contains no atoms")
    graph = MolecularGraph(atoms=atoms, bonds=bonds)
    for idx, atom in enumerate(graph.atoms):
        if atom.explicit_h is None:
            atom.hydrogens = default_implicit_h(atom, graph.bond_order_sum(idx))
    return graph


def parse(smiles: str) -> list[MolecularGraph]:
    """Parse a SMILES string into its component molecular graphs."""
    tokens = tokenize(smiles)
    graphs: list[MolecularGraph] = []

    atoms: list[Atom] = []
    bonds: list[Bond] = []
    open_rings: dict[int, tuple[int, int | None]] = {}
    branch_stack: list[int] = []
    prev_atom: int | None = None
    pending_bond: int | None = None
    saw_tokens = False

    def add_atom(atom: Atom):
        nonlocal prev_atom, pending_bond
        atoms.append(atom)
        idx = len(atoms) - 1
        if prev_atom is not None:
            order = pending_bond
            if order is None:
                both_aromatic = atoms[prev_atom].aromatic and atom.aromatic
                order = AROMATIC if both_aromatic else SINGLE
            bonds.append(Bond(prev_atom, idx, order))
        prev_atom = idx
        pending_bond = None

    def close_or_open_ring(digit: int):
        nonlocal pending_bond
        if prev_atom is None:
            raise SmilesError(f"ring closure {digit} before any atom")
        if digit in open_rings:
            partner, partner_bond = open_rings.pop(digit)
            if partner == prev_atom:
                raise SmilesError(f"ring closure {digit} bonds an atom to itself")
            order = pending_bond if pending_bond is not None else partner_bond
            if (
                pending_bond is not None
                and partner_bond is not None
                and pending_bond != partner_bond
            ):
                raise SmilesError(f"conflicting bond orders on ring closure {digit}")
            if order is None:
                both_aromatic = atoms[partner].aromatic and atoms[prev_atom].aromatic
                order = AROMATIC if both_aromatic else SINGLE
            if any({b.a, b.b} == {partner, prev_atom} for b in bonds):
                raise SmilesError(f"duplicate bond via ring closure {digit}")
            bonds.append(Bond(partner, prev_atom, order))
        else:
            open_rings[digit] = (prev_atom, pending_bond)
        pending_bond = None

    def flush_component():
        nonlocal atoms, bonds, open_rings, branch_stack, prev_atom, pending_bond
        if pending_bond is not None:
            raise SmilesError("dangling bond at end of component")
        graphs.append(_finish_component(atoms, bonds, open_rings, branch_stack))
        atoms, bonds, open_rings, branch_stack = [], [], {}, []
        prev_atom, pending_bond = None, None

    for pos, token in enumerate(tokens):
        saw_tokens = True
        if token.startswith("["):
            add_atom(_parse_bracket(token, pos))
        elif token in ORGANIC_SUBSET:
            add_atom(Atom(element=token, aromatic=False, explicit_h=None))
        elif token in {"b", "c", "n", "o", "s", "p"}:
            add_atom(Atom(element=token.upper(), aromatic=True, explicit_h=None))
        elif token in BOND_TOKENS:
            if pending_bond is not None:
                raise SmilesError(f"two bond symbols in a row at token {pos}")
            pending_bond = BOND_TOKENS[token]
        elif token == "(":
            if prev_atom is None:
                raise UnbalancedParenthesis("branch opened before any atom")
            branch_stack.append(prev_atom)
        elif token == ")":
            if not branch_stack:
                raise UnbalancedParenthesis("')' without matching '('")
            if pending_bond is not None:
                raise SmilesError("dangling bond before ')'")
            prev_atom = branch_stack.pop()
        elif token.isdigit():
            close_or_open_ring(int(token))
        elif token.startswith("%"):
            close_or_open_ring(int(token[1:]))
        elif token == ".":
            if branch_stack:
                raise SmilesError("'.' inside a branch")
            if not atoms:
                raise EmptyComponent("empty component before '.'")
            flush_component()
        elif token in STEREO_TOKENS:
            raise UnsupportedStereochemistry(token)
        elif token in REJECTED_TOKENS:
            raise SmilesError(f"token {token!r} has no meaning inside a molecule")
        else:
            raise SmilesError(f"unexpected token {token!r}")

    if atoms:
        flush_component()
    elif saw_tokens:
        raise EmptyComponent("trailing empty component")
    else:
        raise EmptyComponent("empty SMILES string")
    return graphs
