"""Deterministic canonical SMILES emission.

Atom ranks come from iterative invariant refinement: atoms start in classes
keyed by (degree, element, aromaticity, hydrogen count, charge, isotope) and
are repeatedly re-partitioned by the sorted ranks of their neighbors.
Remaining ties are broken by promoting the lowest-index atom of the smallest
tied class and re-refining. Emission is a depth-first walk from the
lowest-ranked atom, visiting neighbors in ascending rank; the emitted string
is re-parsed and re-emitted once so the final form does not depend on the
atom order of the input.
"""

from rxnseq.chem.graph import (
    AROMATIC,
    ATOMIC_NUMBERS,
    DOUBLE,
    ORGANIC_SUBSET,
    SINGLE,
    TRIPLE,
    Atom,
    MolecularGraph,
    ValenceViolation,
    default_implicit_h,
    validate_valence,
)
from rxnseq.chem.parser import parse


class ValenceError(ValueError):
    def __init__(self, violations: list[ValenceViolation], smiles: str = ""):
        self.violations = violations
        where = f" in {smiles!r}" if smiles else ""
        super().__init__(
            "valence limit exceeded%s: %s"
            % (where, "; ".join(str(v) for v in violations))
        )


def strip_atom_maps(graph: MolecularGraph) -> MolecularGraph:
    """Copy of the graph with all atom-map labels cleared."""
    out = graph.copy()
    for atom in out.atoms:
        atom.atom_map = None
    return out


def _initial_key(atom: Atom, degree: int) -> tuple:
    z = ATOMIC_NUMBERS.get(atom.element, 999)
    return (
        degree,
        z,
        atom.element,
        atom.aromatic,
        atom.hydrogens,
        abs(atom.charge),
        atom.charge,
        atom.isotope or 0,
    )


def _ranks_from_keys(keys: list) -> list[int]:
    n = len(keys)
    order = sorted(range(n), key=lambda i: keys[i])
    ranks = [0] * n
    current = 0
    for pos, i in enumerate(order):
        if pos > 0 and keys[i] != keys[order[pos - 1]]:
            current = pos
        ranks[i] = current
    return ranks


def _refine(graph: MolecularGraph, ranks: list[int]) -> list[int]:
    adjacency = graph.adjacency
    while True:
        keys = [
            (ranks[i], tuple(sorted(ranks[j] for j in adjacency[i])))
            for i in range(len(ranks))
        ]
        new_ranks = _ranks_from_keys(keys)
        if len(set(new_ranks)) == len(set(ranks)):
            return new_ranks
        ranks = new_ranks


def canonical_ranks(graph: MolecularGraph) -> list[int]:
    """Total atom order, invariant under relabeling of the input atoms."""
    n = len(graph.atoms)
    keys = [_initial_key(atom, graph.degree(i)) for i, atom in enumerate(graph.atoms)]
    ranks = _refine(graph, _ranks_from_keys(keys))
    while len(set(ranks)) < n:
        tied_rank = min(r for r in ranks if ranks.count(r) > 1)
        chosen = ranks.index(tied_rank)
        keys = [(r, 0 if i == chosen else 1) for i, r in enumerate(ranks)]
        ranks = _refine(graph, _ranks_from_keys(keys))
    return ranks


def _bond_char(order: int, a: Atom, b: Atom) -> str:
    if order == SINGLE:
        return "-" if (a.aromatic and b.aromatic) else ""
    if order == DOUBLE:
        return "="
    if order == TRIPLE:
        return "#"
    if order == AROMATIC:
        return "" if (a.aromatic and b.aromatic) else ":"
    raise ValueError(f"unknown bond order {order}")


def _atom_text(graph: MolecularGraph, idx: int) -> str:
    atom = graph.atoms[idx]
    symbol = atom.element.lower() if atom.aromatic else atom.element
    bare = (
        atom.isotope is None
        and atom.atom_map is None
        and atom.charge == 0
        and atom.element in ORGANIC_SUBSET
        and atom.hydrogens == default_implicit_h(atom, graph.bond_order_sum(idx))
    )
    if bare:
        return symbol
    parts = ["["]
    if atom.isotope is not None:
        parts.append(str(atom.isotope))
    parts.append(symbol)
    if atom.hydrogens == 1:
        parts.append("H")
    elif atom.hydrogens > 1:
        parts.append(f"H{atom.hydrogens}")
    if atom.charge == 1:
        parts.append("+")
    elif atom.charge == -1:
        parts.append("-")
    elif atom.charge > 1:
        parts.append(f"+{atom.charge}")
    elif atom.charge < -1:
        parts.append(str(atom.charge))
    if atom.atom_map is not None:
        parts.append(f":{atom.atom_map}")
    parts.append("]")
    return "".join(parts)


def _digit_text(digit: int) -> str:
    return str(digit) if digit < 10 else f"%{digit:02d}"


def write_smiles(graph: MolecularGraph, ranks: list[int]) -> str:
    """Emit one connected molecule, ordering the walk by the given ranks.

    Any integer priority list works (ties fall back to atom index), which
    makes this double as a randomized emitter for invariance checks.
    """
    n = len(graph.atoms)
    if n == 0:
        return ""
    adjacency = graph.adjacency
    priority = lambda i: (ranks[i], i)
    start = min(range(n), key=priority)

    visited = [False] * n
    parent: list[int | None] = [None] * n
    children: list[list[int]] = [[] for _ in range(n)]
    pre = [0] * n
    preorder: list[int] = []
    closure_pairs: set[frozenset[int]] = set()
    closures: list[tuple[int, int]] = []  # (open_atom, close_atom), open visited first

    stack: list[tuple[int, list[int], int]] = []
    visited[start] = True
    pre[start] = 0
    preorder.append(start)
    stack.append((start, sorted(adjacency[start], key=priority), 0))
    while stack:
        u, nbrs, i = stack.pop()
        while i < len(nbrs):
            v = nbrs[i]
            i += 1
            if not visited[v]:
                visited[v] = True
                parent[v] = u
                children[u].append(v)
                pre[v] = len(preorder)
                preorder.append(v)
                stack.append((u, nbrs, i))
                stack.append((v, sorted(adjacency[v], key=priority), 0))
                break
            if v != parent[u] and parent[v] != u:
                pair = frozenset((u, v))
                if pair not in closure_pairs:
                    closure_pairs.add(pair)
                    closures.append((v, u))  # v was visited before u

    if len(preorder) != n:
        raise ValueError("graph is not connected; emit one component at a time")

    # Ring-closure digits: allocated smallest-free at the opening atom, in
    # the order the closures are encountered along the walk.
    opens_at: list[list[tuple[int, int]]] = [[] for _ in range(n)]  # (partner_pre, partner)
    closes_at: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for open_atom, close_atom in closures:
        opens_at[open_atom].append((pre[close_atom], close_atom))
        closes_at[close_atom].append((pre[open_atom], open_atom))
    for lst in opens_at:
        lst.sort()
    for lst in closes_at:
        lst.sort()

    digit_of: dict[frozenset[int], int] = {}
    in_use: set[int] = set()

    def take_digit() -> int:
        d = 1
        while d in in_use:
            d += 1
        in_use.add(d)
        return d

    def ring_text(u: int) -> str:
        out = []
        for _, partner in closes_at[u]:
            pair = frozenset((u, partner))
            d = digit_of.pop(pair)
            in_use.discard(d)
            out.append(_digit_text(d))
        for _, partner in opens_at[u]:
            pair = frozenset((u, partner))
            d = take_digit()
            digit_of[pair] = d
            bond = graph.bond_between(u, partner)
            out.append(
                _bond_char(bond.order, graph.atoms[u], graph.atoms[partner])
                + _digit_text(d)
            )
        return "".join(out)

    # Assemble in preorder with an explicit stack of string fragments.
    pieces: list[str] = []
    emit_stack: list[tuple[str, int] | tuple[str, str]] = [("atom", start)]
    while emit_stack:
        kind, payload = emit_stack.pop()
        if kind == "text":
            pieces.append(payload)
            continue
        u = payload
        pieces.append(_atom_text(graph, u))
        pieces.append(ring_text(u))
        kids = children[u]
        items: list[tuple[str, int] | tuple[str, str]] = []
        for pos, v in enumerate(kids):
            bond = graph.bond_between(u, v)
            ch = _bond_char(bond.order, graph.atoms[u], graph.atoms[v])
            if pos == len(kids) - 1:
                items.append(("text", ch))
                items.append(("atom", v))
            else:
                items.append(("text", "(" + ch))
                items.append(("atom", v))
                items.append(("text", ")"))
        emit_stack.extend(reversed(items))
    return "".join(pieces)


def canonical_smiles(graph: MolecularGraph) -> str:
    """Canonical string for one connected molecule (double-emission fixpoint)."""
    first = write_smiles(graph, canonical_ranks(graph))
    regraph = parse(first)[0]
    return write_smiles(regraph, canonical_ranks(regraph))


def canonicalize(smiles: str) -> str:
    """Canonical form of a SMILES string, components sorted and dot-joined."""
    graphs = parse(smiles)
    for g in graphs:
        violations = validate_valence(g)
        if violations:
            raise ValenceError(violations, smiles)
    return ".".join(sorted(canonical_smiles(g) for g in graphs))
