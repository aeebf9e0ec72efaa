"""Molecular graphs: atoms, bonds, valence bookkeeping.

A graph holds the atoms and bonds of one connected molecule. Hydrogen counts
are stored explicitly on every atom (the parser resolves implicit hydrogens
of organic-subset atoms from the standard valence table).
"""

from dataclasses import dataclass, field, replace

# Elements writable without brackets, and their default valences used to
# resolve implicit hydrogens (S and P pick the smallest valence that covers
# the existing bonds).
ORGANIC_SUBSET = {"B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I"}
AROMATIC_SUBSET = {"B", "C", "N", "O", "S", "P"}
DEFAULT_VALENCES = {
    "B": (3,),
    "C": (4,),
    "N": (3,),
    "O": (2,),
    "P": (3, 5),
    "S": (2, 4, 6),
    "F": (1,),
    "Cl": (1,),
    "Br": (1,),
    "I": (1,),
    "H": (1,),
}

ATOMIC_NUMBERS = {
    "H": 1, "He": 2, "Li": 3, "Be": 4, "B": 5, "C": 6, "N": 7, "O": 8,
    "F": 9, "Ne": 10, "Na": 11, "Mg": 12, "Al": 13, "Si": 14, "P": 15,
    "S": 16, "Cl": 17, "Ar": 18, "K": 19, "Ca": 20, "Ti": 22, "Cr": 24,
    "Mn": 25, "Fe": 26, "Co": 27, "Ni": 28, "Cu": 29, "Zn": 30, "Ga": 31,
    "Ge": 32, "As": 33, "Se": 34, "Br": 35, "Kr": 36, "Rb": 37, "Sr": 38,
    "Zr": 40, "Mo": 42, "Ru": 44, "Rh": 45, "Pd": 46, "Ag": 47, "Cd": 48,
    "In": 49, "Sn": 50, "Sb": 51, "Te": 52, "I": 53, "Xe": 54, "Cs": 55,
    "Ba": 56, "W": 74, "Os": 76, "Ir": 77, "Pt": 78, "Au": 79, "Hg": 80,
    "Tl": 81, "Pb": 82, "Bi": 83,
}

SINGLE, DOUBLE, TRIPLE, AROMATIC = 1, 2, 3, 4
BOND_ORDER_VALUE = {SINGLE: 1.0, DOUBLE: 2.0, TRIPLE: 3.0, AROMATIC: 1.5}


@dataclass
class Atom:
    element: str
    aromatic: bool = False
    charge: int = 0
    explicit_h: int | None = None  # None: hydrogens were implicit in the source
    isotope: int | None = None
    atom_map: int | None = None
    hydrogens: int = 0  # resolved count, filled by the parser

    def copy(self) -> "Atom":
        return replace(self)


@dataclass(frozen=True)
class Bond:
    a: int
    b: int
    order: int  # SINGLE/DOUBLE/TRIPLE/AROMATIC

    def other(self, idx: int) -> int:
        return self.b if idx == self.a else self.a


@dataclass
class MolecularGraph:
    atoms: list[Atom] = field(default_factory=list)
    bonds: list[Bond] = field(default_factory=list)

    def __post_init__(self):
        self._adjacency: list[list[int]] | None = None

    @property
    def adjacency(self) -> list[list[int]]:
        """Per-atom neighbor index lists (cached; invalidate via rebuild)."""
        if self._adjacency is None or len(self._adjacency) != len(self.atoms):
            adj: list[list[int]] = [[] for _ in self.atoms]
            for bond in self.bonds:
                adj[bond.a].append(bond.b)
                adj[bond.b].append(bond.a)
            self._adjacency = adj
        return self._adjacency

    def bond_between(self, a: int, b: int) -> Bond | None:
        for bond in self.bonds:
            if {bond.a, bond.b} == {a, b}:
                return bond
        return None

    def degree(self, idx: int) -> int:
        return len(self.adjacency[idx])

    def bond_order_sum(self, idx: int) -> float:
        return sum(
            BOND_ORDER_VALUE[b.order] for b in self.bonds if idx in (b.a, b.b)
        )

    def copy(self) -> "MolecularGraph":
        return MolecularGraph(
            atoms=[a.copy() for a in self.atoms], bonds=list(self.bonds)
        )

    def permuted(self, perm: list[int]) -> "MolecularGraph":
        """Relabel atoms so new index i holds old atom perm[i]."""
        inverse = [0] * len(perm)
        for new, old in enumerate(perm):
            inverse[old] = new
        atoms = [self.atoms[old].copy() for old in perm]
        bonds = [Bond(inverse[b.a], inverse[b.b], b.order) for b in self.bonds]
        return MolecularGraph(atoms=atoms, bonds=bonds)


def default_implicit_h(atom: Atom, bond_sum: float) -> int:
    """Hydrogens an unbracketed atom would carry given its bond environment.

    Aromatic bonds enter the sum as 1.5 and the total is rounded half-up, so
    a benzene carbon (sum 3.0) gets one hydrogen and a fusion carbon
    (sum 4.5 -> 5) gets none.
    """
    valences = DEFAULT_VALENCES.get(atom.element)
    if valences is None or atom.charge != 0:
        return 0
    needed = int(bond_sum + 0.5)
    for v in valences:
        if v >= needed:
            return v - needed
    return 0


def max_valence(atom: Atom) -> int | None:
    """Permitted bond+hydrogen total for the element/charge, None if unknown."""
    valences = DEFAULT_VALENCES.get(atom.element)
    if valences is None:
        return None
    base = valences[-1]
    if atom.element == "B":
        return base - atom.charge
    if atom.element == "C":
        return base - abs(atom.charge)
    return base + atom.charge


@dataclass(frozen=True)
class ValenceViolation:
    atom_index: int
    element: str
    charge: int
    total: float
    limit: int

    def __str__(self) -> str:
        sign = f"{self.charge:+d}" if self.charge else ""
        return (
            f"atom {self.atom_index} [{self.element}{sign}]: "
            f"valence {self.total:g} exceeds limit {self.limit}"
        )


def validate_valence(graph: MolecularGraph) -> list[ValenceViolation]:
    """Check every atom against its element/charge valence limit.

    Aromatic bonds count 1 each here: any kekule assignment gives an atom at
    least one unit per aromatic bond, so this flags only sure violations and
    never rejects a plain aromatic ring written without perception.
    """
    violations = []
    for idx, atom in enumerate(graph.atoms):
        limit = max_valence(atom)
        if limit is None:
            continue
        total = 0.0
        for bond in graph.bonds:
            if idx in (bond.a, bond.b):
                total += 1.0 if bond.order == AROMATIC else BOND_ORDER_VALUE[bond.order]
        total += atom.hydrogens
        if total > limit:
            violations.append(
                ValenceViolation(idx, atom.element, atom.charge, total, limit)
            )
    return violations
