"""Reaction strings: parsing and reagent separation.

A reaction line reads "reactants>reagents>products" with dot-separated
molecules per field. When atom maps are present, input-side molecules whose
map labels intersect the product's are reactants and the rest are reagents.
"""

from dataclasses import dataclass, field

from rxnseq.chem import MolecularGraph, canonical_smiles, parse, strip_atom_maps


class MalformedReaction(ValueError):
    pass


class MissingAtomMaps(ValueError):
    pass


class MultipleProducts(ValueError):
    pass


@dataclass
class Reaction:
    reactants: list[MolecularGraph]
    reagents: list[MolecularGraph]
    products: list[MolecularGraph]
    raw: str = ""

    def strip_maps(self) -> "Reaction":
        return Reaction(
            reactants=[strip_atom_maps(g) for g in self.reactants],
            reagents=[strip_atom_maps(g) for g in self.reagents],
            products=[strip_atom_maps(g) for g in self.products],
            raw=self.raw,
        )

    def canonical_fields(self) -> tuple[str, str, str]:
        """Per-field canonical strings (components sorted, maps ignored)."""
        def canon_field(graphs):
            return ".".join(sorted(canonical_smiles(strip_atom_maps(g)) for g in graphs))

        return (
            canon_field(self.reactants),
            canon_field(self.reagents),
            canon_field(self.products),
        )

    def key(self) -> str:
        """Map-free canonical reaction string used for deduplication."""
        return ">".join(self.canonical_fields())

    def reactant_key(self) -> str:
        return self.canonical_fields()[0]


def parse_reaction(line: str) -> Reaction:
    """Parse one reaction line; reports which field a SMILES error came from."""
    fields = line.strip().split(">")
    if len(fields) != 3:
        raise MalformedReaction(
            f"expected 'reactants>reagents>products', got {len(fields) - 1} '>' in {line!r}"
        )
    parsed: list[list[MolecularGraph]] = []
    for name, text in zip(("reactants", "reagents", "products"), fields):
        if text == "":
            parsed.append([])
            continue
        try:
            parsed.append(parse(text))
        except ValueError as exc:
            raise MalformedReaction(f"{name} field of {line!r}: {exc}") from exc
    reactants, reagents, products = parsed
    if not products:
        raise MalformedReaction(f"no products in {line!r}")
    return Reaction(reactants, reagents, products, raw=line.strip())


def _map_labels(graph: MolecularGraph) -> set[int]:
    return {a.atom_map for a in graph.atoms if a.atom_map is not None}


def has_product_maps(rxn: Reaction) -> bool:
    return any(_map_labels(g) for g in rxn.products)


def separate_reagents(rxn: Reaction) -> Reaction:
    """Reclassify input molecules by atom-map overlap with the product.

    The union of the original reactant and reagent lists is partitioned:
    molecules sharing at least one map label with a product become reactants,
    all others reagents. Input order is preserved within each class.
    """
    product_maps: set[int] = set()
    for g in rxn.products:
        product_maps |= _map_labels(g)
    if not product_maps:
        raise MissingAtomMaps(f"no mapped product atoms in {rxn.raw!r}")
    reactants, reagents = [], []
    for g in rxn.reactants + rxn.reagents:
        if _map_labels(g) & product_maps:
            reactants.append(g)
        else:
            reagents.append(g)
    return Reaction(reactants, reagents, rxn.products, raw=rxn.raw)
