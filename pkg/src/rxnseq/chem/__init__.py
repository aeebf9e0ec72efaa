"""SMILES handling: tokenization, parsing, validation, canonicalization."""

from rxnseq.chem.tokenizer import TOKEN_PATTERN, UnrecognizedCharacter, detokenize, tokenize
from rxnseq.chem.graph import (
    Atom,
    Bond,
    MolecularGraph,
    ValenceViolation,
    validate_valence,
)
from rxnseq.chem.parser import (
    EmptyComponent,
    MalformedBracketAtom,
    SmilesError,
    UnbalancedParenthesis,
    UnmatchedRingClosure,
    UnsupportedStereochemistry,
    parse,
)
from rxnseq.chem.canon import (
    ValenceError,
    canonical_ranks,
    canonical_smiles,
    canonicalize,
    strip_atom_maps,
    write_smiles,
)

__all__ = [
    "TOKEN_PATTERN",
    "tokenize",
    "detokenize",
    "UnrecognizedCharacter",
    "Atom",
    "Bond",
    "MolecularGraph",
    "validate_valence",
    "ValenceViolation",
    "parse",
    "SmilesError",
    "UnbalancedParenthesis",
    "UnmatchedRingClosure",
    "EmptyComponent",
    "MalformedBracketAtom",
    "UnsupportedStereochemistry",
    "canonical_ranks",
    "canonicalize",
    "canonical_smiles",
    "strip_atom_maps",
    "write_smiles",
    "ValenceError",
]
