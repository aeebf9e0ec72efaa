"""Reaction parsing, preprocessing stages, and vocabulary handling."""

from rxnseq.data.reactions import (
    MalformedReaction,
    MissingAtomMaps,
    MultipleProducts,
    Reaction,
    parse_reaction,
    separate_reagents,
)
from rxnseq.data.vocab import BOS, EOS, PAD, RESERVED_TOKENS, UNK, Vocabulary, build_token_vocab
from rxnseq.data.pipeline import (
    PreprocessResult,
    build_reagent_vocab,
    deduplicate,
    encode_example,
    preprocess_lines,
    split_dataset,
    write_preprocessed,
)

__all__ = [
    "Reaction",
    "parse_reaction",
    "separate_reagents",
    "MalformedReaction",
    "MissingAtomMaps",
    "MultipleProducts",
    "Vocabulary",
    "build_token_vocab",
    "PAD",
    "BOS",
    "EOS",
    "UNK",
    "RESERVED_TOKENS",
    "deduplicate",
    "split_dataset",
    "build_reagent_vocab",
    "encode_example",
    "preprocess_lines",
    "write_preprocessed",
    "PreprocessResult",
]
