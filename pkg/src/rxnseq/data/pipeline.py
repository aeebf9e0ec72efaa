"""Dataset preparation: dedup, grouped split, reagent vocabulary, encoding.

Stages mirror the preprocessing a reaction corpus goes through before
training: normalize each reaction (reagent separation when maps are present,
map stripping, per-field canonicalization), drop duplicates, filter to single
products, split so that reactions sharing a reactant field stay in one split,
build the reagent shortlist from the training portion only, and emit
space-separated source/target token lines.
"""

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from rxnseq.chem import canonical_smiles, strip_atom_maps, tokenize, validate_valence
from rxnseq.data.reactions import (
    MultipleProducts,
    Reaction,
    has_product_maps,
    parse_reaction,
    separate_reagents,
)
from rxnseq.data.vocab import Vocabulary, build_token_vocab

REAGENT_PREFIX = "A_"
SPLIT_NAMES = ("train", "valid", "test")


def deduplicate(reactions):
    """Yield first occurrences, keyed by the map-free canonical string."""
    seen: set[str] = set()
    for rxn in reactions:
        key = rxn.key()
        if key not in seen:
            seen.add(key)
            yield rxn


def split_dataset(
    reactions: list[Reaction], ratios=(18, 1, 1), seed: int = 0
) -> tuple[list[Reaction], list[Reaction], list[Reaction]]:
    """Partition reactions into train/valid/test keeping reactant groups whole.

    Groups (one per distinct canonical reactant field) are shuffled with the
    seed and assigned greedily to the split with the largest remaining quota,
    so sizes track the ratios as closely as group granularity allows.
    """
    if any(r <= 0 for r in ratios):
        raise ValueError("ratios must be positive")
    groups: dict[str, list[int]] = {}
    for idx, rxn in enumerate(reactions):
        groups.setdefault(rxn.reactant_key(), []).append(idx)
    keys = list(groups)
    rng = np.random.default_rng(seed)
    order = rng.permutation(len(keys))
    total = len(reactions)
    quota = [total * r / sum(ratios) for r in ratios]
    assigned = [0.0, 0.0, 0.0]
    members: tuple[list[int], ...] = ([], [], [])
    for key_pos in order:
        group = groups[keys[key_pos]]
        deficit = [quota[i] - assigned[i] for i in range(3)]
        target = max(range(3), key=lambda i: (deficit[i], -i))
        members[target].extend(group)
        assigned[target] += len(group)
    return tuple([reactions[i] for i in sorted(part)] for part in members)  # type: ignore[return-value]


def build_reagent_vocab(train_reactions: list[Reaction], k: int = 76) -> list[str]:
    """Top-k canonical reagent strings by training frequency, ties by string."""
    counts: Counter[str] = Counter()
    for rxn in train_reactions:
        for g in rxn.reagents:
            counts[canonical_smiles(strip_atom_maps(g))] += 1
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return [smiles for smiles, _ in ranked[:k]]


def encode_example(
    rxn: Reaction, reagent_vocab: list[str]
) -> tuple[list[str], list[str]]:
    """Source/target token lists for one normalized reaction.

    Source: atom-wise tokens of the dot-joined reactant field, a ">"
    separator, then one "A_<smiles>" token per shortlisted reagent in
    shortlist order. Out-of-shortlist reagents are dropped entirely.
    Target: atom-wise tokens of the single product.
    """
    if len(rxn.products) != 1:
        raise MultipleProducts(f"{len(rxn.products)} products in {rxn.raw!r}")
    reactant_field = ".".join(sorted(canonical_smiles(g) for g in rxn.reactants))
    source = tokenize(reactant_field)
    source.append(">")
    rank = {smiles: i for i, smiles in enumerate(reagent_vocab)}
    reagent_strings = [canonical_smiles(g) for g in rxn.reagents]
    kept = sorted(
        (s for s in reagent_strings if s in rank), key=lambda s: rank[s]
    )
    source.extend(REAGENT_PREFIX + s for s in kept)
    target = tokenize(canonical_smiles(rxn.products[0]))
    return source, target


@dataclass
class PreprocessResult:
    splits: dict[str, list[tuple[list[str], list[str]]]]
    vocab: Vocabulary
    reagent_vocab: list[str]
    report: dict = field(default_factory=dict)


def _normalize(rxn: Reaction) -> Reaction:
    """Reagent separation (when mapped), map stripping, canonical graphs."""
    if has_product_maps(rxn):
        rxn = separate_reagents(rxn)
    return rxn.strip_maps()


def preprocess_lines(
    lines,
    ratios=(18, 1, 1),
    seed: int = 0,
    reagent_vocab_size: int = 76,
    max_source_len: int = 256,
    max_target_len: int = 160,
) -> PreprocessResult:
    """Run the full preparation pipeline over raw reaction lines."""
    report = {
        "input_lines": 0,
        "parse_failures": 0,
        "duplicates_removed": 0,
        "multi_product_dropped": 0,
        "too_long_dropped": 0,
        "split_sizes": {},
    }
    normalized: list[Reaction] = []
    for line in lines:
        line = line.strip()
        if not line:
            continue
        report["input_lines"] += 1
        try:
            rxn = _normalize(parse_reaction(line))
            for g in rxn.reactants + rxn.reagents + rxn.products:
                if validate_valence(g):
                    raise ValueError("valence violation")
        except ValueError:
            report["parse_failures"] += 1
            continue
        normalized.append(rxn)

    unique = list(deduplicate(normalized))
    report["duplicates_removed"] = len(normalized) - len(unique)

    single = [r for r in unique if len(r.products) == 1]
    report["multi_product_dropped"] = len(unique) - len(single)

    train, valid, test = split_dataset(single, ratios=ratios, seed=seed)
    reagent_vocab = build_reagent_vocab(train, k=reagent_vocab_size)

    splits: dict[str, list[tuple[list[str], list[str]]]] = {}
    for name, part in zip(SPLIT_NAMES, (train, valid, test)):
        encoded = []
        for rxn in part:
            source, target = encode_example(rxn, reagent_vocab)
            if len(source) > max_source_len or len(target) > max_target_len:
                report["too_long_dropped"] += 1
                continue
            encoded.append((source, target))
        splits[name] = encoded
        report["split_sizes"][name] = len(encoded)

    vocab = build_token_vocab(
        seq for src, tgt in splits["train"] for seq in (src, tgt)
    )
    return PreprocessResult(splits, vocab, reagent_vocab, report)


def write_preprocessed(result: PreprocessResult, out_dir) -> None:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, examples in result.splits.items():
        with open(out / f"src-{name}.txt", "w", encoding="utf-8") as src_fh, open(
            out / f"tgt-{name}.txt", "w", encoding="utf-8"
        ) as tgt_fh:
            for source, target in examples:
                src_fh.write(" ".join(source) + "\n")
                tgt_fh.write(" ".join(target) + "\n")
    result.vocab.save(out / "vocab.txt")
    with open(out / "reagents.txt", "w", encoding="utf-8") as fh:
        for smiles in result.reagent_vocab:
            fh.write(smiles + "\n")
    with open(out / "report.json", "w", encoding="utf-8") as fh:
        json.dump(result.report, fh, indent=2, sort_keys=True)
        fh.write("\n")
