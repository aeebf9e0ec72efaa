"""Atom-wise SMILES tokenization.

Splits a SMILES (or reaction) string into chemically meaningful lexemes:
bracket atoms as single tokens, two-letter halogens, organic-subset atoms,
ring-closure digits (including %NN), bonds and punctuation. Tokenization is
lossless: joining the tokens reproduces the input byte for byte.
"""

import re

# Alternatives are tried left to right, so bracket atoms win over their
# opening "[", "Br"/"Cl" over "B"/"C", and "%NN" over bare digits.
TOKEN_PATTERN = re.compile(
    r"(\[[^\]]+]|Br?|Cl?|N|O|S|P|F|I|b|c|n|o|s|p|\(|\)|\.|=|#|-|\+|\\|\/|:|~|@|\?|>|\*|\$|\%[0-9]{2}|[0-9])"
)


class UnrecognizedCharacter(ValueError):
    """A byte of the input matches no token alternative."""

    def __init__(self, text: str, position: int):
        self.position = position
        self.char = text[position]
        super().__init__(
            f"unrecognized character {self.char!r} at position {position} in {text!r}"
        )


def tokenize(smiles: str) -> list[str]:
    """Segment ``smiles`` greedily into tokens; raises UnrecognizedCharacter."""
    tokens = []
    pos = 0
    n = len(smiles)
    while pos < n:
        m = TOKEN_PATTERN.match(smiles, pos)
        if m is None:
            raise UnrecognizedCharacter(smiles, pos)
        tokens.append(m.group(0))
        pos = m.end()
    return tokens


def detokenize(tokens: list[str]) -> str:
    """Inverse of tokenize: plain concatenation."""
    return "".join(tokens)
