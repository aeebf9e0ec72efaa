"""Token vocabulary with fixed reserved ids."""

import hashlib
from dataclasses import dataclass, field

PAD, BOS, EOS, UNK = 0, 1, 2, 3
RESERVED_TOKENS = ["<pad>", "<bos>", "<eos>", "<unk>"]


@dataclass
class Vocabulary:
    tokens: list[str]
    _index: dict[str, int] = field(init=False, repr=False)

    def __post_init__(self):
        if self.tokens[:4] != RESERVED_TOKENS:
            raise ValueError("vocabulary must start with the reserved tokens")
        self._index = {t: i for i, t in enumerate(self.tokens)}
        if len(self._index) != len(self.tokens):
            raise ValueError("duplicate token in vocabulary")

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self._index

    def id(self, token: str) -> int:
        return self._index.get(token, UNK)

    def token(self, idx: int) -> str:
        return self.tokens[idx]

    def encode(self, tokens: list[str]) -> list[int]:
        return [self.id(t) for t in tokens]

    def encode_target(self, tokens: list[str]) -> list[int]:
        return [BOS] + self.encode(tokens) + [EOS]

    def decode(self, ids: list[int]) -> list[str]:
        """Token texts for ids, dropping padding/framing ids."""
        return [self.tokens[i] for i in ids if i not in (PAD, BOS, EOS)]

    def sha256(self) -> str:
        return hashlib.sha256("\n".join(self.tokens).encode()).hexdigest()

    def save(self, path) -> None:
        with open(path, "w", encoding="utf-8") as fh:
            for token in self.tokens:
                fh.write(token + "\n")

    @classmethod
    def load(cls, path) -> "Vocabulary":
        with open(path, encoding="utf-8") as fh:
            return cls([line.rstrip("\n") for line in fh])


def build_token_vocab(corpus) -> Vocabulary:
    """Reserved ids 0-3 then distinct tokens in first-appearance order."""
    tokens = list(RESERVED_TOKENS)
    seen = set(tokens)
    for sequence in corpus:
        for token in sequence:
            if token not in seen:
                seen.add(token)
                tokens.append(token)
    return Vocabulary(tokens)
