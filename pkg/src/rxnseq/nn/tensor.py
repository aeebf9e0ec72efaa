"""Named parameter arrays with paired gradient buffers, and checkpoint IO.

Checkpoint layout: magic "RXS2S001", u32-LE header length, UTF-8 JSON header,
u32-LE tensor count, then per tensor a u32-LE name length, the name bytes,
u32-LE rank, u32-LE dims, and the raw little-endian float32 values.
"""

import json
import struct
from dataclasses import dataclass, field

import numpy as np

CHECKPOINT_MAGIC = b"RXS2S001"


@dataclass
class ParameterTensor:
    name: str
    values: np.ndarray
    grad: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self):
        if self.grad is None:
            self.grad = np.zeros_like(self.values)
        if self.grad.shape != self.values.shape:
            raise ValueError(f"{self.name}: grad shape {self.grad.shape} != {self.values.shape}")

    @property
    def shape(self) -> tuple[int, ...]:
        return self.values.shape

    def zero_grad(self) -> None:
        self.grad[...] = 0


def init_uniform(
    params: list[ParameterTensor],
    rng: np.random.Generator,
    lo: float = -0.1,
    hi: float = 0.1,
) -> None:
    """Fill every tensor with draws from U[lo, hi), in listed order."""
    for p in params:
        p.values[...] = rng.uniform(lo, hi, size=p.shape).astype(p.values.dtype)
        p.zero_grad()


def save_checkpoint(path, params: list[ParameterTensor], header: dict) -> None:
    header_bytes = json.dumps(header, sort_keys=True).encode("utf-8")
    with open(path, "wb") as fh:
        fh.write(CHECKPOINT_MAGIC)
        fh.write(struct.pack("<I", len(header_bytes)))
        fh.write(header_bytes)
        fh.write(struct.pack("<I", len(params)))
        for p in params:
            name = p.name.encode("utf-8")
            fh.write(struct.pack("<I", len(name)))
            fh.write(name)
            fh.write(struct.pack("<I", p.values.ndim))
            for dim in p.values.shape:
                fh.write(struct.pack("<I", dim))
            fh.write(np.ascontiguousarray(p.values, dtype="<f4").tobytes())


def load_checkpoint(path) -> tuple[dict, dict[str, np.ndarray]]:
    with open(path, "rb") as fh:
        magic = fh.read(len(CHECKPOINT_MAGIC))
        if magic != CHECKPOINT_MAGIC:
            raise ValueError(f"not a checkpoint file: bad magic {magic!r}")
        (header_len,) = struct.unpack("<I", fh.read(4))
        header = json.loads(fh.read(header_len).decode("utf-8"))
        (count,) = struct.unpack("<I", fh.read(4))
        tensors: dict[str, np.ndarray] = {}
        for _ in range(count):
            (name_len,) = struct.unpack("<I", fh.read(4))
            name = fh.read(name_len).decode("utf-8")
            (rank,) = struct.unpack("<I", fh.read(4))
            dims = struct.unpack(f"<{rank}I", fh.read(4 * rank))
            size = int(np.prod(dims)) if rank else 1
            values = np.frombuffer(fh.read(4 * size), dtype="<f4").reshape(dims)
            tensors[name] = values.copy()
    return header, tensors
