"""Inverted dropout masks; a variational mask is reused across time steps."""

from dataclasses import dataclass

import numpy as np


@dataclass
class DropoutMask:
    keep_prob: float
    mask: np.ndarray
    variational: bool


def make_dropout_mask(
    shape: tuple[int, ...],
    keep_prob: float,
    variational: bool,
    rng: np.random.Generator,
    dtype=np.float32,
) -> DropoutMask:
    """Mask of 0 / (1/keep_prob) entries so the expectation stays 1.

    ``shape`` should omit the time axis in variational mode; the caller
    applies the same mask at every step of the sequence.
    """
    if not 0.0 < keep_prob <= 1.0:
        raise ValueError(f"keep_prob must be in (0, 1], got {keep_prob}")
    if keep_prob == 1.0:
        mask = np.ones(shape, dtype)
    else:
        keep = rng.random(shape) < keep_prob
        mask = keep.astype(dtype) / dtype(keep_prob)
    return DropoutMask(keep_prob, mask, variational)
