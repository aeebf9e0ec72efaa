"""Gradient clipping, plain SGD, and the stepped learning-rate schedule."""

import math

import numpy as np

from rxnseq.nn.tensor import ParameterTensor


class NonFiniteGradient(FloatingPointError):
    pass


class NonFiniteParameter(FloatingPointError):
    pass


def clip_gradients(params: list[ParameterTensor], max_norm: float = 5.0) -> float:
    """Scale all gradients so their global L2 norm is at most max_norm.

    Returns the factor applied (1.0 when no clipping was needed).
    """
    total = 0.0
    for p in params:
        sq = float(np.sum(np.square(p.grad, dtype=np.float64)))
        if not math.isfinite(sq):
            raise NonFiniteGradient(f"non-finite gradient in {p.name}")
        total += sq
    norm = math.sqrt(total)
    if norm <= max_norm or norm == 0.0:
        return 1.0
    factor = max_norm / norm
    for p in params:
        p.grad *= p.grad.dtype.type(factor)
    return factor


def sgd_step(params: list[ParameterTensor], learning_rate: float) -> None:
    """theta <- theta - lr * grad, then zero the gradients."""
    for p in params:
        p.values -= p.values.dtype.type(learning_rate) * p.grad
        if not np.all(np.isfinite(p.values)):
            raise NonFiniteParameter(f"non-finite values in {p.name} after update")
        p.zero_grad()


def decay_schedule(lr0: float, decay: float, epoch: int, period: int = 3) -> float:
    """Learning rate after `epoch` completed epochs: lr0 * decay^(epoch // period)."""
    if epoch < 0:
        raise ValueError("epoch must be >= 0")
    return lr0 * decay ** (epoch // period)
