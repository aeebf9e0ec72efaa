"""Elementwise activations, stable softmax, floored cross-entropy."""

import numpy as np

PROB_FLOOR = 1e-12


def sigmoid(x: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        return np.where(
            x >= 0,
            1.0 / (1.0 + np.exp(-np.abs(x))),
            np.exp(-np.abs(x)) / (1.0 + np.exp(-np.abs(x))),
        )


def softmax(z: np.ndarray, axis: int = -1, mask: np.ndarray | None = None) -> np.ndarray:
    """Exp-normalize with max subtraction; masked-out entries get exactly 0."""
    if mask is not None:
        z = np.where(mask, z, -np.inf)
    zmax = np.max(z, axis=axis, keepdims=True)
    with np.errstate(invalid="ignore"):
        shifted = np.where(np.isfinite(z), z - zmax, -np.inf)
    exp = np.exp(shifted)
    return exp / np.sum(exp, axis=axis, keepdims=True)


def cross_entropy(predicted: np.ndarray, target_id: int) -> float:
    """Negative log probability of the target, floored to stay finite."""
    return float(-np.log(max(float(predicted[target_id]), PROB_FLOOR)))


def cross_entropy_batch(probs: np.ndarray, targets: np.ndarray, weights: np.ndarray) -> float:
    """Sum of -log p[target] over weighted positions (weights are 0/1)."""
    picked = np.take_along_axis(probs, targets[..., None], axis=-1)[..., 0]
    return float(np.sum(-np.log(np.maximum(picked, PROB_FLOOR)) * weights))
