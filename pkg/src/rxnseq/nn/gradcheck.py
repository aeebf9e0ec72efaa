"""Central-difference verification of analytic gradients.

The loss callable must be deterministic (fix any dropout masks before
checking) and must leave fresh gradients in every listed parameter tensor.
"""

import numpy as np

from rxnseq.nn.tensor import ParameterTensor


def grad_check(
    loss_fn,
    params: list[ParameterTensor],
    eps: float = 1e-6,
    max_coords: int = 200,
    rng: np.random.Generator | None = None,
) -> float:
    """Max relative error |analytic - numeric| / max(|a|, |n|, 1e-8).

    Checks every coordinate, or a random subset of ``max_coords`` when the
    parameters hold more than that.
    """
    for p in params:
        if p.values.dtype != np.float64:
            raise ValueError(f"{p.name}: grad_check requires float64 parameters")
        p.zero_grad()
    loss_fn()
    analytic = [p.grad.copy() for p in params]

    coords: list[tuple[int, int]] = [
        (pi, flat) for pi, p in enumerate(params) for flat in range(p.values.size)
    ]
    if len(coords) > max_coords:
        rng = rng or np.random.default_rng(0)
        chosen = rng.choice(len(coords), size=max_coords, replace=False)
        coords = [coords[i] for i in chosen]

    worst = 0.0
    for pi, flat in coords:
        values = params[pi].values.reshape(-1)
        original = values[flat]
        values[flat] = original + eps
        loss_plus = loss_fn()
        values[flat] = original - eps
        loss_minus = loss_fn()
        values[flat] = original
        numeric = (loss_plus - loss_minus) / (2.0 * eps)
        a = float(analytic[pi].reshape(-1)[flat])
        err = abs(a - numeric) / max(abs(a), abs(numeric), 1e-8)
        worst = max(worst, err)
    return worst
