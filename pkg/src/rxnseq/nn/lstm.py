"""LSTM cell and padded-sequence layers with exact reverse-mode gradients.

The cell keeps its input, recurrent and bias parameters packed with gate
order [input | forget | output | candidate]. Sequence layers precompute the
input projection for every time step in one matrix product and step only the
recurrence. Padded positions carry the previous state through unchanged, so
per-example final states are correct without bucketing.
"""

from dataclasses import dataclass

import numpy as np

from rxnseq.nn.functional import sigmoid
from rxnseq.nn.tensor import ParameterTensor


@dataclass
class LstmState:
    h: np.ndarray
    c: np.ndarray


@dataclass
class _StepCache:
    h_used: np.ndarray
    c_prev: np.ndarray
    i: np.ndarray
    f: np.ndarray
    o: np.ndarray
    g: np.ndarray
    c_cell: np.ndarray
    tanh_out: np.ndarray  # tanh of whichever cell state feeds the output gate
    x: np.ndarray | None = None  # only kept by the single-step API


class LstmCell:
    """One LSTM unit bank: i/f/o gates, candidate, cell and hidden update.

    With ``output_gate_prev_cell`` the hidden state is o * tanh(c_prev)
    instead of o * tanh(c_t) (an alternative wiring kept for comparison).
    """

    def __init__(
        self,
        name: str,
        input_dim: int,
        hidden_dim: int,
        dtype=np.float32,
        output_gate_prev_cell: bool = False,
    ):
        self.name = name
        self.input_dim = input_dim
        self.hidden_dim = hidden_dim
        self.output_gate_prev_cell = output_gate_prev_cell
        self.w_in = ParameterTensor(f"{name}.w_in", np.zeros((input_dim, 4 * hidden_dim), dtype))
        self.w_rec = ParameterTensor(f"{name}.w_rec", np.zeros((hidden_dim, 4 * hidden_dim), dtype))
        self.bias = ParameterTensor(f"{name}.bias", np.zeros(4 * hidden_dim, dtype))

    def params(self) -> list[ParameterTensor]:
        return [self.w_in, self.w_rec, self.bias]

    def project_input(self, x: np.ndarray) -> np.ndarray:
        return x @ self.w_in.values

    def _split(self, z: np.ndarray):
        h = self.hidden_dim
        return z[..., :h], z[..., h : 2 * h], z[..., 2 * h : 3 * h], z[..., 3 * h :]

    def step(
        self, x_proj: np.ndarray, h_used: np.ndarray, c_prev: np.ndarray
    ) -> tuple[np.ndarray, np.ndarray, _StepCache]:
        z = x_proj + h_used @ self.w_rec.values + self.bias.values
        zi, zf, zo, zg = self._split(z)
        i, f, o = sigmoid(zi), sigmoid(zf), sigmoid(zo)
        g = np.tanh(zg)
        c = f * c_prev + i * g
        tanh_out = np.tanh(c_prev) if self.output_gate_prev_cell else np.tanh(c)
        h = o * tanh_out
        return h, c, _StepCache(h_used, c_prev, i, f, o, g, c, tanh_out)

    def step_backward(
        self, dh: np.ndarray, dc: np.ndarray, cache: _StepCache
    ) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Gradients for one step; accumulates parameter grads.

        Returns (dz, dh_used, dc_prev); the caller turns dz into dx via the
        input projection (batched over time for speed).
        """
        i, f, o, g = cache.i, cache.f, cache.o, cache.g
        do = dh * cache.tanh_out
        dtanh = dh * o * (1.0 - cache.tanh_out**2)
        if self.output_gate_prev_cell:
            dc_total = dc
            dc_prev_extra = dtanh
        else:
            dc_total = dc + dtanh
            dc_prev_extra = 0.0
        di = dc_total * g
        dg = dc_total * i
        df = dc_total * cache.c_prev
        dc_prev = dc_total * f + dc_prev_extra
        dz = np.concatenate(
            [di * i * (1 - i), df * f * (1 - f), do * o * (1 - o), dg * (1 - g**2)],
            axis=-1,
        )
        self.w_rec.grad += cache.h_used.T @ dz
        self.bias.grad += dz.sum(axis=0)
        dh_used = dz @ self.w_rec.values.T
        return dz, dh_used, dc_prev

    def forward(
        self, x: np.ndarray, prev: LstmState
    ) -> tuple[LstmState, _StepCache]:
        """One step from raw input; x is (B, in), state arrays are (B, H)."""
        if x.shape[-1] != self.input_dim or prev.h.shape[-1] != self.hidden_dim:
            raise ValueError(
                f"{self.name}: got input {x.shape}, state {prev.h.shape}; "
                f"expected dims {self.input_dim}/{self.hidden_dim}"
            )
        h, c, cache = self.step(self.project_input(x), prev.h, prev.c)
        cache.x = x
        return LstmState(h, c), cache

    def backward(
        self, d_state: LstmState, cache: _StepCache
    ) -> tuple[np.ndarray, LstmState]:
        """Mirror of forward: returns (dx, gradient on the previous state)."""
        dz, dh_used, dc_prev = self.step_backward(d_state.h, d_state.c, cache)
        self.w_in.grad += cache.x.T @ dz
        dx = dz @ self.w_in.values.T
        return dx, LstmState(dh_used, dc_prev)


@dataclass
class _LayerCache:
    x: np.ndarray
    mask: np.ndarray
    steps: list[_StepCache]
    h_seq: list[np.ndarray]  # blended h_t per step (post-pad-carry)
    state_mask: np.ndarray | None
    reverse: bool


class LstmLayer:
    """One direction of one stacked layer over a padded (B, T, in) batch."""

    def __init__(self, cell: LstmCell, reverse: bool = False):
        self.cell = cell
        self.reverse = reverse

    def params(self) -> list[ParameterTensor]:
        return self.cell.params()

    def run(
        self,
        x: np.ndarray,
        mask: np.ndarray,
        h0: np.ndarray | None = None,
        c0: np.ndarray | None = None,
        state_mask: np.ndarray | None = None,
    ) -> tuple[np.ndarray, LstmState, _LayerCache]:
        """Forward over all steps. mask is (B, T) with 1 on real tokens.

        state_mask, when given, is a dropout mask applied to the recurrent
        hidden input: (B, H) reused at every step, or (B, T, H) per step.
        """
        batch, length, _ = x.shape
        hdim = self.cell.hidden_dim
        dtype = x.dtype
        h = np.zeros((batch, hdim), dtype) if h0 is None else h0
        c = np.zeros((batch, hdim), dtype) if c0 is None else c0
        x_proj = self.cell.project_input(x)
        order = range(length - 1, -1, -1) if self.reverse else range(length)
        outputs = np.zeros((batch, length, hdim), dtype)
        steps: list[_StepCache] = []
        h_seq: list[np.ndarray] = []
        for t in order:
            m = mask[:, t : t + 1].astype(dtype)
            smask = _state_mask_at(state_mask, t)
            h_used = h * smask if smask is not None else h
            h_cell, c_cell, cache = self.cell.step(x_proj[:, t], h_used, c)
            h = m * h_cell + (1.0 - m) * h
            c = m * c_cell + (1.0 - m) * c
            outputs[:, t] = h
            steps.append(cache)
            h_seq.append(h)
        layer_cache = _LayerCache(x, mask, steps, h_seq, state_mask, self.reverse)
        return outputs, LstmState(h, c), layer_cache

    def backward(
        self,
        d_outputs: np.ndarray,
        d_final: LstmState | None,
        cache: _LayerCache,
    ) -> np.ndarray:
        """Backprop through time; returns gradient w.r.t. the layer input."""
        batch, length, _ = cache.x.shape
        dtype = cache.x.dtype
        hdim = self.cell.hidden_dim
        dh = np.zeros((batch, hdim), dtype)
        dc = np.zeros((batch, hdim), dtype)
        if d_final is not None:
            dh += d_final.h
            dc += d_final.c
        order = list(range(length - 1, -1, -1) if cache.reverse else range(length))
        dz_all = np.zeros((batch, length, 4 * hdim), dtype)
        for pos in range(len(order) - 1, -1, -1):
            t = order[pos]
            step = cache.steps[pos]
            m = cache.mask[:, t : t + 1].astype(dtype)
            dh_t = dh + d_outputs[:, t]
            dh_cell = m * dh_t
            dc_cell = m * dc
            dz, dh_used, dc_prev = self.cell.step_backward(dh_cell, dc_cell, step)
            dz_all[:, t] = dz
            smask = _state_mask_at(cache.state_mask, t)
            if smask is not None:
                dh_used = dh_used * smask
            dh = dh_used + (1.0 - m) * dh_t
            dc = dc_prev + (1.0 - m) * dc
        flat_x = cache.x.reshape(batch * length, -1)
        flat_dz = dz_all.reshape(batch * length, -1)
        self.cell.w_in.grad += flat_x.T @ flat_dz
        return (flat_dz @ self.cell.w_in.values.T).reshape(cache.x.shape)


def _state_mask_at(state_mask: np.ndarray | None, t: int) -> np.ndarray | None:
    if state_mask is None:
        return None
    if state_mask.ndim == 3:
        return state_mask[:, t]
    return state_mask


class BiLstmLayer:
    """Forward and backward LSTM over the same input, outputs concatenated."""

    def __init__(self, name: str, input_dim: int, hidden_dim: int, dtype=np.float32,
                 output_gate_prev_cell: bool = False):
        self.hidden_dim = hidden_dim
        self.fwd = LstmLayer(
            LstmCell(f"{name}.fwd", input_dim, hidden_dim, dtype, output_gate_prev_cell)
        )
        self.bwd = LstmLayer(
            LstmCell(f"{name}.bwd", input_dim, hidden_dim, dtype, output_gate_prev_cell),
            reverse=True,
        )

    def params(self) -> list[ParameterTensor]:
        return self.fwd.params() + self.bwd.params()

    def run(self, x, mask, state_masks=(None, None)):
        out_f, final_f, cache_f = self.fwd.run(x, mask, state_mask=state_masks[0])
        out_b, final_b, cache_b = self.bwd.run(x, mask, state_mask=state_masks[1])
        outputs = np.concatenate([out_f, out_b], axis=-1)
        final = LstmState(
            np.concatenate([final_f.h, final_b.h], axis=-1),
            np.concatenate([final_f.c, final_b.c], axis=-1),
        )
        return outputs, final, (cache_f, cache_b)

    def backward(self, d_outputs, d_final: LstmState | None, caches) -> np.ndarray:
        cache_f, cache_b = caches
        h = self.hidden_dim
        d_out_f = d_outputs[..., :h]
        d_out_b = d_outputs[..., h:]
        d_final_f = d_final_b = None
        if d_final is not None:
            d_final_f = LstmState(d_final.h[:, :h], d_final.c[:, :h])
            d_final_b = LstmState(d_final.h[:, h:], d_final.c[:, h:])
        dx = self.fwd.backward(d_out_f, d_final_f, cache_f)
        dx += self.bwd.backward(d_out_b, d_final_b, cache_b)
        return dx
