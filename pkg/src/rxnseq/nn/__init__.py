"""Dense-tensor primitives: LSTM cells, softmax/cross-entropy, SGD, checks."""

from rxnseq.nn.tensor import (
    ParameterTensor,
    init_uniform,
    load_checkpoint,
    save_checkpoint,
    CHECKPOINT_MAGIC,
)
from rxnseq.nn.functional import cross_entropy, sigmoid, softmax
from rxnseq.nn.lstm import BiLstmLayer, LstmCell, LstmLayer, LstmState
from rxnseq.nn.dropout import DropoutMask, make_dropout_mask
from rxnseq.nn.optim import (
    NonFiniteGradient,
    NonFiniteParameter,
    clip_gradients,
    decay_schedule,
    sgd_step,
)
from rxnseq.nn.gradcheck import grad_check

__all__ = [
    "ParameterTensor",
    "init_uniform",
    "save_checkpoint",
    "load_checkpoint",
    "CHECKPOINT_MAGIC",
    "sigmoid",
    "softmax",
    "cross_entropy",
    "LstmState",
    "LstmCell",
    "LstmLayer",
    "BiLstmLayer",
    "DropoutMask",
    "make_dropout_mask",
    "clip_gradients",
    "sgd_step",
    "decay_schedule",
    "NonFiniteGradient",
    "NonFiniteParameter",
    "grad_check",
]
