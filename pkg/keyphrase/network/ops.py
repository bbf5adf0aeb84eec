"""Numerical building blocks shared by the model families.

Sequences are row-major: an input sequence is a (T, D) float64 matrix, hidden
states are (T, H) and output distributions (T, K).
"""

from enum import Enum

import numpy as np

from ..error import ConfigError, DimensionError


class LossKind(Enum):
    XENT = 'xent'
    EUCLID = 'euclid'


def softmax(logits: np.ndarray) -> np.ndarray:
    """row-wise softmax

    >>> softmax(np.zeros((1, 4))).tolist()
    [[0.25, 0.25, 0.25, 0.25]]
    """
    shifted = np.exp(logits - logits.max(axis=-1, keepdims=True))
    return shifted / shifted.sum(axis=-1, keepdims=True)


def sigmoid(z: np.ndarray) -> np.ndarray:
    return 0.5 * (1.0 + np.tanh(0.5 * z))


def one_hot(targets, n_classes: int) -> np.ndarray:
    encoded = np.zeros((len(targets), n_classes))
    encoded[np.arange(len(targets)), targets] = 1.0
    return encoded


def check_alpha(alpha: float):
    if not 0.0 <= alpha <= 1.0:
        raise ConfigError(f"alpha {alpha} is not in [0, 1]")


def check_targets(outputs: np.ndarray, targets):
    if len(targets) != len(outputs):
        raise DimensionError(f"{len(targets)} targets for a sequence of "
                             f"length {len(outputs)}")


def mean_distance(outputs: np.ndarray, targets, loss_kind: LossKind) -> float:
    """dist(y_hat_t, y_t) averaged over the time steps"""
    check_targets(outputs, targets)
    targets = np.asarray(targets)
    if loss_kind is LossKind.XENT:
        picked = outputs[np.arange(len(targets)), targets]
        return float(-np.log(np.maximum(picked, np.finfo(float).tiny)).mean())
    difference = outputs - one_hot(targets, outputs.shape[1])
    return float((difference * difference).sum(axis=1).mean())


def output_gradient(outputs: np.ndarray, targets, loss_kind: LossKind) -> np.ndarray:
    """gradient of the summed distances w.r.t. the softmax logits"""
    check_targets(outputs, targets)
    target_dist = one_hot(np.asarray(targets), outputs.shape[1])
    if loss_kind is LossKind.XENT:
        return outputs - target_dist
    d_outputs = 2.0 * (outputs - target_dist)
    inner = (d_outputs * outputs).sum(axis=1, keepdims=True)
    return outputs * (d_outputs - inner)


def tanh_recurrence(pre: np.ndarray, recurrent: np.ndarray) -> tuple:
    """runs h_t = tanh(pre_t + W h_{t-1}) with h_0 = 0

    Returns the completed pre-activations and the hidden states.
    """
    pre = pre.copy()
    hidden = np.zeros_like(pre)
    previous = np.zeros(pre.shape[1])
    for t in range(len(pre)):
        pre[t] += recurrent @ previous
        previous = hidden[t] = np.tanh(pre[t])
    return pre, hidden


def tanh_bptt(d_hidden: np.ndarray, hidden: np.ndarray,
              recurrent: np.ndarray) -> np.ndarray:
    """backpropagates through a tanh recurrence

    `d_hidden` holds the gradient reaching each h_t from outside the
    recurrence. The result holds the gradients of the pre-activations.
    """
    d_pre = np.zeros_like(hidden)
    d_next = np.zeros(hidden.shape[1])
    for t in reversed(range(len(hidden))):
        d_pre[t] = (d_hidden[t] + d_next) * (1.0 - hidden[t] * hidden[t])
        d_next = recurrent.T @ d_pre[t]
    return d_pre


def recurrent_weight_gradient(d_pre: np.ndarray, hidden: np.ndarray) -> np.ndarray:
    """sum over t >= 1 of outer(d_pre_t, h_{t-1})"""
    return d_pre[1:].T @ hidden[:-1]


def check_input(params: dict, name: str, inputs: np.ndarray):
    expected = params[name].shape[1]
    if inputs.ndim != 2 or inputs.shape[1] != expected:
        raise DimensionError(f"input width {inputs.shape[-1]} does not match "
                             f"the model input width {expected}")
