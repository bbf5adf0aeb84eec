"""Single-layer LSTM tagger (the LSTM-WE baseline).

Gate pre-activations are stacked as [input, forget, output, candidate]:

    z_t = W_x x_t + W_h h_{t-1} + b
    c_t = f_t * c_{t-1} + i_t * g_t
    h_t = o_t * tanh(c_t)
"""

from dataclasses import dataclass

import numpy as np

from . import params as _params
from .ops import (
    LossKind,
    check_input,
    mean_distance,
    output_gradient,
    recurrent_weight_gradient,
    sigmoid,
    softmax,
)


GATES = 4


def param_shapes(input_dim, h1_size, h2_size, n_classes) -> dict:
    return {
        'W_x' : (GATES * h1_size, input_dim),
        'W_h' : (GATES * h1_size, h1_size),
        'b'   : (GATES * h1_size,),
        'W_hy': (n_classes, h1_size),
        'b_y' : (n_classes,),
    }


def init_params(input_dim, h1_size, h2_size, n_classes, seed) -> dict:
    return _params.init_params(
        param_shapes(input_dim, h1_size, h2_size, n_classes), seed)


@dataclass(frozen=True, eq=False)
class ForwardCache:
    gates: np.ndarray   # activated i, f, o, g
    c: np.ndarray
    h: np.ndarray
    y2: np.ndarray

    def __len__(self):
        return len(self.y2)


def forward(params: dict, inputs: np.ndarray) -> ForwardCache:
    check_input(params, 'W_x', inputs)
    size = params['W_h'].shape[1]
    pre = inputs @ params['W_x'].T + params['b']
    gates = np.zeros_like(pre)
    c = np.zeros((len(inputs), size))
    h = np.zeros((len(inputs), size))
    h_prev = np.zeros(size)
    c_prev = np.zeros(size)
    for t in range(len(inputs)):
        z = pre[t] + params['W_h'] @ h_prev
        gates[t, :3 * size] = sigmoid(z[:3 * size])
        gates[t, 3 * size:] = np.tanh(z[3 * size:])
        i, f, o, g = np.split(gates[t], GATES)
        c_prev = c[t] = f * c_prev + i * g
        h_prev = h[t] = o * np.tanh(c[t])
    return ForwardCache(gates=gates, c=c, h=h,
                        y2=softmax(h @ params['W_hy'].T + params['b_y']))


def loss(cache: ForwardCache, targets1, targets2, alpha: float,
         loss_kind: LossKind = LossKind.XENT) -> tuple:
    j2 = mean_distance(cache.y2, targets2, loss_kind)
    return j2, 0.0, j2


def backward(params: dict, inputs: np.ndarray, cache: ForwardCache, targets1, targets2,
             alpha: float, loss_kind: LossKind = LossKind.XENT) -> dict:
    check_input(params, 'W_x', inputs)
    size = params['W_h'].shape[1]
    d_z = output_gradient(cache.y2, targets2, loss_kind) / len(cache)
    d_h_out = d_z @ params['W_hy']
    d_gates = np.zeros_like(cache.gates)
    d_h_next = np.zeros(size)
    d_c_next = np.zeros(size)
    for t in reversed(range(len(cache))):
        i, f, o, g = np.split(cache.gates[t], GATES)
        tanh_c = np.tanh(cache.c[t])
        c_prev = cache.c[t - 1] if t > 0 else np.zeros(size)
        d_h = d_h_out[t] + d_h_next
        d_c = d_h * o * (1.0 - tanh_c * tanh_c) + d_c_next
        d_gates[t] = np.concatenate([
            d_c * g * i * (1.0 - i),
            d_c * c_prev * f * (1.0 - f),
            d_h * tanh_c * o * (1.0 - o),
            d_c * i * (1.0 - g * g),
        ])
        d_h_next = params['W_h'].T @ d_gates[t]
        d_c_next = d_c * f
    return {
        'W_x' : d_gates.T @ inputs,
        'W_h' : recurrent_weight_gradient(d_gates, cache.h),
        'b'   : d_gates.sum(axis=0),
        'W_hy': d_z.T @ cache.h,
        'b_y' : d_z.sum(axis=0),
    }
