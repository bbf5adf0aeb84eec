"""Joint-layer RNN: two stacked tanh recurrences, each with a softmax output.

    h1_t = tanh(W_xh1 x_t + W_h1h1 h1_{t-1} + b_h1)
    h2_t = tanh(W_h1h2 h1_t + W_h2h2 h2_{t-1} + b_h2)
    y1_t = softmax(W_h1y1 h1_t + b_y1)     word is important or not
    y2_t = softmax(W_h2y2 h2_t + b_y2)     keyphrase tag (3 or 5 classes)

    J = alpha * J1 + (1 - alpha) * J2

The layer-2 loss reaches the first layer through h2, so both losses train
W_xh1 and W_h1h1.
"""

from dataclasses import dataclass

import numpy as np

from . import params as _params
from .ops import (
    LossKind,
    check_alpha,
    check_input,
    mean_distance,
    output_gradient,
    recurrent_weight_gradient,
    softmax,
    tanh_bptt,
    tanh_recurrence,
)


BINARY_CLASSES = 2


def param_shapes(input_dim, h1_size, h2_size, n_classes) -> dict:
    return {
        'W_xh1' : (h1_size, input_dim),
        'W_h1h1': (h1_size, h1_size),
        'b_h1'  : (h1_size,),
        'W_h1y1': (BINARY_CLASSES, h1_size),
        'b_y1'  : (BINARY_CLASSES,),
        'W_h1h2': (h2_size, h1_size),
        'W_h2h2': (h2_size, h2_size),
        'b_h2'  : (h2_size,),
        'W_h2y2': (n_classes, h2_size),
        'b_y2'  : (n_classes,),
    }


def init_params(input_dim, h1_size, h2_size, n_classes, seed) -> dict:
    """
    >>> p = init_params(12, 6, 6, 3, seed=1)
    >>> p['W_xh1'].shape, p['W_h2y2'].shape
    ((6, 12), (3, 6))
    """
    return _params.init_params(
        param_shapes(input_dim, h1_size, h2_size, n_classes), seed)


@dataclass(frozen=True, eq=False)
class ForwardCache:
    a1: np.ndarray
    h1: np.ndarray
    a2: np.ndarray
    h2: np.ndarray
    y1: np.ndarray
    y2: np.ndarray

    def __len__(self):
        return len(self.y2)


def forward(params: dict, inputs: np.ndarray) -> ForwardCache:
    check_input(params, 'W_xh1', inputs)
    a1, h1 = tanh_recurrence(inputs @ params['W_xh1'].T + params['b_h1'],
                             params['W_h1h1'])
    a2, h2 = tanh_recurrence(h1 @ params['W_h1h2'].T + params['b_h2'],
                             params['W_h2h2'])
    return ForwardCache(
        a1=a1,
        h1=h1,
        a2=a2,
        h2=h2,
        y1=softmax(h1 @ params['W_h1y1'].T + params['b_y1']),
        y2=softmax(h2 @ params['W_h2y2'].T + params['b_y2']),
    )


def loss(cache: ForwardCache, targets1, targets2, alpha: float,
         loss_kind: LossKind = LossKind.XENT) -> tuple:
    """returns (J, J1, J2), each averaged over the time steps"""
    check_alpha(alpha)
    j1 = mean_distance(cache.y1, targets1, loss_kind)
    j2 = mean_distance(cache.y2, targets2, loss_kind)
    return alpha * j1 + (1.0 - alpha) * j2, j1, j2


def backward(params: dict, inputs: np.ndarray, cache: ForwardCache, targets1, targets2,
             alpha: float, loss_kind: LossKind = LossKind.XENT) -> dict:
    check_alpha(alpha)
    check_input(params, 'W_xh1', inputs)
    steps = len(cache)
    d_z1 = (alpha / steps) * output_gradient(cache.y1, targets1, loss_kind)
    d_z2 = ((1.0 - alpha) / steps) * output_gradient(cache.y2, targets2, loss_kind)

    d_a2 = tanh_bptt(d_z2 @ params['W_h2y2'], cache.h2, params['W_h2h2'])
    d_a1 = tanh_bptt(d_z1 @ params['W_h1y1'] + d_a2 @ params['W_h1h2'],
                     cache.h1, params['W_h1h1'])

    return {
        'W_xh1' : d_a1.T @ inputs,
        'W_h1h1': recurrent_weight_gradient(d_a1, cache.h1),
        'b_h1'  : d_a1.sum(axis=0),
        'W_h1y1': d_z1.T @ cache.h1,
        'b_y1'  : d_z1.sum(axis=0),
        'W_h1h2': d_a2.T @ cache.h1,
        'W_h2h2': recurrent_weight_gradient(d_a2, cache.h2),
        'b_h2'  : d_a2.sum(axis=0),
        'W_h2y2': d_z2.T @ cache.h2,
        'b_y2'  : d_z2.sum(axis=0),
    }
