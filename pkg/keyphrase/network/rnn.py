"""Single-layer tanh RNN tagger (the RNN-WE baseline).

Shares the family interface of `jrnn`; there is no word-importance layer, so
the loss is the tagging distance alone and `alpha` has no effect.
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
    softmax,
    tanh_bptt,
    tanh_recurrence,
)


def param_shapes(input_dim, h1_size, h2_size, n_classes) -> dict:
    return {
        'W_xh': (h1_size, input_dim),
        'W_hh': (h1_size, h1_size),
        'b_h' : (h1_size,),
        'W_hy': (n_classes, h1_size),
        'b_y' : (n_classes,),
    }


def init_params(input_dim, h1_size, h2_size, n_classes, seed) -> dict:
    return _params.init_params(
        param_shapes(input_dim, h1_size, h2_size, n_classes), seed)


@dataclass(frozen=True, eq=False)
class ForwardCache:
    a: np.ndarray
    h: np.ndarray
    y2: np.ndarray

    def __len__(self):
        return len(self.y2)


def forward(params: dict, inputs: np.ndarray) -> ForwardCache:
    check_input(params, 'W_xh', inputs)
    a, h = tanh_recurrence(inputs @ params['W_xh'].T + params['b_h'], params['W_hh'])
    return ForwardCache(a=a, h=h, y2=softmax(h @ params['W_hy'].T + params['b_y']))


def loss(cache: ForwardCache, targets1, targets2, alpha: float,
         loss_kind: LossKind = LossKind.XENT) -> tuple:
    j2 = mean_distance(cache.y2, targets2, loss_kind)
    return j2, 0.0, j2


def backward(params: dict, inputs: np.ndarray, cache: ForwardCache, targets1, targets2,
             alpha: float, loss_kind: LossKind = LossKind.XENT) -> dict:
    check_input(params, 'W_xh', inputs)
    d_z = output_gradient(cache.y2, targets2, loss_kind) / len(cache)
    d_a = tanh_bptt(d_z @ params['W_hy'], cache.h, params['W_hh'])
    return {
        'W_xh': d_a.T @ inputs,
        'W_hh': recurrent_weight_gradient(d_a, cache.h),
        'b_h' : d_a.sum(axis=0),
        'W_hy': d_z.T @ cache.h,
        'b_y' : d_z.sum(axis=0),
    }
