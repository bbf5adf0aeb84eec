"""Parameter dictionaries: seeded initialisation and the SGD update.

Parameters are plain dicts mapping a tensor name to a float64 array, in the
declared order of the model family. Names starting with ``W`` are weights,
names starting with ``b`` are biases.
"""

import numpy as np

from ..error import ConfigError, DimensionError


INIT_SCALE = 0.08


def init_params(shapes: dict, seed: int) -> dict:
    """weights uniform(-0.08, 0.08) in declared order, biases zero"""
    for name, shape in shapes.items():
        if any(size <= 0 for size in shape):
            raise DimensionError(f"{name} has a non-positive dimension {shape}")
    rng = np.random.default_rng(seed)
    params = {}
    for name, shape in shapes.items():
        if name.startswith('W'):
            params[name] = rng.uniform(-INIT_SCALE, INIT_SCALE, size=shape)
        else:
            params[name] = np.zeros(shape)
    return params


def zeros_like(params: dict) -> dict:
    return {name: np.zeros_like(value) for name, value in params.items()}


def global_norm(grads: dict) -> float:
    return float(np.sqrt(sum(float((g * g).sum()) for g in grads.values())))


def sgd_step(params: dict, grads: dict, learning_rate: float,
             grad_clip_norm: float|None = 5.0) -> dict:
    """
    >>> sgd_step({'W': np.array([1.0])}, {'W': np.array([0.5])}, 0.1)['W'].tolist()
    [0.95]
    """
    if learning_rate <= 0:
        raise ConfigError(f"learning rate {learning_rate} is not positive")
    if grads.keys() != params.keys():
        raise DimensionError("gradients do not match the parameters")
    scale = learning_rate
    if grad_clip_norm:
        norm = global_norm(grads)
        if norm > grad_clip_norm:
            scale *= grad_clip_norm / norm
    updated = {}
    for name, value in params.items():
        if grads[name].shape != value.shape:
            raise DimensionError(f"gradient of {name} has shape {grads[name].shape}, "
                                 f"expected {value.shape}")
        updated[name] = value - scale * grads[name]
    return updated


def count_params(params: dict) -> int:
    return sum(value.size for value in params.values())
