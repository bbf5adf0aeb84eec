"""Central finite-difference check of the analytic gradients.

The relative error of a tensor is

    ||analytic - numeric|| / max(||analytic|| + ||numeric||, 1e-12)

and a check reports the largest error over all tensors of the model. Entrywise
ratios are not used: entries whose true gradient is close to zero turn round-off
into large ratios.
"""

import logging

import numpy as np

from ..records import generate_namedtuple
from ..utils import derive_seed
from .families import family
from .ops import LossKind


log = logging.getLogger(__name__)


TOLERANCE = 1e-4
PARAM_SCALE = 0.5
ALPHAS = (0.0, 0.5, 1.0)

# (family, n_classes): the four taggers of the comparison
SUITE = (
    ('jrnn', 3),
    ('jrnn', 5),
    ('rnn', 3),
    ('lstm', 3),
)


GradCheckRow_fields = (
    ('family'   , str  , 'Family' , '{}'),
    ('n_classes', int  , 'Classes', '{}'),
    ('loss_kind', str  , 'Loss'   , '{}'),
    ('alpha'    , float, 'Alpha'  , '{:.1f}'),
    ('error'    , float, 'Error'  , '{:.3e}'),
    ('passed'   , bool , 'Result' , lambda passed: 'ok' if passed else 'FAIL'),
)

GradCheckRow = generate_namedtuple('GradCheckRow', GradCheckRow_fields)


def relative_error(analytic: np.ndarray, numeric: np.ndarray) -> float:
    """
    >>> relative_error(np.zeros(3), np.zeros(3))
    0.0
    >>> relative_error(np.array([1.0]), np.array([3.0]))
    0.5
    """
    scale = max(float(np.linalg.norm(analytic) + np.linalg.norm(numeric)), 1e-12)
    return float(np.linalg.norm(analytic - numeric)) / scale


def grad_check(seed: int, dims: tuple = (12, 8, 8), sequence_length: int = 5,
               epsilon: float = 1e-5, family_name: str = 'jrnn', n_classes: int = 3,
               alpha: float = 0.5, loss_kind: LossKind = LossKind.XENT,
               corrupt: bool = False) -> float:
    """max relative error between backward and central differences

    `dims` is (input width, first hidden size, second hidden size); families
    with one hidden layer ignore the second size. With `corrupt` the analytic
    gradient is deliberately perturbed, which must make the check fail.
    """
    model_family = family(family_name)
    input_dim, h1_size, h2_size = dims
    rng = np.random.default_rng(derive_seed(seed, 'gradcheck', family_name, n_classes))
    shapes = model_family.param_shapes(input_dim, h1_size, h2_size, n_classes)
    params = {name: PARAM_SCALE * rng.standard_normal(shape)
              for name, shape in shapes.items()}
    inputs = rng.standard_normal((sequence_length, input_dim))
    targets2 = rng.integers(0, n_classes, size=sequence_length)
    targets1 = (targets2 != 0).astype(int)

    def cost(current):
        cache = model_family.forward(current, inputs)
        return model_family.loss(cache, targets1, targets2, alpha, loss_kind)[0]

    cache = model_family.forward(params, inputs)
    analytic = model_family.backward(params, inputs, cache, targets1, targets2,
                                     alpha, loss_kind)
    if corrupt:
        name = next(iter(analytic))
        analytic[name] = analytic[name] * 1.1 + 1e-3

    worst = 0.0
    for name, value in params.items():
        numeric = np.zeros_like(value)
        for index in np.ndindex(value.shape):
            original = value[index]
            value[index] = original + epsilon
            plus = cost(params)
            value[index] = original - epsilon
            minus = cost(params)
            value[index] = original
            numeric[index] = (plus - minus) / (2.0 * epsilon)
        error = relative_error(analytic[name], numeric)
        log.debug(f"{family_name}/{n_classes} {name}: relative error {error:.3e}")
        worst = max(worst, error)
    return worst


def grad_check_suite(seed: int, epsilon: float = 1e-5, sequence_length: int = 5,
                     dims: tuple = (12, 8, 8), corrupt: bool = False) -> list:
    """runs grad_check over every family, loss kind and alpha in ALPHAS"""
    rows = []
    for family_name, n_classes in SUITE:
        for loss_kind in LossKind:
            for alpha in ALPHAS:
                error = grad_check(seed, dims, sequence_length, epsilon, family_name,
                                   n_classes, alpha, loss_kind, corrupt)
                rows.append(GradCheckRow(family_name, n_classes, loss_kind.value,
                                         alpha, error, error < TOLERANCE))
    worst = max(row.error for row in rows)
    log.info(f"Gradient check over {len(rows)} configurations, "
             f"max relative error {worst:.3e}")
    return rows

