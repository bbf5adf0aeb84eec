"""Per-tweet SGD training with early stopping on validation F1, and prediction."""

from dataclasses import asdict, dataclass, field
import logging
import time

import numpy as np

from ..corpus import Corpus, LabelScheme, Tweet, kp5_to_kp3, to_binary_labels
from ..error import ConfigError, FeatureMismatchError
from ..evaluation import MetricsReport, evaluate
from ..features import EmbeddingTable, FeatureConfig, build_input_sequence
from ..records import generate_namedtuple
from ..utils import derive_seed, format_timedelta
from .families import family
from .ops import LossKind
from .params import count_params, sgd_step


log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrainConfig:
    alpha: float = 0.5
    learning_rate: float = 0.1
    h1_size: int = 300
    h2_size: int = 300
    max_epochs: int = 50
    patience: int = 5
    grad_clip_norm: float = 5.0
    loss_kind: LossKind = LossKind.XENT
    seed: int = 42
    scheme: LabelScheme = LabelScheme.KP3
    family: str = 'jrnn'

    def __post_init__(self):
        if not 0.0 <= self.alpha <= 1.0:
            raise ConfigError(f"alpha {self.alpha} is not in [0, 1]")
        if self.learning_rate <= 0:
            raise ConfigError(f"learning rate {self.learning_rate} is not positive")
        if self.h1_size <= 0 or self.h2_size <= 0:
            raise ConfigError(f"hidden sizes {self.h1_size}/{self.h2_size} must be positive")
        if self.max_epochs <= 0:
            raise ConfigError(f"max_epochs {self.max_epochs} must be positive")
        if self.patience < 0:
            raise ConfigError(f"patience {self.patience} must not be negative")
        family(self.family)

    def to_dict(self) -> dict:
        values = asdict(self)
        values['loss_kind'] = self.loss_kind.value
        values['scheme'] = self.scheme.name
        return values

    @classmethod
    def from_dict(cls, values: dict) -> 'TrainConfig':
        return cls(**{**values,
                      'loss_kind': LossKind(values['loss_kind']),
                      'scheme': LabelScheme[values['scheme']]})


HistoryRow_fields = (
    ('epoch'    , int  , 'Epoch', '{}'),
    ('loss'     , float, 'Loss' , '{:.6f}'),
    ('precision', float, 'P'    , '{:.4f}'),
    ('recall'   , float, 'R'    , '{:.4f}'),
    ('f1'       , float, 'F1'   , '{:.4f}'),
    ('accuracy' , float, 'Acc'  , '{:.4f}'),
)

HistoryRow = generate_namedtuple('HistoryRow', HistoryRow_fields)


@dataclass(frozen=True, eq=False)
class Model:
    family: str
    params: dict
    feature_config: FeatureConfig
    embedding_dim: int
    train_config: TrainConfig
    history: tuple = field(default=())
    best_epoch: int = 0

    def __post_init__(self):
        expected = self.feature_config.input_dim(self.embedding_dim)
        first = next(iter(self.params.values()))
        if first.shape[1] != expected:
            raise FeatureMismatchError(
                f"feature configuration gives input width {expected}, "
                f"the parameters expect {first.shape[1]}")

    @property
    def scheme(self) -> LabelScheme:
        return self.train_config.scheme

    def labeler(self, table: EmbeddingTable):
        """a function mapping a tweet to predicted KP3 labels"""
        return lambda tweet: predict_kp3(self, tweet, table)


def encode_targets(tweet: Tweet, scheme: LabelScheme) -> tuple:
    """(layer-1 binary targets, layer-2 class indices)"""
    targets2 = np.array([scheme.index(label) for label in tweet.labels])
    targets1 = np.array(to_binary_labels(tweet.kp3_labels(scheme)))
    return targets1, targets2


def _check_table(embedding_dim: int, table: EmbeddingTable):
    if table.dimension != embedding_dim:
        raise FeatureMismatchError(f"embeddings have dimension {table.dimension}, "
                                   f"the model was trained with {embedding_dim}")


def predict(model: Model, tweet: Tweet, table: EmbeddingTable) -> list[int]:
    """class indices of the model scheme; ties go to the lowest index"""
    _check_table(model.embedding_dim, table)
    inputs = build_input_sequence(tweet, table, model.feature_config)
    cache = family(model.family).forward(model.params, inputs)
    return [int(index) for index in np.argmax(cache.y2, axis=1)]


def predict_kp3(model: Model, tweet: Tweet, table: EmbeddingTable) -> list[int]:
    labels = predict(model, tweet, table)
    if model.scheme is LabelScheme.KP5:
        return kp5_to_kp3([model.scheme.symbol(index) for index in labels])
    return labels


def train(train: Corpus, val: Corpus, table: EmbeddingTable, fconfig: FeatureConfig,
          tconfig: TrainConfig, workers: int = 1) -> Model:
    if len(train) == 0:
        raise ConfigError("empty training corpus")
    for name, corpus in (('training', train), ('validation', val)):
        if corpus.scheme is not tconfig.scheme:
            raise FeatureMismatchError(f"{name} corpus uses {corpus.scheme.name}, "
                                       f"the training configuration {tconfig.scheme.name}")
    if len(val) == 0:
        log.warning("empty validation corpus, early stopping on training F1")
        val = train

    model_family = family(tconfig.family)
    input_dim = fconfig.input_dim(table.dimension)
    params = model_family.init_params(input_dim, tconfig.h1_size, tconfig.h2_size,
                                      tconfig.scheme.n_classes,
                                      derive_seed(tconfig.seed, 'init'))
    log.info(f"Training {tconfig.family} ({tconfig.scheme.name}) with "
             f"{count_params(params)} parameters, input width {input_dim}, "
             f"on {len(train)} tweets")

    examples = [(build_input_sequence(tweet, table, fconfig),
                 *encode_targets(tweet, tconfig.scheme))
                for tweet in train]
    shuffle_rng = np.random.default_rng(derive_seed(tconfig.seed, 'shuffle'))

    def snapshot(current, history=(), best_epoch=0):
        return Model(tconfig.family, current, fconfig, table.dimension, tconfig,
                     tuple(history), best_epoch)

    history = []
    best_f1, best_params, best_epoch = -1.0, params, 0
    stale = 0
    started = time.monotonic()
    for epoch in range(1, tconfig.max_epochs + 1):
        total = 0.0
        for i in shuffle_rng.permutation(len(examples)):
            inputs, targets1, targets2 = examples[i]
            cache = model_family.forward(params, inputs)
            cost, _, _ = model_family.loss(cache, targets1, targets2,
                                           tconfig.alpha, tconfig.loss_kind)
            grads = model_family.backward(params, inputs, cache, targets1, targets2,
                                          tconfig.alpha, tconfig.loss_kind)
            params = sgd_step(params, grads, tconfig.learning_rate,
                              tconfig.grad_clip_norm)
            total += cost
        report: MetricsReport = evaluate(snapshot(params).labeler(table), val, workers)
        history.append(HistoryRow(epoch, total / len(examples), *report))
        log.info(f"epoch {epoch}: loss {total / len(examples):.6f}, "
                 f"validation P {report.precision:.4f} R {report.recall:.4f} "
                 f"F1 {report.f1:.4f} Acc {report.accuracy:.4f}")
        if report.f1 > best_f1:
            best_f1, best_params, best_epoch = report.f1, params, epoch
            stale = 0
        else:
            stale += 1
        if stale >= tconfig.patience:
            log.info(f"stopping after epoch {epoch}: "
                     f"{stale} epochs without improvement")
            break

    log.info(f"Training took {format_timedelta(time.monotonic() - started)}, "
             f"best validation F1 {best_f1:.4f} at epoch {best_epoch}")
    return snapshot(best_params, history, best_epoch)
