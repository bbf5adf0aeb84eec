"""Alpha sweeps and method comparisons, rendered as tables.

Method names read like ``JRNN3-WE-POS-DS-Augmentation``: a tagger (RAKE, RNN,
LSTM, JRNN5, JRNN3) followed by optional tokens in any order and any case.
``WE`` (word embeddings, always used) may be left out.
"""

import csv
from dataclasses import dataclass, replace
import io
import logging

from .augment import AugmentConfig, StopwordSet, SynsetDB, augment_corpus
from .corpus import Corpus, LabelScheme, convert_corpus
from .error import ConfigError, UnknownMethodError
from .evaluation import MetricsReport, MetricsReport_fields, evaluate
from .features import EmbeddingTable, FeatureConfig
from .network.ops import check_alpha
from .network.training import TrainConfig, train
from .rake import RakeConfig, rake_labeler
from .records import generate_aligned_table, generate_namedtuple


log = logging.getLogger(__name__)


DEFAULT_ALPHAS = (0.1, 0.3, 0.5, 0.7, 0.9)

DEFAULT_METHODS = (
    'RAKE',
    'RNN-WE',
    'LSTM-WE',
    'JRNN5-WE',
    'JRNN3-WE',
    'JRNN3-WE-POS',
    'JRNN3-WE-NE',
    'JRNN3-WE-DS',
    'JRNN3-WE-POS-NE',
    'JRNN3-WE-POS-DS',
    'JRNN3-WE-NE-DS',
    'JRNN3-WE-NE-POS-DS',
    'JRNN3-WE-NE-POS-DS-Augmentation',
)

# tagger token: (model family, label scheme)
TAGGERS = {
    'RAKE' : (None, LabelScheme.KP3),
    'RNN'  : ('rnn', LabelScheme.KP3),
    'LSTM' : ('lstm', LabelScheme.KP3),
    'JRNN5': ('jrnn', LabelScheme.KP5),
    'JRNN3': ('jrnn', LabelScheme.KP3),
}

OPTION_TOKENS = ('WE', 'POS', 'NE', 'DS', 'AUGMENTATION')


@dataclass(frozen=True)
class MethodSpec:
    name: str
    family: str|None
    scheme: LabelScheme
    use_pos: bool = False
    use_ne: bool = False
    use_ds: bool = False
    augment: bool = False

    @property
    def is_rake(self) -> bool:
        return self.family is None


def parse_method(name: str) -> MethodSpec:
    """
    >>> spec = parse_method('jrnn3-ds-we-Augmentation')
    >>> spec.family, spec.scheme.name, spec.use_pos, spec.use_ds, spec.augment
    ('jrnn', 'KP3', False, True, True)
    """
    tagger, *options = name.strip().upper().split('-')
    if tagger not in TAGGERS:
        raise UnknownMethodError(f"unknown method '{name}', expected one of "
                                 f"{', '.join(TAGGERS)} with options")
    unknown = [option for option in options if option not in OPTION_TOKENS]
    if unknown:
        raise UnknownMethodError(f"unknown option {unknown[0]} in method '{name}'")
    if len(set(options)) != len(options):
        raise UnknownMethodError(f"repeated option in method '{name}'")
    family, scheme = TAGGERS[tagger]
    if family is None and set(options) - {'WE'}:
        raise UnknownMethodError(f"RAKE takes no options, got '{name}'")
    return MethodSpec(name, family, scheme,
                      use_pos='POS' in options,
                      use_ne='NE' in options,
                      use_ds='DS' in options,
                      augment='AUGMENTATION' in options)


SweepRow_fields = (
    ('alpha', float, 'Alpha', '{:g}'),
    *MetricsReport_fields,
)

SweepRow = generate_namedtuple('SweepRow', SweepRow_fields)

CompareRow_fields = (
    ('method', str, 'Method', '{}'),
    *MetricsReport_fields,
)

CompareRow = generate_namedtuple('CompareRow', CompareRow_fields)


@dataclass(frozen=True)
class Report:
    """rows of one record type with the best F1 and accuracy rows marked"""
    fields: tuple
    rows: tuple

    def best(self, name: str) -> int:
        values = [getattr(row, name) for row in self.rows]
        return values.index(max(values))

    def markers(self) -> dict:
        return {(self.best('f1'), 'f1'): '*', (self.best('accuracy'), 'accuracy'): '*'}

    def render_table(self) -> str:
        return generate_aligned_table(self.fields, self.rows, self.markers())

    def render_tsv(self) -> str:
        out = io.StringIO()
        writer = csv.writer(out, delimiter='\t', lineterminator='\n')
        writer.writerow(field[2] for field in self.fields)
        for row in self.rows:
            writer.writerow(field[3].format(value)
                            for field, value in zip(self.fields, row))
        return out.getvalue()


def alpha_sweep(train_corpus: Corpus, val: Corpus, test: Corpus, table: EmbeddingTable,
                fconfig: FeatureConfig, base_tconfig: TrainConfig,
                alphas=DEFAULT_ALPHAS, workers: int = 1) -> Report:
    """one model per alpha, same data and seed, evaluated on `test`"""
    if not alphas:
        raise ConfigError("no alpha values to sweep")
    for alpha in alphas:
        check_alpha(alpha)
    rows = []
    for alpha in alphas:
        log.info(f"Sweep: training with alpha {alpha}")
        model = train(train_corpus, val, table, fconfig,
                      replace(base_tconfig, alpha=alpha), workers)
        rows.append(SweepRow(alpha, *evaluate(model.labeler(table), test, workers)))
    return Report(SweepRow_fields, tuple(rows))


def _method_report(spec: MethodSpec, train_corpus: Corpus, val: Corpus, test: Corpus,
                   table: EmbeddingTable, fconfig: FeatureConfig, tconfig: TrainConfig,
                   rake_config: RakeConfig|None, synsets: SynsetDB|None,
                   stopwords: StopwordSet|None, augment_config: AugmentConfig,
                   workers: int) -> MetricsReport:
    if spec.is_rake:
        if rake_config is None:
            raise ConfigError(f"{spec.name} needs a stopword list")
        return evaluate(rake_labeler(rake_config), test, workers)

    if spec.augment:
        if synsets is None or stopwords is None:
            raise ConfigError(f"{spec.name} needs a synset database and a stopword list")
        train_corpus = augment_corpus(train_corpus, synsets, stopwords, augment_config)
    model = train(convert_corpus(train_corpus, spec.scheme),
                  convert_corpus(val, spec.scheme),
                  table,
                  replace(fconfig, use_pos=spec.use_pos, use_ne=spec.use_ne,
                          use_ds=spec.use_ds),
                  replace(tconfig, family=spec.family, scheme=spec.scheme),
                  workers)
    return evaluate(model.labeler(table), test, workers)


def compare_methods(train_corpus: Corpus, val: Corpus, test: Corpus,
                    table: EmbeddingTable, fconfig: FeatureConfig, tconfig: TrainConfig,
                    methods=DEFAULT_METHODS, rake_config: RakeConfig|None = None,
                    synsets: SynsetDB|None = None, stopwords: StopwordSet|None = None,
                    augment_config: AugmentConfig|None = None,
                    workers: int = 1) -> Report:
    """one row per method; `fconfig` must carry every tag inventory

    Augmentation is applied to the training tweets only.
    """
    specs = [parse_method(method) for method in methods]
    if not specs:
        raise ConfigError("no methods to compare")
    augment_config = augment_config or AugmentConfig(seed=tconfig.seed)
    rows = []
    for spec in specs:
        log.info(f"Compare: {spec.name}")
        report = _method_report(spec, train_corpus, val, test, table, fconfig, tconfig,
                                rake_config, synsets, stopwords, augment_config,
                                workers)
        rows.append(CompareRow(spec.name, *report))
    return Report(CompareRow_fields, tuple(rows))
