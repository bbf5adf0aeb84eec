"""The `keyphrase` command line.

Option defaults come from `create_config` (hardcoded values, config file,
KEYPHRASE_* environment variables) through click's default_map; explicit
flags win.
"""

from dataclasses import asdict, dataclass, field
import io
import logging
from pathlib import Path

import click

from . import create_config
from .augment import AugmentConfig, augment_corpus, load_stopwords, load_synsets
from .corpus import (
    Corpus,
    CorpusStats_fields,
    LabelScheme,
    convert_corpus,
    corpus_stats,
    decode_phrases,
    load_corpus,
    split_train_val,
    write_corpus,
)
from .error import (
    ConfigError,
    FileFormatError,
    LabelError,
    VerificationFailure,
    exit_on_error,
)
from .evaluation import evaluate
from .features import build_feature_config, load_embeddings
from .network.gradcheck import GradCheckRow_fields, TOLERANCE, grad_check_suite
from .network.ops import LossKind
from .network.storage import load_model, save_model
from .network.training import HistoryRow_fields, TrainConfig, predict, train
from .rake import RakeConfig, rake_extract
from .records import generate_aligned_table, generate_formatter, generate_header
from .reports import (
    DEFAULT_ALPHAS,
    DEFAULT_METHODS,
    CompareRow,
    CompareRow_fields,
    Report,
    alpha_sweep,
    compare_methods,
)
from .synthetic import write_fixtures
from .utils import derive_seed, file_digest, get_conversion, parse_float_list, prettify_json
from .version import VERSION


log = logging.getLogger(__name__)


# config key -> option name, shared by every command that has the option
CONFIG_OPTIONS = {
    'ALPHA': 'alpha',
    'LR': 'lr',
    'HIDDEN1': 'hidden1',
    'HIDDEN2': 'hidden2',
    'WINDOW': 'window',
    'EPOCHS': 'epochs',
    'PATIENCE': 'patience',
    'CLIP': 'clip',
    'LOSS': 'loss',
    'SCHEME': 'scheme',
    'FAMILY': 'family',
    'VAL_FRACTION': 'val_fraction',
    'N': 'n',
    'M': 'm',
    'SEED': 'seed',
    'RAKE_FRACTION': 'fraction',
    'WORKERS': 'workers',
}


def build_default_map(config, commands) -> dict:
    defaults = {option: config[key] for key, option in CONFIG_OPTIONS.items()
                if key in config}
    return {name: dict(defaults) for name in commands}


@dataclass
class RunManifest:
    command: str
    options: dict
    seed: int|None
    inputs: dict = field(default_factory=dict)
    version: str = VERSION


def _json_value(value):
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_json_value(item) for item in value]
    return value


def write_manifest(artifact, command: str, options: dict, inputs: dict):
    """writes `<artifact>.manifest.json` describing how `artifact` was made"""
    manifest = RunManifest(
        command=command,
        options={name: _json_value(value) for name, value in options.items()},
        seed=options.get('seed'),
        inputs={name: file_digest(path) for name, path in inputs.items()
                if path is not None},
    )
    path = Path(f"{artifact}.manifest.json")
    path.write_text(prettify_json(asdict(manifest)) + '\n', encoding='utf-8')
    log.info(f"Wrote run manifest {path}")


def read_any_corpus(path, scheme: LabelScheme|None = None):
    """reads a KP3 or KP5 corpus file, converted to `scheme` when given"""
    try:
        corpus = load_corpus(path, LabelScheme.KP3)
    except (FileFormatError, LabelError) as kp3_error:
        try:
            corpus = load_corpus(path, LabelScheme.KP5)
        except (FileFormatError, LabelError):
            raise kp3_error
    return corpus if scheme is None else convert_corpus(corpus, scheme)


def emit(text: str, out):
    if out is None:
        click.echo(text, nl=False)
    else:
        Path(out).write_text(text, encoding='utf-8')
        log.info(f"Wrote {out}")


def _existing_file():
    return click.Path(exists=True, dir_okay=False, path_type=Path)


def training_options(f):
    """network and feature options shared by train, sweep and compare"""
    options = [
        click.option('--embeddings', required=True, type=_existing_file(),
                     help="word vectors in text format"),
        click.option('--val', 'val_path', type=_existing_file(),
                     help="validation corpus (default: a split of --corpus)"),
        click.option('--val-fraction', type=float, show_default=True),
        click.option('--alpha', type=click.FloatRange(0, 1), show_default=True),
        click.option('--lr', type=float, show_default=True),
        click.option('--hidden1', type=click.IntRange(min=1), show_default=True),
        click.option('--hidden2', type=click.IntRange(min=1), show_default=True),
        click.option('--window', type=click.IntRange(min=1), show_default=True),
        click.option('--epochs', type=click.IntRange(min=1), show_default=True),
        click.option('--patience', type=click.IntRange(min=0), show_default=True),
        click.option('--clip', type=float, show_default=True),
        click.option('--loss', type=click.Choice([k.value for k in LossKind]),
                     show_default=True),
        click.option('--use-pos/--no-use-pos', default=False),
        click.option('--use-ne/--no-use-ne', default=False),
        click.option('--use-ds/--no-use-ds', default=False),
        click.option('--seed', type=int, show_default=True),
        click.option('--workers', type=click.IntRange(min=1), show_default=True,
                     help="threads for validation and test scoring"),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def make_train_config(options, family='jrnn', scheme=LabelScheme.KP3) -> TrainConfig:
    return TrainConfig(
        alpha=options['alpha'],
        learning_rate=options['lr'],
        h1_size=options['hidden1'],
        h2_size=options['hidden2'],
        max_epochs=options['epochs'],
        patience=options['patience'],
        grad_clip_norm=options['clip'],
        loss_kind=LossKind(options['loss']),
        seed=options['seed'],
        scheme=scheme,
        family=family,
    )


def load_training_data(options, scheme: LabelScheme):
    """(train, val, embeddings, feature config) for the training commands"""
    corpus = read_any_corpus(options['corpus'], scheme)
    if options['val_path'] is not None:
        train_corpus = corpus
        val = read_any_corpus(options['val_path'], scheme)
    else:
        train_corpus, val = split_train_val(corpus, options['val_fraction'],
                                            derive_seed(options['seed'], 'split'))
    table = load_embeddings(options['embeddings'])
    fconfig = build_feature_config(train_corpus, options['use_pos'], options['use_ne'],
                                   options['use_ds'], options['window'])
    return train_corpus, val, table, fconfig


@click.group()
@click.option('-v', '--verbose', is_flag=True, help="log debug messages")
@click.option('-q', '--quiet', is_flag=True, help="log warnings and errors only")
@click.version_option(VERSION)
@click.pass_context
def cli(ctx, verbose, quiet):
    """Keyphrase extraction from tweets with joint-layer recurrent networks."""
    level = logging.DEBUG if verbose else logging.WARNING if quiet else logging.INFO
    ctx.obj = create_config(test_config=ctx.obj, log_level=level)
    if ctx.default_map is None:
        ctx.default_map = build_default_map(ctx.obj, ctx.command.commands)


@cli.command('train')
@click.option('--corpus', required=True, type=_existing_file())
@click.option('--model', 'model_path', required=True, type=click.Path(path_type=Path),
              help="model file to write")
@click.option('--family', type=click.Choice(['jrnn', 'rnn', 'lstm']), show_default=True)
@click.option('--scheme', type=click.Choice(['kp3', 'kp5']), show_default=True)
@training_options
@exit_on_error
def cmd_train(**options):
    """Train a tagger and write the model with its epoch history."""
    scheme = LabelScheme.parse(options['scheme'])
    tconfig = make_train_config(options, options['family'], scheme)
    train_corpus, val, table, fconfig = load_training_data(options, scheme)
    model = train(train_corpus, val, table, fconfig, tconfig, options['workers'])
    save_model(model, options['model_path'])

    history_path = Path(f"{options['model_path']}.history.tsv")
    formatter = generate_formatter(HistoryRow_fields)
    history_path.write_text(
        '\n'.join([generate_header(HistoryRow_fields),
                   *map(formatter, model.history)]) + '\n',
        encoding='utf-8')
    click.echo(generate_aligned_table(HistoryRow_fields, model.history,
                                      {(model.best_epoch - 1, 'f1'): '*'}))
    write_manifest(options['model_path'], 'train', options,
                   {'corpus': options['corpus'], 'val': options['val_path'],
                    'embeddings': options['embeddings']})


@cli.command('predict')
@click.option('--model', 'model_path', required=True, type=_existing_file())
@click.option('--corpus', required=True, type=_existing_file(),
              help="tweets to label, in the model's label scheme")
@click.option('--embeddings', required=True, type=_existing_file())
@click.option('--phrases', is_flag=True, help="print keyphrases instead of a corpus")
@click.option('--out', type=click.Path(path_type=Path))
@exit_on_error
def cmd_predict(**options):
    """Label tweets with a trained model."""
    model = load_model(options['model_path'])
    corpus = load_corpus(options['corpus'], model.scheme)
    table = load_embeddings(options['embeddings'])
    labeled = Corpus(model.scheme, tuple(
        tweet.with_labels(model.scheme.symbol(index)
                          for index in predict(model, tweet, table))
        for tweet in corpus))

    if options['phrases']:
        lines = []
        for tweet in labeled:
            for start, end in decode_phrases(tweet.kp3_labels(model.scheme)):
                lines.append(f"{tweet.id}\t{start}-{end}\t"
                             f"{' '.join(tweet.forms[start:end + 1])}\n")
        text = ''.join(lines)
    else:
        text = _corpus_text(labeled)
    emit(text, options['out'])
    if options['out'] is not None:
        write_manifest(options['out'], 'predict', options,
                       {'model': options['model_path'], 'corpus': options['corpus'],
                        'embeddings': options['embeddings']})


def _corpus_text(corpus) -> str:
    buffer = io.StringIO()
    write_corpus(corpus, buffer)
    return buffer.getvalue()


@cli.command('eval')
@click.option('--model', 'model_path', required=True, type=_existing_file())
@click.option('--test', 'test_path', required=True, type=_existing_file())
@click.option('--embeddings', required=True, type=_existing_file())
@click.option('--workers', type=click.IntRange(min=1), show_default=True)
@click.option('--out', type=click.Path(path_type=Path), help="tab separated report")
@exit_on_error
def cmd_eval(**options):
    """Word-level P, R, F1 and accuracy of a model on a test corpus."""
    model = load_model(options['model_path'])
    test = read_any_corpus(options['test_path'])
    table = load_embeddings(options['embeddings'])
    metrics = evaluate(model.labeler(table), test, options['workers'])
    report = Report(CompareRow_fields,
                    (CompareRow(options['model_path'].name, *metrics),))
    click.echo(report.render_table())
    if options['out'] is not None:
        emit(report.render_tsv(), options['out'])
        write_manifest(options['out'], 'eval', options,
                       {'model': options['model_path'], 'test': options['test_path'],
                        'embeddings': options['embeddings']})


@cli.command('stats')
@click.option('--corpus', required=True, type=_existing_file())
@exit_on_error
def cmd_stats(**options):
    """Tweet, keyphrase and word counts of a corpus."""
    stats = corpus_stats(read_any_corpus(options['corpus']))
    click.echo(generate_header(CorpusStats_fields))
    click.echo(generate_formatter(CorpusStats_fields)(stats))


@cli.command('augment')
@click.option('--corpus', required=True, type=_existing_file())
@click.option('--synsets', required=True, type=_existing_file())
@click.option('--stopwords', required=True, type=_existing_file())
@click.option('--n', type=click.IntRange(min=0), show_default=True,
              help="variants per tweet")
@click.option('--m', type=click.IntRange(min=1), show_default=True,
              help="replaced words per variant")
@click.option('--seed', type=int, show_default=True)
@click.option('--out', type=click.Path(path_type=Path))
@exit_on_error
def cmd_augment(**options):
    """Add synonym-replaced variants of every tweet."""
    corpus = read_any_corpus(options['corpus'])
    augmented = augment_corpus(corpus, load_synsets(options['synsets']),
                               load_stopwords(options['stopwords']),
                               AugmentConfig(options['n'], options['m'], options['seed']))
    emit(_corpus_text(augmented), options['out'])
    if options['out'] is not None:
        write_manifest(options['out'], 'augment', options,
                       {'corpus': options['corpus'], 'synsets': options['synsets'],
                        'stopwords': options['stopwords']})


@cli.command('rake')
@click.option('--corpus', required=True, type=_existing_file())
@click.option('--stopwords', required=True, type=_existing_file())
@click.option('--fraction', type=click.FloatRange(0, 1, min_open=True), show_default=True,
              help="share of ranked candidates selected")
@click.option('--top-n', type=click.IntRange(min=1),
              help="select a fixed number of candidates instead")
@click.option('--labels', is_flag=True, help="write a KP3 labelled corpus")
@click.option('--out', type=click.Path(path_type=Path))
@exit_on_error
def cmd_rake(**options):
    """Unsupervised RAKE keyphrases."""
    corpus = read_any_corpus(options['corpus'])
    config = RakeConfig(load_stopwords(options['stopwords']), options['fraction'],
                        options['top_n'])
    results = [(tweet, *rake_extract(tweet, config)) for tweet in corpus]
    if options['labels']:
        text = _corpus_text(Corpus(LabelScheme.KP3, tuple(
            tweet.with_labels(map(str, labels)) for tweet, labels, _ in results)))
    else:
        text = ''.join(
            f"{tweet.id}\t{rank}\t{phrase.span.start}-{phrase.span.end}\t"
            f"{' '.join(phrase.words)}\t{phrase.score:.4f}\n"
            for tweet, _, ranked in results
            for rank, phrase in enumerate(ranked, start=1))
    emit(text, options['out'])
    if options['out'] is not None:
        write_manifest(options['out'], 'rake', options,
                       {'corpus': options['corpus'], 'stopwords': options['stopwords']})


@cli.command('gradcheck')
@click.option('--seed', type=int, show_default=True)
@click.option('--epsilon', type=float, default=1e-5, show_default=True)
@click.option('--length', type=click.IntRange(min=1), default=5, show_default=True,
              help="sequence length")
@click.option('--inject-error', is_flag=True,
              help="perturb the analytic gradients; the check must then fail")
@click.option('--out', type=click.Path(path_type=Path))
@exit_on_error
def cmd_gradcheck(**options):
    """Compare backpropagation with finite differences for every model family."""
    rows = grad_check_suite(options['seed'], options['epsilon'], options['length'],
                            corrupt=options['inject_error'])
    click.echo(generate_aligned_table(GradCheckRow_fields, rows))
    worst = max(row.error for row in rows)
    click.echo(f"max relative error {worst:.3e} (tolerance {TOLERANCE:.0e})")
    if options['out'] is not None:
        formatter = generate_formatter(GradCheckRow_fields)
        emit('\n'.join([generate_header(GradCheckRow_fields), *map(formatter, rows)])
             + '\n', options['out'])
        write_manifest(options['out'], 'gradcheck', options, {})
    if not all(row.passed for row in rows):
        raise VerificationFailure(f"gradient check failed: max relative error "
                                  f"{worst:.3e} >= {TOLERANCE:.0e}")


def _parse_alphas(ctx, param, value):
    alphas = get_conversion(parse_float_list, value)
    if not alphas:
        raise click.BadParameter(f"'{value}' is not a comma separated list of numbers")
    return alphas


@cli.command('sweep')
@click.option('--corpus', required=True, type=_existing_file())
@click.option('--test', 'test_path', required=True, type=_existing_file())
@click.option('--alphas', default=','.join(map(str, DEFAULT_ALPHAS)), show_default=True,
              callback=_parse_alphas)
@click.option('--out', type=click.Path(path_type=Path), help="tab separated report")
@training_options
@exit_on_error
def cmd_sweep(**options):
    """Train JRNN3 once per alpha and compare on the test corpus."""
    tconfig = make_train_config(options)
    train_corpus, val, table, fconfig = load_training_data(options, LabelScheme.KP3)
    test = read_any_corpus(options['test_path'])
    report = alpha_sweep(train_corpus, val, test, table, fconfig, tconfig,
                         options['alphas'], options['workers'])
    click.echo(report.render_table())
    if options['out'] is not None:
        emit(report.render_tsv(), options['out'])
        write_manifest(options['out'], 'sweep', options,
                       {'corpus': options['corpus'], 'val': options['val_path'],
                        'test': options['test_path'],
                        'embeddings': options['embeddings']})


@cli.command('compare')
@click.option('--corpus', required=True, type=_existing_file())
@click.option('--test', 'test_path', required=True, type=_existing_file())
@click.option('--methods', default=','.join(DEFAULT_METHODS),
              help="comma separated method names such as RAKE,JRNN3-WE-POS")
@click.option('--stopwords', type=_existing_file(), help="needed by RAKE and augmentation")
@click.option('--synsets', type=_existing_file(), help="needed by augmentation")
@click.option('--fraction', type=click.FloatRange(0, 1, min_open=True), show_default=True)
@click.option('--n', type=click.IntRange(min=0), show_default=True)
@click.option('--m', type=click.IntRange(min=1), show_default=True)
@click.option('--out', type=click.Path(path_type=Path), help="tab separated report")
@training_options
@exit_on_error
def cmd_compare(**options):
    """Train and evaluate each method on the same split."""
    methods = [method.strip() for method in options['methods'].split(',')
               if method.strip()]
    if not methods:
        raise ConfigError("no methods given")
    tconfig = make_train_config(options)
    train_corpus, val, table, fconfig = load_training_data(options, LabelScheme.KP3)
    test = read_any_corpus(options['test_path'])
    stopwords = (load_stopwords(options['stopwords'])
                 if options['stopwords'] is not None else None)
    synsets = load_synsets(options['synsets']) if options['synsets'] is not None else None
    report = compare_methods(
        train_corpus, val, test, table, fconfig, tconfig, methods,
        rake_config=(RakeConfig(stopwords, options['fraction'])
                     if stopwords is not None else None),
        synsets=synsets,
        stopwords=stopwords,
        augment_config=AugmentConfig(options['n'], options['m'], options['seed']),
        workers=options['workers'])
    click.echo(report.render_table())
    if options['out'] is not None:
        emit(report.render_tsv(), options['out'])
        write_manifest(options['out'], 'compare', options,
                       {'corpus': options['corpus'], 'val': options['val_path'],
                        'test': options['test_path'],
                        'embeddings': options['embeddings'],
                        'stopwords': options['stopwords'],
                        'synsets': options['synsets']})


@cli.command('generate')
@click.option('--out-dir', required=True, type=click.Path(file_okay=False, path_type=Path))
@click.option('--tweets', type=click.IntRange(min=1), default=100, show_default=True)
@click.option('--dimension', type=click.IntRange(min=1), default=16, show_default=True)
@click.option('--scheme', type=click.Choice(['kp3', 'kp5']), show_default=True)
@click.option('--seed', type=int, show_default=True)
@exit_on_error
def cmd_generate(**options):
    """Write a synthetic corpus with matching embeddings, synsets and stopwords."""
    paths = write_fixtures(options['out_dir'], options['tweets'], options['seed'],
                           options['dimension'], LabelScheme.parse(options['scheme']))
    for name, path in paths.items():
        click.echo(f"{name}\t{path}")
    write_manifest(paths['corpus'], 'generate', options, {})


def main():
    cli(prog_name='keyphrase')

