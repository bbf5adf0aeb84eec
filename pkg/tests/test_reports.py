import pytest

import keyphrase.reports
from keyphrase.augment import AugmentConfig, StopwordSet
from keyphrase.corpus import LabelScheme, split_train_val
from keyphrase.error import ConfigError, UnknownMethodError
from keyphrase.evaluation import evaluate
from keyphrase.features import build_feature_config
from keyphrase.network.training import TrainConfig, train
from keyphrase.rake import RakeConfig
from keyphrase.reports import (
    DEFAULT_METHODS,
    CompareRow,
    CompareRow_fields,
    Report,
    SweepRow,
    SweepRow_fields,
    alpha_sweep,
    compare_methods,
    parse_method,
)
from keyphrase.synthetic import FILLERS, synthetic_lexicon


TINY = TrainConfig(h1_size=4, h2_size=4, max_epochs=2, patience=2)


def test_default_methods_parse():
    specs = [parse_method(name) for name in DEFAULT_METHODS]
    assert specs[0].is_rake
    assert [spec.family for spec in specs[1:5]] == ['rnn', 'lstm', 'jrnn', 'jrnn']
    assert specs[3].scheme is LabelScheme.KP5
    full = specs[-1]
    assert full.use_pos and full.use_ne and full.use_ds and full.augment


@pytest.mark.parametrize('name', ['CRF-WE', 'JRNN3-WE-XX', 'JRNN3-POS-POS', 'RAKE-POS'])
def test_unknown_methods(name):
    with pytest.raises(UnknownMethodError):
        parse_method(name)


def test_report_marks_best_rows():
    report = Report(CompareRow_fields, (
        CompareRow('a', 0.5, 0.5, 0.5, 0.9),
        CompareRow('b', 0.7, 0.7, 0.7, 0.8),
    ))
    assert report.best('f1') == 1
    assert report.best('accuracy') == 0
    assert report.render_tsv().splitlines() == [
        'Method\tP\tR\tF1\tAcc',
        'a\t0.5000\t0.5000\t0.5000\t0.9000',
        'b\t0.7000\t0.7000\t0.7000\t0.8000',
    ]
    table = report.render_table()
    assert '0.7000*' in table
    assert '0.9000*' in table


def test_alpha_sweep(synthetic):
    corpus, table = synthetic
    report = alpha_sweep(corpus, corpus, corpus, table, build_feature_config(corpus), TINY,
                         alphas=(0.2, 0.8))
    assert [row.alpha for row in report.rows] == [0.2, 0.8]
    with pytest.raises(ConfigError):
        alpha_sweep(corpus, corpus, corpus, table, build_feature_config(corpus), TINY,
                    alphas=())


def test_compare_methods(synthetic):
    corpus, table = synthetic
    synsets, stopwords = synthetic_lexicon(corpus, seed=3)
    methods = ['RAKE', 'JRNN5-WE', 'JRNN3-WE-POS-Augmentation']
    report = compare_methods(corpus, corpus, corpus, table, build_feature_config(corpus),
                             TINY, methods, rake_config=RakeConfig(stopwords),
                             synsets=synsets, stopwords=stopwords,
                             augment_config=AugmentConfig(n=1, m=1))
    assert [row.method for row in report.rows] == methods
    for row in report.rows:
        assert 0 <= row.f1 <= 1


def test_compare_needs_resources(synthetic):
    corpus, table = synthetic
    fconfig = build_feature_config(corpus)
    with pytest.raises(ConfigError):
        compare_methods(corpus, corpus, corpus, table, fconfig, TINY, ['RAKE'])
    with pytest.raises(ConfigError):
        compare_methods(corpus, corpus, corpus, table, fconfig, TINY,
                        ['JRNN3-WE-Augmentation'], stopwords=StopwordSet(FILLERS))


@pytest.fixture
def train_calls(monkeypatch):
    """records the arguments of every training run, then trains for real"""
    calls = []

    def recording_train(train_corpus, val, table, fconfig, tconfig, workers=1):
        calls.append(dict(train=train_corpus, val=val, fconfig=fconfig, tconfig=tconfig))
        return train(train_corpus, val, table, fconfig, tconfig, workers)

    monkeypatch.setattr(keyphrase.reports, 'train', recording_train)
    return calls


def test_sweep_alpha_values_render_distinctly():
    report = Report(SweepRow_fields, (
        SweepRow(0.3, 0.5, 0.5, 0.5, 0.5),
        SweepRow(0.35, 0.6, 0.6, 0.6, 0.6),
    ))
    assert [line.split('\t')[0] for line in report.render_tsv().splitlines()] == \
        ['Alpha', '0.3', '0.35']


def test_default_sweep_has_five_rows(synthetic, train_calls):
    corpus, table = synthetic
    report = alpha_sweep(corpus, corpus, corpus, table, build_feature_config(corpus), TINY)
    assert [row.alpha for row in report.rows] == [0.1, 0.3, 0.5, 0.7, 0.9]
    assert [call['tconfig'].alpha for call in train_calls] == [0.1, 0.3, 0.5, 0.7, 0.9]
    assert {call['tconfig'].seed for call in train_calls} == {TINY.seed}


def test_single_alpha_row_is_best(synthetic):
    corpus, table = synthetic
    report = alpha_sweep(corpus, corpus, corpus, table, build_feature_config(corpus), TINY,
                         alphas=(0.5,))
    assert len(report.rows) == 1
    assert report.markers() == {(0, 'f1'): '*', (0, 'accuracy'): '*'}
    assert report.render_table().count('*') == 2


def test_sweep_and_compare_are_deterministic(synthetic):
    corpus, table = synthetic
    fconfig = build_feature_config(corpus)
    synsets, stopwords = synthetic_lexicon(corpus, seed=3)

    def sweep():
        return alpha_sweep(corpus, corpus, corpus, table, fconfig, TINY, alphas=(0.3, 0.7))

    def compare():
        return compare_methods(corpus, corpus, corpus, table, fconfig, TINY,
                               ['JRNN3-WE', 'JRNN3-WE-Augmentation'],
                               synsets=synsets, stopwords=stopwords)

    assert sweep() == sweep()
    assert compare() == compare()


def test_pos_method_enables_pos_features_only(synthetic, train_calls):
    corpus, table = synthetic
    compare_methods(corpus, corpus, corpus, table, build_feature_config(corpus), TINY,
                    ['JRNN3-WE-POS'])
    [call] = train_calls
    fconfig, tconfig = call['fconfig'], call['tconfig']
    assert (fconfig.use_pos, fconfig.use_ne, fconfig.use_ds) == (True, False, False)
    assert (tconfig.family, tconfig.scheme) == ('jrnn', LabelScheme.KP3)


def test_augmentation_applies_to_training_tweets_only(synthetic, train_calls, monkeypatch):
    corpus, table = synthetic
    train_part, test = split_train_val(corpus, 0.3, seed=1)
    evaluated = []

    def recording_evaluate(labeler, test_corpus, workers=1):
        evaluated.append(test_corpus)
        return evaluate(labeler, test_corpus, workers)

    monkeypatch.setattr(keyphrase.reports, 'evaluate', recording_evaluate)
    synsets, stopwords = synthetic_lexicon(corpus, seed=3)
    compare_methods(train_part, test, test, table, build_feature_config(corpus), TINY,
                    ['JRNN3-WE-Augmentation'], synsets=synsets, stopwords=stopwords,
                    augment_config=AugmentConfig(n=2, m=1))
    [call] = train_calls
    assert len(call['train']) == len(train_part) * 3
    assert call['train'].tweets[:len(train_part)] == train_part.tweets
    assert call['val'] == test
    assert evaluated == [test]
