import io

import pytest

from keyphrase.corpus import (
    KP5_TO_KP3,
    Corpus,
    LabelScheme,
    PhraseSpan,
    convert_corpus,
    corpus_stats,
    decode_phrases,
    encode_phrases,
    kp3_to_kp5,
    kp5_to_kp3,
    read_corpus,
    split_train_val,
    to_binary_labels,
    write_corpus,
)
from keyphrase.error import FileFormatError, LabelError, SpanError


def test_load_corpus(small_corpus):
    assert len(small_corpus) == 4
    assert small_corpus.ids == ['t1', 't2', 't3', 't4']
    first = small_corpus.tweets[0]
    assert first.forms == ['di', 'bank', 'bagus']
    assert first.labels == ['0', '1', '0']
    assert first.tokens[1].head is None
    assert first.tokens[0].head == 1


def test_write_then_read_is_identity(small_corpus):
    buffer = io.StringIO()
    write_corpus(small_corpus, buffer)
    assert read_corpus(buffer.getvalue().splitlines(), LabelScheme.KP3) == small_corpus


def test_tweet_without_id_gets_a_default():
    corpus = read_corpus(['a\tX\tO\t_\troot\t0', ''], LabelScheme.KP3)
    assert corpus.ids == ['t0']


@pytest.mark.parametrize('line, message', [
    ('a\tX\tO\t_\troot', 'expected 6 tab separated columns'),
    ('a\tX\tO\t_\troot\t3', "unknown KP3 label '3'"),
    ('a\tX\tO\tfoo\troot\t0', "HEAD 'foo'"),
    ('\tX\tO\t_\troot\t0', 'empty FORM'),
])
def test_malformed_line(line, message):
    with pytest.raises(FileFormatError, match=message) as excinfo:
        read_corpus(['# id = x', line], LabelScheme.KP3, 'bad.conll')
    assert str(excinfo.value).startswith('bad.conll:2:')


def test_head_out_of_range():
    with pytest.raises(FileFormatError, match='out of range'):
        read_corpus(['a\tX\tO\t5\troot\t0'], LabelScheme.KP3)


def test_duplicate_tweet_id_reports_its_line():
    lines = ['# id = a', 'x\tX\tO\t_\troot\t0', '', '# id = a', 'y\tX\tO\t_\troot\t0']
    with pytest.raises(FileFormatError, match="duplicate tweet id 'a'") as excinfo:
        read_corpus(lines, LabelScheme.KP3, 'dup.conll')
    assert excinfo.value.line_no == 5


def test_kp5_file_read_as_kp3_is_rejected():
    with pytest.raises(FileFormatError):
        read_corpus(['a\tX\tO\t_\troot\tB'], LabelScheme.KP3)


def test_corpus_stats(small_corpus):
    stats = corpus_stats(small_corpus)
    assert stats.total_tweets == 4
    assert stats.total_words == 14
    assert stats.total_keyphrases == 4
    assert stats.class_counts == {'0': 8, '1': 4, '2': 2}


def test_split_train_val_sizes_and_order(synthetic):
    corpus, _ = synthetic
    train, val = split_train_val(corpus, 0.1, seed=5)
    assert (len(train), len(val)) == (9, 1)
    assert sorted(train.ids + val.ids) == sorted(corpus.ids)
    positions = {tweet_id: i for i, tweet_id in enumerate(corpus.ids)}
    assert [positions[i] for i in train.ids] == sorted(positions[i] for i in train.ids)


@pytest.mark.parametrize('fraction, n_val', [
    (0.25, 3),   # 2.5 rounds up
    (0.75, 8),   # 7.5 rounds up
    (0.125, 1),
    (0.01, 1),   # never an empty validation part
    (0.99, 9),   # never an empty training part
])
def test_split_validation_size(synthetic, fraction, n_val):
    corpus, _ = synthetic
    train, val = split_train_val(corpus, fraction, seed=2)
    assert (len(train), len(val)) == (10 - n_val, n_val)


def test_split_is_deterministic(synthetic):
    corpus, _ = synthetic
    assert split_train_val(corpus, 0.3, 9) == split_train_val(corpus, 0.3, 9)


def test_split_needs_two_tweets(small_corpus):
    with pytest.raises(SpanError):
        split_train_val(Corpus(LabelScheme.KP3, small_corpus.tweets[:1]), 0.5, 1)


def test_kp5_to_kp3_table():
    assert kp5_to_kp3(list('OBMES')) == [0, 1, 2, 2, 1]
    assert KP5_TO_KP3 == {'O': 0, 'B': 1, 'M': 2, 'E': 2, 'S': 1}
    with pytest.raises(LabelError):
        kp5_to_kp3(['X'])


def test_binary_labels_mark_non_o_positions(rng):
    for _ in range(1000):
        tags = [LabelScheme.KP5.symbol(i) for i in rng.integers(0, 5, size=rng.integers(1, 12))]
        assert to_binary_labels(kp5_to_kp3(tags)) == [int(tag != 'O') for tag in tags]


def test_decode_phrases():
    assert decode_phrases([1, 2, 0, 1, 1]) == [PhraseSpan(0, 1), PhraseSpan(3, 3),
                                                PhraseSpan(4, 4)]
    assert decode_phrases([0, 0]) == []
    # an orphan 2 opens its own phrase
    assert decode_phrases([2, 0, 2, 2]) == [PhraseSpan(0, 0), PhraseSpan(2, 3)]


def test_encode_phrases_rejects_bad_spans():
    with pytest.raises(SpanError):
        encode_phrases([PhraseSpan(0, 2), PhraseSpan(2, 3)], 5)
    with pytest.raises(SpanError):
        encode_phrases([PhraseSpan(3, 5)], 5)


def test_encode_decode_repairs_random_sequences(rng):
    for _ in range(1000):
        labels = rng.integers(0, 3, size=rng.integers(1, 15)).tolist()
        spans = decode_phrases(labels)
        repaired = encode_phrases(spans, len(labels))
        assert decode_phrases(repaired) == spans
        assert to_binary_labels(repaired) == to_binary_labels(labels)


def test_kp3_to_kp5_matches_repaired_form(rng):
    for _ in range(200):
        labels = rng.integers(0, 3, size=rng.integers(1, 10)).tolist()
        repaired = encode_phrases(decode_phrases(labels), len(labels))
        assert kp5_to_kp3(kp3_to_kp5(labels)) == repaired


def test_convert_corpus_round_trip(small_corpus):
    kp5 = convert_corpus(small_corpus, LabelScheme.KP5)
    assert kp5.scheme is LabelScheme.KP5
    assert kp5.tweets[1].labels == ['B', 'E', 'O', 'O']
    assert convert_corpus(kp5, LabelScheme.KP3) == small_corpus


def test_label_scheme_lookup():
    assert LabelScheme.KP5.index('M') == 2
    assert LabelScheme.KP3.symbol(1) == '1'
    with pytest.raises(LabelError):
        LabelScheme.parse('kp4')
    assert LabelScheme.KP3.n_classes == 3
