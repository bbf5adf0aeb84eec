from pathlib import Path

import numpy as np
import pytest

from keyphrase.augment import load_stopwords, load_synsets
from keyphrase.corpus import LabelScheme, Token, Tweet, load_corpus
from keyphrase.features import load_embeddings
from keyphrase.synthetic import synthetic_corpus, synthetic_embeddings


FIXTURES = Path(__file__).parent / 'fixtures'


def make_tweet(forms, labels=None, tweet_id='t1'):
    """a tweet with placeholder annotation columns"""
    labels = labels or ['0'] * len(forms)
    return Tweet(tweet_id, tuple(
        Token(form, 'X', 'O', None if i == 0 else i - 1, 'dep', str(label))
        for i, (form, label) in enumerate(zip(forms, labels))))


@pytest.fixture
def fixtures():
    return FIXTURES


@pytest.fixture
def small_corpus():
    return load_corpus(FIXTURES / 'small.conll', LabelScheme.KP3)


@pytest.fixture
def embeddings():
    return load_embeddings(FIXTURES / 'embeddings.txt')


@pytest.fixture
def synsets():
    return load_synsets(FIXTURES / 'synsets.tsv')


@pytest.fixture
def stopwords():
    return load_stopwords(FIXTURES / 'stopwords.txt')


@pytest.fixture
def synthetic():
    corpus = synthetic_corpus(10, seed=3)
    return corpus, synthetic_embeddings(corpus, 8, seed=3)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
