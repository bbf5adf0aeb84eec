"""Synthetic fixture data in the toolkit's file formats.

Tweets alternate runs of filler words and keyword words. Keyword runs are the
gold keyphrases, so a tagger that separates the two vocabularies reaches
F1 = 1. Fillers double as the stopword list and keywords carry synsets.
"""

import logging
from pathlib import Path

import numpy as np

from .augment import StopwordSet, SynsetDB, write_stopwords, write_synsets
from .corpus import Corpus, LabelScheme, Token, Tweet, convert_corpus, write_corpus
from .error import ConfigError
from .features import EmbeddingTable, write_embeddings
from .utils import derive_seed


log = logging.getLogger(__name__)


FILLERS = ('di', 'yang', 'dan', 'ke', 'dari', 'ini', 'itu', 'untuk', 'dengan',
           'saya', 'sudah', 'tidak', 'bisa', 'ada', 'mau', 'lagi')

KEYWORDS = ('bank', 'atm', 'kartu', 'kredit', 'transfer', 'saldo', 'cabang',
            'promo', 'bunga', 'debit', 'tabungan', 'nasabah', 'rekening',
            'cicilan', 'limit', 'tagihan', 'mobile', 'token', 'teller', 'kurs')

MAX_RUN = 3


def _run_tokens(forms, keyword, offset):
    tokens = []
    for i, form in enumerate(forms):
        position = offset + i
        if keyword:
            label = '1' if i == 0 else '2'
            pos, ne = 'NN', 'ORG'
        else:
            label, pos, ne = '0', 'X', 'O'
        head = position - 1 if position > 0 else None
        deprel = 'root' if head is None else ('compound' if keyword and i else 'dep')
        tokens.append(Token(form, pos, ne, head, deprel, label))
    return tokens


def synthetic_tweet(tweet_id: str, rng: np.random.Generator, max_runs: int = 3) -> Tweet:
    """filler and keyword runs, alternating; the first run is filler"""
    tokens = []
    keyword = False
    for _ in range(2 * int(rng.integers(1, max_runs + 1))):
        pool = KEYWORDS if keyword else FILLERS
        length = int(rng.integers(1, MAX_RUN + 1))
        forms = [pool[i] for i in rng.choice(len(pool), size=length, replace=False)]
        tokens.extend(_run_tokens(forms, keyword, len(tokens)))
        keyword = not keyword
    return Tweet(tweet_id, tuple(tokens))


def synthetic_corpus(n_tweets: int, seed: int,
                     scheme: LabelScheme = LabelScheme.KP3) -> Corpus:
    """
    >>> corpus = synthetic_corpus(5, seed=1)
    >>> len(corpus), corpus.ids[0]
    (5, 'syn1')
    >>> corpus == synthetic_corpus(5, seed=1)
    True
    """
    if n_tweets < 0:
        raise ConfigError(f"can not generate {n_tweets} tweets")
    rng = np.random.default_rng(derive_seed(seed, 'synthetic', 'corpus'))
    tweets = tuple(synthetic_tweet(f"syn{i + 1}", rng) for i in range(n_tweets))
    return convert_corpus(Corpus(LabelScheme.KP3, tweets), scheme)


def synthetic_embeddings(corpus: Corpus, dimension: int, seed: int) -> EmbeddingTable:
    """one standard normal vector per filler, keyword and corpus form"""
    forms = dict.fromkeys(FILLERS + KEYWORDS)
    for tweet in corpus:
        forms.update(dict.fromkeys(tweet.forms))
    rng = np.random.default_rng(derive_seed(seed, 'synthetic', 'embeddings'))
    return EmbeddingTable(dimension, {form: rng.standard_normal(dimension)
                                      for form in forms})


def synthetic_lexicon(corpus: Corpus, seed: int) -> tuple:
    """(synsets over the keyword vocabulary, fillers as stopwords)"""
    rng = np.random.default_rng(derive_seed(seed, 'synthetic', 'lexicon'))
    used = {form for tweet in corpus for form in tweet.forms}
    entries = {}
    for word in KEYWORDS:
        if word not in used:
            continue
        others = [other for other in KEYWORDS if other != word]
        picked = [others[i] for i in rng.choice(len(others), size=3, replace=False)]
        entries[word] = [picked[:1], picked[1:]]
    return SynsetDB(entries), StopwordSet(FILLERS)


def write_fixtures(directory, n_tweets: int, seed: int, dimension: int = 16,
                   scheme: LabelScheme = LabelScheme.KP3) -> dict:
    """writes corpus, embeddings, synsets and stopwords files into `directory`"""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    corpus = synthetic_corpus(n_tweets, seed, scheme)
    table = synthetic_embeddings(corpus, dimension, seed)
    db, stopwords = synthetic_lexicon(corpus, seed)
    paths = {
        'corpus': directory / 'corpus.conll',
        'embeddings': directory / 'embeddings.txt',
        'synsets': directory / 'synsets.tsv',
        'stopwords': directory / 'stopwords.txt',
    }
    with open(paths['corpus'], 'w', encoding='utf-8') as fp:
        write_corpus(corpus, fp)
    with open(paths['embeddings'], 'w', encoding='utf-8') as fp:
        write_embeddings(table, fp)
    with open(paths['synsets'], 'w', encoding='utf-8') as fp:
        write_synsets(db, fp)
    with open(paths['stopwords'], 'w', encoding='utf-8') as fp:
        write_stopwords(stopwords, fp)
    log.info(f"Wrote {len(corpus)} synthetic tweets and their lexicon to {directory}")
    return paths
