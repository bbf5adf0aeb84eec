"""Synonym replacement augmentation.

Every training tweet gets `n` variants. A variant replaces up to `m` of the
candidate words (not stopwords, with at least one usable synonym) by a synonym
drawn from a synset database; every other column is copied from the parent, so
labels and span structure are unchanged.
"""

from dataclasses import dataclass, field
import logging

import numpy as np

from .corpus import Corpus, Tweet
from .error import ConfigError, FileFormatError
from .utils import derive_seed


log = logging.getLogger(__name__)


@dataclass(frozen=True)
class SynsetDB:
    entries: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.entries)

    def lookup(self, form: str) -> list:
        """the synsets of `form`, falling back to its lowercased form

        >>> SynsetDB({'bagus': [['baik', 'oke'], ['mantap']]}).lookup('Bagus')
        [['baik', 'oke'], ['mantap']]
        >>> SynsetDB().lookup('atm')
        []
        """
        if form in self.entries:
            return self.entries[form]
        return self.entries.get(form.lower(), [])

    def usable_synsets(self, form: str) -> list:
        """synsets with at least one member other than `form` itself"""
        return [[member for member in synset if member != form]
                for synset in self.lookup(form)
                if any(member != form for member in synset)]


def read_synsets(lines, path='<stream>') -> SynsetDB:
    """parses `word<TAB>syn1,syn2|syn3` lines

    >>> read_synsets(['bagus\\tbaik,oke|mantap']).lookup('bagus')
    [['baik', 'oke'], ['mantap']]
    """
    entries = {}
    for line_no, line in enumerate(lines, start=1):
        line = line.rstrip('\r\n')
        if not line.strip() or line.startswith('#'):
            continue
        word, sep, rest = line.partition('\t')
        word = word.strip()
        if not sep or not word:
            raise FileFormatError(path, line_no, "expected 'word<TAB>synonyms'")
        if word in entries:
            raise FileFormatError(path, line_no, f"duplicate headword '{word}'")
        synsets = []
        for group in rest.split('|'):
            members = [member.strip() for member in group.split(',')]
            if not all(members):
                raise FileFormatError(path, line_no,
                                      f"empty synonym in synset '{group}' of '{word}'")
            synsets.append(members)
        entries[word] = synsets
    return SynsetDB(entries)


def load_synsets(path) -> SynsetDB:
    with open(path, encoding='utf-8') as fp:
        db = read_synsets(fp, path)
    log.info(f"Read synsets for {len(db)} words from {path}")
    return db


def write_synsets(db: SynsetDB, fp):
    for word, synsets in db.entries.items():
        fp.write(word + "\t" + "|".join(",".join(synset) for synset in synsets) + "\n")


class StopwordSet(frozenset):
    """lowercased stopwords; membership is tested on the lowercased form"""

    def __new__(cls, words=()):
        return super().__new__(cls, (word.lower() for word in words))

    def __contains__(self, form):
        return super().__contains__(form.lower())


def read_stopwords(lines) -> StopwordSet:
    """
    >>> 'Di' in read_stopwords(['# comment', 'di', '', 'yang'])
    True
    """
    return StopwordSet(line.strip() for line in lines
                       if line.strip() and not line.lstrip().startswith('#'))


def load_stopwords(path) -> StopwordSet:
    with open(path, encoding='utf-8') as fp:
        stopwords = read_stopwords(fp)
    log.info(f"Read {len(stopwords)} stopwords from {path}")
    return stopwords


def write_stopwords(stopwords: StopwordSet, fp):
    for word in sorted(stopwords):
        fp.write(word + "\n")


@dataclass(frozen=True)
class AugmentConfig:
    n: int = 3
    m: int = 3
    seed: int = 42

    def __post_init__(self):
        if self.n < 0:
            raise ConfigError(f"n {self.n} must not be negative")
        if self.m < 1:
            raise ConfigError(f"m {self.m} must be at least 1")


def candidate_positions(tweet: Tweet, db: SynsetDB, stopwords: StopwordSet) -> list:
    """
    >>> from keyphrase.corpus import Token
    >>> tweet = Tweet('t1', tuple(Token(w, 'X', 'O', None, 'dep', '0')
    ...                          for w in ['di', 'bagus', 'atm']))
    >>> candidate_positions(tweet, SynsetDB({'bagus': [['baik']]}), StopwordSet(['di']))
    [1]
    """
    return [position for position, form in enumerate(tweet.forms)
            if form not in stopwords and db.usable_synsets(form)]


def variant_id(parent_id: str, k: int, taken=frozenset()) -> str:
    """the id of the `k`-th variant, bumping the suffix past ids in `taken`

    >>> variant_id('t1', 0)
    't1-aug1'
    >>> variant_id('a', 0, taken={'a', 'a-aug1', 'a-aug2'})
    'a-aug3'
    """
    number = k + 1
    while f"{parent_id}-aug{number}" in taken:
        number += 1
    return f"{parent_id}-aug{number}"


def augment_example(tweet: Tweet, db: SynsetDB, stopwords: StopwordSet,
                    config: AugmentConfig, rng: np.random.Generator, taken=None) -> list:
    """`config.n` variants of `tweet`, each edited independently from the original

    Variant ids avoid every id in `taken`, which is updated with the new ids.
    """
    if taken is None:
        taken = {tweet.id}
    candidates = candidate_positions(tweet, db, stopwords)
    variants = []
    for k in range(config.n):
        if len(candidates) <= config.m:
            chosen = candidates
        else:
            chosen = sorted(rng.choice(candidates, size=config.m, replace=False).tolist())
        tokens = list(tweet.tokens)
        for position in chosen:
            token = tokens[position]
            synsets = db.usable_synsets(token.form)
            synset = synsets[rng.integers(len(synsets))]
            tokens[position] = token._replace(form=synset[rng.integers(len(synset))])
        tweet_id = variant_id(tweet.id, k, taken)
        taken.add(tweet_id)
        variants.append(Tweet(tweet_id, tuple(tokens)))
    return variants


def augment_corpus(corpus: Corpus, db: SynsetDB, stopwords: StopwordSet,
                   config: AugmentConfig) -> Corpus:
    """the original tweets followed by all variants

    Each tweet draws from its own generator seeded by the tweet id, so a
    tweet's variants do not depend on its position in the corpus.
    """
    variants = []
    taken = set(corpus.ids)
    for tweet in corpus:
        rng = np.random.default_rng(derive_seed(config.seed, 'augment', tweet.id))
        variants.extend(augment_example(tweet, db, stopwords, config, rng, taken))
    augmented = Corpus(corpus.scheme, corpus.tweets + tuple(variants))
    log.info(f"Augmented {len(corpus)} tweets to {len(augmented)} "
             f"(n={config.n}, m={config.m})")
    return augmented
