"""RAKE keyword extraction projected onto KP3 labels.

Candidates are maximal runs of tokens that are neither stopwords nor
punctuation. A word scores deg(w) / freq(w) over the candidates of the tweet,
a phrase the sum of its word scores. The best ranked candidates are labelled
as keyphrases.
"""

from collections import Counter
from dataclasses import dataclass
import math
import re

from .augment import StopwordSet
from .corpus import PhraseSpan, Tweet, encode_phrases
from .error import ConfigError
from .records import generate_namedtuple


_DELIMITER = re.compile(r'[^\w]+')


@dataclass(frozen=True)
class RakeConfig:
    stopwords: StopwordSet
    fraction: float = 1 / 3
    top_n: int|None = None

    def __post_init__(self):
        if self.top_n is not None:
            if self.top_n < 1:
                raise ConfigError(f"top_n {self.top_n} must be at least 1")
        elif not 0 < self.fraction <= 1:
            raise ConfigError(f"fraction {self.fraction} is not in (0, 1]")

    def selection_size(self, n_candidates: int) -> int:
        """
        >>> RakeConfig(StopwordSet()).selection_size(3)
        1
        >>> RakeConfig(StopwordSet()).selection_size(4)
        2
        """
        if self.top_n is not None:
            return min(self.top_n, n_candidates)
        # rounded so that a fraction of 1/3 selects exactly 1 of 3
        return min(math.ceil(round(self.fraction * n_candidates, 9)), n_candidates)


ScoredPhrase_fields = (
    ('span' , PhraseSpan, 'Span'  , lambda span: f"{span.start}-{span.end}"),
    ('words', tuple     , 'Phrase', ' '.join),
    ('score', float     , 'Score' , '{:.4f}'),
)

ScoredPhrase = generate_namedtuple('ScoredPhrase', ScoredPhrase_fields)


def is_delimiter(form: str, stopwords: StopwordSet) -> bool:
    return form in stopwords or _DELIMITER.fullmatch(form) is not None


def rake_candidates(tweet: Tweet, stopwords: StopwordSet) -> list:
    """
    >>> from keyphrase.corpus import Token
    >>> tweet = Tweet('t1', tuple(Token(w, 'X', 'O', None, 'dep', '0')
    ...                          for w in ['di', 'bank', 'bagus']))
    >>> rake_candidates(tweet, StopwordSet(['di']))
    [PhraseSpan(start=1, end=2)]
    """
    spans = []
    start = None
    for position, form in enumerate(tweet.forms):
        if is_delimiter(form, stopwords):
            if start is not None:
                spans.append(PhraseSpan(start, position - 1))
                start = None
        elif start is None:
            start = position
    if start is not None:
        spans.append(PhraseSpan(start, len(tweet) - 1))
    return spans


def rake_scores(candidates, tweet: Tweet) -> tuple:
    """(word score per lowercased word, scored candidates in tweet order)"""
    words = [tuple(form.lower() for form in tweet.forms[start:end + 1])
             for start, end in candidates]
    freq = Counter()
    degree = Counter()
    for phrase in words:
        for word in phrase:
            freq[word] += 1
            degree[word] += len(phrase)
    word_scores = {word: degree[word] / freq[word] for word in freq}
    phrases = [ScoredPhrase(span, phrase, sum(word_scores[word] for word in phrase))
               for span, phrase in zip(candidates, words)]
    return word_scores, phrases


def rank_phrases(phrases) -> list:
    """by score, highest first; ties go to the earlier phrase"""
    return sorted(phrases, key=lambda phrase: (-phrase.score, phrase.span.start))


def rake_extract(tweet: Tweet, config: RakeConfig) -> tuple:
    """(KP3 labels of the selected phrases, ranked candidates)"""
    candidates = rake_candidates(tweet, config.stopwords)
    _, phrases = rake_scores(candidates, tweet)
    ranked = rank_phrases(phrases)
    selected = ranked[:config.selection_size(len(ranked))]
    return encode_phrases([phrase.span for phrase in selected], len(tweet)), ranked


def rake_labeler(config: RakeConfig):
    return lambda tweet: rake_extract(tweet, config)[0]
