"""Annotated tweet corpora, label schemes and phrase/label conversion.

A corpus file holds one token per line in six tab separated columns
FORM, POS, NE, HEAD, DEPREL, LABEL. HEAD is a 0-based index into the tweet or
``_`` for the root. A blank line ends a tweet; ``# id = ...`` comments name it.
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
import logging
import sys

import numpy as np

from .error import FileFormatError, LabelError, SpanError
from .records import generate_formatter, generate_namedtuple


log = logging.getLogger(__name__)


ROOT = '_'


class LabelScheme(Enum):
    KP3 = ('0', '1', '2')
    KP5 = ('O', 'B', 'M', 'E', 'S')

    @property
    def symbols(self) -> tuple[str, ...]:
        return self.value

    @property
    def n_classes(self) -> int:
        return len(self.value)

    def index(self, symbol: str) -> int:
        try:
            return self.value.index(symbol)
        except ValueError:
            raise LabelError(f"'{symbol}' is not a {self.name} label")

    def symbol(self, index: int) -> str:
        return self.value[index]

    @classmethod
    def parse(cls, name: str) -> 'LabelScheme':
        """
        >>> LabelScheme.parse('kp5')
        <LabelScheme.KP5: ('O', 'B', 'M', 'E', 'S')>
        """
        try:
            return cls[name.upper()]
        except KeyError:
            raise LabelError(f"unknown label scheme '{name}'")


def _format_head(head):
    return ROOT if head is None else str(head)


Token_fields = (
    ('form'  , str     , 'FORM'  , '{}'),
    ('pos'   , str     , 'POS'   , '{}'),
    ('ne'    , str     , 'NE'    , '{}'),
    ('head'  , int|None, 'HEAD'  , _format_head),
    ('deprel', str     , 'DEPREL', '{}'),
    ('label' , str     , 'LABEL' , '{}'),
)

Token = generate_namedtuple('Token', Token_fields)

format_token = generate_formatter(Token_fields)


PhraseSpan_fields = (
    ('start', int, 'Start', '{}'),
    ('end'  , int, 'End'  , '{}'),
)

PhraseSpan = generate_namedtuple('PhraseSpan', PhraseSpan_fields)


@dataclass(frozen=True)
class Tweet:
    id: str
    tokens: tuple

    def __post_init__(self):
        if not self.tokens:
            raise LabelError(f"tweet '{self.id}' has no tokens")

    def __len__(self):
        return len(self.tokens)

    @property
    def forms(self) -> list[str]:
        return [token.form for token in self.tokens]

    @property
    def labels(self) -> list[str]:
        return [token.label for token in self.tokens]

    def kp3_labels(self, scheme: 'LabelScheme') -> list[int]:
        if scheme is LabelScheme.KP3:
            return [int(label) for label in self.labels]
        return kp5_to_kp3(self.labels)

    def with_labels(self, labels) -> 'Tweet':
        return Tweet(self.id, tuple(token._replace(label=label)
                                    for token, label in zip(self.tokens, labels)))


@dataclass(frozen=True)
class Corpus:
    scheme: LabelScheme
    tweets: tuple = field(default=())

    def __post_init__(self):
        seen = set()
        for tweet in self.tweets:
            if tweet.id in seen:
                raise LabelError(f"duplicate tweet id '{tweet.id}'")
            seen.add(tweet.id)
            for token in tweet.tokens:
                if token.label not in self.scheme.symbols:
                    raise LabelError(f"tweet '{tweet.id}': '{token.label}' "
                                     f"is not a {self.scheme.name} label")

    def __len__(self):
        return len(self.tweets)

    def __iter__(self):
        return iter(self.tweets)

    @property
    def ids(self) -> list[str]:
        return [tweet.id for tweet in self.tweets]


CorpusStats_fields = (
    ('total_tweets'    , int     , 'Total Data'       , '{}'),
    ('total_keyphrases', int     , 'Total Keyphrase'  , '{}'),
    ('mean_keyphrases' , Fraction, 'Average Keyphrase', lambda mean: f"{float(mean):.2f}"),
    ('total_words'     , int     , 'Total Words'      , '{}'),
    ('class_counts'    , dict    , 'Class Counts'     ,
     lambda counts: ' '.join(f"{label}:{count}" for label, count in counts.items())),
)

CorpusStats = generate_namedtuple('CorpusStats', CorpusStats_fields)


def _parse_token(path, line_no, line, scheme):
    columns = line.split('\t')
    if len(columns) != len(Token_fields):
        raise FileFormatError(path, line_no,
                              f"expected {len(Token_fields)} tab separated columns, "
                              f"got {len(columns)}")
    form, pos, ne, head, deprel, label = (column.strip() for column in columns)
    if not form:
        raise FileFormatError(path, line_no, "empty FORM column")
    if label not in scheme.symbols:
        raise FileFormatError(path, line_no,
                              f"unknown {scheme.name} label '{label}'")
    if head == ROOT:
        head = None
    else:
        try:
            head = int(head)
        except ValueError:
            raise FileFormatError(path, line_no, f"HEAD '{head}' is not an index or '_'")
    return Token(form, pos, ne, head, deprel, label)


def _finish_tweet(path, tweet_id, tokens, numbers):
    for position, (token, line_no) in enumerate(zip(tokens, numbers)):
        if token.head is None:
            continue
        if not 0 <= token.head < len(tokens):
            raise FileFormatError(path, line_no,
                                  f"HEAD {token.head} is out of range for a "
                                  f"tweet of {len(tokens)} tokens")
        if token.head == position:
            raise FileFormatError(path, line_no, "token is its own HEAD")
    return Tweet(tweet_id, tuple(tokens))


def read_corpus(lines, scheme: LabelScheme, path='<stream>') -> Corpus:
    tweets = []
    seen = set()
    tokens, numbers = [], []
    tweet_id = None

    def finish():
        tweet = _finish_tweet(path, tweet_id or f"t{len(tweets)}", tokens, numbers)
        if tweet.id in seen:
            raise FileFormatError(path, numbers[0], f"duplicate tweet id '{tweet.id}'")
        seen.add(tweet.id)
        tweets.append(tweet)

    for line_no, line in enumerate(lines, start=1):
        line = line.rstrip('\r\n')
        if line.startswith('#'):
            key, sep, value = line[1:].partition('=')
            if sep and key.strip() == 'id' and not tokens:
                tweet_id = value.strip()
            continue
        if not line.strip():
            if tokens:
                finish()
                tokens, numbers, tweet_id = [], [], None
            continue
        tokens.append(_parse_token(path, line_no, line, scheme))
        numbers.append(line_no)
    if tokens:
        finish()
    return Corpus(scheme, tuple(tweets))


def load_corpus(path, scheme: LabelScheme) -> Corpus:
    with open(path, encoding='utf-8') as fp:
        corpus = read_corpus(fp, scheme, path)
    log.info(f"Read {len(corpus)} tweets "
             f"({sum(map(len, corpus))} words) from {path}")
    return corpus


def write_corpus(corpus: Corpus, fp=None):
    fp = fp or sys.stdout
    for tweet in corpus:
        fp.write(f"# id = {tweet.id}\n")
        for token in tweet.tokens:
            fp.write(format_token(token) + '\n')
        fp.write('\n')


def split_train_val(corpus: Corpus, fraction: float, seed: int):
    """random tweet-level split into (train, validation)

    The validation part holds `fraction * len(corpus)` tweets rounded half up,
    clamped to [1, len(corpus) - 1] so that neither part is empty. Both parts
    keep the original tweet order.
    """
    if not 0 < fraction < 1:
        raise SpanError(f"validation fraction {fraction} is not in (0, 1)")
    if len(corpus) < 2:
        raise SpanError(f"can not split a corpus of {len(corpus)} tweets")
    n_val = int(fraction * len(corpus) + 0.5)
    n_val = min(max(n_val, 1), len(corpus) - 1)
    order = np.random.default_rng(seed).permutation(len(corpus))
    val_idx = set(order[:n_val].tolist())
    train = tuple(t for i, t in enumerate(corpus.tweets) if i not in val_idx)
    val = tuple(t for i, t in enumerate(corpus.tweets) if i in val_idx)
    log.info(f"Split {len(corpus)} tweets into {len(train)} train "
             f"and {len(val)} validation")
    return Corpus(corpus.scheme, train), Corpus(corpus.scheme, val)


def to_binary_labels(labels) -> list[int]:
    """
    >>> to_binary_labels([1, 2, 0])
    [1, 1, 0]
    >>> to_binary_labels([2, 1, 2])
    [1, 1, 1]
    """
    return [int(label != 0) for label in labels]


KP5_TO_KP3 = {'O': 0, 'B': 1, 'M': 2, 'E': 2, 'S': 1}


def kp5_to_kp3(labels) -> list[int]:
    """
    >>> kp5_to_kp3(['S', 'O', 'B', 'E'])
    [1, 0, 1, 2]
    """
    try:
        return [KP5_TO_KP3[label] for label in labels]
    except KeyError as e:
        raise LabelError(f"{e.args[0]!r} is not a KP5 label")


def decode_phrases(labels) -> list:
    """reads keyphrase spans off a KP3 sequence

    A 2 with no open span opens one.

    >>> decode_phrases([1, 2, 2, 0, 1])
    [PhraseSpan(start=0, end=2), PhraseSpan(start=4, end=4)]
    >>> decode_phrases([0, 2, 2])
    [PhraseSpan(start=1, end=2)]
    """
    spans = []
    start = None
    for position, label in enumerate(labels):
        if label == 1 or (label == 2 and start is None):
            if start is not None:
                spans.append(PhraseSpan(start, position - 1))
            start = position
        elif label == 0 and start is not None:
            spans.append(PhraseSpan(start, position - 1))
            start = None
    if start is not None:
        spans.append(PhraseSpan(start, len(labels) - 1))
    return spans


def encode_phrases(spans, length: int) -> list[int]:
    """
    >>> encode_phrases([PhraseSpan(0, 1), PhraseSpan(3, 3)], 4)
    [1, 2, 0, 1]
    """
    labels = [0] * length
    previous_end = -1
    for start, end in sorted(spans):
        if not 0 <= start <= end < length:
            raise SpanError(f"span ({start}, {end}) is out of range for length {length}")
        if start <= previous_end:
            raise SpanError(f"span ({start}, {end}) overlaps a previous span")
        labels[start] = 1
        labels[start + 1:end + 1] = [2] * (end - start)
        previous_end = end
    return labels


def kp3_to_kp5(labels) -> list[str]:
    """
    >>> kp3_to_kp5([1, 2, 2, 0, 1, 0, 2])
    ['B', 'M', 'E', 'O', 'S', 'O', 'S']
    """
    tags = ['O'] * len(labels)
    for start, end in decode_phrases(labels):
        if start == end:
            tags[start] = 'S'
            continue
        tags[start] = 'B'
        tags[start + 1:end] = ['M'] * (end - start - 1)
        tags[end] = 'E'
    return tags


def convert_corpus(corpus: Corpus, scheme: LabelScheme) -> Corpus:
    if scheme is corpus.scheme:
        return corpus
    tweets = []
    for tweet in corpus:
        kp3 = tweet.kp3_labels(corpus.scheme)
        if scheme is LabelScheme.KP3:
            tweets.append(tweet.with_labels(str(label) for label in kp3))
        else:
            tweets.append(tweet.with_labels(kp3_to_kp5(kp3)))
    return Corpus(scheme, tuple(tweets))


def corpus_stats(corpus: Corpus) -> CorpusStats:
    class_counts = dict.fromkeys(corpus.scheme.symbols, 0)
    total_keyphrases = 0
    for tweet in corpus:
        for label in tweet.labels:
            class_counts[label] += 1
        total_keyphrases += len(decode_phrases(tweet.kp3_labels(corpus.scheme)))
    return CorpusStats(
        total_tweets=len(corpus),
        total_keyphrases=total_keyphrases,
        mean_keyphrases=(Fraction(total_keyphrases, len(corpus))
                         if len(corpus) else Fraction(0)),
        total_words=sum(class_counts.values()),
        class_counts=class_counts,
    )
