"""Word-level keyphrase metrics.

A word is positive when its KP3 label is 1 or 2; confusing 1 with 2 on a
keyphrase word still counts as a true positive. Counts are accumulated over a
whole corpus before metrics are computed (micro-averaging).
"""

from concurrent.futures import ThreadPoolExecutor
import logging

from .error import DimensionError, KeyphraseError
from .records import generate_namedtuple


log = logging.getLogger(__name__)


ConfusionCounts_fields = (
    ('tp', int, 'TP', '{}'),
    ('tn', int, 'TN', '{}'),
    ('fp', int, 'FP', '{}'),
    ('fn', int, 'FN', '{}'),
)


class ConfusionCounts(generate_namedtuple('ConfusionCounts', ConfusionCounts_fields)):
    __slots__ = ()

    def __add__(self, other):
        return ConfusionCounts(*(a + b for a, b in zip(self, other)))

    @property
    def total(self) -> int:
        return self.tp + self.tn + self.fp + self.fn


NO_COUNTS = ConfusionCounts(0, 0, 0, 0)


MetricsReport_fields = (
    ('precision', float, 'P'  , '{:.4f}'),
    ('recall'   , float, 'R'  , '{:.4f}'),
    ('f1'       , float, 'F1' , '{:.4f}'),
    ('accuracy' , float, 'Acc', '{:.4f}'),
)

MetricsReport = generate_namedtuple('MetricsReport', MetricsReport_fields)


def confusion_counts(pred, gold) -> ConfusionCounts:
    """
    >>> confusion_counts([1, 2, 0], [1, 0, 0])
    ConfusionCounts(tp=1, tn=1, fp=1, fn=0)
    """
    if len(pred) != len(gold):
        raise DimensionError(f"{len(pred)} predicted labels for {len(gold)} gold labels")
    tp = tn = fp = fn = 0
    for p, g in zip(pred, gold):
        if g != 0:
            if p != 0:
                tp += 1
            else:
                fn += 1
        elif p != 0:
            fp += 1
        else:
            tn += 1
    return ConfusionCounts(tp, tn, fp, fn)


def metrics(counts: ConfusionCounts) -> MetricsReport:
    """
    >>> ['%.4f' % m for m in metrics(ConfusionCounts(tp=1, tn=1, fp=1, fn=0))]
    ['0.5000', '1.0000', '0.6667', '0.6667']
    """
    if counts.total == 0:
        raise KeyphraseError("no words to evaluate")
    precision = counts.tp / (counts.tp + counts.fp) if counts.tp + counts.fp else 0.0
    recall = counts.tp / (counts.tp + counts.fn) if counts.tp + counts.fn else 0.0
    f1 = (2 * precision * recall / (precision + recall)
          if precision + recall > 0 else 0.0)
    return MetricsReport(precision, recall, f1, (counts.tp + counts.tn) / counts.total)


def count_corpus(labeler, corpus, workers: int = 1) -> ConfusionCounts:
    """sums per-tweet counts; `labeler` maps a tweet to KP3 labels

    With more than one worker the labeler runs on a thread pool. The labeler
    must not mutate shared state; the sum does not depend on the schedule.
    """
    def count(tweet):
        return confusion_counts(labeler(tweet), tweet.kp3_labels(corpus.scheme))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            per_tweet = list(pool.map(count, corpus.tweets))
    else:
        per_tweet = [count(tweet) for tweet in corpus.tweets]
    return sum(per_tweet, NO_COUNTS)


def evaluate(labeler, corpus, workers: int = 1) -> MetricsReport:
    return metrics(count_corpus(labeler, corpus, workers))
