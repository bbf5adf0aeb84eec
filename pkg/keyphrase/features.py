"""Input vectors for the taggers.

x_t is the concatenation of the embeddings of the tokens in a window around t
(zero vectors past the tweet boundaries) and the one-hot POS, NE and
dependency features of the token at t.
"""

from dataclasses import dataclass, field
from enum import Enum
import logging

import numpy as np

from .corpus import Corpus, Token, Tweet
from .error import ConfigError, FileFormatError


log = logging.getLogger(__name__)


UNK = '<UNK>'

# head-left, head-right, root
HEAD_DIRECTIONS = 3


@dataclass(frozen=True, eq=False)
class EmbeddingTable:
    dimension: int
    entries: dict = field(repr=False)

    def __post_init__(self):
        if self.dimension <= 0:
            raise ConfigError(f"embedding dimension {self.dimension} is not positive")
        if not self.entries:
            raise ConfigError("embedding table has an empty vocabulary")
        for word, vector in self.entries.items():
            if vector.shape != (self.dimension,):
                raise ConfigError(f"vector for '{word}' has shape {vector.shape}, "
                                  f"expected ({self.dimension},)")

    def __len__(self):
        return len(self.entries)

    def __contains__(self, form):
        return form in self.entries


def read_embeddings(lines, path='<stream>') -> EmbeddingTable:
    lines = iter(lines)
    header = next(lines, '').split()
    try:
        count, dimension = (int(value) for value in header)
    except ValueError:
        raise FileFormatError(path, 1, "header must be '<count> <dimension>'")
    entries = {}
    line_no = 1
    for line_no, line in enumerate(lines, start=2):
        if not line.strip():
            continue
        word, *values = line.rstrip('\r\n').split(' ')
        values = [value for value in values if value]
        if len(values) != dimension:
            raise FileFormatError(path, line_no,
                                  f"expected {dimension} values, got {len(values)}")
        try:
            entries[word] = np.array([float(value) for value in values],
                                     dtype=np.float64)
        except ValueError as e:
            raise FileFormatError(path, line_no, f"non-numeric value ({e})")
    if len(entries) != count:
        raise FileFormatError(path, line_no,
                              f"header announces {count} rows, found {len(entries)}")
    return EmbeddingTable(dimension, entries)


def load_embeddings(path) -> EmbeddingTable:
    with open(path, encoding='utf-8') as fp:
        table = read_embeddings(fp, path)
    log.info(f"Read {len(table)} embeddings of dimension {table.dimension} from {path}")
    return table


def write_embeddings(table: EmbeddingTable, fp):
    """writes the text format read by `read_embeddings`, values in repr form"""
    fp.write(f"{len(table)} {table.dimension}\n")
    for word, vector in table.entries.items():
        fp.write(word + " " + " ".join(repr(float(value)) for value in vector) + "\n")


def embed_token(table: EmbeddingTable, form: str) -> np.ndarray:
    """stored vector, or zeros for an unknown form (no case folding)"""
    vector = table.entries.get(form)
    if vector is None:
        return np.zeros(table.dimension)
    return vector


class TagKind(Enum):
    POS = 'pos'
    NE = 'ne'
    DEPREL = 'deprel'


@dataclass(frozen=True)
class TagInventory:
    kind: TagKind
    symbols: tuple

    def __post_init__(self):
        if not self.symbols or self.symbols[0] != UNK:
            raise ConfigError(f"{self.kind.name} inventory must start with {UNK}")
        if len(set(self.symbols)) != len(self.symbols):
            raise ConfigError(f"{self.kind.name} inventory has duplicate symbols")
        object.__setattr__(self, '_index',
                           {symbol: i for i, symbol in enumerate(self.symbols)})

    def __len__(self):
        return len(self.symbols)

    def index(self, tag: str) -> int:
        return self._index.get(tag, 0)


def build_inventory(corpus: Corpus, kind: TagKind) -> TagInventory:
    symbols = dict.fromkeys([UNK])
    for tweet in corpus:
        for token in tweet.tokens:
            symbols.setdefault(getattr(token, kind.value))
    return TagInventory(kind, tuple(symbols))


def encode_tag(inventory: TagInventory, tag: str) -> np.ndarray:
    """
    >>> inventory = TagInventory(TagKind.POS, (UNK, 'NN', 'VB'))
    >>> encode_tag(inventory, 'VB').tolist()
    [0.0, 0.0, 1.0]
    >>> encode_tag(inventory, 'XX').tolist()
    [1.0, 0.0, 0.0]
    """
    one_hot = np.zeros(len(inventory))
    one_hot[inventory.index(tag)] = 1.0
    return one_hot


def encode_ds(inventory: TagInventory, token: Token, position: int) -> np.ndarray:
    direction = np.zeros(HEAD_DIRECTIONS)
    if token.head is None:
        direction[2] = 1.0
    elif token.head < position:
        direction[0] = 1.0
    else:
        direction[1] = 1.0
    return np.concatenate([encode_tag(inventory, token.deprel), direction])


@dataclass(frozen=True)
class FeatureConfig:
    use_pos: bool = False
    use_ne: bool = False
    use_ds: bool = False
    window: int = 3
    inventories: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.window <= 0 or self.window % 2 == 0:
            raise ConfigError(f"window {self.window} is not an odd positive integer")
        for kind in self.enabled_kinds:
            if kind not in self.inventories:
                raise ConfigError(f"{kind.name} feature is enabled without an inventory")

    @property
    def enabled_kinds(self) -> list[TagKind]:
        return [kind for kind, enabled in ((TagKind.POS, self.use_pos),
                                           (TagKind.NE, self.use_ne),
                                           (TagKind.DEPREL, self.use_ds))
                if enabled]

    def input_dim(self, embedding_dim: int) -> int:
        width = self.window * embedding_dim
        for kind in self.enabled_kinds:
            width += len(self.inventories[kind])
        if self.use_ds:
            width += HEAD_DIRECTIONS
        return width


def build_feature_config(corpus: Corpus, use_pos=False, use_ne=False, use_ds=False,
                         window=3) -> FeatureConfig:
    """all inventories are frozen from `corpus`, enabled or not"""
    inventories = {kind: build_inventory(corpus, kind) for kind in TagKind}
    return FeatureConfig(use_pos, use_ne, use_ds, window, inventories)


def build_input_sequence(tweet: Tweet, table: EmbeddingTable,
                         config: FeatureConfig) -> np.ndarray:
    """the (len(tweet), input_dim) matrix of input vectors"""
    k = (config.window - 1) // 2
    embedded = np.zeros((len(tweet) + 2 * k, table.dimension))
    for t, form in enumerate(tweet.forms):
        embedded[t + k] = embed_token(table, form)
    columns = [np.stack([embedded[t:t + config.window].reshape(-1)
                         for t in range(len(tweet))])]
    if config.use_pos:
        inventory = config.inventories[TagKind.POS]
        columns.append(np.stack([encode_tag(inventory, token.pos)
                                 for token in tweet.tokens]))
    if config.use_ne:
        inventory = config.inventories[TagKind.NE]
        columns.append(np.stack([encode_tag(inventory, token.ne)
                                 for token in tweet.tokens]))
    if config.use_ds:
        inventory = config.inventories[TagKind.DEPREL]
        columns.append(np.stack([encode_ds(inventory, token, position)
                                 for position, token in enumerate(tweet.tokens)]))
    return np.concatenate(columns, axis=1)
