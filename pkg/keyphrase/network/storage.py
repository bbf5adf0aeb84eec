"""Model files.

Layout, all integers little-endian:

    magic      4 bytes  b'KPJR'
    version    uint16   FORMAT_VERSION
    blocks     tag (4 bytes), payload length (uint32), payload
    trailer    sha256 of everything before it

Blocks are one CONF block (JSON: family, embedding dimension, feature flags,
training configuration, history), one INVT block per tag inventory (JSON) and
one TENS block per parameter tensor in declared order (name, shape, '<f8'
data).
"""

from hashlib import sha256
import json
import logging
import struct

import numpy as np

from ..error import CorruptModelError, ModelVersionError
from ..features import FeatureConfig, TagInventory, TagKind
from .training import HistoryRow, Model, TrainConfig


log = logging.getLogger(__name__)


MAGIC = b'KPJR'
FORMAT_VERSION = 1

_HEADER = struct.Struct('<4sH')
_BLOCK = struct.Struct('<4sI')
_DIGEST_SIZE = sha256().digest_size


def _block(tag: bytes, payload: bytes) -> bytes:
    return _BLOCK.pack(tag, len(payload)) + payload


def _json_block(tag: bytes, data) -> bytes:
    return _block(tag, json.dumps(data, sort_keys=True).encode('utf-8'))


def _tensor_block(name: str, value: np.ndarray) -> bytes:
    encoded = name.encode('utf-8')
    payload = b''.join([
        struct.pack('<H', len(encoded)), encoded,
        struct.pack('<B', value.ndim),
        struct.pack(f'<{value.ndim}I', *value.shape),
        np.ascontiguousarray(value, dtype='<f8').tobytes(),
    ])
    return _block(b'TENS', payload)


def serialize_model(model: Model) -> bytes:
    fconfig = model.feature_config
    conf = {
        'family': model.family,
        'embedding_dim': model.embedding_dim,
        'features': {'use_pos': fconfig.use_pos, 'use_ne': fconfig.use_ne,
                     'use_ds': fconfig.use_ds, 'window': fconfig.window},
        'train_config': model.train_config.to_dict(),
        'best_epoch': model.best_epoch,
        'history': [list(row) for row in model.history],
    }
    parts = [_HEADER.pack(MAGIC, FORMAT_VERSION), _json_block(b'CONF', conf)]
    for kind, inventory in fconfig.inventories.items():
        parts.append(_json_block(b'INVT', {'kind': kind.value,
                                           'symbols': list(inventory.symbols)}))
    parts.extend(_tensor_block(name, value) for name, value in model.params.items())
    body = b''.join(parts)
    return body + sha256(body).digest()


def save_model(model: Model, path):
    data = serialize_model(model)
    with open(path, 'wb') as fp:
        fp.write(data)
    log.info(f"Saved {model.family} model ({len(data)} bytes) to {path}")


def _read_tensor(payload: bytes) -> tuple:
    (name_length,) = struct.unpack_from('<H', payload, 0)
    offset = 2
    name = payload[offset:offset + name_length].decode('utf-8')
    offset += name_length
    (ndim,) = struct.unpack_from('<B', payload, offset)
    offset += 1
    shape = struct.unpack_from(f'<{ndim}I', payload, offset)
    offset += 4 * ndim
    data = payload[offset:]
    if len(data) != 8 * int(np.prod(shape, dtype=np.int64)):
        raise CorruptModelError(f"tensor {name} has {len(data)} data bytes "
                                f"for shape {shape}")
    return name, np.frombuffer(data, dtype='<f8').astype(np.float64).reshape(shape)


def deserialize_model(data: bytes, path='<bytes>') -> Model:
    if len(data) < _HEADER.size or data[:len(MAGIC)] != MAGIC:
        raise CorruptModelError(f"{path} is not a keyphrase model file")
    _, version = _HEADER.unpack_from(data, 0)
    if version != FORMAT_VERSION:
        raise ModelVersionError(f"{path} has format version {version}, "
                                f"this toolkit reads version {FORMAT_VERSION}")
    if len(data) < _HEADER.size + _DIGEST_SIZE:
        raise CorruptModelError(f"{path} is truncated")
    body, digest = data[:-_DIGEST_SIZE], data[-_DIGEST_SIZE:]
    if sha256(body).digest() != digest:
        raise CorruptModelError(f"{path} fails its checksum (truncated or damaged)")

    conf, inventories, params = None, {}, {}
    offset = _HEADER.size
    try:
        while offset < len(body):
            tag, length = _BLOCK.unpack_from(body, offset)
            offset += _BLOCK.size
            payload = body[offset:offset + length]
            if len(payload) != length:
                raise CorruptModelError(f"{path}: block {tag!r} runs past the end")
            offset += length
            if tag == b'CONF':
                conf = json.loads(payload)
            elif tag == b'INVT':
                entry = json.loads(payload)
                kind = TagKind(entry['kind'])
                inventories[kind] = TagInventory(kind, tuple(entry['symbols']))
            elif tag == b'TENS':
                name, value = _read_tensor(payload)
                params[name] = value
            else:
                raise CorruptModelError(f"{path}: unknown block {tag!r}")
    except (struct.error, ValueError, KeyError) as e:
        raise CorruptModelError(f"{path}: unreadable block ({e})")
    if conf is None or not params:
        raise CorruptModelError(f"{path} has no configuration or no parameters")

    fconfig = FeatureConfig(inventories=inventories, **conf['features'])
    return Model(
        family=conf['family'],
        params=params,
        feature_config=fconfig,
        embedding_dim=conf['embedding_dim'],
        train_config=TrainConfig.from_dict(conf['train_config']),
        history=tuple(HistoryRow(*row) for row in conf['history']),
        best_epoch=conf['best_epoch'],
    )


def load_model(path) -> Model:
    with open(path, 'rb') as fp:
        data = fp.read()
    model = deserialize_model(data, path)
    log.info(f"Loaded {model.family} model ({model.train_config.scheme.name}) from {path}")
    return model
