import struct

import numpy as np
import pytest

from keyphrase.error import CorruptModelError, ModelVersionError
from keyphrase.features import build_feature_config
from keyphrase.network.storage import FORMAT_VERSION, MAGIC, load_model, save_model
from keyphrase.network.training import TrainConfig, predict, train


@pytest.fixture
def model(synthetic):
    corpus, table = synthetic
    fconfig = build_feature_config(corpus, use_pos=True, use_ds=True)
    return train(corpus, corpus, table, fconfig,
                 TrainConfig(h1_size=6, h2_size=5, max_epochs=2, family='jrnn'))


def test_save_then_load(model, synthetic, tmp_path):
    corpus, table = synthetic
    path = tmp_path / 'model.kp'
    save_model(model, path)
    loaded = load_model(path)
    assert loaded.family == model.family
    assert loaded.train_config == model.train_config
    assert loaded.feature_config == model.feature_config
    assert loaded.history == model.history
    assert list(loaded.params) == list(model.params)
    for name, value in model.params.items():
        assert np.array_equal(loaded.params[name], value)
    for tweet in corpus:
        assert predict(loaded, tweet, table) == predict(model, tweet, table)


def test_header(model, tmp_path):
    path = tmp_path / 'model.kp'
    save_model(model, path)
    data = path.read_bytes()
    assert data[:4] == MAGIC
    assert struct.unpack_from('<H', data, 4)[0] == FORMAT_VERSION


def test_truncated_file(model, tmp_path):
    path = tmp_path / 'model.kp'
    save_model(model, path)
    path.write_bytes(path.read_bytes()[:-100])
    with pytest.raises(CorruptModelError):
        load_model(path)


def test_flipped_byte(model, tmp_path):
    path = tmp_path / 'model.kp'
    save_model(model, path)
    data = bytearray(path.read_bytes())
    data[len(data) // 2] ^= 0xff
    path.write_bytes(bytes(data))
    with pytest.raises(CorruptModelError):
        load_model(path)


def test_wrong_version(model, tmp_path):
    path = tmp_path / 'model.kp'
    save_model(model, path)
    data = bytearray(path.read_bytes())
    data[4] = FORMAT_VERSION + 1
    path.write_bytes(bytes(data))
    with pytest.raises(ModelVersionError):
        load_model(path)


def test_not_a_model(tmp_path):
    path = tmp_path / 'model.kp'
    path.write_bytes(b'hello world')
    with pytest.raises(CorruptModelError):
        load_model(path)
