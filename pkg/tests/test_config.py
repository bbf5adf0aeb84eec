import pytest

from keyphrase import create_config
from keyphrase.error import ConfigError


def test_defaults(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    config = create_config()
    assert config['HIDDEN1'] == 300
    assert config['ALPHA'] == 0.5
    assert config['SEED'] == 42


def test_config_file_overrides_defaults(monkeypatch, tmp_path):
    path = tmp_path / 'settings.py'
    path.write_text("HIDDEN1 = 64\nALPHA = 0.3\nlowercase = 'ignored'\n")
    monkeypatch.setenv('KEYPHRASE_CONFIG', str(path))
    config = create_config()
    assert config['HIDDEN1'] == 64
    assert config['ALPHA'] == 0.3
    assert config['HIDDEN2'] == 300
    assert 'lowercase' not in config


def test_environment_overrides_config_file(monkeypatch, tmp_path):
    path = tmp_path / 'settings.py'
    path.write_text("SEED = 3\n")
    monkeypatch.setenv('KEYPHRASE_CONFIG', str(path))
    monkeypatch.setenv('KEYPHRASE_SEED', '7')
    monkeypatch.setenv('KEYPHRASE_ALPHA', '0.9')
    config = create_config()
    assert config['SEED'] == 7
    assert config['ALPHA'] == 0.9


def test_test_config_replaces_config_file(monkeypatch, tmp_path):
    path = tmp_path / 'settings.py'
    path.write_text("EPOCHS = 9\n")
    monkeypatch.setenv('KEYPHRASE_CONFIG', str(path))
    config = create_config(test_config={'EPOCHS': 2, 'window': 5})
    assert config['EPOCHS'] == 2
    assert config['WINDOW'] == 3


def test_invalid_environment_value(monkeypatch, tmp_path):
    monkeypatch.chdir(tmp_path)
    monkeypatch.setenv('KEYPHRASE_EPOCHS', 'many')
    with pytest.raises(ConfigError, match='KEYPHRASE_EPOCHS'):
        create_config()
