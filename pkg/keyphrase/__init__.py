import logging
import os

from flask import Config

from . import (
    augment,
    corpus,
    error,
    evaluation,
    features,
    network,
    rake,
    records,
    reports,
    synthetic,
    utils,
    version,
)
from .utils import str_to_bool


log = logging.getLogger(__name__)


def _convert_like(default, text):
    if isinstance(default, bool):
        return str_to_bool(text)
    if isinstance(default, (int, float)):
        return type(default)(text)
    return text


def envconfig(config, key, envvar=None, required=False):
    if envvar is None:
        envvar = f"KEYPHRASE_{key}"
    if envvar in os.environ:
        if key in config:
            log.info(f"overriding {key} from environment variable {envvar}")
        try:
            config[key] = _convert_like(config.get(key), os.environ[envvar])
        except ValueError:
            raise error.ConfigError(
                f"environment variable {envvar} has an invalid value "
                f"'{os.environ[envvar]}'")
    if required and key not in config:
        raise error.ConfigError(f"missing required value for {key}")


def create_config(test_config=None, log_level=logging.INFO):

    logging.basicConfig(
        format="%(levelname)s %(module)s %(name)s %(asctime)s: %(message)s",
        level=log_level,
        datefmt="%Y-%m-%d %H:%M:%S")
    logging.getLogger().setLevel(log_level)

    config = Config(os.getcwd())

    # hardcoded defaults
    config.from_mapping(
        ALPHA=0.5,
        LR=0.1,
        HIDDEN1=300,
        HIDDEN2=300,
        WINDOW=3,
        EPOCHS=50,
        PATIENCE=5,
        CLIP=5.0,
        LOSS='xent',
        SCHEME='kp3',
        FAMILY='jrnn',
        VAL_FRACTION=0.1,
        N=3,
        M=3,
        SEED=42,
        RAKE_FRACTION=1/3,
        WORKERS=1,
    )
    # a config file (or test_config) overrides hardcoded values
    if test_config is not None:
        config.from_mapping(test_config)
    else:
        config.from_pyfile(os.environ.get('KEYPHRASE_CONFIG', 'keyphrase_config.py'),
                           silent=True)

    # environment variables override the config file and hardcoded values
    for key in list(config):
        envconfig(config, key)

    return config
