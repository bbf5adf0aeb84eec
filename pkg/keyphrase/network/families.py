from . import jrnn, lstm, rnn
from ..error import ConfigError


FAMILIES = {
    'jrnn': jrnn,
    'rnn': rnn,
    'lstm': lstm,
}


def family(name: str):
    """the module implementing model family `name`

    Every family module provides param_shapes, init_params, forward, loss and
    backward with the same signatures.
    """
    try:
        return FAMILIES[name]
    except KeyError:
        raise ConfigError(f"unknown model family '{name}', "
                          f"expected one of {', '.join(FAMILIES)}")
