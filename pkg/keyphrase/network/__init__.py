from . import families, gradcheck, jrnn, lstm, ops, params, rnn, storage, training
from .families import FAMILIES, family
