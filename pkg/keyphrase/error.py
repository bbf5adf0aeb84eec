import logging
from functools import wraps

import click


log = logging.getLogger(__name__)


class KeyphraseError(Exception):
    exit_status = 2


class FileFormatError(KeyphraseError):
    """A malformed line in one of the column/text input files."""
    def __init__(self, path, line_no, message):
        self.path = str(path)
        self.line_no = line_no
        self.message = message
        super().__init__(f"{self.path}:{line_no}: {message}")


class LabelError(KeyphraseError, ValueError):
    pass


class SpanError(KeyphraseError, ValueError):
    pass


class DimensionError(KeyphraseError, ValueError):
    pass


class ConfigError(KeyphraseError, ValueError):
    pass


class ModelFileError(KeyphraseError):
    pass


class CorruptModelError(ModelFileError):
    pass


class ModelVersionError(ModelFileError):
    pass


class FeatureMismatchError(KeyphraseError):
    pass


class UnknownMethodError(KeyphraseError, ValueError):
    pass


class VerificationFailure(KeyphraseError):
    exit_status = 1


def exit_on_error(f):
    """Turn toolkit errors raised by a click command into an exit status.

    Anything that is not a KeyphraseError or an OSError propagates unchanged,
    traceback included.
    """
    @wraps(f)
    def decorated(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except KeyphraseError as e:
            log.debug(f"{type(e).__name__} in {f.__name__}", exc_info=True)
            click.echo(f"Error: {e}", err=True)
            raise SystemExit(e.exit_status)
        except OSError as e:
            click.echo(f"Error: {e.strerror}: '{e.filename}'", err=True)
            raise SystemExit(2)
    return decorated
