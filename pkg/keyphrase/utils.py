from hashlib import sha256
import json
import math


SEED_BITS = 63


def get_conversion(converter, value, fallback=None):
    try:
        return converter(value)
    except (TypeError, ValueError):
        return fallback


def str_to_bool(text: str) -> bool:
    """
    >>> str_to_bool(' True ')
    True
    >>> str_to_bool('false')
    False
    """
    if text.lower().strip() in ('true', 'yes', '1'):
        return True
    if text.lower().strip() in ('false', 'no', '0'):
        return False
    raise ValueError(f"'{text}' is not 'True' or 'False'")


def prettify_json(data):
    return json.dumps(data, indent=2, ensure_ascii=False, sort_keys=True)


def parse_float_list(text: str) -> list[float]:
    """parses a comma separated list of numbers

    >>> parse_float_list('.1, .3,0.5')
    [0.1, 0.3, 0.5]
    >>> parse_float_list('')
    []
    """
    return [float(item) for item in text.split(',') if item.strip()]


def format_timedelta(seconds):
    """formats `seconds` with minutes and seconds

    >>> format_timedelta(12)
    '12 seconds'
    >>> format_timedelta(63)
    '1 minute and 3 seconds'
    >>> format_timedelta(120)
    '2 minutes and 0 seconds'
    >>> format_timedelta(181)
    '3 minutes and 1 second'
    """
    minutes = math.floor(seconds / 60)
    seconds = round(seconds % 60)

    minutes_text = ''
    if minutes > 1:
        minutes_text = f"{minutes} minutes"
    elif minutes == 1:
        minutes_text = '1 minute'

    seconds_text = ''
    if seconds > 1 or seconds == 0:
        seconds_text = f"{seconds} seconds"
    elif seconds == 1:
        seconds_text = '1 second'

    if minutes:
        return f"{minutes_text} and {seconds_text}"
    return seconds_text


def derive_seed(seed: int, *labels) -> int:
    """derives an independent sub-seed for the component named by `labels`

    Sub-seeds depend only on the base seed and the labels, never on call
    order, so per-tweet randomness is the same however tweets are scheduled.

    >>> derive_seed(42, 'shuffle') == derive_seed(42, 'shuffle')
    True
    >>> derive_seed(42, 'shuffle') != derive_seed(42, 'init')
    True
    >>> 0 <= derive_seed(7, 'tweet', 'id-1') < 2 ** 63
    True
    """
    text = '\x1f'.join([str(seed), *map(str, labels)])
    digest = sha256(text.encode(encoding='utf-8')).digest()
    return int.from_bytes(digest[:8], 'little') >> (64 - SEED_BITS)


def file_digest(path) -> str:
    hashed = sha256()
    with open(path, 'rb') as fp:
        for block in iter(lambda: fp.read(1 << 16), b''):
            hashed.update(block)
    return hashed.hexdigest()
