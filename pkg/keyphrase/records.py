"""Record types declared as field tables.

A field table is a tuple of ``(name, type, title, format)`` entries. The same
table yields the NamedTuple class, the column header and the row formatter, so
a column can not be added to one without the others.

>>> Pair_fields = (('word', str, 'Word', '{}'), ('score', float, 'Score', '{:.2f}'))
>>> Pair = generate_namedtuple('Pair', Pair_fields)
>>> generate_header(Pair_fields)
'Word\\tScore'
>>> generate_formatter(Pair_fields)(Pair('bank', 2.0))
'bank\\t2.00'
>>> print(generate_aligned_table(Pair_fields, [Pair('bank', 2.0), Pair('atm', 10.0)]))
Word  Score
----  -----
bank   2.00
atm   10.00
"""

from typing import NamedTuple


def generate_namedtuple(name, fields):
    return NamedTuple(name,
                      [(field[0], field[1]) for field in fields])


def _format_value(fmt, value):
    if callable(fmt):
        return fmt(value)
    return fmt.format(value)


def generate_header(fields, sep='\t'):
    return sep.join(field[2] for field in fields)


def generate_formatter(fields, sep='\t'):
    def format_record(record):
        return sep.join(_format_value(field[3], value)
                        for field, value in zip(fields, record))
    return format_record


def generate_aligned_table(fields, rows, markers=None):
    """renders `rows` as a plain text table with right aligned numbers

    `markers` maps (row index, field name) to a suffix such as '*'.
    """
    markers = markers or {}
    cells = [[field[2] for field in fields]]
    for i, row in enumerate(rows):
        cells.append([_format_value(field[3], value) + markers.get((i, field[0]), '')
                      for field, value in zip(fields, row)])
    widths = [max(len(line[c]) for line in cells) for c in range(len(fields))]
    numeric = [field[1] in (int, float) for field in fields]

    def render(line):
        return '  '.join(
            cell.rjust(width) if is_number else cell.ljust(width)
            for cell, width, is_number in zip(line, widths, numeric)).rstrip()

    lines = [render(cells[0]),
             '  '.join('-' * width for width in widths)]
    lines.extend(render(line) for line in cells[1:])
    return '\n'.join(lines)
