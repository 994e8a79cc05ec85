# -*- coding: utf-8 -*-

from typing import Any, List, Optional, Sequence, Tuple

from zfeedback.DataClasses import ParameterError


def format_real(x: float) -> str:
    return f'{x:.9g}'


def tuplelist2csv(inp: List[Sequence[Any]], header: Optional[Sequence[str]] = None) -> str:
    output = ''
    if header is not None:
        output += ','.join(header) + '\n'
    for row in inp:
        output += ','.join(format_real(item) if isinstance(item, float) else str(item) for item in row) + '\n'
    return output


def split_grid(grid: str) -> Tuple[float, float, float]:
    # grid is 'start:end:step', both ends inclusive
    try:
        start, end, step = (float(part) for part in grid.split(':'))
    except ValueError:
        raise ParameterError(f'Grid {grid!r} is not of the form start:end:step')
    return start, end, step


def make_grid(start: float, end: float, step: float) -> List[float]:
    if not 0 < start <= end < 1:
        raise ParameterError(f'Grid needs 0 < start <= end < 1, got {start}..{end}')
    if step <= 0:
        raise ParameterError(f'Grid step {step} must be positive')
    count = int(round((end - start) / step)) + 1
    # grid points are rounded to 12 decimals
    return [round(start + i * step, 12) for i in range(count) if start + i * step <= end + 1e-12]


def open_file_read(filename):
    return open(filename, 'r', encoding='UTF-8')


def open_file_write(filename):
    return open(filename, 'w', encoding='UTF-8')
