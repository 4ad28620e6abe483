"""
CSV output. Floats are written with twelve significant digits so repeated runs produce identical
files.
"""
import csv
import logging
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, List, Sequence, Union

import numpy as np

from ..physics.profiles import RadialProfile

logger = logging.getLogger(__name__)

FLOAT_FORMAT = "%.12g"


class TableError(Exception):
    """Exception related to writing tables"""


def format_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, (bool, np.bool_)):
        return str(bool(value)).lower()
    if isinstance(value, (int, np.integer, Fraction)):
        return str(value)
    if isinstance(value, (float, np.floating)):
        return FLOAT_FORMAT % value
    if isinstance(value, complex):
        return FLOAT_FORMAT % value.real if value.imag == 0 else str(value)
    return str(value)


def write_csv(path: Union[str, Path], header: Sequence[str], rows: Iterable[Sequence[Any]]) -> Path:
    """Write a header row and the formatted rows."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    count = 0
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            if len(row) != len(header):
                raise TableError(f'row {count} of "{path}" has {len(row)} fields, expected {len(header)}')
            writer.writerow([format_value(v) for v in row])
            count += 1
    logger.info('wrote %d rows to "%s"', count, path)
    return path


def write_records(path: Union[str, Path], records: List[dict]) -> Path:
    """Write dictionaries sharing the keys of the first one as a table."""
    if not records:
        raise TableError(f'no records to write to "{path}"')
    header = list(records[0])
    return write_csv(path, header, ([r.get(k) for k in header] for r in records))


def write_record(path: Union[str, Path], record: dict) -> Path:
    """Write one flat record as ``key,value`` rows."""
    return write_csv(path, ["key", "value"], record.items())


def write_profiles(path: Union[str, Path], profiles: Sequence[RadialProfile]) -> Path:
    """Profiles sharing one grid, as columns ``s, <name>, ...``.

    Raises
    ------
    TableError
        if the profiles are sampled on different grids
    """
    if not profiles:
        raise TableError(f'no profiles to write to "{path}"')
    grid = profiles[0].s
    for p in profiles[1:]:
        if p.s.shape != grid.shape or not np.array_equal(p.s, grid):
            raise TableError(f'profile "{p.name}" is sampled on a different grid')
    header = ["s"] + [p.name for p in profiles]
    rows = zip(grid, *(np.real(p.values) for p in profiles))
    return write_csv(path, header, rows)


def read_csv(path: Union[str, Path]) -> List[List[str]]:
    with Path(path).open(newline="") as fh:
        return list(csv.reader(fh))
