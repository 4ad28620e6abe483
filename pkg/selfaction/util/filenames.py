"""
Numbered output file names, e.g. ``archive0000.hdf5``, ``archive0001.hdf5``.
"""
import itertools
from pathlib import Path
from typing import Iterator, Union


def numbered_paths(directory: Union[str, Path], base: str, width: int = 4,
        suffix: str = ".hdf5") -> Iterator[Path]:
    """Yield ``directory/<base>NNNN<suffix>`` for NNNN = 0, 1, 2, ..."""
    directory = Path(directory)
    for i in itertools.count():
        yield directory / f"{base}{i:0{width}d}{suffix}"


def next_archive_path(directory: Union[str, Path], base: str, width: int = 4) -> Path:
    """First numbered archive file in ``directory`` that does not exist yet."""
    return next(p for p in numbered_paths(directory, base, width) if not p.exists())
