"""
Run archive: a thin wrapper around an ``h5py.File`` in which every command stores its profiles
and tables under ``/<command>/<name>``.
"""
import time
import logging
from pathlib import Path
from typing import Any, Dict, List, Sequence, Union

import h5py
import numpy as np

from ..physics.profiles import RadialProfile

logger = logging.getLogger(__name__)


class ArchiveError(Exception):
    """Exceptions concerning the ResultsArchive"""


class ResultsArchive:
    """Wrapper around an ``h5py.File`` opened in append mode. The file is open after the class is
    initialized and can be used as a context manager.

    Parameters
    ----------
    filename : str or Path
        file to store the results in
    """

    def __init__(self, filename: Union[str, Path]):
        logger.debug('filename "%s"', filename)
        self._filename = str(filename)
        self._f = None
        self.open()

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        if self._f:
            self.close()

    @property
    def filename(self) -> str:
        return self._filename

    def open(self):
        """Open file in mode 'a'."""
        if self._f:
            raise ArchiveError("Can't open h5py.File because it is already open")

        logger.info('opening file "%s" in mode "a"', self._filename)
        self._f = h5py.File(self._filename, "a")

    def close(self):
        if not self._f:
            raise ArchiveError("Can't close h5py.File because there is none open")

        logger.info('closing file "%s"', self._filename)
        self._f.close()
        self._f = None

    def append(
        self,
        path: str,
        arr: Union[np.ndarray, Dict[str, Any]],
        **kwargs,
    ) -> None:
        """Append ``arr`` to the dataset at ``path`` along the first axis, creating the dataset
        if needed. Dictionaries become structured arrays, one row per list entry. Keyword
        arguments are set as attributes. Does nothing if ``len(arr) == 0``.

        Raises
        ------
        ArchiveError
            if the file is closed
        """
        if not self._f:
            raise ArchiveError(f'cannot write "{path}" to a closed archive')
        if len(arr) == 0:
            return

        try:
            dset = self._f[path]
        except KeyError:
            arr = self._convert_to_array(arr)
            dset = self._create_dataset(path, arr)
        else:
            arr = self._convert_to_array(arr, dset.dtype)
            logger.debug('appending data to "%s"', path)
            dset.resize(dset.shape[0] + arr.shape[0], axis=0)
            dset[-arr.shape[0]:] = arr

        for (key, value) in kwargs.items():
            logger.debug('attribute for "%s", "%s" : %s', path, key, value)
            dset.attrs[key] = value

    def _convert_to_array(self, arr, dtype=None) -> np.ndarray:
        """Convert a dictionary of equal length lists (or scalars) to a structured array."""
        if not isinstance(arr, dict):
            return np.asarray(arr)

        columns = {k: _column(v) for k, v in arr.items()}
        if dtype is None:
            dtype = np.dtype([(k, v.dtype) for k, v in columns.items()])
        try:
            return np.fromiter(zip(*[columns[k] for k in dtype.names]), dtype=dtype)
        except KeyError as error:
            raise ArchiveError(f'keys {list(arr)} do not match the dataset fields {dtype.names}') from error
        except ValueError as error:
            logger.critical('conversion failed from %s to dtype %s', arr, dtype)
            raise error

    def _create_dataset(self, path: str, arr: np.ndarray):
        maxshape = (None,) + arr.shape[1:]
        logger.debug('creating dataset "%s" with maxshape %s and dtype %s', path, maxshape, arr.dtype)
        dset = self._f.create_dataset(path, data=arr, maxshape=maxshape, chunks=True)
        dset.attrs["created_on"] = time.ctime()
        return dset

    def write_profiles(self, command: str, profiles: Sequence[RadialProfile]):
        """Store each profile at ``/<command>/<name>`` as ``(s, value)`` rows, metadata as
        attributes."""
        for profile in profiles:
            meta = {k: v for k, v in profile.meta.items() if isinstance(v, (int, float, str))}
            self.append(f"{command}/{profile.name}",
                {"s": profile.s, "value": np.real(profile.values)}, **meta)

    def write_records(self, command: str, name: str, records: List[dict]):
        """Store flat records as one structured dataset; None entries become NaN."""
        if not records:
            return
        keys = list(records[0])
        columns = {k: [_plain(r.get(k)) for r in records] for k in keys}
        self.append(f"{command}/{name}", columns)

    def get_data(self, path: str, indices=(), field: str = None):
        """Data of the dataset at ``path``, optionally one field of a compound dataset.

        Raises
        ------
        ArchiveError
            if the object at ``path`` is not a dataset
        """
        dset = self._f[path]
        if not isinstance(dset, h5py.Dataset):
            raise ArchiveError(f'hdf5 object at path "{path}" is not a Dataset')
        if field:
            return dset[field][indices]
        return dset[indices]

    def get(self, path: str):
        """Object at ``path``, for access to groups and attributes."""
        logger.debug('path "%s"', path)
        return self._f[path]

    def get_keys(self, path: str = "/"):
        return tuple(self._f[path].keys())


def _plain(value):
    if value is None:
        return np.nan
    if isinstance(value, (bool, np.bool_)):
        return int(value)
    if isinstance(value, (int, float, np.integer, np.floating)):
        return float(value)
    return str(value)


def _column(values) -> np.ndarray:
    values = np.atleast_1d(np.asarray(values))
    if values.dtype.kind == "U":
        return np.char.encode(values, "utf-8")
    return values
