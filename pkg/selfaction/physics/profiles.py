"""Sampled radial functions."""
from dataclasses import dataclass, field
from typing import Any, Dict

import numpy as np

from .. import settings


@dataclass
class RadialProfile:
    """A dimensionless radial function sampled on a grid of s-values.

    Parameters
    ----------
    name : str
        column name, e.g. ``"G"`` or ``"Gg"``
    s : np.ndarray
        grid
    values : np.ndarray
        samples, same shape as ``s``
    meta : dict
        evaluation metadata (alpha, eta, order, ...)
    """
    name: str
    s: np.ndarray
    values: np.ndarray
    meta: Dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.s = np.asarray(self.s, dtype=float)
        self.values = np.asarray(self.values)
        if self.s.shape != self.values.shape:
            raise ValueError(f'profile "{self.name}": grid and values differ in shape')

    def at(self, s: float) -> float:
        """Sample at the grid point closest to ``s``."""
        return self.values[int(np.argmin(np.abs(self.s - s)))]


def figure_grid(points: int = settings.FIGURE_GRID_POINTS) -> np.ndarray:
    """Logarithmic grid from 1e-4 to 1 followed by a linear grid from 1 to 3.

    Half of the points go to each part; ``s = 1`` is a grid point.
    """
    n_log = points // 2
    log_part = np.geomspace(settings.FIGURE_GRID_LOG_START, 1.0, n_log, endpoint=False)
    lin_part = np.linspace(1.0, settings.FIGURE_GRID_END, points - n_log)
    return np.concatenate((log_part, lin_part))
