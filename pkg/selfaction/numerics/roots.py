"""
Bracketing root search: a logarithmic pre-scan locates every sign change of a function on a
positive interval, then each bracket is refined by bisection.
"""
import logging
from dataclasses import dataclass, field
from typing import Callable, List, Tuple

import numpy as np
from scipy.optimize import bisect

from ..settings import PRESCAN_POINTS, BISECT_RTOL

logger = logging.getLogger(__name__)


class RootFindingError(Exception):
    """Exception related to the bracketing root search"""


class BracketError(RootFindingError):
    """Raised when no sign change exists on the search interval"""


@dataclass
class RootScan:
    """Result of :func:`find_roots`.

    Parameters
    ----------
    roots : List[float]
        refined roots in increasing order
    brackets : List[Tuple[float, float]]
        the pre-scan cells the roots were refined in
    residuals : List[float]
        function values at the roots
    """
    roots: List[float] = field(default_factory=list)
    brackets: List[Tuple[float, float]] = field(default_factory=list)
    residuals: List[float] = field(default_factory=list)

    @property
    def smallest(self) -> Tuple[float, Tuple[float, float], float]:
        """The smallest root with its bracket and residual."""
        if not self.roots:
            raise BracketError('no root found')
        return self.roots[0], self.brackets[0], self.residuals[0]


def log_prescan(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    points: int = PRESCAN_POINTS,
) -> List[Tuple[float, float]]:
    """Return the cells of a logarithmic grid on ``[lo, hi]`` on which ``func`` changes sign.

    A grid point with an exact zero yields a degenerate cell ``(x, x)``.
    """
    if not 0 < lo < hi:
        raise RootFindingError(f'invalid scan interval ({lo}, {hi})')

    grid = np.geomspace(lo, hi, points)
    values = [func(x) for x in grid]

    cells = []
    for k in range(points - 1):
        fa, fb = values[k], values[k + 1]
        if fa == 0:
            cells.append((grid[k], grid[k]))
        elif fa * fb < 0:
            cells.append((grid[k], grid[k + 1]))
    if values[-1] == 0:
        cells.append((grid[-1], grid[-1]))

    logger.debug('prescan of (%g, %g) found %d sign changes', lo, hi, len(cells))
    return cells


def bisect_root(
    func: Callable[[float], float],
    a: float,
    b: float,
    rtol: float = BISECT_RTOL,
) -> float:
    """Bisection until the bracket width is below ``rtol`` relative to the root."""
    if a == b:
        return a
    try:
        return bisect(func, a, b, xtol=1e-300, rtol=rtol, maxiter=500)
    except ValueError as exc:
        raise BracketError(f'no sign change on ({a}, {b})') from exc
    except RuntimeError as exc:
        raise RootFindingError(f'bisection on ({a}, {b}) did not converge') from exc


def find_roots(
    func: Callable[[float], float],
    lo: float,
    hi: float,
    points: int = PRESCAN_POINTS,
    rtol: float = BISECT_RTOL,
) -> RootScan:
    """All roots of ``func`` on ``[lo, hi]`` resolved by the pre-scan grid.

    Raises
    ------
    BracketError
        if the pre-scan finds no sign change
    """
    cells = log_prescan(func, lo, hi, points)
    if not cells:
        raise BracketError(f'no sign change on ({lo}, {hi})')

    scan = RootScan()
    for a, b in cells:
        root = bisect_root(func, a, b, rtol)
        scan.roots.append(root)
        scan.brackets.append((a, b))
        scan.residuals.append(func(root))

    if len(scan.roots) > 1:
        logger.warning('%d roots on (%g, %g): %s, returning the smallest',
            len(scan.roots), lo, hi, ", ".join(f"{r:.6g}" for r in scan.roots))
    return scan


def count_sign_changes(values) -> int:
    """Number of strict sign changes in a sequence, zeros skipped."""
    signs = np.sign(np.asarray(values, dtype=float))
    signs = signs[signs != 0]
    return int(np.count_nonzero(signs[1:] != signs[:-1]))
