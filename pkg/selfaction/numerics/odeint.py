"""
Fixed-step classical Runge-Kutta integration of ``dy/dt = rhs(t, y)`` on uniform grids, with
step halving for error control and Richardson convergence diagnostics.
"""
import logging
from dataclasses import dataclass
from typing import Callable

import numpy as np

logger = logging.getLogger(__name__)

RK4_ORDER = 4


class OdeIntegrationError(Exception):
    """Exception related to the fixed-step integration"""


@dataclass
class OdeSolution:
    """States ``y[k]`` at the uniform grid points ``t[k]``."""
    t: np.ndarray
    y: np.ndarray

    @property
    def steps(self) -> int:
        return self.t.size - 1


def rk4(rhs: Callable, t0: float, t1: float, y0, steps: int) -> OdeSolution:
    """Integrate from ``t0`` to ``t1`` (either direction) in ``steps`` equal steps.

    Parameters
    ----------
    rhs : Callable[[float, np.ndarray], np.ndarray]
    t0, t1 : float
    y0 : array_like
        initial state, any shape
    steps : int

    Returns
    -------
    OdeSolution
    """
    if steps < 1:
        raise OdeIntegrationError(f'need at least one step, got {steps}')

    t = np.linspace(t0, t1, steps + 1)
    h = (t1 - t0) / steps
    y = np.empty((steps + 1,) + np.shape(y0))
    y[0] = y0

    for k in range(steps):
        tk, yk = t[k], y[k]
        k1 = rhs(tk, yk)
        k2 = rhs(tk + h / 2, yk + h / 2 * k1)
        k3 = rhs(tk + h / 2, yk + h / 2 * k2)
        k4 = rhs(tk + h, yk + h * k3)
        y[k + 1] = yk + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)

    if not np.all(np.isfinite(y)):
        raise OdeIntegrationError(f'integration from {t0} to {t1} produced non-finite values')
    return OdeSolution(t, y)


def _deviation(coarse: OdeSolution, fine: OdeSolution) -> float:
    """Max-norm difference on the coarse grid, the fine grid having twice the steps."""
    return float(np.max(np.abs(fine.y[::2] - coarse.y)))


def rk4_refined(
    rhs: Callable,
    t0: float,
    t1: float,
    y0,
    step: float,
    rtol: float = 1e-8,
    max_halvings: int = 6,
) -> OdeSolution:
    """Integrate with the largest step ``step / 2**k`` whose halving changes the solution by
    less than ``rtol`` relative to its max-norm.

    Raises
    ------
    OdeIntegrationError
        if ``max_halvings`` halvings do not reach ``rtol``
    """
    if not step > 0:
        raise OdeIntegrationError(f'step must be positive, got {step}')
    steps = max(1, int(np.ceil(abs(t1 - t0) / step)))
    coarse = rk4(rhs, t0, t1, y0, steps)
    for halving in range(max_halvings):
        fine = rk4(rhs, t0, t1, y0, 2 * steps)
        scale = max(float(np.max(np.abs(fine.y))), 1e-300)
        deviation = _deviation(coarse, fine) / scale
        logger.debug('%d steps: relative deviation %.3e', 2 * steps, deviation)
        if deviation < rtol:
            return fine
        coarse, steps = fine, 2 * steps
    raise OdeIntegrationError(f'no convergence to {rtol} after {max_halvings} halvings')


def richardson_ratio(rhs: Callable, t0: float, t1: float, y0, steps: int, component=None) -> float:
    """``|y_N - y_2N| / |y_2N - y_4N|`` on the coarse grid, ``2**4`` for a converged RK4 run.

    ``component`` selects one state entry (an index into the state), all entries otherwise.
    """
    runs = [rk4(rhs, t0, t1, y0, steps * 2**k) for k in range(3)]
    if component is not None:
        runs = [OdeSolution(r.t, r.y[(slice(None),) + tuple(np.atleast_1d(component))]) for r in runs]
    first = _deviation(runs[0], runs[1])
    second = float(np.max(np.abs(runs[2].y[::4] - runs[1].y[::2])))
    if second == 0:
        raise OdeIntegrationError('refined runs agree exactly, the ratio is undefined')
    return first / second
