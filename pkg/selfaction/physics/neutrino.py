"""
Electron-neutrino: the electron system without Coulomb potential has one solution of interest,
``F = s**-2 exp(-beta**2 / s)`` with ``G = 0``, and its probability density ``F**2 s**2``.
"""
import logging
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.integrate import quad

from .profiles import RadialProfile

logger = logging.getLogger(__name__)


class NeutrinoError(Exception):
    """Exception related to the neutrino solution"""


@dataclass(frozen=True)
class NeutrinoSolution:
    """Closed form neutrino solution for one mass ratio ``beta = m_nu / m_e``."""
    beta: float

    def __post_init__(self):
        if self.beta < 0:
            raise NeutrinoError(f'beta must be nonnegative, got {self.beta}')

    def F(self, s):
        s = np.asarray(s, dtype=float)
        if np.any(s <= 0):
            raise NeutrinoError('the neutrino solution is defined for s > 0')
        return s**-2 * np.exp(-self.beta**2 / s)

    def G(self, s):
        return np.zeros_like(np.asarray(s, dtype=float))

    def density(self, s):
        """``F**2 s**2``"""
        return self.F(s)**2 * np.asarray(s, dtype=float)**2


def neutrino_profile(beta: float, grid: Sequence[float]) -> RadialProfile:
    """Sample ``F`` on ``grid``; the ``G`` channel is zero and stored in the metadata."""
    sol = NeutrinoSolution(beta)
    grid = np.asarray(grid, dtype=float)
    return RadialProfile("F_nu", grid, sol.F(grid), {"beta": beta, "G": 0.0})


def _check_beta(beta: float):
    if not beta > 0:
        raise NeutrinoError(f'beta must be positive, got {beta}')


def escape_probability(beta: float) -> float:
    """Share of ``int F**2 s**2`` beyond ``s = 1``: ``1 - exp(-2 beta**2)``.

    Raises
    ------
    NeutrinoError
        if ``beta <= 0``
    """
    _check_beta(beta)
    return float(-np.expm1(-2 * beta**2))


def escape_probability_numeric(beta: float) -> float:
    """Same ratio as :func:`escape_probability` by quadrature of ``F**2 s**2`` itself.

    Both pieces are integrated in ``u = 1/s``: ``s > 1`` is ``u`` in ``(0, 1)`` and ``s < 1``
    is ``u > 1``, where the density decays like ``exp(-2 beta**2 u)``.
    """
    _check_beta(beta)
    sol = NeutrinoSolution(beta)
    a = 2 * beta**2

    def integrand(u):
        return float(sol.density(1 / u)) / u**2

    outside, _ = quad(integrand, 0.0, 1.0, epsabs=0.0, epsrel=1e-12)
    # exp(-60) is far below the requested accuracy
    upper = max(2.0, 60 / a)
    points = [1 / a] if 1 < 1 / a < upper else None
    inside, _ = quad(integrand, 1.0, upper, points=points, epsabs=0.0, epsrel=1e-12, limit=200)
    ratio = outside / (outside + inside)
    logger.debug('escape probability for beta=%g: %.12g', beta, ratio)
    return ratio


def first_order_bound(beta: float) -> float:
    """``2 beta**2``, an upper bound of the escape probability."""
    return 2 * beta**2
