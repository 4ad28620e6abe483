"""
At-rest self-action ingredients: the invariant I0, the Coulomb 4-potential, the imaginary spin
potential, the coupling constants and the Yukawa scalar. Also provides finite-difference checks of
the harmonicity of the inverse distance.

Only the reductions for a singularity at rest are implemented. Radii are dimensionless.
"""
import logging
from dataclasses import dataclass
from typing import List, Sequence, Tuple, Union

import numpy as np

from ..config import PhysicalConstants

logger = logging.getLogger(__name__)

U_REST = np.array([0.0, 0.0, 0.0, 1.0])
"""4-velocity of the singularity at rest, time component last"""


class PotentialsError(Exception):
    """Exception related to the potentials"""


@dataclass(frozen=True)
class CouplingSpec:
    """Dimensionless couplings.

    Parameters
    ----------
    alpha : float
        fine-structure constant
    beta : float
        mass ratio m_nu / m_e
    n : float, default = 0
        proton-meson coupling
    mu_pi : float, default = 0
        meson over proton mass ratio
    """
    alpha: float
    beta: float
    n: float = 0.0
    mu_pi: float = 0.0

    def __post_init__(self):
        for name in ("alpha", "beta", "n", "mu_pi"):
            if getattr(self, name) < 0:
                raise PotentialsError(f'coupling "{name}" must be nonnegative')

    @classmethod
    def from_eta(cls, alpha: float, eta: float, n: float = 0.0, mu_pi: float = 0.0):
        """Build the couplings from the damping parameter ``eta = 2 beta / alpha``."""
        return cls(alpha=alpha, beta=alpha * eta / 2, n=n, mu_pi=mu_pi)

    @property
    def eta(self) -> float:
        """Damping parameter of the weight ``exp(-eta / s)``."""
        if self.alpha == 0:
            raise PotentialsError('eta is undefined for alpha = 0')
        return 2 * self.beta / self.alpha

    @property
    def lambda_e(self) -> float:
        """Spin coupling length in units of hbar / (m_e c), equal to beta."""
        return self.beta


@dataclass(frozen=True)
class AtRestPotentials:
    """Potentials of a singularity at rest evaluated at one point.

    Parameters
    ----------
    I0 : float
        invariant, 1/r
    A : np.ndarray
        4-potential, spatial part zero and time part 1/r
    sigma : np.ndarray
        spatial gradient of I0 up to sign, radial with magnitude 1/r**2
    u : np.ndarray
        4-velocity at rest
    """
    I0: float
    A: np.ndarray
    sigma: np.ndarray
    u: np.ndarray


def at_rest(position: Union[float, Sequence[float]]) -> AtRestPotentials:
    """Evaluate the at-rest potentials at a radius or a 3-vector position."""
    pos = np.atleast_1d(np.asarray(position, dtype=float))
    if pos.size == 1:
        pos = np.array([pos[0], 0.0, 0.0])
    r = np.linalg.norm(pos)
    if r <= 0:
        raise PotentialsError('the potentials are singular at the origin')

    return AtRestPotentials(
        I0=invariant_I0(r),
        A=U_REST / r,
        sigma=pos / r**3,
        u=U_REST.copy(),
    )


def invariant_I0(r: float) -> float:
    if r <= 0:
        raise PotentialsError(f'radius must be positive, got {r}')
    return 1.0 / r


def spin_potential(r: float, lambda_e: float) -> complex:
    """Radial component ``-i lambda_e / r**2`` of the imaginary spin potential."""
    if r <= 0:
        raise PotentialsError(f'radius must be positive, got {r}')
    return -1j * lambda_e / r**2


def yukawa(r: float, mu: float) -> float:
    """Yukawa scalar ``exp(-mu r) / r``.

    Raises
    ------
    PotentialsError
        if ``r <= 0``
    """
    if np.any(np.asarray(r) <= 0):
        raise PotentialsError(f'radius must be positive, got {r}')
    return np.exp(-mu * r) / r


def coupling_from_masses(
    m_nu_eV: float,
    constants: PhysicalConstants,
    n: float = 0.0,
    option: str = "beta",
) -> CouplingSpec:
    """Couplings implied by a neutrino mass.

    Parameters
    ----------
    m_nu_eV : float
        neutrino rest energy in eV
    constants : PhysicalConstants
        electron, proton and meson masses, alpha
    n : float, default = 0
        Yukawa coupling carried along for the proton
    option : str, default = "beta"
        ``"beta"`` takes lambda_e = beta hbar / (m_e c). ``"interchanged"`` swaps the mass
        parameters, giving lambda_e = hbar / (m_nu c), i.e. 1 / beta in electron units; it is
        kept for display only.
    """
    beta = m_nu_eV / constants.m_e
    mu_pi = constants.m_pi0 / constants.m_p
    if option == "beta":
        return CouplingSpec(alpha=constants.alpha, beta=beta, n=n, mu_pi=mu_pi)
    if option == "interchanged":
        return CouplingSpec(alpha=constants.alpha, beta=1 / beta, n=n, mu_pi=mu_pi)
    raise PotentialsError(f'unknown coupling option "{option}"')


def candidate_couplings(constants: PhysicalConstants) -> dict:
    """The two simplest meson couplings built from the pion and proton masses."""
    ratio = constants.m_pi0 / constants.m_p
    reduced = constants.m_pi0 * constants.m_p / (constants.m_pi0 + constants.m_p)**2
    return {"pion_over_proton": ratio, "reduced": reduced}


def _inverse_distance(x: np.ndarray) -> float:
    return 1.0 / np.sqrt(np.sum(x * x))


def _fd_laplacian(func, x: np.ndarray, h: float) -> float:
    """Central second differences summed over all coordinates."""
    f0 = func(x)
    total = 0.0
    for k in range(x.size):
        step = np.zeros_like(x)
        step[k] = h
        total += (func(x + step) - 2 * f0 + func(x - step)) / h**2
    return total


def _check_step(x: np.ndarray, h: float):
    r = np.linalg.norm(x)
    if r == 0:
        raise PotentialsError('sample point must be away from the origin')
    if not 0 < h < r / 2:
        raise PotentialsError(f'degenerate step h={h} for a point at distance {r}')


def laplacian_dimension_scan(
    N_range: Sequence[int],
    h: float = 1e-3,
    r0: Union[float, Sequence[float]] = 1.0,
) -> List[Tuple[int, float]]:
    """Finite-difference N-dimensional Laplacian of ``|x|**-1``.

    The analytic value is ``(N - 3) |x|**-3``, so the residual vanishes for N = 3 only.

    Parameters
    ----------
    N_range : Sequence[int]
        dimensions to scan, each >= 2
    h : float, default = 1e-3
        finite-difference step
    r0 : float or Sequence[float], default = 1.0
        a scalar places the sample point at ``(r0, ..., r0)``, a sequence must have length N

    Returns
    -------
    list of (N, residual)
    """
    out = []
    for N in N_range:
        if N < 2:
            raise PotentialsError(f'dimension must be at least 2, got {N}')
        if np.ndim(r0) == 0:
            x = np.full(N, float(r0))
        else:
            x = np.asarray(r0, dtype=float)
            if x.size != N:
                raise PotentialsError(f'sample point has {x.size} coordinates, expected {N}')
        _check_step(x, h)

        residual = _fd_laplacian(_inverse_distance, x, h)
        logger.debug('N=%d residual %.3e analytic %.3e', N, residual, analytic_laplacian(x))
        out.append((N, residual))
    return out


def analytic_laplacian(x: Sequence[float]) -> float:
    """``(3 - N) |x|**-3`` for a point with N coordinates."""
    x = np.asarray(x, dtype=float)
    return (3 - x.size) / np.linalg.norm(x)**3


def static_wave_check(r0: Sequence[float], h: float = 1e-3) -> Tuple[float, float]:
    """Finite-difference residuals of the wave equation and the Lorenz condition at rest.

    For a static potential the d'Alembertian reduces to the Laplacian of ``1/r`` and the
    4-divergence to the divergence of the (vanishing) spatial part plus the time derivative
    of ``1/r`` (zero).

    Returns
    -------
    (laplacian_residual, divergence_residual)
    """
    x = np.asarray(r0, dtype=float)
    _check_step(x, h)

    laplacian = _fd_laplacian(_inverse_distance, x, h)

    # spatial part of A at rest, and its time dependence, both from the at-rest 4-potential
    def spatial(p):
        return at_rest(p).A[:3]

    divergence = 0.0
    for k in range(3):
        step = np.zeros(3)
        step[k] = h
        divergence += (spatial(x + step)[k] - spatial(x - step)[k]) / (2 * h)

    return abs(laplacian), abs(divergence)
