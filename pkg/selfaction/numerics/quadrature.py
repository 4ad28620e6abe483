"""
Integrals of LogLaurentPoly integrands against the weight ``exp(-eta/s)`` on ``(0, 1]``, the
exponential integral ``E1`` and the closed forms used to validate them.

The weight is handled by the substitution ``u = 1/s``:

.. math::

    \\int_0^1 e^{-\\eta/s}\\, s^j (\\ln s)^p\\, ds
        = \\int_1^\\infty e^{-\\eta u}\\, u^{-j-2} (-\\ln u)^p\\, du

which is integrated adaptively on decade panels up to the point where the exponential has fallen
below the tail tolerance.
"""
import logging
import warnings
from dataclasses import dataclass
from functools import lru_cache
from math import factorial, log
from typing import Dict, List, Sequence, Tuple

import numpy as np
from scipy.integrate import quad, IntegrationWarning
from scipy.special import expn, gammaincc, gamma

from ..algebra import LogLaurentPoly
from ..settings import QUAD_ABS_TOL, QUAD_REL_TOL, QUAD_TAIL, EULER_GAMMA, C0_PAPER

logger = logging.getLogger(__name__)


class QuadratureError(Exception):
    """Exception related to the weighted quadrature"""


@dataclass(frozen=True)
class WeightedIntegralSpec:
    """``int_0^1 exp(-eta/s) integrand(s) ds``.

    Parameters
    ----------
    eta : float
        weight parameter, positive
    integrand : LogLaurentPoly
    """
    eta: float
    integrand: LogLaurentPoly

    def __post_init__(self):
        if not self.eta > 0:
            raise QuadratureError(f'eta must be positive, got {self.eta}')


def _panels(eta: float, tail: float) -> np.ndarray:
    u_max = max(-log(tail) / eta, 2.0)
    n = int(np.ceil(np.log10(u_max))) + 1
    return np.unique(np.append(np.geomspace(1.0, u_max, max(n, 2)), u_max))


@lru_cache(maxsize=4096)
def term_integral(
    eta: float,
    j: int,
    p: int,
    abs_tol: float = QUAD_ABS_TOL,
    rel_tol: float = QUAD_REL_TOL,
    tail: float = QUAD_TAIL,
) -> float:
    """``int_0^1 exp(-eta/s) s**j ln(s)**p ds`` by adaptive quadrature in ``u = 1/s``.

    Raises
    ------
    QuadratureError
        if ``eta <= 0`` or a panel does not reach the requested tolerance
    """
    if not eta > 0:
        raise QuadratureError(f'eta must be positive, got {eta}')

    def integrand(u):
        return np.exp(-eta * u) * u**(-j - 2) * (-np.log(u))**p

    total = 0.0
    edges = _panels(eta, tail)
    with warnings.catch_warnings():
        warnings.simplefilter("error", IntegrationWarning)
        for a, b in zip(edges[:-1], edges[1:]):
            try:
                value, err = quad(integrand, a, b, epsabs=abs_tol, epsrel=rel_tol, limit=200)
            except IntegrationWarning as exc:
                raise QuadratureError(
                    f'tolerance not reached for s^{j} L^{p} at eta={eta} on [{a:g}, {b:g}]'
                ) from exc
            logger.debug('panel [%g, %g] of s^%d L^%d: %.6e +- %.1e', a, b, j, p, value, err)
            total += value
    return total


def term_contributions(
    spec: WeightedIntegralSpec,
    abs_tol: float = QUAD_ABS_TOL,
    rel_tol: float = QUAD_REL_TOL,
) -> Dict[Tuple[int, int], float]:
    """Contribution ``c * int W s**j L**p`` of every term of the integrand."""
    return {
        (j, p): float(c) * term_integral(spec.eta, j, p, abs_tol, rel_tol)
        for (j, p), c in spec.integrand.items()
    }


def weighted_integral(
    spec: WeightedIntegralSpec,
    abs_tol: float = QUAD_ABS_TOL,
    rel_tol: float = QUAD_REL_TOL,
) -> float:
    """Value of ``int_0^1 exp(-eta/s) integrand(s) ds``.

    Parameters
    ----------
    spec : WeightedIntegralSpec
    abs_tol, rel_tol : float
        per-panel tolerances handed to ``scipy.integrate.quad``

    Returns
    -------
    float

    Raises
    ------
    QuadratureError
        if a panel does not converge
    """
    return float(sum(term_contributions(spec, abs_tol, rel_tol).values()))


def integrate_weighted(eta: float, integrand: LogLaurentPoly, **kwargs) -> float:
    """Shortcut for ``weighted_integral(WeightedIntegralSpec(eta, integrand))``."""
    return weighted_integral(WeightedIntegralSpec(eta, integrand), **kwargs)


# closed forms

def monomial_integral(eta: float, j: int) -> float:
    """Closed form of ``int_0^1 exp(-eta/s) s**j ds``.

    ``E_{j+2}(eta)`` for ``j >= -1``, ``Gamma(m+1, eta) / eta**(m+1)`` with ``m = -j-2`` otherwise.
    """
    if not eta > 0:
        raise QuadratureError(f'eta must be positive, got {eta}')
    if j == -1:
        return exp_integral_E1(eta)
    if j >= 0:
        return float(expn(j + 2, eta))
    m = -j - 2
    return float(gammaincc(m + 1, eta) * gamma(m + 1) / eta**(m + 1))


def closed_form_s_inv3(eta: float) -> float:
    """``int_0^1 exp(-eta/s) s**-3 ds = exp(-eta)(1 + eta)/eta**2``"""
    return np.exp(-eta) * (1 + eta) / eta**2


def closed_form_s_inv2(eta: float) -> float:
    """``int_0^1 exp(-eta/s) s**-2 ds = exp(-eta)/eta``"""
    return np.exp(-eta) / eta


# exponential integral

def _e1_series(x: float) -> float:
    total = 0.0
    term = 1.0
    k = 1
    while True:
        term *= -x / k
        contrib = -term / k
        total += contrib
        if abs(contrib) < 1e-17 * abs(total):
            break
        k += 1
    return -EULER_GAMMA - log(x) + total


def _e1_continued_fraction(x: float, eps: float = 1e-16, max_iter: int = 500) -> float:
    """Modified Lentz evaluation of the continued fraction of ``exp(x) E1(x)``."""
    tiny = 1e-300
    b = x + 1.0
    c = 1.0 / tiny
    d = 1.0 / b
    h = d
    for i in range(1, max_iter + 1):
        an = -float(i * i)
        b += 2.0
        d = 1.0 / (an * d + b)
        c = b + an / c
        delta = c * d
        h *= delta
        if abs(delta - 1.0) < eps:
            return h * np.exp(-x)
    raise QuadratureError(f'continued fraction for E1({x}) did not converge')


def exp_integral_E1(eta: float) -> float:
    """Exponential integral ``E1(eta) = int_1^inf exp(-eta u) / u du``.

    Power series for ``eta <= 1``, continued fraction beyond.
    """
    if not eta > 0:
        raise QuadratureError(f'E1 needs a positive argument, got {eta}')
    if eta <= 1.0:
        return _e1_series(eta)
    return float(_e1_continued_fraction(eta))


def paper_log_approximation(eta: float, c0: float = C0_PAPER, corrected: bool = False) -> float:
    """Truncated logarithmic form ``-ln eta + eta - eta**2/2 + c0`` of ``int W s**-1``.

    With ``corrected`` the second order term is the term-by-term value ``-eta**2/4``.
    """
    if not 0 < eta <= 1:
        raise QuadratureError(f'the logarithmic form needs eta in (0, 1], got {eta}')
    second = eta**2 / 4 if corrected else eta**2 / 2
    return -log(eta) + eta - second + c0


def c0_empirical(eta: float, order: int) -> float:
    """``E1(eta) - (-ln eta + sum_{k<=order} (-1)**(k+1) eta**k / (k k!))``, tends to -gamma_E."""
    if order < 0:
        raise QuadratureError(f'order must be nonnegative, got {order}')
    partial = sum((-1)**(k + 1) * eta**k / (k * factorial(k)) for k in range(1, order + 1))
    return exp_integral_E1(eta) - (-log(eta) + partial)


def c0_table(eta: float, orders: Sequence[int]) -> List[dict]:
    """Rows ``order, c0, c0 + gamma_E, c0_paper`` showing the convergence of the constant."""
    rows = []
    for order in orders:
        c0 = c0_empirical(eta, order)
        rows.append({
            "eta": eta,
            "order": order,
            "c0": c0,
            "deviation": c0 + EULER_GAMMA,
            "c0_paper": C0_PAPER,
        })
    return rows


def small_eta_moments(eta: float) -> List[dict]:
    """Exact, numeric and rough estimates of ``int W s**j`` for ``j = 0, 1, -2, -3``.

    The rough estimates ``1, 1/2, 1/eta, 1/eta**2`` are the small eta leading behaviour.
    """
    approx = {0: 1.0, 1: 0.5, -2: 1 / eta, -3: 1 / eta**2}
    rows = []
    for j, rough in approx.items():
        rows.append({
            "integrand": f"s^{j}",
            "exact": monomial_integral(eta, j),
            "numeric": integrate_weighted(eta, LogLaurentPoly.monomial(j)),
            "approximation": rough,
        })
    logger.info('moments at eta=%g: %s', eta, ", ".join(f"{r['integrand']}={r['exact']:.6g}" for r in rows))
    return rows


def e1_derivative_check(eta: float, h: float = 1e-6) -> Tuple[float, float, float]:
    """Central difference of E1 against ``-exp(-eta)/eta``.

    Returns
    -------
    (numeric, exact, relative_error)
    """
    if not 0 < h < eta:
        raise QuadratureError(f'step {h} must lie in (0, eta={eta})')
    numeric = (exp_integral_E1(eta + h) - exp_integral_E1(eta - h)) / (2 * h)
    exact = -np.exp(-eta) / eta
    return numeric, float(exact), abs(numeric - exact) / abs(exact)
