"""
Interior series solutions of the reduced electron radial system

.. math::

    s^{-2}\\partial_s(s^2 F^\\dagger) = (1 - s^{-1})\\,\\alpha\\,G^\\dagger, \\qquad
    \\partial_s G^\\dagger = -(1 - s^{-1})\\,\\alpha\\,F^\\dagger

in powers of alpha squared, built by alternating exact integration with the integration
constant fixed by the vanishing at ``s = 1``. The powers of alpha are implied by the order index:
the leading functions (``G``, ``f``) carry ``alpha**(2k)``, the partner functions (``F``, ``g``)
carry ``alpha**(2k+1)``.

Physical functions are the series times ``exp(-(eta/2)/s)``; beyond ``s = 1`` the exterior
solutions take over.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

import numpy as np

from ..algebra import LogLaurentPoly, S, ONE
from ..numerics.roots import log_prescan, bisect_root, count_sign_changes
from .potentials import CouplingSpec
from .profiles import RadialProfile

logger = logging.getLogger(__name__)

FIRST = "first"
SECOND = "second"

ONE_MINUS_INV_S = ONE - S.shift(-2)
"""``1 - 1/s``"""

S2_ONE_MINUS_INV_S = LogLaurentPoly.from_powers({2: 1, 1: -1})
"""``s**2 (1 - 1/s)``"""

PAPER_XI = (
    LogLaurentPoly.from_powers({-1: 1, 0: -2, 1: 1}),
    LogLaurentPoly({(-3, 0): 1, (-2, 0): -4, (0, 0): 40, (1, 0): -5, (2, 0): -36,
        (3, 0): 4, (1, 1): 60}).scale(Fraction(-1, 12)),
)
"""xi_0 and xi_1 as printed, for a0 = b0 = 1"""


class SeriesError(Exception):
    """Exception related to the electron series"""


@dataclass(frozen=True)
class SeriesSolution:
    """Coefficient functions of one solution family.

    Parameters
    ----------
    family : str
        ``"first"`` for (F, G) or ``"second"`` for (f, g)
    normalization : Fraction
        a0 for the first family, b0 for the second
    leading : tuple of LogLaurentPoly
        G_k for the first family, f_k for the second, carrying alpha**(2k)
    partner : tuple of LogLaurentPoly
        F_k for the first family, g_k for the second, carrying alpha**(2k+1)
    """
    family: str
    normalization: Fraction
    leading: tuple
    partner: tuple

    @property
    def order(self) -> int:
        return len(self.leading) - 1

    # named access

    @property
    def G(self):
        self._require(FIRST)
        return self.leading

    @property
    def F(self):
        self._require(FIRST)
        return self.partner

    @property
    def f(self):
        self._require(SECOND)
        return self.leading

    @property
    def g(self):
        self._require(SECOND)
        return self.partner

    def _require(self, family):
        if self.family != family:
            raise SeriesError(f'{self.family} family has no such function, need {family}')

    # evaluation

    def leading_sum(self, s, alpha: float, K: Optional[int] = None):
        """``sum_k alpha**(2k) leading_k(s)``"""
        K = self.order if K is None else K
        return sum(alpha**(2 * k) * self.leading[k].eval(s) for k in range(K + 1))

    def partner_sum(self, s, alpha: float, K: Optional[int] = None):
        """``sum_k alpha**(2k+1) partner_k(s)``"""
        K = self.order if K is None else K
        return sum(alpha**(2 * k + 1) * self.partner[k].eval(s) for k in range(K + 1))

    def scaled(self, q) -> "SeriesSolution":
        q = Fraction(q)
        return SeriesSolution(
            self.family,
            self.normalization * q,
            tuple(p.scale(q) for p in self.leading),
            tuple(p.scale(q) for p in self.partner),
        )


def _check_order(K: int):
    if K < 0:
        raise SeriesError(f'series order must be nonnegative, got {K}')


def _radial_step(g: LogLaurentPoly) -> LogLaurentPoly:
    """Solve ``s**-2 d(s**2 F)/ds = (1 - 1/s) g`` with ``F(1) = 0``."""
    return (S2_ONE_MINUS_INV_S * g).antiderivative_vanishing_at_1().shift(-2)


def _angular_step(f: LogLaurentPoly) -> LogLaurentPoly:
    """Solve ``dG/ds = -(1 - 1/s) f`` with ``G(1) = 0``."""
    return (-(ONE_MINUS_INV_S * f)).antiderivative_vanishing_at_1()


def iterate_first_family(a0=1, K: int = 3) -> SeriesSolution:
    """Series of the first solution, ``G_0 = a0``.

    ``F_k`` follows from ``G_k`` through the first equation, ``G_{k+1}`` from ``F_k`` through the
    second one, every integration constant chosen so that the new function vanishes at s = 1.
    """
    _check_order(K)
    a0 = Fraction(a0)
    G = [LogLaurentPoly.constant(a0)]
    F = []
    for k in range(K + 1):
        F.append(_radial_step(G[k]))
        if k < K:
            G.append(_angular_step(F[k]))
    logger.info('first family built to order %d', K)
    return SeriesSolution(FIRST, a0, tuple(G), tuple(F))


def iterate_second_family(b0=1, K: int = 3) -> SeriesSolution:
    """Series of the second solution, ``f_0 = b0 / s**2``."""
    _check_order(K)
    b0 = Fraction(b0)
    f = [LogLaurentPoly.monomial(-2, 0, b0)]
    g = []
    for k in range(K + 1):
        g.append(_angular_step(f[k]))
        if k < K:
            f.append(_radial_step(g[k]))
    logger.info('second family built to order %d', K)
    return SeriesSolution(SECOND, b0, tuple(f), tuple(g))


def _check_pair(first: SeriesSolution, second: SeriesSolution, K: int):
    if first.family != FIRST or second.family != SECOND:
        raise SeriesError('expected a first and a second family series')
    if K > min(first.order, second.order):
        raise SeriesError(f'order {K} requested but the series reach orders '
            f'{first.order} and {second.order}')


def product_density(first: SeriesSolution, second: SeriesSolution, K: int) -> List[LogLaurentPoly]:
    """``xi_k = sum_{i+j=k} g_i G_j s``, the alpha**(2k+1) coefficients of ``g G s``."""
    _check_pair(first, second, K)
    return [
        sum((second.g[i] * first.G[k - i] for i in range(k + 1)), LogLaurentPoly()).shift(1)
        for k in range(K + 1)
    ]


def mixed_product_density(first: SeriesSolution, second: SeriesSolution, K: int) -> List[LogLaurentPoly]:
    """``chi_k = sum_{i+j=k} F_i f_j s``, the alpha**(2k+1) coefficients of ``F f s``."""
    _check_pair(first, second, K)
    return [
        sum((first.F[i] * second.f[k - i] for i in range(k + 1)), LogLaurentPoly()).shift(1)
        for k in range(K + 1)
    ]


def paper_factor(xi: LogLaurentPoly, k: int) -> Optional[Fraction]:
    """Overall rational factor between ``xi_k`` (a0 = b0 = 1) and the printed form."""
    return xi.ratio_to(PAPER_XI[k])


def recurrence_residuals(series: SeriesSolution) -> List[LogLaurentPoly]:
    """Exact residuals of both recurrence relations per order, all zero for a valid series."""
    out = []
    lead, part = series.leading, series.partner
    for k in range(series.order + 1):
        if series.family == FIRST:
            out.append(part[k].shift(2).derivative() - S2_ONE_MINUS_INV_S * lead[k])
            prev = part[k - 1] if k else LogLaurentPoly()
            out.append(lead[k].derivative() + ONE_MINUS_INV_S * prev)
        else:
            out.append(part[k].derivative() + ONE_MINUS_INV_S * lead[k])
            prev = part[k - 1] if k else LogLaurentPoly()
            out.append(lead[k].shift(2).derivative() - S2_ONE_MINUS_INV_S * prev)
    return out


def zero_crossing_G(
    series: SeriesSolution,
    alpha: float,
    lo: float = 1e-6,
    points: int = 400,
) -> float:
    """Root of ``G(s) = sum_k G_k(s) alpha**(2k)`` on ``(lo, 1)``.

    Raises
    ------
    SeriesError
        if the series is not of the first family, too short or has no sign change
    """
    series._require(FIRST)
    if series.order < 1:
        raise SeriesError('the zero crossing needs at least order 1')

    def func(s):
        return series.leading_sum(s, alpha)

    cells = log_prescan(func, lo, 1.0, points)
    if not cells:
        raise SeriesError(f'G has no sign change on ({lo}, 1)')
    if len(cells) > 1:
        logger.warning('G changes sign %d times on (%g, 1)', len(cells), lo)

    a, b = cells[0]
    root = bisect_root(func, a, b)
    logger.info('G crosses zero at s=%.6g (alpha/sqrt(12)=%.6g)', root, alpha / np.sqrt(12))
    return root


def sign_changes_G(series: SeriesSolution, alpha: float, lo: float = 1e-6, points: int = 2000) -> int:
    """Number of sign changes of G on a logarithmic grid of ``(lo, 1)``."""
    grid = np.geomspace(lo, 1.0, points, endpoint=False)
    return count_sign_changes(series.leading_sum(grid, alpha))


# physical functions

def damping(s, eta: float):
    """``exp(-(eta/2)/s)``, the factor of each physical function."""
    return np.exp(-0.5 * eta / np.asarray(s, dtype=float))


def physical(series: SeriesSolution, s, alpha: float, eta: float, which: str = "leading"):
    """Physical function on ``s > 0``: series times damping inside, exterior form outside."""
    s = np.asarray(s, dtype=float)
    inside = s <= 1.0
    out = np.zeros_like(s)

    si = s[inside]
    if which == "leading":
        out[inside] = series.leading_sum(si, alpha) * damping(si, eta)
    else:
        out[inside] = series.partner_sum(si, alpha) * damping(si, eta)

    so = s[~inside]
    out[~inside] = exterior(series, so, eta, which)
    return out if out.ndim else float(out)


def exterior(series: SeriesSolution, s, eta: float, which: str = "leading"):
    """Exterior solutions: ``G = a0 exp(-(eta/2)/s)``, ``f = b0 s**-2 exp(-(eta/2)/s)``,
    partners identically zero."""
    s = np.asarray(s, dtype=float)
    if which != "leading":
        return np.zeros_like(s)
    norm = float(series.normalization)
    if series.family == FIRST:
        return norm * damping(s, eta)
    return norm * s**-2 * damping(s, eta)


def _exterior_derivative(series: SeriesSolution, s: float, eta: float) -> float:
    norm = float(series.normalization)
    w = damping(s, eta)
    if series.family == FIRST:
        return norm * 0.5 * eta / s**2 * w
    return norm * (-2 / s**3 + 0.5 * eta / s**4) * w


def _interior_derivative(series: SeriesSolution, s: float, alpha: float, eta: float, which: str) -> float:
    if which == "leading":
        polys = [(alpha**(2 * k), p) for k, p in enumerate(series.leading)]
    else:
        polys = [(alpha**(2 * k + 1), p) for k, p in enumerate(series.partner)]
    value = sum(a * p.eval(s) for a, p in polys)
    slope = sum(a * p.derivative().eval(s) for a, p in polys)
    return (slope + value * 0.5 * eta / s**2) * float(damping(s, eta))


@dataclass
class JoinReport:
    """Interior against exterior values at the join radius."""
    family: str
    s_join: float
    value_interior: float
    value_exterior: float
    slope_interior: float
    slope_exterior: float
    partner_interior: float
    partner_slope_interior: float
    tolerance: float

    @property
    def value_mismatch(self) -> float:
        scale = max(abs(self.value_exterior), 1e-300)
        return abs(self.value_interior - self.value_exterior) / scale

    @property
    def slope_mismatch(self) -> float:
        scale = max(abs(self.slope_exterior), abs(self.value_exterior), 1e-300)
        return abs(self.slope_interior - self.slope_exterior) / scale

    @property
    def ok(self) -> bool:
        return (self.value_mismatch <= self.tolerance
            and self.slope_mismatch <= self.tolerance
            and abs(self.partner_interior) <= self.tolerance
            and abs(self.partner_slope_interior) <= self.tolerance)


def exterior_join_check(series: SeriesSolution, coupling: CouplingSpec) -> JoinReport:
    """Compare the interior physical functions with the exterior forms at s = 1."""
    alpha, eta = coupling.alpha, coupling.eta
    if eta <= 0:
        raise SeriesError('the join check needs eta > 0')

    s = 1.0
    tol = 10 * alpha**(2 * series.order + 2)
    report = JoinReport(
        family=series.family,
        s_join=s,
        value_interior=float(series.leading_sum(s, alpha) * damping(s, eta)),
        value_exterior=float(exterior(series, s, eta)),
        slope_interior=_interior_derivative(series, s, alpha, eta, "leading"),
        slope_exterior=_exterior_derivative(series, s, eta),
        partner_interior=float(series.partner_sum(s, alpha) * damping(s, eta)),
        partner_slope_interior=_interior_derivative(series, s, alpha, eta, "partner"),
        tolerance=tol,
    )
    logger.info('%s family join: value mismatch %.3e, slope mismatch %.3e',
        series.family, report.value_mismatch, report.slope_mismatch)
    return report


def sample_profiles(
    series: SeriesSolution,
    alpha: float,
    eta: float,
    grid: Sequence[float],
    partner_series: Optional[SeriesSolution] = None,
) -> List[RadialProfile]:
    """Physical functions of one family on ``grid``, and, when the other family is given,
    the products ``Ff`` and ``Gg`` which are zero beyond s = 1."""
    grid = np.asarray(grid, dtype=float)
    if np.any(grid <= 0):
        raise SeriesError('grid values must be positive')

    meta = {"alpha": alpha, "eta": eta, "order": series.order}
    names = ("G", "F") if series.family == FIRST else ("f", "g")
    lead = physical(series, grid, alpha, eta, "leading")
    part = physical(series, grid, alpha, eta, "partner")
    out = [
        RadialProfile(names[0], grid, lead, dict(meta)),
        RadialProfile(names[1], grid, part, dict(meta)),
    ]

    if partner_series is not None:
        if partner_series.family == series.family:
            raise SeriesError('products need one series of each family')
        first, second = (series, partner_series) if series.family == FIRST else (partner_series, series)
        G = physical(first, grid, alpha, eta, "leading")
        F = physical(first, grid, alpha, eta, "partner")
        f = physical(second, grid, alpha, eta, "leading")
        g = physical(second, grid, alpha, eta, "partner")
        inside = grid <= 1.0
        out.append(RadialProfile("Ff", grid, np.where(inside, F * f, 0.0), dict(meta)))
        out.append(RadialProfile("Gg", grid, np.where(inside, G * g, 0.0), dict(meta)))
    return out
