"""
Exploratory proton self-action: the electron radial system with a Yukawa term added to the
source bracket,

.. math::

    B(s) = \\alpha (1 - \\sigma/s) - n\\, e^{-\\mu s} / s

with ``mu = alpha m_pi0 / m_p`` in the dimensionless radius and ``sigma`` the Coulomb sign. The
damping factor is extracted as for the electron, so the integrated system

.. math::

    \\frac{du}{dt} = s^3 B v, \\qquad \\frac{dv}{dt} = -B u / s, \\qquad t = \\ln s

in ``u = s^2 F`` and ``v = G`` is regular. It is integrated inward from the bracket root ``s0``.
The reduction is a declared model, every result derived from it is exploratory.
"""
import logging
from dataclasses import dataclass, field, replace
from math import log
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import simpson

from ..config import PhysicalConstants
from ..numerics.odeint import rk4_refined, richardson_ratio, OdeIntegrationError
from ..numerics.roots import find_roots, bisect_root, RootFindingError, BracketError
from ..settings import (
    PROTON_STEP,
    PROTON_RTOL,
    PROTON_MAX_HALVINGS,
    PROTON_S_MIN,
    PROTON_ETA_BRACKET,
    PROTON_N_CANDIDATES,
    PRESCAN_POINTS,
)
from .potentials import yukawa

logger = logging.getLogger(__name__)

EXPLORATORY_NOTE = "exploratory: proton reduction is a declared model, not a derived result"


class ProtonError(Exception):
    """Exception related to the proton solver"""


@dataclass(frozen=True)
class ProtonSpec:
    """Parameters of one proton integration.

    Parameters
    ----------
    alpha : float
    n : float
        Yukawa coupling, nonnegative
    mu_pi : float
        meson mass in the dimensionless radius, positive
    lambda_spin : float, default = 0
        spin coupling; the damping it produces is extracted analytically
    coulomb_sign : int, default = 1
        +1 for the electron-like attraction, -1 for the flipped branch
    s_max : float, default = 1e3
        outer end of the search for ``s0``
    s_min : float
        inner end of the integration
    step : float
        initial step in ``t = ln s``, halved until the solution settles
    rtol : float
        accepted relative change of the solution under one halving
    max_halvings : int
        halvings tried before giving up
    root_choice : str, default = "outermost"
        which bracket root is ``s0`` when several exist
    a0, b0 : float, default = 1
        boundary values of the first and second family
    """
    alpha: float
    n: float
    mu_pi: float
    lambda_spin: float = 0.0
    coulomb_sign: int = 1
    s_max: float = 1e3
    s_min: float = PROTON_S_MIN
    step: float = PROTON_STEP
    rtol: float = PROTON_RTOL
    max_halvings: int = PROTON_MAX_HALVINGS
    root_choice: str = "outermost"
    a0: float = 1.0
    b0: float = 1.0

    def __post_init__(self):
        if not self.alpha > 0:
            raise ProtonError(f'alpha must be positive, got {self.alpha}')
        if self.n < 0:
            raise ProtonError(f'n must be nonnegative, got {self.n}')
        if not self.mu_pi > 0:
            raise ProtonError(f'mu_pi must be positive, got {self.mu_pi}')
        if self.coulomb_sign not in (1, -1):
            raise ProtonError(f'coulomb_sign must be +1 or -1, got {self.coulomb_sign}')
        if not 0 < self.s_min < self.s_max:
            raise ProtonError(f'invalid radial range ({self.s_min}, {self.s_max})')
        if not self.step > 0:
            raise ProtonError(f'step must be positive, got {self.step}')
        if not self.rtol > 0 or self.max_halvings < 0:
            raise ProtonError(f'invalid refinement rtol={self.rtol}, max_halvings={self.max_halvings}')
        if self.root_choice not in ("outermost", "innermost"):
            raise ProtonError(f'unknown root choice "{self.root_choice}"')

    @classmethod
    def from_constants(cls, constants: PhysicalConstants, n: float, **kwargs) -> "ProtonSpec":
        """Spec with ``mu_pi = alpha m_pi0 / m_p``."""
        mu = constants.alpha * constants.m_pi0 / constants.m_p
        return cls(alpha=constants.alpha, n=n, mu_pi=mu, **kwargs)

    def with_n(self, n: float) -> "ProtonSpec":
        return replace(self, n=n)


def effective_source(s, spec: ProtonSpec):
    """Bracket ``alpha (1 - sigma/s) - n exp(-mu s)/s`` multiplying the partner function."""
    s = np.asarray(s, dtype=float)
    value = spec.alpha * (1 - spec.coulomb_sign / s)
    if spec.n:
        value = value - spec.n * yukawa(s, spec.mu_pi)
    return value if value.ndim else float(value)


def bracket_roots(spec: ProtonSpec, points: int = 4 * PRESCAN_POINTS) -> List[float]:
    """All roots of the bracket on ``(s_min, s_max)`` in increasing order.

    Raises
    ------
    ProtonError
        if the bracket has no root on the range
    """
    try:
        scan = find_roots(lambda s: effective_source(s, spec), spec.s_min, spec.s_max, points=points)
    except BracketError as exc:
        raise ProtonError(f'the source bracket has no root on ({spec.s_min}, {spec.s_max})') from exc
    return scan.roots


def find_s0(spec: ProtonSpec) -> Tuple[float, List[float]]:
    roots = bracket_roots(spec)
    s0 = roots[-1] if spec.root_choice == "outermost" else roots[0]
    if len(roots) > 1:
        logger.warning('bracket has %d roots %s, using the %s one', len(roots),
            ", ".join(f"{r:.6g}" for r in roots), spec.root_choice)
    return s0, roots


@dataclass
class ProtonSolution:
    """Daggered radial functions of both families on a descending radial grid.

    ``y[k, family, 0] = s**2 F`` (or ``s**2 f``), ``y[k, family, 1] = G`` (or ``g``).
    """
    spec: ProtonSpec
    s0: float
    roots: List[float]
    t: np.ndarray
    y: np.ndarray

    @property
    def s(self) -> np.ndarray:
        return np.exp(self.t)

    @property
    def F(self):
        return self.y[:, 0, 0] / self.s**2

    @property
    def G(self):
        return self.y[:, 0, 1]

    @property
    def f(self):
        return self.y[:, 1, 0] / self.s**2

    @property
    def g(self):
        return self.y[:, 1, 1]

    def weight(self, eta: float) -> np.ndarray:
        """``exp(-eta/s)``, the combined damping of two physical functions."""
        return np.exp(-eta / self.s)


def _rhs(spec: ProtonSpec):
    def rhs(t, y):
        s = np.exp(t)
        B = effective_source(s, spec)
        out = np.empty_like(y)
        out[:, 0] = s**3 * B * y[:, 1]
        out[:, 1] = -B * y[:, 0] / s
        return out
    return rhs


def _initial_state(spec: ProtonSpec) -> np.ndarray:
    # first family G(s0) = 1, F = 0; second family f(s0) = 1 / s0**2, g = 0
    return np.array([[0.0, 1.0], [1.0, 0.0]])


def integrate_proton_system(spec: ProtonSpec) -> ProtonSolution:
    """Integrate both families inward from ``s0`` to ``s_min`` with RK4 in ``ln s``.

    The step starts at ``spec.step`` and is halved until one more halving changes the
    solution by less than ``spec.rtol``. Both families are integrated for unit boundary
    values and scaled by ``a0`` and ``b0`` afterwards.

    Raises
    ------
    ProtonError
        if no ``s0`` exists, the integration breaks down or the refinement does not converge
    """
    s0, roots = find_s0(spec)
    if s0 <= spec.s_min:
        raise ProtonError(f's0={s0} lies inside the inner radius {spec.s_min}')

    t0, t1 = log(s0), log(spec.s_min)
    try:
        sol = rk4_refined(_rhs(spec), t0, t1, _initial_state(spec), spec.step,
            rtol=spec.rtol, max_halvings=spec.max_halvings)
    except OdeIntegrationError as exc:
        raise ProtonError(f'integration for n={spec.n} failed: {exc}') from exc

    y = sol.y * np.array([spec.a0, spec.b0])[:, None]
    logger.info('proton system n=%g integrated from s0=%.6g in %d steps', spec.n, s0, len(sol.t) - 1)
    return ProtonSolution(spec, s0, roots, sol.t, y)


def _integrate_t(values: np.ndarray, t: np.ndarray) -> float:
    """Simpson rule over ``t`` for values on a descending grid."""
    return float(simpson(values[::-1], x=t[::-1]))


def proton_condition(solution: ProtonSolution, eta: float) -> float:
    """``int_0^s0 G g (alpha/s + n zeta) s**2 W ds`` on the integration grid."""
    spec = solution.spec
    s = solution.s
    source = spec.alpha + spec.n * np.exp(-spec.mu_pi * s)
    integrand = solution.G * solution.g * source * s * solution.weight(eta)
    return _integrate_t(integrand * s, solution.t)


def proton_self_energy(solution: ProtonSolution, eta: float) -> float:
    """``4 pi int_0^s0 (alpha/s + n zeta)(Ff + Gg) s**2 W ds`` per unit ``a0 b0``."""
    spec = solution.spec
    norm = spec.a0 * spec.b0
    if norm == 0:
        return 0.0
    s = solution.s
    source = spec.alpha + spec.n * np.exp(-spec.mu_pi * s)
    products = solution.F * solution.f + solution.G * solution.g
    integrand = 4 * np.pi * source * products * s * solution.weight(eta) / norm
    return _integrate_t(integrand * s, solution.t)


def solve_eta(
    solution: ProtonSolution,
    bracket: Tuple[float, float] = PROTON_ETA_BRACKET,
    points: int = PRESCAN_POINTS,
) -> float:
    """Smallest damping parameter at which the condition vanishes.

    Raises
    ------
    BracketError
        if the condition has no sign change on the bracket
    """
    scan = find_roots(lambda eta: proton_condition(solution, eta), *bracket, points=points)
    return scan.roots[0]


def convergence_ratio(spec: ProtonSpec, steps: int = 200, s_inner: float = 0.1) -> float:
    """Richardson ratio of ``u`` of the first family under two step halvings on
    ``[s_inner, s0]``, close to 16 for the fourth order scheme."""
    s0, _ = find_s0(spec)
    if s0 <= s_inner:
        raise ProtonError(f's0={s0} lies inside the convergence range start {s_inner}')
    return richardson_ratio(_rhs(spec), log(s0), log(s_inner), _initial_state(spec), steps,
        component=(0, 0))


@dataclass
class ProtonScanRow:
    n: float
    s0: Optional[float] = None
    condition_value: Optional[float] = None
    self_energy: Optional[float] = None
    eta_p: Optional[float] = None
    implied_mass_ratio: Optional[float] = None
    error: str = ""

    def to_record(self) -> dict:
        return {
            "n": self.n,
            "s0": self.s0,
            "condition_value": self.condition_value,
            "self_energy": self.self_energy,
            "eta_p": self.eta_p,
            "implied_mass_ratio": self.implied_mass_ratio,
            "error": self.error,
        }


@dataclass
class ProtonSolveReport:
    """Outcome of an n scan at the proton damping ``eta_target``.

    Parameters
    ----------
    eta_target : float
        ``eta_e m_p / m_e``
    target_ratio : float
        ``m_e / m_p``
    rows : List[ProtonScanRow]
    n_calibrated : float, optional
        zero of the condition value in n, None when the scan has no sign change
    s0 : float, optional
        bracket root at the calibrated n
    convergence : float, optional
        Richardson ratio at the calibrated (or first) n
    """
    eta_target: float
    target_ratio: float
    rows: List[ProtonScanRow] = field(default_factory=list)
    n_calibrated: Optional[float] = None
    s0: Optional[float] = None
    convergence: Optional[float] = None
    note: str = EXPLORATORY_NOTE

    @property
    def succeeded(self) -> List[ProtonScanRow]:
        return [r for r in self.rows if not r.error]


def scan_row(spec: ProtonSpec, eta_target: float, eta_e: float,
        eta_bracket: Tuple[float, float] = PROTON_ETA_BRACKET) -> ProtonScanRow:
    """Evaluate one n; failures are recorded in the row."""
    row = ProtonScanRow(n=spec.n)
    try:
        sol = integrate_proton_system(spec)
    except ProtonError as exc:
        logger.warning('n=%g: %s', spec.n, exc)
        row.error = str(exc)
        return row

    row.s0 = sol.s0
    row.condition_value = proton_condition(sol, eta_target)
    row.self_energy = proton_self_energy(sol, eta_target)
    try:
        row.eta_p = solve_eta(sol, eta_bracket)
        row.implied_mass_ratio = eta_e / row.eta_p
    except RootFindingError:
        logger.info('n=%g: no condition root for eta in (%g, %g)', spec.n, *eta_bracket)
    return row


def calibrate_n(
    template: ProtonSpec,
    eta_e: float,
    target_ratio: float,
    n_values: Sequence[float],
    candidates: Sequence[float] = PROTON_N_CANDIDATES,
    eta_bracket: Tuple[float, float] = PROTON_ETA_BRACKET,
) -> ProtonSolveReport:
    """Scan n at the proton damping ``eta_e / target_ratio`` and locate the zero of the
    condition value.

    A scan without a sign change is a reported outcome, ``n_calibrated`` stays None.

    Raises
    ------
    ProtonError
        if the scan range is empty or the target ratio is not positive
    """
    if len(n_values) == 0:
        raise ProtonError('empty n scan')
    if not target_ratio > 0:
        raise ProtonError(f'target ratio must be positive, got {target_ratio}')

    eta_target = eta_e / target_ratio
    report = ProtonSolveReport(eta_target=eta_target, target_ratio=target_ratio)
    for n in sorted(set(n_values) | set(candidates)):
        report.rows.append(scan_row(template.with_n(n), eta_target, eta_e, eta_bracket))

    good = [r for r in report.succeeded if r.condition_value is not None]
    _check_continuity(good)
    cells = [
        (a.n, b.n) for a, b in zip(good[:-1], good[1:])
        if a.condition_value * b.condition_value < 0
    ]
    if not cells:
        logger.warning('condition value has no sign change over n in [%g, %g]',
            good[0].n if good else float("nan"), good[-1].n if good else float("nan"))
    else:
        def condition_in_n(n):
            return proton_condition(integrate_proton_system(template.with_n(n)), eta_target)
        try:
            report.n_calibrated = bisect_root(condition_in_n, *cells[0], rtol=1e-8)
            report.s0 = find_s0(template.with_n(report.n_calibrated))[0]
        except (RootFindingError, ProtonError) as exc:
            logger.warning('calibration bisection failed: %s', exc)

    n_ref = report.n_calibrated if report.n_calibrated is not None else (good[0].n if good else None)
    if n_ref is not None:
        try:
            report.convergence = convergence_ratio(template.with_n(n_ref))
        except (ProtonError, OdeIntegrationError) as exc:
            logger.warning('convergence check failed: %s', exc)

    logger.info('proton scan: %d rows, n_calibrated=%s (%s)', len(report.rows),
        report.n_calibrated, EXPLORATORY_NOTE)
    return report


def _check_continuity(rows: List[ProtonScanRow]):
    values = np.array([r.condition_value for r in rows])
    if values.size < 3:
        return
    jumps = np.abs(np.diff(values))
    for k in range(1, jumps.size - 1):
        neighbours = max(jumps[k - 1], jumps[k + 1])
        if neighbours > 0 and jumps[k] > 10 * neighbours:
            logger.warning('condition value jumps between n=%g and n=%g', rows[k].n, rows[k + 1].n)
