"""
Electron-neutrino mass condition.

Two modes are provided: the closed logarithmic form keeping the dominant terms only
(``paper_closed_form``) and the root of the full weighted integral of the product density
(``exact_quadrature``). Both return the damping parameter ``eta`` at which the condition vanishes,
from which ``beta = alpha eta / 2`` and ``m_nu = beta m_e``.
"""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import log
from typing import List, Optional, Sequence, Tuple

from ..config import PhysicalConstants
from ..numerics.roots import find_roots, RootFindingError, BracketError
from ..numerics.quadrature import (
    QuadratureError,
    integrate_weighted,
    term_integral,
)
from ..physics.electron import (
    SeriesSolution,
    iterate_first_family,
    iterate_second_family,
    product_density,
)
from ..settings import (
    C0_PAPER,
    EULER_GAMMA,
    EQ29_BRACKET,
    ETA_BRACKET,
    NU_MASS_UPPER_LIMIT_EV,
    PRESCAN_POINTS,
    QUAD_ABS_TOL,
    QUAD_REL_TOL,
)

logger = logging.getLogger(__name__)

PAPER_MODE = "paper_closed_form"
EXACT_MODE = "exact_quadrature"


class MassSolverError(Exception):
    """Exception related to the mass condition solver"""


@dataclass
class MassSolveResult:
    """Root of the mass condition.

    Parameters
    ----------
    eta_root : float
    beta : float
        ``alpha eta_root / 2``
    m_nu : float
        neutrino rest energy in eV
    mode : str
        ``"paper_closed_form"`` or ``"exact_quadrature"``
    bracket : Tuple[float, float]
        search interval
    residual_at_root : float
    alpha : float
    all_roots : List[float]
        every root found on the search interval, the smallest one is ``eta_root``
    """
    eta_root: float
    beta: float
    m_nu: float
    mode: str
    bracket: Tuple[float, float]
    residual_at_root: float
    alpha: float
    all_roots: List[float] = field(default_factory=list)

    def to_record(self) -> dict:
        """Flat key/value record, including the experimental upper limit as annotation."""
        return {
            "mode": self.mode,
            "alpha": self.alpha,
            "eta_root": self.eta_root,
            "beta": self.beta,
            "m_nu_eV": self.m_nu,
            "bracket_lo": self.bracket[0],
            "bracket_hi": self.bracket[1],
            "residual": self.residual_at_root,
            "n_roots": len(self.all_roots),
            "upper_limit_eV": NU_MASS_UPPER_LIMIT_EV,
        }


def resolve_c0(mode: str, c0_paper: float = C0_PAPER) -> float:
    """Integration constant of the logarithmic form: the printed value or ``-gamma_E``."""
    if mode == "paper":
        return c0_paper
    if mode == "exact":
        return -EULER_GAMMA
    raise MassSolverError(f'unknown c0 mode "{mode}"')


def eq29_function(eta: float, alpha: float, c0: float) -> float:
    """``-ln eta + c0 - 3/2 - (alpha**2 / 12) eta**-2``"""
    return -log(eta) + c0 - 1.5 - alpha**2 / 12 / eta**2


def _result(scan, mode, alpha, bracket, constants) -> MassSolveResult:
    eta, _, residual = scan.smallest
    beta = alpha * eta / 2
    return MassSolveResult(
        eta_root=eta,
        beta=beta,
        m_nu=beta * constants.m_e,
        mode=mode,
        bracket=tuple(bracket),
        residual_at_root=residual,
        alpha=alpha,
        all_roots=list(scan.roots),
    )


def solve_eq29(
    alpha: float,
    c0: float,
    constants: PhysicalConstants,
    bracket: Tuple[float, float] = EQ29_BRACKET,
    points: int = PRESCAN_POINTS,
) -> MassSolveResult:
    """Solve the closed logarithmic form of the condition for ``eta``.

    Parameters
    ----------
    alpha : float
        coupling, ``alpha = 0`` drops the power term
    c0 : float
        integration constant of ``int W s**-1``
    constants : PhysicalConstants
        supplies ``m_e``
    bracket : Tuple[float, float], default = (1e-8, 1)

    Raises
    ------
    BracketError
        if the function has no sign change on the bracket
    """
    if alpha < 0:
        raise MassSolverError(f'alpha must be nonnegative, got {alpha}')

    scan = find_roots(lambda eta: eq29_function(eta, alpha, c0), *bracket, points=points)
    result = _result(scan, PAPER_MODE, alpha, bracket, constants)
    logger.info('closed form: eta=%.6g m_nu=%.6g eV (%d roots)', result.eta_root, result.m_nu,
        len(scan.roots))
    return result


def normalized_density(first: SeriesSolution, second: SeriesSolution, K: int) -> list:
    """Product density to order K with the ``a0 b0`` normalization divided out."""
    norm = first.normalization * second.normalization
    if norm == 0:
        raise MassSolverError('the product density vanishes identically for a0 b0 = 0')
    return [xi.scale(1 / Fraction(norm)) for xi in product_density(first, second, K)]


def condition_value(
    eta: float,
    xi: Sequence,
    alpha: float,
    abs_tol: float = QUAD_ABS_TOL,
    rel_tol: float = QUAD_REL_TOL,
) -> float:
    """``sum_k alpha**(2k) int_0^1 exp(-eta/s) xi_k ds``"""
    return sum(
        alpha**(2 * k) * integrate_weighted(eta, xi_k, abs_tol=abs_tol, rel_tol=rel_tol)
        for k, xi_k in enumerate(xi)
    )


def solve_exact_condition(
    first: SeriesSolution,
    second: SeriesSolution,
    alpha: float,
    K: int,
    constants: PhysicalConstants,
    bracket: Tuple[float, float] = ETA_BRACKET,
    points: int = PRESCAN_POINTS,
    abs_tol: float = QUAD_ABS_TOL,
    rel_tol: float = QUAD_REL_TOL,
) -> MassSolveResult:
    """Root of the weighted integral of the full product density.

    Raises
    ------
    BracketError
        if the condition has no sign change on the bracket
    MassSolverError
        if the quadrature fails or the normalization vanishes
    """
    if not alpha > 0:
        raise MassSolverError(f'alpha must be positive, got {alpha}')
    xi = normalized_density(first, second, K)

    def phi(eta):
        return condition_value(eta, xi, alpha, abs_tol, rel_tol)

    try:
        scan = find_roots(phi, *bracket, points=points)
    except BracketError:
        raise
    except (QuadratureError, RootFindingError) as exc:
        raise MassSolverError(f'exact condition could not be solved: {exc}') from exc

    result = _result(scan, EXACT_MODE, alpha, bracket, constants)
    logger.info('exact condition to order %d: eta=%.6g m_nu=%.6g eV', K, result.eta_root,
        result.m_nu)
    return result


@dataclass
class AuditRow:
    order: int
    j: int
    p: int
    coefficient: Fraction
    integral: float
    contribution: float


@dataclass
class ConditionAudit:
    """Per-term breakdown of the condition at one ``eta``."""
    eta: float
    alpha: float
    rows: List[AuditRow]

    @property
    def total(self) -> float:
        return sum(r.contribution for r in self.rows)

    def order_total(self, k: int) -> float:
        return sum(r.contribution for r in self.rows if r.order == k)

    def term_fraction(self, k: int, j: int, p: int = 0) -> float:
        """Share of one term in the contribution of order ``k``."""
        term = sum(r.contribution for r in self.rows if (r.order, r.j, r.p) == (k, j, p))
        return term / self.order_total(k)

    def to_records(self) -> List[dict]:
        return [
            {
                "order": r.order,
                "j": r.j,
                "p": r.p,
                "coefficient": f"{r.coefficient.numerator}/{r.coefficient.denominator}",
                "integral": r.integral,
                "contribution": r.contribution,
            }
            for r in self.rows
        ]


def condition_audit(
    eta: float,
    K: int,
    alpha: float,
    first: Optional[SeriesSolution] = None,
    second: Optional[SeriesSolution] = None,
) -> ConditionAudit:
    """Contribution of every ``(k, j, p)`` term of the product density to the condition.

    Unit normalizations are used when the series are not given.
    """
    first = first or iterate_first_family(1, K)
    second = second or iterate_second_family(1, K)
    if not eta > 0:
        raise MassSolverError(f'eta must be positive, got {eta}')

    rows = []
    for k, xi_k in enumerate(normalized_density(first, second, K)):
        for (j, p), c in xi_k.items():
            integral = term_integral(eta, j, p)
            rows.append(AuditRow(k, j, p, c, integral, alpha**(2 * k) * float(c) * integral))
    return ConditionAudit(eta, alpha, rows)


def compare_modes(paper: MassSolveResult, exact: MassSolveResult) -> dict:
    """Side by side record of both solver modes."""
    return {
        "alpha": paper.alpha,
        "eta_paper": paper.eta_root,
        "eta_exact": exact.eta_root,
        "m_nu_paper_eV": paper.m_nu,
        "m_nu_exact_eV": exact.m_nu,
        "relative_shift": (exact.eta_root - paper.eta_root) / paper.eta_root,
        "upper_limit_eV": NU_MASS_UPPER_LIMIT_EV,
    }


def alpha_scan(
    alphas: Sequence[float],
    constants: PhysicalConstants,
    c0: float = C0_PAPER,
) -> List[dict]:
    """Closed-form root for a sequence of couplings."""
    rows = []
    for alpha in alphas:
        res = solve_eq29(alpha, c0, constants)
        rows.append({"alpha": alpha, "eta_root": res.eta_root, "beta": res.beta, "m_nu_eV": res.m_nu})
    return rows
