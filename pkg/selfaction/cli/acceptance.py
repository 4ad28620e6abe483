"""
Acceptance criteria run by ``selfaction verify``. Every criterion returns whether it passed and a
one-line detail; an exception inside a criterion counts as a failure.
"""
import filecmp
import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from math import sqrt
from pathlib import Path
from typing import Callable, List, Tuple

import numpy as np

from ..algebra import LogLaurentPoly, LogLaurentError
from ..config import RunConfig, PhysicalConstants
from ..numerics.quadrature import (
    exp_integral_E1,
    integrate_weighted,
    c0_empirical,
    closed_form_s_inv3,
)
from ..physics import densities as dens
from ..physics.electron import (
    iterate_first_family,
    iterate_second_family,
    product_density,
    zero_crossing_G,
    sign_changes_G,
    sample_profiles,
    paper_factor,
)
from ..physics.neutrino import escape_probability, escape_probability_numeric
from ..physics.potentials import laplacian_dimension_scan, analytic_laplacian
from ..physics.proton import (
    ProtonSpec,
    integrate_proton_system,
    convergence_ratio,
    calibrate_n,
)
from ..physics.profiles import figure_grid
from ..settings import (
    EULER_GAMMA,
    C0_PAPER,
    NU_MASS_WINDOW_EV,
    PROTON_N_CANDIDATES,
)
from ..solve.mass import solve_eq29
from .runs import golden_forms, run_electron, run_neutrino_mass

logger = logging.getLogger(__name__)

PAPER_ALPHA = 1 / 137
PAPER_CONSTANTS = PhysicalConstants(m_e=511000.0, alpha=PAPER_ALPHA)


class AcceptanceError(Exception):
    """Exception related to evaluating an acceptance criterion"""


@dataclass
class Context:
    config: RunConfig
    golden_dir: Path
    work_dir: Path


@dataclass
class Criterion:
    number: int
    name: str
    check: Callable[[Context], Tuple[bool, str]]


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float


def _read_golden(ctx: Context, name: str) -> LogLaurentPoly:
    path = ctx.golden_dir / f"{name}.txt"
    try:
        return LogLaurentPoly.from_string(path.read_text())
    except OSError as exc:
        raise AcceptanceError(f'golden file "{path}" cannot be read') from exc
    except LogLaurentError as exc:
        raise AcceptanceError(f'golden file "{path}" is corrupted: {exc}') from exc


def _golden_matches(ctx: Context, names, forms) -> Tuple[bool, str]:
    for name in names:
        if _read_golden(ctx, name) != LogLaurentPoly.from_string(forms[name]):
            return False, f'{name} differs from golden file'
    return True, ""


def series_exactness(ctx: Context):
    first = iterate_first_family(1, 1)
    F0 = LogLaurentPoly.from_powers({-2: 1, 0: -3, 1: 2}).scale(Fraction(1, 6))
    G1 = LogLaurentPoly({(-2, 0): 1, (-1, 0): -2, (0, 1): 6, (0, 0): 9, (1, 0): -10,
        (2, 0): 2}).scale(Fraction(-1, 12))
    if first.F[0] != F0 or first.G[1] != G1:
        return False, f'F0={first.F[0]} G1={first.G[1]}'
    ok, msg = _golden_matches(ctx, ("F0", "G1"), golden_forms(first, iterate_second_family(1, 1)))
    return ok, msg or 'F0 and G1 exact'


def second_family(ctx: Context):
    second = iterate_second_family(1, 1)
    g0 = LogLaurentPoly.from_powers({-2: 1, -1: -2, 0: 1}).scale(Fraction(-1, 2))
    if second.g[0] != g0:
        return False, f'g0={second.g[0]}'
    ok, msg = _golden_matches(ctx, ("g0",), golden_forms(iterate_first_family(1, 1), second))
    return ok, msg or 'g0 exact'


def product_density_factor(ctx: Context):
    first, second = iterate_first_family(1, 1), iterate_second_family(1, 1)
    xi = product_density(first, second, 1)
    factors = [paper_factor(xi[k], k) for k in range(2)]
    if factors[1] is None:
        return False, 'xi1 is not proportional to the printed bracket'
    ok, msg = _golden_matches(ctx, ("xi0", "xi1"), golden_forms(first, second))
    return ok, msg or f'factors xi0: {factors[0]}, xi1: {factors[1]}'


def neutrino_mass_paper(ctx: Context):
    res = solve_eq29(PAPER_ALPHA, C0_PAPER, PAPER_CONSTANTS)
    lo, hi = NU_MASS_WINDOW_EV
    return lo <= res.m_nu <= hi, f'm_nu = {res.m_nu:.6f} eV (eta = {res.eta_root:.6g})'


def exponential_integral_oracle(ctx: Context):
    worst = 0.0
    for eta in (1e-3, 1e-2, 0.1, 1.0):
        value = integrate_weighted(eta, LogLaurentPoly.monomial(-1))
        worst = max(worst, abs(value - exp_integral_E1(eta)) / exp_integral_E1(eta))
    c0 = c0_empirical(1.0, 30)
    passed = worst < 1e-10 and abs(c0 + EULER_GAMMA) < 1e-6
    return passed, (f'max rel err {worst:.2e}, c0 = {c0:.8f}, '
        f'offset from {C0_PAPER}: {c0 - C0_PAPER:.4f}')


def closed_form_integral(ctx: Context):
    worst = 0.0
    for eta in (1e-3, 0.1, 1.0):
        value = integrate_weighted(eta, LogLaurentPoly.monomial(-3))
        worst = max(worst, abs(value / closed_form_s_inv3(eta) - 1))
    return worst < 1e-10, f'max rel err {worst:.2e}'


def zero_crossing(ctx: Context):
    first = iterate_first_family(1, 3)
    s = zero_crossing_G(first, PAPER_ALPHA)
    expected = PAPER_ALPHA / sqrt(12)
    err = abs(s - expected) / expected
    changes = sign_changes_G(first, PAPER_ALPHA)
    return err < 0.1 and changes == 1, f's = {s:.6g}, alpha/sqrt(12) = {expected:.6g}, {changes} crossing(s)'


def escape(ctx: Context):
    beta = solve_eq29(PAPER_ALPHA, C0_PAPER, PAPER_CONSTANTS).beta
    p = escape_probability(beta)
    worst = max(abs(escape_probability_numeric(b) / escape_probability(b) - 1) for b in (0.1, 1.0))
    return p < 1e-10 and worst < 1e-9, f'P = {p:.3e} for beta = {beta:.4g}, quadrature rel err {worst:.1e}'


def join_smoothness(ctx: Context):
    K = 3
    alpha = PAPER_ALPHA
    first, second = iterate_first_family(1, K), iterate_second_family(1, K)
    eta = solve_eq29(alpha, C0_PAPER, PAPER_CONSTANTS).eta_root
    Ff, Gg = sample_profiles(first, alpha, eta, figure_grid(), partner_series=second)[2:]
    tol = 10 * alpha**(2 * K + 2)
    worst = max(abs(p.at(1.0)) / np.max(np.abs(p.values)) for p in (Ff, Gg))
    return worst <= tol, f'max relative product at s=1: {worst:.2e} (tolerance {tol:.1e})'


def density_structure(ctx: Context):
    a, b = dens.first_form(dens.F, dens.G), dens.first_form(dens.f, dens.g)
    bil = dens.bilinear(a, b, "gamma_t")
    expected = {
        (dens.Y10, dens.Y10): dens.F * dens.f / 3,
        (dens.Y11, dens.Y11): 2 * dens.F * dens.f / 3,
        (dens.Y00, dens.Y00): dens.G * dens.g,
    }
    structure = all((bil.get(k, 0) - v).expand() == 0 for k, v in expected.items()) and len(bil) == 3
    reduced = (dens.volume_reduce(bil) - (dens.F * dens.f + dens.G * dens.g)).expand() == 0

    sz1, mz1 = dens.spin_magnetization(a, b)
    sz2, mz2 = dens.spin_magnetization(dens.second_form(dens.F, dens.G), dens.second_form(dens.f, dens.g))
    spin = (sz1 - sz2).expand() == 0 and (mz1 + mz2).expand() == 0
    return structure and reduced and spin, f'Sz = {sz1}, Mz(first) = {mz1}, Mz(second) = {mz2}'


def laplacian_dimensions(ctx: Context):
    rows = laplacian_dimension_scan([2, 3, 4])
    ok = True
    for N, residual in rows:
        analytic = analytic_laplacian(np.ones(N))
        ok &= abs(residual - analytic) < 1e-4
        ok &= (abs(residual) < 1e-4) == (N == 3)
    return ok, ", ".join(f'N={N}: {r:.3e}' for N, r in rows)


def proton_properties(ctx: Context):
    constants = ctx.config.constants
    alpha = constants.alpha
    spec = ProtonSpec.from_constants(constants, n=0.0)
    sol = integrate_proton_system(spec)
    first = iterate_first_family(1, 3)
    mask = (sol.s >= 0.1) & (sol.s <= 1.0)
    s = sol.s[mask]
    G_series = first.leading_sum(s, alpha)
    F_series = first.partner_sum(s, alpha)
    err_G = np.max(np.abs(sol.G[mask] - G_series)) / np.max(np.abs(G_series))
    err_F = np.max(np.abs(sol.F[mask] - F_series)) / np.max(np.abs(F_series))
    tol = 10 * alpha**4

    ratios = [convergence_ratio(spec.with_n(n)) for n in PROTON_N_CANDIDATES]
    converged = all(abs(r / 16 - 1) < 0.2 for r in ratios)

    eta_e = solve_eq29(alpha, C0_PAPER, constants).eta_root
    report = calibrate_n(spec, eta_e, constants.m_e / constants.m_p, np.linspace(1 / 14, 1 / 7, 13))
    found = 'none' if report.n_calibrated is None else f'{report.n_calibrated:.4g}'
    return (max(err_G, err_F) < tol and converged,
        f'n=0 deviation {max(err_G, err_F):.1e} (tol {tol:.1e}), ratios '
        + ", ".join(f'{r:.2f}' for r in ratios) + f', condition zero at n = {found}')


def determinism(ctx: Context):
    dirs = []
    for k in range(2):
        out = ctx.work_dir / f"determinism{k}"
        out.mkdir(parents=True, exist_ok=True)
        run_electron(ctx.config, out, archive=False)
        run_neutrino_mass(ctx.config, out, archive=False)
        dirs.append(out)
    names = sorted(str(p.relative_to(dirs[0])) for p in dirs[0].rglob("*.csv"))
    match, mismatch, errors = filecmp.cmpfiles(dirs[0], dirs[1], names, shallow=False)
    detail = f'{len(match)} of {len(names)} CSV files identical (c0_mode = {ctx.config.c0_mode})'
    return bool(names) and not mismatch and not errors, detail


CRITERIA = [
    Criterion(1, "series exactness (F0, G1)", series_exactness),
    Criterion(2, "second family (g0)", second_family),
    Criterion(3, "product density factor", product_density_factor),
    Criterion(4, "neutrino mass, closed form", neutrino_mass_paper),
    Criterion(5, "E1 oracle and c0 convergence", exponential_integral_oracle),
    Criterion(6, "closed-form s^-3 integral", closed_form_integral),
    Criterion(7, "zero crossing of G", zero_crossing),
    Criterion(8, "escape probability", escape),
    Criterion(9, "join smoothness", join_smoothness),
    Criterion(10, "density structure", density_structure),
    Criterion(11, "Laplacian dimension check", laplacian_dimensions),
    Criterion(12, "proton properties (exploratory)", proton_properties),
    Criterion(13, "determinism", determinism),
]


def run_criterion(criterion: Criterion, ctx: Context) -> CriterionResult:
    start = time.perf_counter()
    try:
        passed, detail = criterion.check(ctx)
    except Exception as exc:
        logger.warning('criterion %d raised %s', criterion.number, exc)
        passed, detail = False, f'error: {exc}'
    seconds = time.perf_counter() - start
    logger.info('criterion %d %s in %.2f s', criterion.number, "passed" if passed else "failed", seconds)
    return CriterionResult(criterion.number, criterion.name, bool(passed), detail, seconds)


def run_all(ctx: Context, criteria: List[Criterion] = CRITERIA) -> List[CriterionResult]:
    return [run_criterion(c, ctx) for c in criteria]
