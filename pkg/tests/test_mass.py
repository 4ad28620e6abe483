from math import exp

import pytest

from selfaction.config import PhysicalConstants
from selfaction.numerics import BracketError
from selfaction.physics import iterate_first_family, iterate_second_family
from selfaction.settings import EULER_GAMMA, NU_MASS_WINDOW_EV
from selfaction.solve import (
    MassSolverError,
    PAPER_MODE,
    EXACT_MODE,
    resolve_c0,
    eq29_function,
    solve_eq29,
    solve_exact_condition,
    condition_value,
    condition_audit,
    compare_modes,
    alpha_scan,
)
from selfaction.solve.mass import normalized_density

ALPHA = 1 / 137
CONSTANTS = PhysicalConstants(m_e=511000.0, alpha=ALPHA)


@pytest.fixture(scope="module")
def paper():
    return solve_eq29(ALPHA, -0.51, CONSTANTS)


@pytest.fixture(scope="module")
def exact():
    return solve_exact_condition(
        iterate_first_family(1, 1), iterate_second_family(1, 1), ALPHA, 1, CONSTANTS)


def test_closed_form_mass(paper):
    lo, hi = NU_MASS_WINDOW_EV
    assert lo <= paper.m_nu <= hi
    assert paper.mode == PAPER_MODE
    assert paper.eta_root == pytest.approx(9.5e-4, rel=0.02)
    assert paper.beta == pytest.approx(ALPHA * paper.eta_root / 2)
    assert abs(paper.residual_at_root) < 1e-6


def test_closed_form_second_root_is_reported(paper):
    assert len(paper.all_roots) == 2
    assert paper.all_roots[0] == paper.eta_root
    assert paper.all_roots[1] == pytest.approx(0.134, rel=0.02)


def test_vanishing_alpha_has_closed_solution():
    result = solve_eq29(0.0, -0.51, CONSTANTS)
    assert result.eta_root == pytest.approx(exp(-0.51 - 1.5), rel=1e-9)
    assert result.m_nu == 0.0


def test_negative_alpha_rejected():
    with pytest.raises(MassSolverError):
        solve_eq29(-1e-3, -0.51, CONSTANTS)


def test_c0_modes(paper):
    assert resolve_c0("paper") == -0.51
    assert resolve_c0("exact") == -EULER_GAMMA
    with pytest.raises(MassSolverError):
        resolve_c0("guess")
    shifted = solve_eq29(ALPHA, resolve_c0("exact"), CONSTANTS)
    assert shifted.m_nu == pytest.approx(paper.m_nu, rel=0.02)


def test_eq29_function_sign():
    assert eq29_function(1e-6, ALPHA, -0.51) < 0
    assert eq29_function(1e-2, ALPHA, -0.51) > 0


def test_no_root_in_bracket():
    with pytest.raises(BracketError):
        solve_eq29(ALPHA, -0.51, CONSTANTS, bracket=(0.5, 1.0))


def test_exact_condition_near_closed_form(paper, exact):
    assert exact.mode == EXACT_MODE
    assert exact.eta_root == pytest.approx(paper.eta_root, rel=0.1)
    assert abs(exact.residual_at_root) < 1e-6
    record = compare_modes(paper, exact)
    assert record["relative_shift"] == pytest.approx(
        (exact.eta_root - paper.eta_root) / paper.eta_root)
    assert record["upper_limit_eV"] == 2.2


def test_exact_condition_independent_of_normalization(exact):
    other = solve_exact_condition(
        iterate_first_family(2, 1), iterate_second_family(-3, 1), ALPHA, 1, CONSTANTS)
    assert other.eta_root == exact.eta_root


def test_exact_condition_is_deterministic(exact):
    again = solve_exact_condition(
        iterate_first_family(1, 1), iterate_second_family(1, 1), ALPHA, 1, CONSTANTS)
    assert again.eta_root == exact.eta_root
    assert again.to_record() == exact.to_record()


def test_exact_condition_without_sign_change():
    with pytest.raises(BracketError):
        solve_exact_condition(
            iterate_first_family(1, 1), iterate_second_family(1, 1), ALPHA, 1, CONSTANTS,
            bracket=(0.5, 0.9))


def test_exact_condition_rejects_degenerate_input():
    with pytest.raises(MassSolverError):
        solve_exact_condition(
            iterate_first_family(0, 1), iterate_second_family(1, 1), ALPHA, 1, CONSTANTS)
    with pytest.raises(MassSolverError):
        solve_exact_condition(
            iterate_first_family(1, 1), iterate_second_family(1, 1), 0.0, 1, CONSTANTS)


def test_condition_changes_sign_at_root(exact):
    xi = normalized_density(iterate_first_family(1, 1), iterate_second_family(1, 1), 1)
    assert condition_value(0.5 * exact.eta_root, xi, ALPHA) > 0
    assert condition_value(2.0 * exact.eta_root, xi, ALPHA) < 0


def test_audit_is_dominated_by_leading_power():
    audit = condition_audit(1e-3, 1, ALPHA)
    assert audit.term_fraction(1, -3, 0) > 0.9
    xi = normalized_density(iterate_first_family(1, 1), iterate_second_family(1, 1), 1)
    assert audit.total == pytest.approx(condition_value(1e-3, xi, ALPHA), rel=1e-12)
    assert audit.order_total(0) + audit.order_total(1) == pytest.approx(audit.total)
    records = audit.to_records()
    assert {"order": 1, "j": -3, "p": 0} == {k: records[3][k] for k in ("order", "j", "p")}
    assert records[3]["coefficient"] == "1/24"
    with pytest.raises(MassSolverError):
        condition_audit(0.0, 1, ALPHA)


def test_alpha_scan_is_monotone():
    rows = alpha_scan([1e-4, 1e-3, ALPHA], CONSTANTS)
    etas = [r["eta_root"] for r in rows]
    masses = [r["m_nu_eV"] for r in rows]
    assert etas == sorted(etas)
    assert masses == sorted(masses)
    assert rows[0]["eta_root"] == pytest.approx(9.4e-6, rel=0.05)


def test_result_record(paper):
    record = paper.to_record()
    assert record["mode"] == PAPER_MODE
    assert record["upper_limit_eV"] == 2.2
    assert record["n_roots"] == 2
    assert record["m_nu_eV"] == paper.m_nu
