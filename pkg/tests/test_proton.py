import numpy as np
import pytest

from selfaction.config import PhysicalConstants
from selfaction.physics import (
    ProtonError,
    ProtonSpec,
    effective_source,
    bracket_roots,
    integrate_proton_system,
    proton_condition,
    proton_self_energy,
    solve_eta,
    calibrate_n,
    convergence_ratio,
    electromagnetic_inertia,
    iterate_first_family,
    iterate_second_family,
)
from selfaction.physics.proton import EXPLORATORY_NOTE, find_s0
from selfaction.solve import solve_exact_condition

CONSTANTS = PhysicalConstants()
ALPHA = CONSTANTS.alpha


@pytest.fixture(scope="module")
def coulomb_only():
    return integrate_proton_system(ProtonSpec.from_constants(CONSTANTS, n=0.0))


def test_spec_from_constants():
    spec = ProtonSpec.from_constants(CONSTANTS, n=1 / 9)
    assert spec.mu_pi == pytest.approx(ALPHA * 0.143857, rel=1e-5)
    assert spec.with_n(0.2).n == 0.2
    assert spec.with_n(0.2).mu_pi == spec.mu_pi


@pytest.mark.parametrize("kwargs", [
    {"alpha": 0.0},
    {"n": -0.1},
    {"mu_pi": 0.0},
    {"coulomb_sign": 0},
    {"s_min": 2e3},
    {"step": 0.0},
    {"root_choice": "middle"},
    {"rtol": 0.0},
    {"max_halvings": -1},
])
def test_spec_validation(kwargs):
    params = {"alpha": ALPHA, "n": 0.1, "mu_pi": 1e-3}
    params.update(kwargs)
    with pytest.raises(ProtonError):
        ProtonSpec(**params)


def test_source_without_yukawa_vanishes_at_one():
    spec = ProtonSpec(alpha=ALPHA, n=0.0, mu_pi=1e-3)
    assert effective_source(1.0, spec) == 0.0
    assert bracket_roots(spec) == [pytest.approx(1.0, rel=1e-11)]


def test_short_range_yukawa_keeps_the_root():
    spec = ProtonSpec(alpha=ALPHA, n=1 / 11, mu_pi=1e3)
    assert bracket_roots(spec)[-1] == pytest.approx(1.0, rel=1e-9)


def test_yukawa_moves_the_root_outward():
    spec = ProtonSpec.from_constants(CONSTANTS, n=1 / 11)
    s0, roots = find_s0(spec)
    assert len(roots) == 1
    assert 10 < s0 < 20
    assert effective_source(s0, spec) == pytest.approx(0.0, abs=1e-12)


def test_flipped_coulomb_sign_without_root():
    spec = ProtonSpec(alpha=ALPHA, n=0.0, mu_pi=1e-3, coulomb_sign=-1)
    with pytest.raises(ProtonError):
        bracket_roots(spec)
    with pytest.raises(ProtonError):
        integrate_proton_system(spec)


def test_boundary_values(coulomb_only):
    sol = coulomb_only
    assert sol.s[0] == pytest.approx(1.0)
    assert sol.s[-1] == pytest.approx(1e-3)
    assert sol.G[0] == 1.0 and sol.F[0] == 0.0
    assert sol.g[0] == 0.0 and sol.f[0] == pytest.approx(1.0)


def test_reduces_to_the_electron_series(coulomb_only):
    sol = coulomb_only
    first, second = iterate_first_family(1, 3), iterate_second_family(1, 3)
    mask = (sol.s >= 0.1) & (sol.s <= 1.0)
    s = sol.s[mask]
    tol = 10 * ALPHA**4
    for numeric, series in [
        (sol.G, first.leading_sum(s, ALPHA)),
        (sol.F, first.partner_sum(s, ALPHA)),
        (sol.f, second.leading_sum(s, ALPHA)),
        (sol.g, second.partner_sum(s, ALPHA)),
    ]:
        assert np.max(np.abs(numeric[mask] - series)) / np.max(np.abs(series)) < tol


def test_linear_in_boundary_values(coulomb_only):
    spec = ProtonSpec.from_constants(CONSTANTS, n=0.0, a0=2.0)
    doubled = integrate_proton_system(spec)
    assert np.array_equal(doubled.G, 2 * coulomb_only.G)
    assert np.array_equal(doubled.F, 2 * coulomb_only.F)
    assert np.array_equal(doubled.f, coulomb_only.f)


def test_coarse_start_is_refined_to_the_same_solution():
    fine = integrate_proton_system(ProtonSpec.from_constants(CONSTANTS, n=1 / 11))
    coarse = integrate_proton_system(ProtonSpec.from_constants(CONSTANTS, n=1 / 11, step=0.5))
    assert len(coarse.t) < len(fine.t)
    assert coarse.G[-1] == pytest.approx(fine.G[-1], rel=1e-5)
    assert coarse.f[-1] == pytest.approx(fine.f[-1], rel=1e-5)


def test_unconverged_refinement_raises():
    spec = ProtonSpec.from_constants(CONSTANTS, n=1 / 11, step=2.0, max_halvings=1)
    with pytest.raises(ProtonError):
        integrate_proton_system(spec)


def test_condition_root_matches_electron():
    spec = ProtonSpec.from_constants(CONSTANTS, n=0.0, s_min=1e-5)
    sol = integrate_proton_system(spec)
    eta_p = solve_eta(sol, bracket=(1e-4, 1e-2))
    electron = solve_exact_condition(
        iterate_first_family(1, 1), iterate_second_family(1, 1), ALPHA, 1, CONSTANTS)
    assert eta_p == pytest.approx(electron.eta_root, rel=1e-2)
    assert proton_condition(sol, 0.5 * eta_p) > 0 > proton_condition(sol, 2 * eta_p)


def test_self_energy_is_alpha_times_inertia(coulomb_only):
    eta = 0.05
    inertia = electromagnetic_inertia(iterate_first_family(1, 3), iterate_second_family(1, 3), ALPHA, eta)
    assert proton_self_energy(coulomb_only, eta) == pytest.approx(ALPHA * inertia.total, rel=1e-3)


def test_self_energy_without_normalization():
    spec = ProtonSpec.from_constants(CONSTANTS, n=0.0, b0=0.0)
    assert proton_self_energy(integrate_proton_system(spec), 0.05) == 0.0


@pytest.mark.parametrize("n", [1 / 7, 1 / 11])
def test_fourth_order_convergence(n):
    ratio = convergence_ratio(ProtonSpec.from_constants(CONSTANTS, n=n))
    assert ratio == pytest.approx(16.0, rel=0.2)


def test_calibration_report():
    template = ProtonSpec.from_constants(CONSTANTS, n=0.0)
    target = CONSTANTS.m_e / CONSTANTS.m_p
    report = calibrate_n(template, 9.5e-4, target, [1 / 14, 1 / 7], candidates=[1 / 9])
    assert report.note == EXPLORATORY_NOTE
    assert report.eta_target == pytest.approx(9.5e-4 / target)
    assert [r.n for r in report.rows] == sorted([1 / 14, 1 / 9, 1 / 7])
    assert len(report.succeeded) == 3
    for row in report.succeeded:
        assert row.s0 > 1
        assert set(row.to_record()) >= {"n", "s0", "condition_value", "eta_p"}
        if row.eta_p is not None:
            assert row.implied_mass_ratio == pytest.approx(9.5e-4 / row.eta_p)
    if report.n_calibrated is not None:
        assert 1 / 14 <= report.n_calibrated <= 1 / 7


def test_calibration_input_checks():
    template = ProtonSpec.from_constants(CONSTANTS, n=0.0)
    with pytest.raises(ProtonError):
        calibrate_n(template, 9.5e-4, 1 / 1836, [])
    with pytest.raises(ProtonError):
        calibrate_n(template, 9.5e-4, 0.0, [0.1])
