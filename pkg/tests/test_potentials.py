import numpy as np
import pytest

from selfaction.config import PhysicalConstants
from selfaction.physics import (
    PotentialsError,
    CouplingSpec,
    at_rest,
    invariant_I0,
    spin_potential,
    yukawa,
    coupling_from_masses,
    candidate_couplings,
    laplacian_dimension_scan,
    analytic_laplacian,
    static_wave_check,
)

CONSTANTS = PhysicalConstants()


def test_at_rest_potentials():
    pot = at_rest([0.0, 2.0, 0.0])
    assert pot.I0 == 0.5
    assert np.allclose(pot.A, [0.0, 0.0, 0.0, 0.5])
    assert np.allclose(pot.sigma, [0.0, 0.25, 0.0])
    assert at_rest(4.0).I0 == 0.25
    with pytest.raises(PotentialsError):
        at_rest([0.0, 0.0, 0.0])


def test_scalar_potentials():
    assert invariant_I0(0.2) == pytest.approx(5.0)
    assert spin_potential(2.0, 0.1) == pytest.approx(-0.025j)
    assert yukawa(2.0, 0.5) == pytest.approx(np.exp(-1.0) / 2)
    assert np.allclose(yukawa(np.array([1.0, 2.0]), 0.0), [1.0, 0.5])
    for func, args in [(invariant_I0, (0.0,)), (spin_potential, (-1.0, 0.1)), (yukawa, (0.0, 1.0))]:
        with pytest.raises(PotentialsError):
            func(*args)


def test_coupling_from_eta():
    spec = CouplingSpec.from_eta(1 / 137, 9.5e-4)
    assert spec.beta == pytest.approx(9.5e-4 / 274)
    assert spec.eta == pytest.approx(9.5e-4)
    assert spec.lambda_e == spec.beta
    with pytest.raises(PotentialsError):
        CouplingSpec(alpha=1 / 137, beta=-1.0)
    with pytest.raises(PotentialsError):
        CouplingSpec(alpha=0.0, beta=1.0).eta


def test_coupling_from_masses():
    spec = coupling_from_masses(1.766, CONSTANTS, n=1 / 9)
    assert spec.beta == pytest.approx(1.766 / 511000)
    assert spec.n == pytest.approx(1 / 9)
    assert spec.mu_pi == pytest.approx(0.14386, rel=1e-4)
    swapped = coupling_from_masses(1.766, CONSTANTS, option="interchanged")
    assert swapped.beta == pytest.approx(511000 / 1.766)
    with pytest.raises(PotentialsError):
        coupling_from_masses(1.766, CONSTANTS, option="other")


def test_candidate_couplings():
    values = candidate_couplings(CONSTANTS)
    assert 1 / values["pion_over_proton"] == pytest.approx(6.95, rel=1e-2)
    assert 1 / values["reduced"] == pytest.approx(9.1, rel=1e-2)


def test_inverse_distance_harmonic_in_three_dimensions():
    scan = dict(laplacian_dimension_scan(range(2, 7)))
    assert abs(scan[3]) < 1e-5
    for N in (2, 4, 5, 6):
        assert scan[N] == pytest.approx(analytic_laplacian(np.ones(N)), abs=1e-5)
        assert abs(scan[N]) > 1e-2


def test_laplacian_sign_flips_across_three_dimensions():
    scan = dict(laplacian_dimension_scan([2, 4]))
    # f'' + (N - 1) f' / r for f = 1/r gives (3 - N) / r**3
    assert scan[2] == pytest.approx(1 / 2**1.5, abs=1e-5)
    assert scan[4] == pytest.approx(-1 / 8, abs=1e-5)
    assert analytic_laplacian([1.0, 1.0]) > 0 > analytic_laplacian([1.0, 1.0, 1.0, 1.0])


def test_dimension_scan_with_explicit_point():
    (N, residual), = laplacian_dimension_scan([3], r0=[1.0, 0.5, 0.3])
    assert N == 3
    assert abs(residual) < 1e-4


@pytest.mark.parametrize("kwargs", [
    {"N_range": [1]},
    {"N_range": [3], "r0": [1.0, 2.0]},
    {"N_range": [3], "h": 0.0},
    {"N_range": [3], "h": 1.0},
])
def test_dimension_scan_rejects_bad_input(kwargs):
    with pytest.raises(PotentialsError):
        laplacian_dimension_scan(**kwargs)


def test_analytic_laplacian():
    assert analytic_laplacian([1.0, 0.0, 0.0]) == 0.0
    assert analytic_laplacian([0.0, 0.0, 0.0, 2.0]) == pytest.approx(-1 / 8)


def test_static_wave_check():
    laplacian, divergence = static_wave_check([1.0, 0.5, 0.3])
    assert abs(laplacian) < 1e-4
    assert divergence == pytest.approx(0.0, abs=1e-12)
