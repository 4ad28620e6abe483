import numpy as np
import pytest
import sympy as sp

from selfaction.config import PhysicalConstants
from selfaction.physics import (
    DensityError,
    GammaSet,
    Bispinor,
    first_form,
    second_form,
    bilinear,
    volume_reduce,
    spin_magnetization,
    invariants_I1_I2,
    electromagnetic_inertia,
    spinor_coefficients,
    spherical_harmonic,
    sphere_overlap,
    covariant_table,
    iterate_first_family,
    iterate_second_family,
)
from selfaction.physics.densities import (
    F, G, f, g,
    Y00, Y10, Y11,
    GAMMA,
    zero_bispinor,
    polarization_density,
    evaluate_density,
    condition_density,
)
from selfaction.solve import solve_exact_condition

ALPHA = 1 / 137


def same(a, b):
    return sp.expand(a - b) == 0


@pytest.fixture
def pair():
    return first_form(F, G), first_form(f, g)


def test_gamma_identities():
    eye = np.eye(4)
    assert np.allclose(GAMMA.matrix("gamma_t"), eye)
    assert np.allclose(GAMMA.matrix("gamma_5") @ GAMMA.matrix("gamma_5"), eye)
    assert np.allclose(GAMMA.matrix("gamma_xy") @ GAMMA.matrix("gamma_xy"), -eye)
    assert np.allclose(GAMMA.matrix("gamma_xy5") @ GAMMA.matrix("gamma_xy5"), -eye)
    with pytest.raises(DensityError):
        GammaSet().diagonal("gamma_x")


def test_covariant_table():
    rows = covariant_table()
    assert [r["components"] for r in rows] == [1, 1, 4, 4, 6]
    assert rows[0]["gamma"] is None


def test_bispinor_needs_four_components():
    with pytest.raises(DensityError):
        Bispinor(({}, {}, {}))


def test_time_component_structure(pair):
    bil = bilinear(*pair, "gamma_t")
    assert set(bil) == {(Y10, Y10), (Y11, Y11), (Y00, Y00)}
    assert same(bil[(Y10, Y10)], F * f / 3)
    assert same(bil[(Y11, Y11)], 2 * F * f / 3)
    assert same(bil[(Y00, Y00)], G * g)
    assert same(volume_reduce(bil), F * f + G * g)


def test_bilinear_with_itself_is_the_plain_form():
    a = first_form(F, G)
    bil = bilinear(a, a, "gamma_t")
    assert same(volume_reduce(bil), F**2 + G**2)


def test_polarization_identity(pair):
    for gamma in GAMMA.names():
        direct = bilinear(*pair, gamma)
        literal = polarization_density(*pair, gamma)
        assert set(direct) == set(literal)
        assert all(same(direct[k], literal[k]) for k in direct)


def test_polarization_identity_numerically(pair):
    radial = {F: 0.7, G: -1.3, f: 2.1, g: 0.4}
    for gamma in ("gamma_t", "gamma_5"):
        a = evaluate_density(bilinear(*pair, gamma), 0.8, 1.9, radial)
        b = evaluate_density(polarization_density(*pair, gamma), 0.8, 1.9, radial)
        assert abs(a - b) < 1e-12


def test_isotropic_density():
    # |Y10|**2 / 3 + 2 |Y11|**2 / 3 = 1 / (4 pi) in every direction
    a = first_form(F, G)
    bil = bilinear(a, a, "gamma_t")
    for theta, phi in [(0.1, 0.0), (1.2, 2.5), (3.0, 5.0)]:
        value = evaluate_density(bil, theta, phi, {F: 1.0, G: 0.0})
        assert value == pytest.approx(1 / (4 * np.pi))


def test_zero_bispinor(pair):
    zero = zero_bispinor()
    assert bilinear(pair[0], zero, "gamma_t") == {}
    assert volume_reduce(bilinear(zero, pair[1], "gamma_t")) == 0
    assert spin_magnetization(zero, zero) == (0, 0)


def test_cross_family_density_reduces_to_zero():
    bil = bilinear(first_form(F, G), second_form(f, g), "gamma_t")
    assert bil
    assert all(h1 != h2 for h1, h2 in bil)
    assert volume_reduce(bil) == 0


def test_spin_and_magnetization(pair):
    sz1, mz1 = spin_magnetization(*pair)
    sz2, mz2 = spin_magnetization(second_form(F, G), second_form(f, g))
    assert same(sz1, sz2)
    assert same(mz1, -mz2)
    assert same(sz1, G * g - F * f / 3)
    assert same(mz1, -G * g - F * f / 3)


def test_invariants(pair):
    I1, I2 = invariants_I1_I2(*pair)
    assert same(I1, F * f + G * g)
    assert same(I2, F * f - G * g)
    s = sp.Symbol("s", positive=True)
    assert same(condition_density(*pair, s=s), 2 * G * g / s)


def test_spinor_coefficients_at_half():
    coeffs = spinor_coefficients("1/2", "1/2")
    expected = [
        (1 / sp.sqrt(3), (1, 0)),
        (-sp.sqrt(sp.Rational(2, 3)), (1, 1)),
        (sp.I, (0, 0)),
        (0, (0, 1)),
    ]
    for (c, h), (e, eh) in zip(coeffs, expected):
        assert h == eh
        assert sp.simplify(c - e) == 0

    swapped = spinor_coefficients("1/2", "1/2", family="second")
    assert [h for _, h in swapped] == [(0, 0), (0, 1), (1, 0), (1, 1)]


def test_spinor_coefficients_are_normalized():
    coeffs = spinor_coefficients("3/2", "-1/2")
    large = sum(abs(c)**2 for c, _ in coeffs[:2])
    small = sum(abs(c)**2 for c, _ in coeffs[2:])
    assert sp.simplify(large - 1) == 0
    assert sp.simplify(small - 1) == 0


@pytest.mark.parametrize("j, m, family", [
    ("1", "0", "first"),
    ("1/2", "3/2", "first"),
    ("1/2", "1/2", "third"),
])
def test_invalid_angular_momentum(j, m, family):
    with pytest.raises(DensityError):
        spinor_coefficients(j, m, family)


def test_sphere_orthonormality():
    harmonics = [Y00, Y10, Y11]
    for h1 in harmonics:
        for h2 in harmonics:
            expected = 1.0 if h1 == h2 else 0.0
            assert abs(sphere_overlap(h1, h2) - expected) < 1e-10
    with pytest.raises(DensityError):
        spherical_harmonic(2, 0, 0.1, 0.2)


def test_inertia_vanishes_without_normalization():
    report = electromagnetic_inertia(iterate_first_family(0, 1), iterate_second_family(1, 1), ALPHA, 1e-3)
    assert report.total == 0.0


def test_inertia_at_the_mass_root():
    first, second = iterate_first_family(1, 1), iterate_second_family(1, 1)
    root = solve_exact_condition(first, second, ALPHA, 1, PhysicalConstants(alpha=ALPHA))
    report = electromagnetic_inertia(first, second, ALPHA, root.eta_root)
    assert report.ff_part > 0
    assert abs(report.gg_part) < 1e-6 * report.ff_part
    assert report.total == pytest.approx(report.ff_part, rel=1e-6)


def test_inertia_is_per_unit_normalization():
    one = electromagnetic_inertia(iterate_first_family(1, 1), iterate_second_family(1, 1), ALPHA, 0.01)
    scaled = electromagnetic_inertia(iterate_first_family(3, 1), iterate_second_family(2, 1), ALPHA, 0.01)
    assert scaled.total == pytest.approx(one.total, rel=1e-12)
