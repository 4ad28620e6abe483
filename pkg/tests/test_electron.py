from fractions import Fraction

import numpy as np
import pytest

from selfaction.algebra import LogLaurentPoly
from selfaction.physics import (
    CouplingSpec,
    SeriesError,
    iterate_first_family,
    iterate_second_family,
    product_density,
    mixed_product_density,
    recurrence_residuals,
    paper_factor,
    zero_crossing_G,
    sign_changes_G,
    exterior_join_check,
    sample_profiles,
)

ALPHA = 1 / 137

F0 = "1/6*s^-2*L^0 + -1/2*s^0*L^0 + 1/3*s^1*L^0"
G1 = ("-1/12*s^-2*L^0 + 1/6*s^-1*L^0 + -3/4*s^0*L^0 + -1/2*s^0*L^1 + 5/6*s^1*L^0 "
      "+ -1/6*s^2*L^0")
g0 = "-1/2*s^-2*L^0 + 1/1*s^-1*L^0 + -1/2*s^0*L^0"
f1 = ("11/12*s^-2*L^0 + 1/2*s^-2*L^1 + -3/2*s^-1*L^0 + 3/4*s^0*L^0 + -1/6*s^1*L^0")
xi0 = "-1/2*s^-1*L^0 + 1/1*s^0*L^0 + -1/2*s^1*L^0"
xi1 = ("1/24*s^-3*L^0 + -1/6*s^-2*L^0 + 5/3*s^0*L^0 + -5/24*s^1*L^0 + 5/2*s^1*L^1 "
       "+ -3/2*s^2*L^0 + 1/6*s^3*L^0")


@pytest.fixture(scope="module")
def first():
    return iterate_first_family(1, 3)


@pytest.fixture(scope="module")
def second():
    return iterate_second_family(1, 3)


def test_first_family_coefficients(first):
    assert first.order == 3
    assert first.G[0] == LogLaurentPoly.constant(1)
    assert first.F[0].to_string() == F0
    assert first.G[1].to_string() == G1


def test_second_family_coefficients(second):
    assert second.f[0] == LogLaurentPoly.monomial(-2)
    assert second.g[0].to_string() == g0
    assert second.f[1].to_string() == f1


def test_wrong_family_access(first, second):
    with pytest.raises(SeriesError):
        first.f
    with pytest.raises(SeriesError):
        second.G


def test_negative_order_rejected():
    with pytest.raises(SeriesError):
        iterate_first_family(1, -1)


def test_functions_vanish_at_one(first, second):
    for k in range(4):
        assert first.F[k].constant_part() == 0
        assert second.g[k].constant_part() == 0
    for k in range(1, 4):
        assert first.G[k].constant_part() == 0
        assert second.f[k].constant_part() == 0


@pytest.mark.parametrize("family", ["first", "second"])
def test_recurrences_hold_exactly(first, second, family):
    series = first if family == "first" else second
    residuals = recurrence_residuals(series)
    assert len(residuals) == 2 * (series.order + 1)
    assert all(r.is_zero() for r in residuals)


def test_linear_in_normalization(first, second):
    assert iterate_first_family(3, 3) == first.scaled(3)
    assert iterate_second_family(Fraction(-2, 5), 3) == second.scaled(Fraction(-2, 5))
    zero = iterate_second_family(0, 2)
    assert all(p.is_zero() for p in zero.leading + zero.partner)


def test_product_density(first, second):
    xi = product_density(first, second, 3)
    assert len(xi) == 4
    assert xi[0].to_string() == xi0
    assert xi[1].to_string() == xi1
    for k, x in enumerate(xi):
        assert x.min_exponent() >= -(2 * k + 1)


def test_printed_forms_differ_by_factor(first, second):
    xi = product_density(first, second, 1)
    assert paper_factor(xi[0], 0) == Fraction(-1, 2)
    assert paper_factor(xi[1], 1) == Fraction(-1, 2)


def test_product_density_matches_pointwise_products(first, second):
    xi = product_density(first, second, 3)
    s = np.geomspace(1e-3, 0.5, 7)
    for k in range(4):
        direct = sum(second.g[i].eval(s) * first.G[k - i].eval(s) * s for i in range(k + 1))
        assert np.allclose(xi[k].eval(s), direct, rtol=1e-10, atol=1e-10)


def test_mixed_product_density(first, second):
    chi = mixed_product_density(first, second, 2)
    assert chi[0] == LogLaurentPoly.from_powers({-3: Fraction(1, 6), -1: Fraction(-1, 2), 0: Fraction(1, 3)})


def test_density_order_too_high():
    with pytest.raises(SeriesError):
        product_density(iterate_first_family(1, 1), iterate_second_family(1, 2), 2)
    with pytest.raises(SeriesError):
        product_density(iterate_second_family(1, 1), iterate_first_family(1, 1), 1)


@pytest.mark.parametrize("alpha", [ALPHA, 1e-2, 1e-3])
def test_zero_crossing_close_to_estimate(first, alpha):
    root = zero_crossing_G(first, alpha)
    assert root == pytest.approx(alpha / np.sqrt(12), rel=0.1)


def test_single_sign_change(first):
    assert sign_changes_G(first, ALPHA) == 1


def test_zero_crossing_needs_first_order():
    with pytest.raises(SeriesError):
        zero_crossing_G(iterate_first_family(1, 0), ALPHA)


@pytest.mark.parametrize("eta", [9.5e-4, 0.1, 1.0])
def test_join_at_one(first, second, eta):
    coupling = CouplingSpec.from_eta(ALPHA, eta)
    for series in (first, second):
        report = exterior_join_check(series, coupling)
        assert report.ok
        assert report.value_mismatch <= report.tolerance
        assert report.tolerance == pytest.approx(10 * ALPHA**8)


def test_sample_profiles(first, second):
    eta = 0.1
    grid = np.array([1e-3, 0.5, 1.0, 2.0])
    G, F, Ff, Gg = sample_profiles(first, ALPHA, eta, grid, partner_series=second)
    f, g = sample_profiles(second, ALPHA, eta, grid)

    assert (G.name, F.name, Ff.name, Gg.name) == ("G", "F", "Ff", "Gg")
    assert (f.name, g.name) == ("f", "g")
    assert G.at(2.0) == pytest.approx(np.exp(-eta / 4))
    assert f.at(2.0) == pytest.approx(0.25 * np.exp(-eta / 4))
    assert F.at(2.0) == 0
    assert g.at(2.0) == 0
    assert Ff.at(2.0) == 0 and Gg.at(2.0) == 0
    assert Gg.values[0] == pytest.approx(G.values[0] * g.values[0])
    assert G.meta["order"] == 3


def test_sample_profiles_rejects_bad_grid(first):
    with pytest.raises(SeriesError):
        sample_profiles(first, ALPHA, 0.1, [0.0, 1.0])
