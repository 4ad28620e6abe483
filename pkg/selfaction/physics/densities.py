"""
Bispinors of the two independent j = 1/2, m = 1/2 solutions, the diagonal gamma matrices and the
symmetrized bilinear densities built from them.

A bispinor component is a sum of radial functions times spherical harmonics. Components are kept
as ``{harmonic: sympy expression}`` maps with the radial functions as real sympy symbols, so the
surd coefficients stay exact. A density is a map ``{(h1, h2): coefficient}`` standing for
``coefficient * Y_h1 * conj(Y_h2)``.
"""
import logging
from dataclasses import dataclass
from math import pi
from typing import Dict, List, Optional, Tuple

import numpy as np
import sympy as sp

from ..numerics.quadrature import integrate_weighted
from .electron import SeriesSolution, product_density, mixed_product_density

logger = logging.getLogger(__name__)

Harmonic = Tuple[int, int]
Density = Dict[Tuple[Harmonic, Harmonic], sp.Expr]

Y00 = (0, 0)
Y10 = (1, 0)
Y11 = (1, 1)

F, G, f, g = sp.symbols("F G f g", real=True)
"""radial functions of the first (F, G) and second (f, g) solutions"""


class DensityError(Exception):
    """Exception related to bispinors and their densities"""


# gamma matrices

@dataclass(frozen=True)
class GammaSet:
    """The diagonal gamma matrices, stored by their diagonals."""
    gamma_t: tuple = (1, 1, 1, 1)
    gamma_5: tuple = (1, 1, -1, -1)
    gamma_xy: tuple = (sp.I, -sp.I, sp.I, -sp.I)
    gamma_xy5: tuple = (sp.I, -sp.I, -sp.I, sp.I)

    def names(self) -> List[str]:
        return ["gamma_t", "gamma_5", "gamma_xy", "gamma_xy5"]

    def diagonal(self, name: str) -> tuple:
        if name not in self.names():
            raise DensityError(f'unknown gamma element "{name}"')
        return getattr(self, name)

    def matrix(self, name: str) -> np.ndarray:
        """Numeric 4x4 complex matrix."""
        return np.diag([complex(x) for x in self.diagonal(name)])


GAMMA = GammaSet()


def covariant_table() -> List[dict]:
    """Diagonal densities by covariance class, with their component count."""
    return [
        {"kind": "pseudo invariant", "gamma": None, "components": 1},
        {"kind": "invariant", "gamma": "gamma_5", "components": 1},
        {"kind": "4-vector", "gamma": "gamma_t", "components": 4},
        {"kind": "pseudo 4-vector", "gamma": "gamma_xy", "components": 4},
        {"kind": "tensor", "gamma": "gamma_xy5", "components": 6},
    ]


# bispinors

@dataclass(frozen=True)
class Bispinor:
    """Four components, each ``{harmonic: expression}``."""
    components: Tuple[Dict[Harmonic, sp.Expr], ...]
    family: str = ""

    def __post_init__(self):
        if len(self.components) != 4:
            raise DensityError(f'a bispinor has 4 components, got {len(self.components)}')

    def __add__(self, other: "Bispinor") -> "Bispinor":
        comps = []
        for a, b in zip(self.components, other.components):
            c = dict(a)
            for h, expr in b.items():
                c[h] = sp.expand(c.get(h, 0) + expr)
            comps.append(c)
        return Bispinor(tuple(comps), family="sum")


def first_form(radial_F=F, radial_G=G) -> Bispinor:
    """``(F Y10/sqrt3, sqrt(2/3) F Y11, i G Y00, 0)``"""
    return Bispinor((
        {Y10: radial_F / sp.sqrt(3)},
        {Y11: sp.sqrt(sp.Rational(2, 3)) * radial_F},
        {Y00: sp.I * radial_G},
        {},
    ), family="first")


def second_form(radial_K=F, radial_L=G) -> Bispinor:
    """``(i L Y00, 0, K Y10/sqrt3, sqrt(2/3) K Y11)``"""
    return Bispinor((
        {Y00: sp.I * radial_L},
        {},
        {Y10: radial_K / sp.sqrt(3)},
        {Y11: sp.sqrt(sp.Rational(2, 3)) * radial_K},
    ), family="second")


def zero_bispinor() -> Bispinor:
    return Bispinor(({}, {}, {}, {}), family="zero")


def spinor_coefficients(j, m, family: str = "first") -> List[Tuple[sp.Expr, Harmonic]]:
    """Bracket coefficients and harmonics ``(l, m_l)`` of the four components for general
    ``j, m`` (half-integers, given as Fractions, strings or sympy Rationals).

    The first family carries F in components 1, 2 and G in 3, 4; the second family has the
    pairs swapped. A component whose ``|m_l| > l`` has coefficient zero.
    """
    if family not in ("first", "second"):
        raise DensityError(f'unknown family "{family}"')
    j = sp.Rational(str(j))
    m = sp.Rational(str(m))
    if j <= 0 or (2 * j) % 2 != 1 or abs(m) > j or (j - m) % 1 != 0:
        raise DensityError(f'invalid angular momentum j={j}, m={m}')

    lo, hi = j - sp.Rational(1, 2), j + sp.Rational(1, 2)
    large = [
        (sp.sqrt((j + 1 - m) / (2 * (j + 1))), (int(hi), int(m - sp.Rational(1, 2)))),
        (-sp.sqrt((j + 1 + m) / (2 * (j + 1))), (int(hi), int(m + sp.Rational(1, 2)))),
    ]
    small = [
        (sp.I * sp.sqrt((j + m) / (2 * j)), (int(lo), int(m - sp.Rational(1, 2)))),
        (sp.I * sp.sqrt((j - m) / (2 * j)), (int(lo), int(m + sp.Rational(1, 2)))),
    ]
    out = large + small if family == "first" else small + large
    return [(c if abs(h[1]) <= h[0] else sp.Integer(0), h) for c, h in out]


# spherical harmonics

def spherical_harmonic(l: int, m: int, theta, phi):
    """Normalized ``Y_lm`` with the Condon-Shortley phase, for ``(0,0), (1,0), (1,1)``."""
    theta = np.asarray(theta, dtype=float)
    phi = np.asarray(phi, dtype=float)
    if (l, m) == Y00:
        return np.full(np.broadcast(theta, phi).shape, 0.5 / np.sqrt(pi), dtype=complex)
    if (l, m) == Y10:
        return (np.sqrt(3 / (4 * pi)) * np.cos(theta) + 0j * phi)
    if (l, m) == Y11:
        return -np.sqrt(3 / (8 * pi)) * np.sin(theta) * np.exp(1j * phi)
    raise DensityError(f'no spherical harmonic for l={l}, m={m}')


def sphere_overlap(h1: Harmonic, h2: Harmonic, points: int = 32) -> complex:
    """``int Y_h1 conj(Y_h2) dOmega`` with Gauss-Legendre nodes in ``cos(theta)`` and a uniform
    ``phi`` grid."""
    x, w = np.polynomial.legendre.leggauss(points)
    theta = np.arccos(x)
    phi = np.linspace(0, 2 * pi, 2 * points, endpoint=False)
    T, P = np.meshgrid(theta, phi, indexing="ij")
    values = spherical_harmonic(*h1, T, P) * np.conj(spherical_harmonic(*h2, T, P))
    return complex(np.sum(w[:, None] * values) * 2 * pi / phi.size)


# bilinears

def hermitian_form(a: Bispinor, b: Bispinor, gamma: str) -> Density:
    """``sum_i Gamma_ii a_i conj(b_i)`` as a density."""
    diag = GAMMA.diagonal(gamma)
    out: Density = {}
    for d, ca, cb in zip(diag, a.components, b.components):
        for ha, ea in ca.items():
            for hb, eb in cb.items():
                key = (ha, hb)
                out[key] = sp.expand(out.get(key, 0) + d * ea * sp.conjugate(eb))
    return {k: v for k, v in out.items() if v != 0}


def bilinear(a: Bispinor, b: Bispinor, gamma: str) -> Density:
    """Symmetrized bilinear ``<psi_a Gamma psi_b>``.

    Equal to half of ``(a+b) Gamma (a+b)* - a Gamma a* - b Gamma b*``.
    """
    ab = hermitian_form(a, b, gamma)
    ba = hermitian_form(b, a, gamma)
    out: Density = {}
    for key in set(ab) | set(ba):
        value = sp.expand((ab.get(key, 0) + ba.get(key, 0)) / 2)
        if value != 0:
            out[key] = value
    return out


def polarization_density(a: Bispinor, b: Bispinor, gamma: str) -> Density:
    """``((a+b) Gamma (a+b)* - a Gamma a* - b Gamma b*) / 2`` computed literally."""
    total = hermitian_form(a + b, a + b, gamma)
    for part in (hermitian_form(a, a, gamma), hermitian_form(b, b, gamma)):
        for key, value in part.items():
            total[key] = total.get(key, 0) - value
    return {k: sp.expand(v / 2) for k, v in total.items() if sp.expand(v) != 0}


def volume_reduce(density: Density) -> sp.Expr:
    """Angular integral over the sphere: ``|Y|**2`` gives one, mixed products vanish."""
    return sp.expand(sum((v for (h1, h2), v in density.items() if h1 == h2), sp.Integer(0)))


def evaluate_density(density: Density, theta, phi, radial: Dict[sp.Symbol, float]) -> complex:
    """Value of a density at one direction for given radial values."""
    total = 0j
    for (h1, h2), expr in density.items():
        coeff = complex(expr.subs(radial))
        total += coeff * spherical_harmonic(*h1, theta, phi) * np.conj(spherical_harmonic(*h2, theta, phi))
    return total


def _strip_i(value: sp.Expr) -> sp.Expr:
    """Real coefficient of an imaginary density."""
    real = sp.simplify(value / sp.I)
    if sp.im(real) != 0:
        raise DensityError(f'expected a purely imaginary density, got {value}')
    return real


def spin_magnetization(a: Bispinor, b: Bispinor) -> Tuple[sp.Expr, sp.Expr]:
    """Volume-reduced ``(Sz, Mz)`` from the ``gamma_x gamma_y`` and ``gamma_x gamma_y gamma_5``
    bilinears.

    Both bilinears are imaginary; the real coefficient of ``i`` is returned.
    """
    sz = _strip_i(volume_reduce(bilinear(a, b, "gamma_xy")))
    mz = _strip_i(volume_reduce(bilinear(a, b, "gamma_xy5")))
    return sz, mz


def time_component(a: Bispinor, b: Bispinor) -> sp.Expr:
    """Volume-reduced ``gamma_t`` bilinear; for a source at rest this is also ``I1``."""
    return volume_reduce(bilinear(a, b, "gamma_t"))


def invariants_I1_I2(a: Bispinor, b: Bispinor) -> Tuple[sp.Expr, sp.Expr]:
    """Volume-reduced invariants ``I1 = u_mu <a gamma_mu b>`` (at rest) and
    ``I2 = <a gamma_5 b>``."""
    return time_component(a, b), volume_reduce(bilinear(a, b, "gamma_5"))


def condition_density(a: Bispinor, b: Bispinor, s=sp.Symbol("s", positive=True)) -> sp.Expr:
    """``I0 (I1 - I2)`` with ``I0 = 1/s``."""
    I1, I2 = invariants_I1_I2(a, b)
    return sp.expand((I1 - I2) / s)


# inertia

@dataclass
class InertiaReport:
    """Electromagnetic inertia in units of ``m_e c**2`` per unit ``a0 b0``."""
    eta: float
    alpha: float
    ff_part: float
    gg_part: float

    @property
    def total(self) -> float:
        return self.ff_part + self.gg_part


def electromagnetic_inertia(
    first: SeriesSolution,
    second: SeriesSolution,
    alpha: float,
    eta: float,
    K: Optional[int] = None,
) -> InertiaReport:
    """``4 pi int_0^1 s**-1 (Ff + Gg) s**2 ds`` with the physical functions of both series.

    The damping factors of both solutions combine into ``exp(-eta/s)``.
    """
    K = min(first.order, second.order) if K is None else K
    norm = first.normalization * second.normalization
    if norm == 0:
        return InertiaReport(eta, alpha, 0.0, 0.0)

    xi = product_density(first, second, K)
    chi = mixed_product_density(first, second, K)
    scale = 4 * pi * alpha / float(norm)
    gg = scale * sum(alpha**(2 * k) * integrate_weighted(eta, p) for k, p in enumerate(xi))
    ff = scale * sum(alpha**(2 * k) * integrate_weighted(eta, p) for k, p in enumerate(chi))
    logger.info('inertia at eta=%.6g: Ff %.6g, Gg %.6g', eta, ff, gg)
    return InertiaReport(eta, alpha, ff, gg)
