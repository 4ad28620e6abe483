from .profiles import RadialProfile, figure_grid
from .potentials import (
    PotentialsError,
    CouplingSpec,
    AtRestPotentials,
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
from .electron import (
    SeriesError,
    SeriesSolution,
    JoinReport,
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
from .neutrino import (
    NeutrinoError,
    NeutrinoSolution,
    neutrino_profile,
    escape_probability,
    escape_probability_numeric,
    first_order_bound,
)
from .densities import (
    DensityError,
    GammaSet,
    Bispinor,
    InertiaReport,
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
)
from .proton import (
    ProtonError,
    ProtonSpec,
    ProtonSolution,
    ProtonSolveReport,
    effective_source,
    bracket_roots,
    integrate_proton_system,
    proton_condition,
    proton_self_energy,
    solve_eta,
    calibrate_n,
    convergence_ratio,
)
