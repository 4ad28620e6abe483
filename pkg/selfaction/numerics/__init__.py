from .roots import (
    RootFindingError,
    BracketError,
    RootScan,
    log_prescan,
    bisect_root,
    find_roots,
    count_sign_changes,
)
from .quadrature import (
    QuadratureError,
    WeightedIntegralSpec,
    weighted_integral,
    integrate_weighted,
    term_integral,
    term_contributions,
    monomial_integral,
    exp_integral_E1,
    paper_log_approximation,
    c0_empirical,
    c0_table,
    small_eta_moments,
    e1_derivative_check,
)
from .odeint import (
    OdeIntegrationError,
    OdeSolution,
    RK4_ORDER,
    rk4,
    rk4_refined,
    richardson_ratio,
)
