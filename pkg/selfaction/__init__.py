"""
This is the 'selfaction' module
"""
__version__ = '0.1.0'

from .algebra import LogLaurentPoly

from .config import PhysicalConstants, RunConfig, load_config

from .physics import (
    CouplingSpec,
    iterate_first_family,
    iterate_second_family,
    product_density,
)

from .numerics import weighted_integral, exp_integral_E1

from .solve import solve_eq29, solve_exact_condition

