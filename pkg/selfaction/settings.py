from pathlib import Path

M_E_EV = 511000.0
"""electron rest energy in eV"""

ALPHA = 1 / 137
"""fine-structure constant used by the reproduction runs"""

C0_PAPER = -0.51
"""integration constant of the logarithmic approximation as printed"""

EULER_GAMMA = 0.57721566490153286061
"""Euler-Mascheroni constant, -EULER_GAMMA is the exact integration constant"""

NU_MASS_UPPER_LIMIT_EV = 2.2
"""experimental upper limit quoted next to the neutrino mass, annotation only"""

NU_MASS_WINDOW_EV = (1.75, 1.78)
"""window the closed-form neutrino mass falls into"""

DEFAULT_SERIES_ORDER = 3
"""truncation order K of the alpha^2 series"""

QUAD_ABS_TOL = 1e-12
"""absolute tolerance of the weighted quadrature"""

QUAD_REL_TOL = 1e-10
"""relative tolerance of the weighted quadrature"""

QUAD_TAIL = 1e-18
"""relative size of exp(-eta u) at which the u-integration is cut"""

ETA_BRACKET = (1e-6, 1e-1)
"""search interval for eta in the exact mass condition"""

EQ29_BRACKET = (1e-8, 1.0)
"""search interval for eta in the closed-form mass condition"""

PRESCAN_POINTS = 64
"""number of logarithmically spaced points scanned for sign changes"""

BISECT_RTOL = 1e-12
"""relative width at which bisection stops"""

FIGURE_GRID_POINTS = 400
"""number of s-values in the figure grids"""

FIGURE_GRID_LOG_START = 1e-4
"""smallest s of the logarithmic part of the figure grid"""

FIGURE_GRID_END = 3.0
"""largest s of the figure grid"""

PROTON_N_RANGE = (1 / 14, 1 / 7)
"""dense scan range of the proton coupling n"""

PROTON_N_POINTS = 13
"""number of points in the dense n-scan"""

PROTON_N_CANDIDATES = (1 / 7, 1 / 9, 1 / 11)
"""couplings always present in the n-scan table"""

PROTON_STEP = 0.01
"""nominal step in ln s of the proton integration"""

PROTON_RTOL = 1e-7
"""relative change under one step halving at which the proton integration is accepted"""

PROTON_MAX_HALVINGS = 6
"""step halvings tried before the proton integration is reported as not converging"""

PROTON_S_MIN = 1e-3
"""inner end of the proton integration"""

PROTON_ETA_BRACKET = (0.05, 50.0)
"""search interval for the proton damping parameter"""

CONFIG_ENV_VAR = "SELFACTION_CONFIG"
"""environment variable holding the default config file path"""

DEFAULT_OUTPUT_DIR = Path("selfaction-output")
"""directory for CSV files, golden forms and the hdf5 archive"""

ARCHIVE_BASE_NAME = "archive"
"""base name of the hdf5 run archive inside the output directory"""

GOLDEN_DIR = Path(__file__).parent / "data" / "golden"
"""golden serialized series forms shipped with the package"""
