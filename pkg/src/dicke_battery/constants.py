# Numerical constants for dicke_battery
"""Constants and tolerances for dicke_battery."""

# Elliptic kernel
LANDEN_TOL = 1e-15  # descending modulus below which the Landen recursion stops
SEPARATRIX_WINDOW = 1e-12  # |k - 1| treated as the separatrix
MAX_AGM_ITERATIONS = 64

# Integrator
DEFAULT_TOL = 1e-10
MIN_TOL = 1e-13
MAX_TOL = 1e-3
DEFAULT_METHOD = "DOP853"
SUPPORTED_METHODS = ("DOP853", "RK45")
ATOL_FACTOR = 1e-3  # atol = ATOL_FACTOR * tol * max(1, |y0|)

# Analytic solution checks (relative)
OMEGA_RESIDUAL_TOL = 1e-9
NORM_RELATION_TOL = 1e-9
UNIT_NORM_TOL = 1e-9  # |s| = S check for canonical coordinates

# Scaling fits
MIN_FIT_POINTS = 5
MIN_DECADES = 1.5
R_SQUARED_THRESHOLD = 0.999
DEFAULT_N_VALUES = (100, 200, 400, 800, 1600, 3200)
DEFAULT_RATIO = 2.0

# Default CLI sampling
DEFAULT_POTENTIAL_SAMPLES = 401
DEFAULT_CURVE_SAMPLES = 401
