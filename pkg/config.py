# Space-form geometry toolkit configuration

# Numeric tolerances
EPS_DOM = 1e-9        # inverse-trig clamping band
EPS_MEM = 1e-10       # surface membership / tangency
EPS_ISO = 1e-8        # pairwise distance agreement for isometry reconstruction
EPS_CONG = 1e-9       # congruence comparison on lengths and angles
EPS_DEF = 1e-9        # allowed negative isoperimetric deficit
EPS_CONV = 0.0        # convexity margin below pi
EPS_BOUNDARY = 1e-6   # distance to a feasible-range end that triggers special handling
EPS_TURN = 1e-15      # signed turn below which incident sides overlap

# Root finding (brentq rejects rtol below 4 machine epsilons)
ROOT_XTOL = 1e-15
ROOT_RTOL = 4 * 2.220446049250313e-16

# Perimeter search
TOL_STEP = 1e-12
TOL_REG = 1e-5
TOL_PERIMETER_REL = 1e-6
MAX_ITERATIONS = 100000
INITIAL_STEP = 0.05
POLISH_STEP = 1e-3         # random moves hand over to the constrained polish below this step
POLISH_ROUNDS = 3
POLISH_MAX_ITERATIONS = 500
RADIAL_PERTURBATION = 0.2   # random polygon radial jitter (20%)

# Two-sides area maximizer
GOLDEN_TOL = 1e-10
GOLDEN_DELTA = 1e-6

# Limits
N_CAP = 10**6

# Reproducibility
DEFAULT_SEED = 20240101
SEED_ENV_VAR = "SPACEFORM_SEED"
DEFAULT_SAMPLES = 1000

# Output
FLOAT_FORMAT = "%.17g"

# Logging
LOG_DIR = "logs"
REPORT_DIR = "reports"
LOG_FORMAT = "%(asctime)s UTC - %(levelname)s - %(message)s"
VERIFICATION_DATA_DIR = "data/verification"
