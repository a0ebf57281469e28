# SFP Option Pricer Configuration

# Truncation Interval
INTERVAL_L = 10.0
HESTON_INTERVAL_L = 12.0
SMOOTH_PADDING = 0.0
NON_SMOOTH_PADDING = 0.5
SHORT_MATURITY_PADDING = 0.1
SHORT_MATURITY_CUTOFF = 1e-4

# Degree Allocation
NUMERATOR_FRACTION = 0.4
MIN_PRICING_TERMS = 8
MIN_SERIES_TERMS = 4
DEFAULT_TERMS = 64
HIGH_TERMS = 256

# SFP Solver
NEAR_POLE_TOLERANCE = 1e-13
SINGULAR_OFFSET_RADIANS = 1e-12
DEGENERACY_RCOND = 1e-13

# Jump Detection
SPIKE_FACTOR = 50.0
DETECTION_TERMS = 128
MIN_DETECTION_TERMS = 16
DETECTION_GRID_POINTS = 2048
DETECTION_COEFF_CUTOFF = 1e-14
DETECTION_RCOND = 1e-14
# |phi| at the last detection harmonic, per unit of spike factor, above which the density is unresolved
DETECTION_TAIL_LEVEL = 1e-4
# spike runs closer than this many W/U cells belong to one singular point
DETECTION_MERGE_CELLS = 4

# Payoffs
MAX_POWER = 20

# Reference Methods
COS_REFERENCE_TERMS = 2 ** 14
MIN_COS_TERMS = 8

# Output Settings
CSV_FLOAT_FORMAT = "%.17g"
DENSITY_GRID_POINTS = 1024
CURVE_POINTS = 250

# Logging
LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"
LOG_LEVEL = "WARNING"

# Parameter Sets
# Each preset follows the RunConfig layout: model / contract / market / method / output.
PRESETS = {
    "bsm-para1": {
        "model": {"kind": "bsm", "sigma": 0.15},
        "contract": {"kind": "put", "K_range": [1.0, 200.0, CURVE_POINTS]},
        "market": {"S0": 100.0, "r": 0.03, "q": 0.0, "T": 1.0},
        "method": {"U": [8, 16, 32, 64], "jumps": "auto"},
        "output": {"reference": "analytic"},
    },
    "bsm-para2": {
        "model": {"kind": "bsm", "sigma": 0.25},
        "contract": {"kind": "call", "K": 120.0},
        "market": {"S0": 100.0, "r": 0.1, "q": 0.0, "T": 50.0},
        "method": {"U": [32], "jumps": "auto"},
        "output": {"reference": "analytic"},
    },
    "bsm-para3": {
        "model": {"kind": "bsm", "sigma": 0.2},
        "contract": {"kind": "call", "K": 100.0},
        "market": {"S0_range": [80.0, 120.0, CURVE_POINTS], "r": 0.06, "q": 0.0, "T": 1e-6},
        "method": {"U": [32, 64], "padding": SHORT_MATURITY_PADDING, "jumps": "auto"},
        "output": {"reference": "analytic"},
    },
    "vg-para1": {
        "model": {"kind": "vg", "sigma": 0.12, "theta": -0.14, "nu": 0.2},
        "contract": {"kind": "call", "K_range": [80.0, 120.0, CURVE_POINTS]},
        "market": {"S0": 100.0, "r": 0.1, "q": 0.0, "T": 0.1},
        "method": {"U": [32, 64, 128], "padding": NON_SMOOTH_PADDING, "jumps": "auto"},
        "output": {"reference": "sfp-high"},
    },
    "vg-para2": {
        "model": {"kind": "vg", "sigma": 0.1213, "theta": -0.1436, "nu": 0.1686},
        "contract": {"kind": "call", "K": 1.0},
        "market": {"S0_range": [0.5, 2.0, CURVE_POINTS], "r": 0.03, "q": 0.01, "T": 1.0},
        "method": {"U": [16, 32, 64], "jumps": "auto"},
        "output": {"reference": "cos"},
    },
    "cgmy-para1": {
        "model": {"kind": "cgmy", "C": 1.0, "G": 5.0, "M": 5.0, "Y": 0.5},
        "contract": {"kind": "call", "K": 100.0},
        "market": {"S0": 100.0, "r": 0.1, "q": 0.0, "T": 1.0},
        "method": {"U": [16, 32, 64], "jumps": "auto"},
        "output": {"reference": "cos"},
    },
    "heston-para1": {
        "model": {
            "kind": "heston", "y0": 0.0175, "ybar": 0.0398, "lambda": 1.5768,
            "eta": 0.5751, "rho": -0.5711,
        },
        "contract": {"kind": "call", "K": 100.0},
        "market": {"S0": 100.0, "r": 0.0, "q": 0.0, "T": 1.0},
        "method": {"U": [32, 64, 128], "L": HESTON_INTERVAL_L, "jumps": "auto"},
        "output": {"reference": "cos"},
    },
}
