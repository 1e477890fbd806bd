"""Constants used throughout the qf-verify codebase.

This module contains shared constants to avoid magic strings and numbers.
Tolerance values here are the defaults of qf_configloader.Tolerances.
"""

__version__ = "1.0.0"

# Field names
FIELD_REAL = "real"
FIELD_COMPLEX = "complex"
FIELD_QUATERNION = "quaternion"

# Lie group family names
FAMILY_SO = "SO"
FAMILY_U = "U"
FAMILY_SU = "SU"
FAMILY_SP = "Sp"

# Tolerances
TOL_PREDICATE = 1e-10          # hermitian / unitary / projector predicates
TOL_EIG_RESIDUAL = 1e-9        # M·V = V·diag(λ)
TOL_JACOBI_OFFDIAG = 1e-12     # off-diagonal mass at convergence
JACOBI_MAX_SWEEPS = 100
TOL_GRAM_RANK = 1e-8
TOL_ZERO_POSTERIOR = 1e-14
TOL_PURITY = 1e-8              # second eigenvalue of a pure state
TOL_TRACE_PRESERVING = 1e-8
TOL_CHOI_PSD = 1e-9
TOL_CHOI_DISTANCE = 1e-9
TOL_IDENTICAL_ENDPOINTS = 1e-12
TOL_TANGENT_RANK_RATIO = 1e-6
TOL_JOINT_DECIDABILITY = 1e-10

BALL_SAMPLING_CAP = 10**6
AVERAGE_ENUMERATION_LIMIT = 12   # branches are enumerated when m <= this
MAX_LIVE_QUBITS = 16
MAX_WIRES = 4
MAX_KRAUS = 4

# Report formatting
FLOAT_SIGNIFICANT_DIGITS = 17

# CLI exit codes
EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INPUT = 3

# Defaults for subcommands
DEFAULT_SCAN_DMAX = 8
DEFAULT_SCAN_NMAX = 3
DEFAULT_SEED = 42

# File Extensions
EXT_JSON = ".json"
EXT_JSONC = ".jsonc"
