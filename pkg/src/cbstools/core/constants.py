"""Numerical tolerances and defaults.

Centralized so that every module (and the verification suite) agrees on
the same thresholds. All test data is O(1) scaled, so tolerances are
absolute unless noted.
"""

# Vectors with norm at or below this are treated as zero
ZERO_TOL = 1e-14

# Gram matrices: Hermitian symmetry and positive definiteness (relative)
HERMITIAN_TOL = 1e-12

# Subspaces
ORTHONORMAL_TOL = 1e-10
RANK_TOL = 1e-10
INTERSECTION_TOL = 1e-10

# Eigen and least-squares kernels
JACOBI_TOL = 1e-12
JACOBI_MAX_SWEEPS = 100
NNLS_TOL = 1e-12

# Multistart searches
DEFAULT_RESTARTS = 16
DEFAULT_MAX_ITER = 500
DEFAULT_SEARCH_TOL = 1e-10

# Seeded randomness
DEFAULT_SEED = 0xC5C5
DEFAULT_ORACLE_SAMPLES = 100_000
