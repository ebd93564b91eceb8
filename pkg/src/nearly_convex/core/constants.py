"""Numerical tolerances shared by every module.

These are fixed on purpose: acceptance thresholds in the tests are expressed
against them, so they are not part of the environment-driven ``Config``.
"""

# Set-endpoint and membership comparisons.
TOL_EQ = 1e-9
# Arithmetic agreement (piece continuity, support homogeneity).
TOL_EVAL = 1e-12
# Vertex deduplication in V-polyhedra.
TOL_DEDUP = 1e-12

# Per-piece conjugate values above this are reported as +inf.
CONJUGATE_CAP = 1e15
# Doubling brackets and secant searches on unbounded sides stop here.
BRACKET_LIMIT = 1e15
# Shortest secant step tried by esub_interval.
SECANT_MIN_STEP = 1e-30

# Infimal-convolution slope searches run on [-B, B].
XI_SEARCH_BOUND = 1e9

TERNARY_MAX_ITERATIONS = 200
TERNARY_WIDTH_STOP = 1e-12
BISECTION_WIDTH_STOP = 1e-11
GOLDEN_TOL = 1e-10

# Convexity check on the base function.
CONVEXITY_TOL = 1e-9
# Window used to sample an unbounded side of a domain.
UNBOUNDED_SAMPLE_SPAN = 1e3

