"""
Limits, exit codes and reference data for SkewBetti.

Every enumeration in the package is exponential in its input; the limits
below are the documented desk-scale ceilings. Operations raise
SizeLimitError instead of silently truncating.
"""

# =============================================================================
# Desk-scale limits
# =============================================================================

MAX_HOCHSTER_VERTICES = 16      # sum over all 2^n vertex subsets
MAX_HOMOLOGY_VERTICES = 20      # single reduced-homology computation
MAX_NAGEL_REINER_LABELS = 22    # rows + columns, 2^(rows+cols) restrictions
MAX_MATCHING_EDGES = 48         # clique search on the edge compatibility graph
MAX_CLOSED_LABELING_VERTICES = 9  # permutation search for a closed labeling

DEFAULT_MAX_VERTICES = 14       # command-line ceiling (--max-vertices)
FUZZ_MAX_SIDE = 8               # --max-rows / --max-cols ceiling for the fuzzer

# =============================================================================
# Exit codes
# =============================================================================

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_CHECK_FAILED = 3
EXIT_STRUCTURAL = 4

# =============================================================================
# Reference staircase diagram
# =============================================================================

# 7x7 skew Ferrers diagram: rect 3, empty rectangles {x2} then {y7}.
STAIRCASE_LAMBDA = (7, 6, 6, 5, 4, 3, 2)
STAIRCASE_MU = (4, 4, 2, 2, 2, 1, 0)

# Same (mu) with the shape drawn in the worked table (x3 = {3,4,5}).
STAIRCASE_TABLE_LAMBDA = (7, 6, 5, 4, 4, 3, 2)

# Closed graph on 4 vertices with mu = (1,0,0,0), s = 1; in(J_G) is a 6-path.
DIAMOND_CHAIN_EDGES = ((1, 2), (1, 3), (2, 3), (2, 4), (3, 4))
