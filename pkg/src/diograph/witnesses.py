"""Known witness sets used across the toolkit and its tests."""

# The unique Diophantine quadruple extending {1, 3, 8}.
K4_WITNESS = (1, 3, 8, 120)

# Member k = 2 of the parametrized family
# (k-1, k+1, 4k, 16k^3-4k, 256k^5+256k^4-32k^3-64k^2+k+3);
# realizes K5 minus one edge (the missing edge joins 1 and 11781).
K5_MINUS_EDGE_WITNESS = (1, 3, 8, 120, 11781)

# Realizes the complement of the 6-cycle (one of the two 3-regular
# graphs on six vertices).
C6_COMPLEMENT_WITNESS = (1, 3, 8, 10, 96, 168)

# 80-vertex witness whose graph needs five colors.  The order matters:
# it is the branch order under which the 4-coloring refutation was
# certified, starting from the quadruple 1, 3, 8, 120.  Removing any
# single vertex leaves a 4-colorable graph.
FIVE_CHROMATIC_WITNESS = (
    1, 3, 8, 120, 2, 4, 12, 20, 24, 6, 22, 92, 204, 420, 36, 78, 84, 140,
    210, 360, 364, 560, 60, 14, 40, 136, 220, 312, 33, 9, 10, 52, 56, 728,
    11, 48, 90, 168, 408, 840, 5, 7, 28, 30, 34, 35, 46, 70, 88, 132, 180,
    240, 2184, 280, 16, 21, 32, 44, 156, 816, 380, 13, 39, 72, 80, 96, 462,
    528, 1140, 2380, 23, 102, 105, 110, 152, 264, 456, 858, 2520, 1365,
)
