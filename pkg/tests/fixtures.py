"""Frozen reference grids and simplices used by several test files."""

import numpy as np

# W = (2,1,1), m = 5, seed AP(0,1); rows are j = 0..15, columns i = 0..15.
# The two leading cells of rows 0 and 1 carry labels in the source and are
# marked with '.'.
REFERENCE_GRID = """\
. . 2 3 4 0 1 2 3 4 0 1 2 3 4 0
. . 2 1 0 4 3 2 1 0 4 3 2 1 0 4
2 3 4 0 1 2 3 4 0 1 2 3 4 0 1 2
2 1 0 4 3 2 1 0 4 3 2 1 0 4 3 2
4 0 1 2 3 4 0 1 2 3 4 0 1 2 3 4
0 4 3 2 1 0 4 3 2 1 0 4 3 2 1 0
1 2 3 4 0 1 2 3 4 0 1 2 3 4 0 1
4 3 2 1 0 4 3 2 1 0 4 3 2 1 0 4
2 3 4 0 1 2 3 4 0 1 2 3 4 0 1 2
2 1 0 4 3 2 1 0 4 3 2 1 0 4 3 2
4 0 1 2 3 4 0 1 2 3 4 0 1 2 3 4
0 4 3 2 1 0 4 3 2 1 0 4 3 2 1 0
1 2 3 4 0 1 2 3 4 0 1 2 3 4 0 1
4 3 2 1 0 4 3 2 1 0 4 3 2 1 0 4
2 3 4 0 1 2 3 4 0 1 2 3 4 0 1 2
2 1 0 4 3 2 1 0 4 3 2 1 0 4 3 2
"""


def reference_grid(i_lo=2):
    """The grid restricted to columns i >= i_lo as an int array."""
    rows = [line.split()[i_lo:] for line in REFERENCE_GRID.splitlines()]
    return np.array([[int(x) for x in row] for row in rows])


# the size-5 triangle of AS(0, (1,2,3), 5) sliced along k_3 = 0..4
TETRA_SLICES = """\
0 1 2 3 4
2 3 4 0
4 0 1
1 2
3

3 4 0 1
0 1 2
2 3
4

1 2 3
3 4
0

4 0
1

2
"""

# a (1,2)-antisymmetric tetrahedron mod 7
ANTISYM_TETRA = """\
0 1 1 3 6
6 0 4 5
6 3 0
4 2
1

0 4 0 1
3 0 3
0 4
6

0 2 3
5 0
4

0 5
2

0
"""

ANTISYM_SEQUENCE = (2, 2, 1, 0, 4, 3, 3)
