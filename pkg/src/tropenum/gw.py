"""Counts of rational plane curves through 3d-1 general points.

Kontsevich's recursion (from the WDVV associativity relation) determines all
N_d from N_1 = 1:

    N_d = sum over d1 + d2 = d, d1, d2 >= 1 of
          N_{d1} N_{d2} ( d1^2 d2^2 C(3d-4, 3d1-2) - d1^3 d2 C(3d-4, 3d1-1) )

These integers are the expected curve counts for the planar enumeration and
are computed here independently of any tropical machinery.
"""

from functools import lru_cache
from math import comb


@lru_cache(maxsize=None)
def kontsevich_number(d):
    """Number of rational degree-d plane curves through 3d-1 general points."""
    if d < 1:
        raise ValueError("degree must be >= 1")
    if d == 1:
        return 1
    total = 0
    for d1 in range(1, d):
        d2 = d - d1
        total += (kontsevich_number(d1) * kontsevich_number(d2)
                  * (d1 * d1 * d2 * d2 * comb(3 * d - 4, 3 * d1 - 2)
                     - d1 ** 3 * d2 * comb(3 * d - 4, 3 * d1 - 1)))
    return total
