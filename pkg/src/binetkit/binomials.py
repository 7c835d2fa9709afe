"""Exact binomial coefficients.

C(i, j) follows the convention that the value is 0 whenever i < j; both
arguments must be non-negative.  Reciprocals are formed at use sites, so
this module is the single source of truth for the zero convention.
"""

from __future__ import annotations

import math

__all__ = ["binomial", "central_binomial"]


def binomial(i: int, j: int) -> int:
    """C(i, j) = i! / (j! (i-j)!) for i >= j >= 0, and 0 for 0 <= i < j."""
    if i < 0 or j < 0:
        raise ValueError(f"binomial arguments must be non-negative, got ({i}, {j})")
    if i < j:
        return 0
    return math.comb(i, j)


def central_binomial(j: int) -> int:
    """C(2j, j), the central binomial coefficient."""
    if j < 0:
        raise ValueError(f"central_binomial argument must be non-negative, got {j}")
    return math.comb(2 * j, j)
