"""Order-canonical float reductions.

Float addition is not associative, so a sum whose operand order follows row
order or cluster labelling would break bit-exact invariance under row
permutation and label renaming. Every such reduction goes through these
helpers: operands are sorted by value first, which fixes the summation
sequence for a given multiset of addends.
"""

from __future__ import annotations

import numpy as np


def ordered_sum(values, axis=None):
    """Sum after sorting along ``axis`` (whole array when axis is None)."""
    arr = np.asarray(values, dtype=float)
    if axis is None:
        return float(np.sort(arr, axis=None).sum())
    return np.sort(arr, axis=axis).sum(axis=axis)


def ordered_mean(values, axis=None):
    """Mean with the same canonical operand order as ordered_sum."""
    arr = np.asarray(values, dtype=float)
    count = arr.size if axis is None else arr.shape[axis]
    return ordered_sum(arr, axis=axis) / count


def column_mean(matrix) -> np.ndarray:
    """Per-column mean of a 2-D array, canonical within each column."""
    return np.atleast_1d(ordered_mean(np.asarray(matrix, dtype=float), axis=0))


def sample_variance(matrix) -> np.ndarray:
    """Per-column sample variance (n - 1 denominator), canonical order.

    A single row yields all zeros rather than a 0/0.
    """
    arr = np.asarray(matrix, dtype=float)
    rows = arr.shape[0]
    if rows < 2:
        return np.zeros(arr.shape[1])
    centered = arr - column_mean(arr)
    return np.atleast_1d(ordered_sum(centered**2, axis=0)) / (rows - 1)
