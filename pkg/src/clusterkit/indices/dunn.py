"""Dunn index: worst-case separation over worst-case compactness.

value = min over cluster pairs of the single-linkage gap (smallest
cross-pair distance) divided by the largest cluster diameter (largest
within-cluster distance). Pure min/max reductions, so no summation-order
concerns. The inter/intra arguments name the linkage family so variants can
be added without changing the signature.
"""

from __future__ import annotations

import numpy as np

from ..dataset import DistanceMatrix, Partition
from ..errors import DegenerateDiameter, LabelMismatch
from . import DIRECTIONS, IndexScore

INTER_FAMILIES = ("single_linkage",)
INTRA_FAMILIES = ("diameter",)


def dunn(
    dist: DistanceMatrix,
    part: Partition,
    inter: str = "single_linkage",
    intra: str = "diameter",
) -> IndexScore:
    if inter not in INTER_FAMILIES:
        raise ValueError(f"unknown inter-cluster family {inter!r}")
    if intra not in INTRA_FAMILIES:
        raise ValueError(f"unknown intra-cluster family {intra!r}")
    if dist.n != part.n:
        raise LabelMismatch(f"{part.n} labels for a {dist.n}x{dist.n} matrix")
    params = {"inter": inter, "intra": intra}
    if part.k < 2:
        return IndexScore("dunn", None, DIRECTIONS["dunn"], params)

    entries = dist.entries
    members = [part.members(j) for j in range(part.k)]

    max_diameter = 0.0
    for idx in members:
        if idx.size > 1:
            block = entries[np.ix_(idx, idx)]
            max_diameter = max(max_diameter, float(block.max()))
    if max_diameter == 0.0:
        raise DegenerateDiameter("every cluster has zero diameter")

    min_gap = np.inf
    for a in range(part.k):
        for b in range(a + 1, part.k):
            gap = float(entries[np.ix_(members[a], members[b])].min())
            min_gap = min(min_gap, gap)

    return IndexScore("dunn", min_gap / max_diameter, DIRECTIONS["dunn"], params)
