"""Internal cluster-validity indices.

Five indices with a shared result convention: a score carries its value (or
None when the index is undefined, e.g. for fewer than two clusters), the
direction in which it prefers partitions, and the parameters that produced
it. Unless stated otherwise the indices consume the data as given; callers
who want standardized inputs z-score first.
"""

from __future__ import annotations

from dataclasses import dataclass, field

HIGHER_BETTER = "higher_better"
LOWER_BETTER = "lower_better"

#: preference direction per index name
DIRECTIONS = {
    "silhouette": HIGHER_BETTER,
    "dunn": HIGHER_BETTER,
    "sdbw": LOWER_BETTER,
    "cdbw": HIGHER_BETTER,
    "dbcv": HIGHER_BETTER,
}


@dataclass(frozen=True)
class IndexScore:
    """One index evaluation; value None means the index is undefined here."""

    name: str
    value: float | None
    direction: str
    params: dict = field(default_factory=dict)

    @property
    def is_defined(self) -> bool:
        return self.value is not None


from .silhouette import SilhouetteResult, silhouette  # noqa: E402
from .dunn import dunn  # noqa: E402
from .sdbw import sdbw  # noqa: E402
from .cdbw import cdbw  # noqa: E402
from .dbcv import DbcvResult, dbcv  # noqa: E402

__all__ = [
    "DIRECTIONS",
    "HIGHER_BETTER",
    "LOWER_BETTER",
    "IndexScore",
    "SilhouetteResult",
    "DbcvResult",
    "silhouette",
    "dunn",
    "sdbw",
    "cdbw",
    "dbcv",
    "compute_index",
]


def compute_index(name, data, part, dist=None, **params):
    """Uniform dispatcher: evaluate one index by name, returning IndexScore.

    Distance-based indices accept a precomputed matrix via ``dist``; the
    data-based ones ignore it.
    """
    from ..dataset import pairwise_distances

    if name not in DIRECTIONS:
        raise ValueError(f"unknown index {name!r}; known: {sorted(DIRECTIONS)}")
    if name in ("silhouette", "dunn"):
        if dist is None:
            dist = pairwise_distances(data)
        if name == "silhouette":
            result = silhouette(dist, part)
            return IndexScore(
                "silhouette", result.average, DIRECTIONS[name], {"metric": "euclidean"}
            )
        return dunn(dist, part, **params)
    if name == "sdbw":
        return sdbw(data, part)
    if name == "cdbw":
        return cdbw(data, part, **params)
    result = dbcv(data, part)
    return IndexScore("dbcv", result.total, DIRECTIONS["dbcv"], {})
