"""Dataset, partition, and distance primitives used by every other module.

A Dataset is a dense finite float matrix whose row order is significant.
A Partition labels each row with a cluster id (0..k-1) or -1 for noise.
Distances are Euclidean by default and materialized as a full symmetric
matrix; the metric argument is validated so other metrics can slot in later.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.spatial.distance import pdist, squareform

from ._numeric import column_mean, ordered_sum, sample_variance
from .errors import (
    DataError,
    EmptyCluster,
    EmptyDataset,
    LabelMismatch,
    ParseError,
    ZeroVarianceColumn,
)

SUPPORTED_METRICS = ("euclidean",)


class Dataset:
    """Immutable n x m float matrix; rows are samples, columns features."""

    def __init__(self, values):
        arr = np.array(values, dtype=float)
        if arr.ndim != 2:
            raise DataError(f"expected a 2-D matrix, got ndim={arr.ndim}")
        if arr.shape[0] == 0 or arr.shape[1] == 0:
            raise EmptyDataset(f"dataset shape {arr.shape} has no content")
        if not np.all(np.isfinite(arr)):
            bad = np.argwhere(~np.isfinite(arr))[0]
            raise DataError(f"non-finite value at row {bad[0]}, column {bad[1]}")
        arr.flags.writeable = False
        self._values = arr

    @property
    def values(self) -> np.ndarray:
        return self._values

    @property
    def n(self) -> int:
        return self._values.shape[0]

    @property
    def m(self) -> int:
        return self._values.shape[1]

    def __repr__(self) -> str:
        return f"Dataset(n={self.n}, m={self.m})"


class Partition:
    """Cluster labels over dataset rows.

    Non-noise ids must be exactly 0..k-1 with every id populated; -1 marks
    noise. Use from_labels() to normalize arbitrary integer labellings.
    """

    NOISE = -1

    def __init__(self, labels):
        arr = np.asarray(labels)
        if arr.ndim != 1 or arr.size == 0:
            raise DataError("labels must be a non-empty 1-D sequence")
        if not np.issubdtype(arr.dtype, np.integer):
            if not np.all(arr == arr.astype(int)):
                raise DataError("labels must be integers")
            arr = arr.astype(int)
        arr = arr.astype(int)
        if arr.min(initial=0) < self.NOISE:
            raise DataError(f"labels below {self.NOISE} are not allowed")
        ids = np.unique(arr[arr != self.NOISE])
        k = ids.size
        if k and not np.array_equal(ids, np.arange(k)):
            raise DataError(
                "cluster ids must be contiguous 0..k-1; use Partition.from_labels"
            )
        arr.flags.writeable = False
        self._labels = arr
        self._k = int(k)

    @classmethod
    def from_labels(cls, labels) -> "Partition":
        """Build a Partition remapping non-noise ids by first occurrence."""
        arr = np.asarray(labels)
        if arr.ndim != 1:
            raise DataError("labels must be 1-D")
        remap: dict[int, int] = {}
        out = np.empty(arr.size, dtype=int)
        for i, raw in enumerate(arr):
            value = int(raw)
            if value == cls.NOISE:
                out[i] = cls.NOISE
                continue
            if value < 0:
                raise DataError(f"label {value} at position {i} is invalid")
            if value not in remap:
                remap[value] = len(remap)
            out[i] = remap[value]
        return cls(out)

    @property
    def labels(self) -> np.ndarray:
        return self._labels

    @property
    def k(self) -> int:
        return self._k

    @property
    def n(self) -> int:
        return self._labels.size

    def members(self, cluster_id: int) -> np.ndarray:
        """Row indices belonging to the given cluster id."""
        return np.flatnonzero(self._labels == cluster_id)

    def sizes(self) -> np.ndarray:
        return np.bincount(self._labels[self._labels != self.NOISE], minlength=self._k)

    @property
    def noise_mask(self) -> np.ndarray:
        return self._labels == self.NOISE

    @property
    def noise_count(self) -> int:
        return int(self.noise_mask.sum())

    def __repr__(self) -> str:
        return f"Partition(n={self.n}, k={self.k}, noise={self.noise_count})"


@dataclass(frozen=True, eq=False)
class ClusterStats:
    """Centroid and spread summary of one cluster."""

    cluster_id: int
    centroid: np.ndarray
    variance_vector: np.ndarray
    variance_norm: float
    size: int


class DistanceMatrix:
    """Symmetric non-negative distance matrix with a zero diagonal."""

    def __init__(self, entries):
        arr = np.array(entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise DataError("distance matrix must be square")
        if not np.all(np.isfinite(arr)):
            raise DataError("distance matrix has non-finite entries")
        if np.any(arr < 0):
            raise DataError("distances must be non-negative")
        if np.any(np.diag(arr) != 0):
            raise DataError("distance matrix diagonal must be zero")
        if not np.array_equal(arr, arr.T):
            raise DataError("distance matrix must be symmetric")
        arr.flags.writeable = False
        self._entries = arr

    @property
    def entries(self) -> np.ndarray:
        return self._entries

    @property
    def n(self) -> int:
        return self._entries.shape[0]


def load_dataset(path, delimiter: str = ",", header: bool = False) -> Dataset:
    """Load a numeric CSV file.

    Cells use '.' as the decimal separator; an optional single header row is
    skipped when header=True. Raises ParseError with the 1-based data row of
    the first offending cell, EmptyDataset for contentless files, and the
    builtin FileNotFoundError for missing paths.
    """
    path = Path(path)
    rows: list[list[float]] = []
    width: int | None = None
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.reader(handle, delimiter=delimiter)
        if header:
            next(reader, None)
        data_row = 0
        for raw in reader:
            if not raw or all(cell.strip() == "" for cell in raw):
                continue  # ignore blank lines
            data_row += 1
            if width is None:
                width = len(raw)
            elif len(raw) != width:
                raise ParseError(
                    f"expected {width} columns, found {len(raw)}", row=data_row
                )
            parsed = []
            for col, cell in enumerate(raw, start=1):
                try:
                    value = float(cell)
                except ValueError:
                    raise ParseError(
                        f"could not parse {cell.strip()!r} as a number",
                        row=data_row,
                        col=col,
                    ) from None
                if not np.isfinite(value):
                    raise ParseError(
                        f"non-finite value {cell.strip()!r}", row=data_row, col=col
                    )
                parsed.append(value)
            rows.append(parsed)
    if not rows:
        raise EmptyDataset(f"{path} contains no data rows")
    return Dataset(rows)


def save_dataset(data: Dataset, path, header: list[str] | None = None) -> None:
    """Write a dataset as CSV using repr floats (round-trips exactly)."""
    path = Path(path)
    with path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        if header is not None:
            writer.writerow(header)
        for row in data.values:
            writer.writerow([repr(float(x)) for x in row])


def load_partition(path) -> Partition:
    """Load one integer label per line, normalizing ids by first occurrence."""
    path = Path(path)
    labels: list[int] = []
    with path.open(encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            text = line.strip()
            if not text:
                continue
            try:
                labels.append(int(text))
            except ValueError:
                raise ParseError(
                    f"could not parse {text!r} as an integer label", row=lineno
                ) from None
    if not labels:
        raise EmptyDataset(f"{path} contains no labels")
    return Partition.from_labels(labels)


def pairwise_distances(data: Dataset, metric: str = "euclidean") -> DistanceMatrix:
    """Full distance matrix. Symmetry is exact: the upper triangle is mirrored."""
    if metric not in SUPPORTED_METRICS:
        raise DataError(f"unsupported metric {metric!r}; supported: {SUPPORTED_METRICS}")
    condensed = pdist(data.values, metric=metric)
    return DistanceMatrix(squareform(condensed))


def zscore(data: Dataset) -> Dataset:
    """Standardize columns to zero mean and unit sample variance.

    Raises ZeroVarianceColumn naming the first constant column. Applying it
    twice is a no-op up to float round-off.
    """
    values = data.values
    means = column_mean(values)
    variances = sample_variance(values)
    for col, var in enumerate(variances):
        if var == 0.0:
            raise ZeroVarianceColumn(col)
    return Dataset((values - means) / np.sqrt(variances))


def cluster_stats(data: Dataset, part: Partition) -> list[ClusterStats]:
    """Per-cluster centroid, sample variance vector, its norm, and size.

    Noise rows contribute nothing; an all-noise partition yields [].
    """
    if part.n != data.n:
        raise LabelMismatch(f"{part.n} labels for {data.n} rows")
    stats = []
    for cluster_id in range(part.k):
        members = part.members(cluster_id)
        if members.size == 0:
            raise EmptyCluster(cluster_id)
        block = data.values[members]
        centroid = column_mean(block)
        variance = sample_variance(block)
        norm = float(np.sqrt(ordered_sum(variance**2)))
        stats.append(
            ClusterStats(
                cluster_id=cluster_id,
                centroid=centroid,
                variance_vector=variance,
                variance_norm=norm,
                size=int(members.size),
            )
        )
    return stats
