"""Exception hierarchy shared across the toolkit.

Two broad families matter to callers: DataError for bad inputs (files,
labels, schema) and ComputationError for numerical procedures that cannot
produce a result. The CLI maps them to exit codes 2 and 3.
"""

from __future__ import annotations


class ClusterkitError(Exception):
    """Base class for every error raised by this package."""


class DataError(ClusterkitError):
    """Invalid input data, file, or configuration."""


class ComputationError(ClusterkitError):
    """A numerical procedure failed or is not applicable to the input."""


class ParseError(DataError):
    """A file could not be parsed. Carries a 1-based data row index."""

    def __init__(self, message: str, row: int | None = None, col: int | None = None):
        self.row = row
        self.col = col
        where = ""
        if row is not None:
            where = f" (row {row}" + (f", column {col})" if col is not None else ")")
        super().__init__(message + where)


class EmptyDataset(DataError):
    """Dataset has no rows or no columns."""


class ZeroVarianceColumn(DataError):
    """A column is constant, so it cannot be standardized."""

    def __init__(self, column: int):
        self.column = column
        super().__init__(f"column {column} has zero variance")


class LabelMismatch(DataError):
    """Label vector length does not match the dataset row count."""


class EmptyCluster(DataError):
    """A referenced cluster id has no members."""

    def __init__(self, cluster_id: int):
        self.cluster_id = cluster_id
        super().__init__(f"cluster {cluster_id} has no members")


class KTooLarge(DataError):
    """Requested more clusters than there are samples."""


class DegenerateDiameter(ComputationError):
    """Every cluster has zero diameter; the index denominator vanishes."""


class DegenerateGeometry(ComputationError):
    """Points are affinely degenerate (collinear/coplanar) for the operation."""


class DimensionUnsupported(ComputationError):
    """Operation only supports 2-D or 3-D point sets."""


class NonConvergence(ComputationError):
    """Iterative procedure hit its iteration cap before reaching tolerance."""

    def __init__(self, message: str, last_gap: float | None = None):
        self.last_gap = last_gap
        super().__init__(message)


class SingularShapeMatrix(ComputationError):
    """Ellipsoid shape matrix is singular; volume is undefined."""


class ClusterTooSmall(ComputationError):
    """Cluster has fewer than m + 1 points; convexity cannot be estimated."""

    def __init__(self, cluster_id: int, size: int, needed: int):
        self.cluster_id = cluster_id
        self.size = size
        self.needed = needed
        super().__init__(
            f"cluster {cluster_id} has {size} points; needs at least {needed}"
        )


class SchemaError(DataError):
    """Knowledge-base document violates the schema."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        super().__init__(f"{message}" + (f" at {location}" if location else ""))


class DuplicateName(SchemaError):
    """Two knowledge-base rows share a name."""


class UnknownDimension(DataError):
    """Filter criteria referenced a dimension that does not exist."""


class UnknownValue(DataError):
    """Filter criteria used a value outside the dimension's domain."""


class MissingComplexity(DataError):
    """Knowledge-base row lacks a complexity expression."""

    def __init__(self, algorithm: str):
        self.algorithm = algorithm
        super().__init__(f"no complexity expression recorded for {algorithm!r}")


class IncompleteAnswers(DataError):
    """Decision tree traversal is missing required answers."""

    def __init__(self, questions: list[str]):
        self.questions = list(questions)
        super().__init__("unanswered questions: " + ", ".join(self.questions))
