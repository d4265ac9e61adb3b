"""Toolkit for choosing, running, and validating clustering algorithms.

Four pillars: internal validity indices (silhouette, Dunn, S_Dbw, CDbw,
DBCV), a data profiler (size/dimension categories, complexity ranking, noise
assessment), geometric cluster-shape estimation (alpha-shape boundaries,
minimum-volume enclosing ellipsoids, convexity verdicts), and a curated
knowledge base with filter and decision-tree recommendation engines.
"""

from .clusterers import (
    DbscanConfig,
    KMeansConfig,
    KMeansRun,
    dbscan,
    generate_two_ring_dataset,
    kmeans,
    kmeans_fit,
)
from .dataset import (
    Dataset,
    DistanceMatrix,
    Partition,
    cluster_stats,
    load_dataset,
    load_partition,
    pairwise_distances,
    save_dataset,
    zscore,
)
from .errors import ClusterkitError, ComputationError, DataError
from .geometry import (
    BoundaryResult,
    ConvexityReport,
    Ellipsoid,
    boundary_points,
    ellipsoid_volume,
    estimate_convexity_cluster,
    estimate_convexity_dataset,
    mvee,
)
from .indices import (
    DIRECTIONS,
    HIGHER_BETTER,
    LOWER_BETTER,
    IndexScore,
    cdbw,
    compute_index,
    dbcv,
    dunn,
    sdbw,
    silhouette,
)
from .knowledge import (
    AlgorithmProfile,
    Cell,
    IndexProfile,
    KnowledgeBase,
    Recommendation,
    decision_tree_algorithms,
    decision_tree_indices,
    dumps_kb,
    export_kb,
    filter_algorithms,
    filter_indices,
    load_kb,
)
from .profiler import (
    ComplexityExpr,
    DimensionCategory,
    NoiseReport,
    NoiseVerdict,
    SizeCategory,
    VelocityRanking,
    dimension_category,
    noise_assessment,
    rank_computing_velocity,
    size_category,
)

__version__ = "0.1.0"

__all__ = [
    "AlgorithmProfile",
    "BoundaryResult",
    "Cell",
    "ClusterkitError",
    "ComplexityExpr",
    "ComputationError",
    "ConvexityReport",
    "DIRECTIONS",
    "DataError",
    "Dataset",
    "DbscanConfig",
    "DimensionCategory",
    "DistanceMatrix",
    "Ellipsoid",
    "HIGHER_BETTER",
    "IndexProfile",
    "IndexScore",
    "KMeansConfig",
    "KMeansRun",
    "KnowledgeBase",
    "LOWER_BETTER",
    "NoiseReport",
    "NoiseVerdict",
    "Partition",
    "Recommendation",
    "SizeCategory",
    "VelocityRanking",
    "boundary_points",
    "cdbw",
    "cluster_stats",
    "compute_index",
    "dbcv",
    "dbscan",
    "decision_tree_algorithms",
    "decision_tree_indices",
    "dimension_category",
    "dumps_kb",
    "dunn",
    "ellipsoid_volume",
    "estimate_convexity_cluster",
    "estimate_convexity_dataset",
    "export_kb",
    "filter_algorithms",
    "filter_indices",
    "generate_two_ring_dataset",
    "kmeans",
    "kmeans_fit",
    "load_dataset",
    "load_kb",
    "load_partition",
    "mvee",
    "noise_assessment",
    "pairwise_distances",
    "rank_computing_velocity",
    "sdbw",
    "silhouette",
    "save_dataset",
    "size_category",
    "zscore",
]
