"""Shape diagnostics: boundary extraction, enclosing ellipsoids, convexity.

The convexity test compares two volumes per cluster: V_B, the area/volume
enclosed by an alpha-shape boundary of the points, and V_E, the volume of
the minimum-volume enclosing ellipsoid of the boundary points. A filled
convex cluster has V_B close to V_E; shapes with holes or strong concavity
(rings, crescents) leave V_B far below V_E. The cluster is called convex
when ratio = V_B / V_E >= tau.

Alpha selection: the critical alpha is the smallest circumradius threshold
whose kept simplices form one connected region containing every point. At
exactly that radius the region is riddled with holes at the sampling scale
(the threshold tracks the single sparsest gap, so typical gaps elsewhere
stay open). The working radius is therefore critical alpha times a margin
(default 2.0), which closes sampling holes while structural holes, an
order of magnitude wider, survive. Pass alpha_margin=1.0 for the strict
minimal criterion or an explicit alpha to bypass the search.

Only 2-D and 3-D point sets are supported; higher-dimensional data must be
projected first (see pca_top2).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import Delaunay, QhullError
from scipy.special import gamma

from .clusterers import KMeansConfig, kmeans
from .dataset import Dataset
from .errors import (
    ClusterTooSmall,
    ComputationError,
    DataError,
    DegenerateGeometry,
    DimensionUnsupported,
    NonConvergence,
    SingularShapeMatrix,
)

CONVEXITY_CONVENTION = "is_convex iff boundary_volume / ellipsoid_volume >= tau"


@dataclass(frozen=True, eq=False)
class BoundaryResult:
    """Alpha-shape boundary of a point set.

    indices: boundary point indices; in 2-D ordered along each closed loop
    (concatenated loop by loop), in 3-D sorted unique face vertices.
    loops: per-loop vertex index arrays (2-D only).
    faces: boundary triangles as index triples (3-D only).
    volume: enclosed area (2-D) or volume (3-D) of the kept simplices.
    alpha: the circumradius threshold that was used.
    critical_alpha: smallest covering-connected threshold (None when an
    explicit alpha bypassed the search).
    """

    indices: np.ndarray
    volume: float
    alpha: float
    loops: list[np.ndarray] = field(default_factory=list)
    faces: np.ndarray | None = None
    critical_alpha: float | None = None


@dataclass(frozen=True, eq=False)
class Ellipsoid:
    """Ellipsoid {x : (x - center)^T shape (x - center) <= 1}."""

    center: np.ndarray
    shape: np.ndarray
    iterations: int = 0
    tolerance: float = 0.0

    def contains(self, points, slack: float = 0.0) -> np.ndarray:
        """Membership test with multiplicative slack on the quadratic form."""
        diff = np.atleast_2d(points) - self.center
        quad = np.einsum("ij,jk,ik->i", diff, self.shape, diff)
        return quad <= 1.0 + slack


@dataclass(frozen=True)
class ConvexityReport:
    """Verdict of the volume-ratio convexity test."""

    ratio: float
    tau: float
    is_convex: bool
    convention: str = CONVEXITY_CONVENTION
    per_cluster: list[tuple[int, float | None]] | None = None
    warnings: list[str] = field(default_factory=list)


def _circumradii_2d(points: np.ndarray, simplices: np.ndarray) -> np.ndarray:
    a = points[simplices[:, 0]]
    b = points[simplices[:, 1]]
    c = points[simplices[:, 2]]
    ab = np.linalg.norm(b - a, axis=1)
    bc = np.linalg.norm(c - b, axis=1)
    ca = np.linalg.norm(a - c, axis=1)
    cross = (b - a)[:, 0] * (c - a)[:, 1] - (b - a)[:, 1] * (c - a)[:, 0]
    area2 = np.abs(cross)  # twice the triangle area
    with np.errstate(divide="ignore", invalid="ignore"):
        radii = ab * bc * ca / (2.0 * area2)
    radii[area2 == 0.0] = np.inf
    return radii


def _volumes_2d(points: np.ndarray, simplices: np.ndarray) -> np.ndarray:
    a = points[simplices[:, 0]]
    b = points[simplices[:, 1]]
    c = points[simplices[:, 2]]
    cross = (b - a)[:, 0] * (c - a)[:, 1] - (b - a)[:, 1] * (c - a)[:, 0]
    return np.abs(cross) / 2.0


def _circumradii_3d(points: np.ndarray, simplices: np.ndarray) -> np.ndarray:
    radii = np.empty(simplices.shape[0])
    for i, simplex in enumerate(simplices):
        verts = points[simplex]
        rows = verts[1:] - verts[0]
        rhs = 0.5 * (verts[1:] ** 2 - verts[0] ** 2).sum(axis=1)
        try:
            center = np.linalg.solve(rows, rhs)
        except np.linalg.LinAlgError:
            radii[i] = np.inf
            continue
        radii[i] = float(np.linalg.norm(center - verts[0]))
    return radii


def _volumes_3d(points: np.ndarray, simplices: np.ndarray) -> np.ndarray:
    a = points[simplices[:, 0]]
    b = points[simplices[:, 1]] - a
    c = points[simplices[:, 2]] - a
    d = points[simplices[:, 3]] - a
    det = np.einsum("ij,ij->i", b, np.cross(c, d))
    return np.abs(det) / 6.0


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def _smallest_covering_alpha(
    radii: np.ndarray, simplices: np.ndarray, neighbors: np.ndarray, n_points: int
) -> float:
    """Smallest circumradius threshold giving one connected region that
    touches every input point. Simplices are admitted in radius order; a
    union-find over facet adjacency tracks the region count."""
    order = np.argsort(radii, kind="stable")
    uf = _UnionFind(len(simplices))
    added = np.zeros(len(simplices), dtype=bool)
    seen_vertex = np.zeros(n_points, dtype=bool)
    covered = 0
    components = 0
    idx = 0
    while idx < len(order):
        threshold = radii[order[idx]]
        if not np.isfinite(threshold):
            break
        # admit the whole tier of equal radii before checking
        while idx < len(order) and radii[order[idx]] == threshold:
            simplex = order[idx]
            added[simplex] = True
            components += 1
            for vertex in simplices[simplex]:
                if not seen_vertex[vertex]:
                    seen_vertex[vertex] = True
                    covered += 1
            for other in neighbors[simplex]:
                if other >= 0 and added[other] and uf.union(simplex, other):
                    components -= 1
            idx += 1
        if covered == n_points and components == 1:
            return float(threshold)
    raise DegenerateGeometry(
        "no circumradius threshold yields one region covering all points"
    )


def boundary_points(
    points, alpha: float | None = None, alpha_margin: float = 2.0
) -> BoundaryResult:
    """Alpha-shape boundary and enclosed volume of a 2-D or 3-D point set.

    With alpha=None (default) the threshold is alpha_margin times the
    smallest value whose kept simplices form a single connected region
    containing every point (see module docstring for why the margin). An
    explicit alpha overrides the search and ignores the margin.
    """
    if alpha_margin < 1.0:
        raise DataError(f"alpha_margin must be >= 1, got {alpha_margin}")
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2:
        raise DataError("points must be a 2-D array")
    m = pts.shape[1]
    if m not in (2, 3):
        raise DimensionUnsupported(f"boundary extraction supports m in (2, 3), got {m}")
    if pts.shape[0] < m + 1:
        raise DegenerateGeometry(f"need at least {m + 1} points, got {pts.shape[0]}")
    try:
        tri = Delaunay(pts)
    except QhullError as exc:
        raise DegenerateGeometry(f"degenerate point set: {exc}") from None

    simplices = tri.simplices
    if m == 2:
        radii = _circumradii_2d(pts, simplices)
        volumes = _volumes_2d(pts, simplices)
    else:
        radii = _circumradii_3d(pts, simplices)
        volumes = _volumes_3d(pts, simplices)

    critical: float | None = None
    if alpha is None:
        critical = _smallest_covering_alpha(
            radii, simplices, tri.neighbors, pts.shape[0]
        )
        alpha = alpha_margin * critical
    elif alpha <= 0:
        raise DataError(f"alpha must be positive, got {alpha}")

    kept = radii <= alpha
    if not np.any(kept):
        raise DegenerateGeometry(f"alpha={alpha} keeps no simplices")
    volume = float(volumes[kept].sum())

    # boundary facets: facets used by exactly one kept simplex
    facet_count: dict[tuple[int, ...], int] = {}
    for simplex in simplices[kept]:
        for drop in range(m + 1):
            facet = tuple(sorted(np.delete(simplex, drop)))
            facet_count[facet] = facet_count.get(facet, 0) + 1
    boundary_facets = [facet for facet, cnt in facet_count.items() if cnt == 1]

    if m == 2:
        loops = _chain_loops(boundary_facets)
        indices = (
            np.concatenate(loops)
            if loops
            else np.array(sorted({v for f in boundary_facets for v in f}), dtype=int)
        )
        return BoundaryResult(
            indices=indices,
            volume=volume,
            alpha=float(alpha),
            loops=loops,
            critical_alpha=critical,
        )
    faces = np.array(sorted(boundary_facets), dtype=int)
    indices = np.unique(faces)
    return BoundaryResult(
        indices=indices,
        volume=volume,
        alpha=float(alpha),
        faces=faces,
        critical_alpha=critical,
    )


def _chain_loops(edges: list[tuple[int, ...]]) -> list[np.ndarray]:
    """Order boundary edges into closed loops (outer boundary plus holes)."""
    neighbors: dict[int, list[int]] = {}
    for a, b in edges:
        neighbors.setdefault(a, []).append(b)
        neighbors.setdefault(b, []).append(a)
    unused = {tuple(sorted(e)) for e in edges}
    loops = []
    while unused:
        start = min(min(e) for e in unused)
        loop = [start]
        current = start
        while True:
            step = None
            for candidate in sorted(neighbors.get(current, [])):
                key = tuple(sorted((current, candidate)))
                if key in unused:
                    step = candidate
                    unused.discard(key)
                    break
            if step is None or step == start:
                break
            loop.append(step)
            current = step
        loops.append(np.array(loop, dtype=int))
    return loops


def mvee(points, tolerance: float = 1e-4, max_iters: int = 10_000) -> Ellipsoid:
    """Minimum-volume enclosing ellipsoid via Khachiyan barycentric ascent.

    Runs the coordinate-ascent scheme with Wolfe-Atwood away steps: mass
    shifts toward the point with the largest lifted quadratic form M_j, or
    away from an over-weighted interior point when that violation is larger.
    Away steps keep the tail convergence linear; the plain ascent needs
    roughly (m + 1) / tol iterations, which would exhaust realistic budgets.
    Stops at the standard ceiling criterion max_j M_j <= (1 + tol)(m + 1),
    after which every input point satisfies the ellipsoid inequality within
    a (1 + O(tol)) factor. Raises NonConvergence past max_iters and
    DegenerateGeometry when the points do not span the space.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] == 0:
        raise DataError("points must be a non-empty 2-D array")
    n, m = pts.shape
    if n < m + 1 or np.linalg.matrix_rank(pts - pts[0]) < m:
        raise DegenerateGeometry("points do not affinely span the space")
    if tolerance <= 0:
        raise DataError("tolerance must be positive")

    lifted = np.hstack((pts, np.ones((n, 1))))  # n x (m+1)
    dim = m + 1
    u = np.full(n, 1.0 / n)
    iterations = 0
    kappa = np.inf
    for iterations in range(1, max_iters + 1):
        weighted = lifted.T @ (u[:, None] * lifted)
        try:
            inv = np.linalg.inv(weighted)
        except np.linalg.LinAlgError:
            raise DegenerateGeometry("weight matrix became singular") from None
        quad = np.einsum("ij,jk,ik->i", lifted, inv, lifted)

        biggest = int(np.argmax(quad))
        kappa = quad[biggest] / dim - 1.0
        if kappa <= tolerance:
            break

        active = u > 0
        smallest = int(np.flatnonzero(active)[np.argmin(quad[active])])
        kappa_away = 1.0 - quad[smallest] / dim
        if kappa >= kappa_away:
            target, form = biggest, quad[biggest]
        else:
            target, form = smallest, quad[smallest]
        step = (form - dim) / (dim * (form - 1.0))
        if target == smallest:
            # away step: shrink but never below zero weight
            step = max(step, -u[target] / (1.0 - u[target]))
        u *= 1.0 - step
        u[target] += step
        u = np.maximum(u, 0.0)
    else:
        raise NonConvergence(
            f"no convergence in {max_iters} iterations (gap {kappa:.3e})",
            last_gap=float(kappa),
        )

    center = pts.T @ u
    spread = pts.T @ (u[:, None] * pts) - np.outer(center, center)
    try:
        shape = np.linalg.inv(spread) / m
    except np.linalg.LinAlgError:
        raise DegenerateGeometry("spread matrix is singular") from None
    shape = (shape + shape.T) / 2.0
    return Ellipsoid(
        center=center, shape=shape, iterations=iterations, tolerance=tolerance
    )


def ellipsoid_volume(ellipsoid: Ellipsoid) -> float:
    """Lebesgue volume: unit-ball volume over sqrt(det shape)."""
    shape = ellipsoid.shape
    m = shape.shape[0]
    det = float(np.linalg.det(shape))
    if not math.isfinite(det) or det <= 0:
        raise SingularShapeMatrix(f"shape determinant {det} is not positive")
    unit_ball = math.pi ** (m / 2.0) / gamma(m / 2.0 + 1.0)
    return unit_ball / math.sqrt(det)


def estimate_convexity_cluster(
    points,
    tau: float = 0.7,
    alpha: float | None = None,
    alpha_margin: float = 2.0,
    tolerance: float = 1e-4,
) -> ConvexityReport:
    """Volume-ratio convexity verdict for one cluster of 2-D/3-D points."""
    if not 0 < tau <= 1:
        raise DataError(f"tau must be in (0, 1], got {tau}")
    boundary = boundary_points(points, alpha=alpha, alpha_margin=alpha_margin)
    pts = np.asarray(points, dtype=float)
    hull_sample = pts[np.unique(boundary.indices)]
    ellipsoid = mvee(hull_sample, tolerance=tolerance)
    volume = ellipsoid_volume(ellipsoid)
    ratio = boundary.volume / volume
    if not 0.0 < ratio <= 1.0 + 10.0 * tolerance:
        raise ComputationError(
            f"volume ratio {ratio} outside (0, 1]; geometry pipeline bug"
        )
    return ConvexityReport(ratio=float(ratio), tau=tau, is_convex=ratio >= tau)


def estimate_convexity_dataset(
    data: Dataset,
    k: int,
    tau: float = 0.7,
    seed: int = 0,
    pca2d: bool = False,
    alpha: float | None = None,
    alpha_margin: float = 2.0,
    tolerance: float = 1e-4,
) -> ConvexityReport:
    """Cluster with k-means, test each cluster, average the ratios.

    Clusters with fewer than m + 1 points are skipped and reported in the
    warnings. Data beyond 3 features is refused unless pca2d=True, which
    projects onto the top two principal components first.
    """
    if not 0 < tau <= 1:
        raise DataError(f"tau must be in (0, 1], got {tau}")
    warnings: list[str] = []
    working = data
    if data.m > 3:
        if not pca2d:
            raise DimensionUnsupported(
                f"convexity supports m <= 3; got m={data.m} (use pca2d)"
            )
        working = pca_top2(data)
        warnings.append(
            f"projected {data.m}-D data onto top-2 principal components"
        )
    part = kmeans(working, KMeansConfig(k=k, seed=seed))
    needed = working.m + 1
    per_cluster: list[tuple[int, float | None]] = []
    ratios = []
    for cluster_id in range(part.k):
        members = part.members(cluster_id)
        if members.size < needed:
            reason = ClusterTooSmall(cluster_id, int(members.size), needed)
            warnings.append(f"skipped: {reason}")
            per_cluster.append((cluster_id, None))
            continue
        report = estimate_convexity_cluster(
            working.values[members],
            tau=tau,
            alpha=alpha,
            alpha_margin=alpha_margin,
            tolerance=tolerance,
        )
        per_cluster.append((cluster_id, report.ratio))
        ratios.append(report.ratio)
    if not ratios:
        raise ComputationError("no cluster was large enough to test")
    mean_ratio = float(np.mean(ratios))
    return ConvexityReport(
        ratio=mean_ratio,
        tau=tau,
        is_convex=mean_ratio >= tau,
        per_cluster=per_cluster,
        warnings=warnings,
    )


def pca_top2(data: Dataset) -> Dataset:
    """Project onto the top two principal components (centered SVD)."""
    if data.m < 2:
        raise DataError("need at least two features to project")
    centered = data.values - data.values.mean(axis=0)
    _, _, vt = np.linalg.svd(centered, full_matrices=False)
    return Dataset(centered @ vt[:2].T)
