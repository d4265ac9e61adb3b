"""Dataset profiling: complexity ranking, size/dimension buckets, noise check.

The noise check is a deliberately simple heuristic: standardize, append an
equally sized uniform sample over the per-feature ranges, and compare the
distance-to-mean distributions of the original and the joined set with a
two-sample KS statistic. Structured data separates sharply from its own
noise floor; data that is already noise-like does not. The thresholds are
calibrated defaults, not statistical guarantees, and every report says so.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

import numpy as np
import sympy
from scipy.stats import ks_2samp

from ._numeric import column_mean
from .dataset import Dataset, zscore
from .errors import DataError, MissingComplexity

DEFAULT_K_GRID = (2, 100, 1000)
NOISY_MAX_KS = 0.10
CLEAN_MIN_KS = 0.25
MIN_ROWS_FOR_VERDICT = 20


class SizeCategory(Enum):
    SMALL = "SMALL"
    MEDIUM = "MEDIUM"
    LARGE = "LARGE"


class DimensionCategory(Enum):
    LOW = "LOW"
    HIGH = "HIGH"


class NoiseVerdict(Enum):
    LIKELY_CLEAN = "LIKELY_CLEAN"
    LIKELY_NOISY = "LIKELY_NOISY"
    INCONCLUSIVE = "INCONCLUSIVE"


_ALLOWED_SYMBOLS = {"n", "m", "k"}


@lru_cache(maxsize=256)
def _compile_expression(text: str):
    n, m, k = sympy.symbols("n m k", positive=True)
    local = {"n": n, "m": m, "k": k, "log": sympy.log, "sqrt": sympy.sqrt}
    try:
        expr = sympy.sympify(text, locals=local)
    except (sympy.SympifyError, SyntaxError, TypeError) as exc:
        raise DataError(f"could not parse complexity expression {text!r}: {exc}")
    free = {str(s) for s in expr.free_symbols}
    if not free <= _ALLOWED_SYMBOLS:
        raise DataError(
            f"complexity expression {text!r} uses symbols outside n, m, k: "
            f"{sorted(free - _ALLOWED_SYMBOLS)}"
        )
    fn = sympy.lambdify((n, m, k), expr, modules="math")
    return fn


@dataclass(frozen=True)
class ComplexityExpr:
    """Symbolic step-count over n (rows), m (features), k (clusters).

    Expressions come from knowledge-base files, which are trusted
    configuration. Validated on construction: parses, uses only n/m/k, and
    evaluates to a finite positive number on probe inputs.
    """

    expression: str

    def __post_init__(self):
        fn = _compile_expression(self.expression)
        for probe in ((1, 1, 1), (2, 3, 4)):
            value = fn(*probe)
            if not (math.isfinite(value) and value > 0):
                raise DataError(
                    f"complexity expression {self.expression!r} is not finite "
                    f"and positive at n,m,k={probe}"
                )

    def evaluate(self, n: int, m: int, k: int) -> float:
        if min(n, m, k) < 1:
            raise DataError("n, m, k must all be >= 1")
        return float(_compile_expression(self.expression)(n, m, k))


@dataclass(frozen=True)
class VelocityRanking:
    """Algorithms ranked by estimated steps per sample at one k."""

    k: int
    ranking: list[tuple[str, float]]  # (algorithm name, steps per sample) ascending


def rank_computing_velocity(
    data: Dataset, algorithms, k_values=DEFAULT_K_GRID
) -> list[VelocityRanking]:
    """Rank algorithms by O(n, m, k) / n, ascending, for each k in the grid.

    ``algorithms`` is any iterable of objects with a ``name`` and a
    ``complexity_expressions()`` -> list[ComplexityExpr] (empty list means no
    recorded expression and raises MissingComplexity). Rows with several
    conflicting expressions are scored pessimistically (the largest value).
    """
    rows = list(algorithms)
    k_values = [int(k) for k in k_values]
    if not k_values or any(k < 1 for k in k_values):
        raise DataError("k grid must be non-empty positive integers")
    out = []
    for k in k_values:
        scored = []
        for row in rows:
            expressions = row.complexity_expressions()
            if not expressions:
                raise MissingComplexity(row.name)
            steps = max(e.evaluate(data.n, data.m, k) for e in expressions)
            scored.append((row.name, steps / data.n))
        scored.sort(key=lambda item: (item[1], item[0]))
        out.append(VelocityRanking(k=k, ranking=scored))
    return out


def size_category(data: Dataset) -> SizeCategory:
    """SMALL for n <= 50, MEDIUM for n <= 10000, LARGE above."""
    if data.n <= 50:
        return SizeCategory.SMALL
    if data.n <= 10000:
        return SizeCategory.MEDIUM
    return SizeCategory.LARGE


def dimension_category(data: Dataset) -> DimensionCategory:
    """LOW for m <= 10 features, HIGH above."""
    return DimensionCategory.LOW if data.m <= 10 else DimensionCategory.HIGH


def add_noise(data: Dataset, seed: int = 0) -> Dataset:
    """Append n uniform rows drawn per-feature from [column min, column max].

    The result has 2n rows: the originals first, then the noise block.
    """
    rng = np.random.default_rng(seed)
    lows = data.values.min(axis=0)
    highs = data.values.max(axis=0)
    noise = rng.uniform(lows, highs, size=(data.n, data.m))
    return Dataset(np.vstack((data.values, noise)))


def distance_to_mean(data: Dataset) -> np.ndarray:
    """Euclidean distances from each row to the column mean, sorted ascending."""
    center = column_mean(data.values)
    gaps = np.sqrt(((data.values - center) ** 2).sum(axis=1))
    return np.sort(gaps)


@dataclass(frozen=True, eq=False)
class NoiseReport:
    """Outcome of the noise heuristic, histograms included for inspection."""

    verdict: NoiseVerdict
    ks_statistic: float
    bin_edges: np.ndarray
    hist_original: np.ndarray
    hist_noised: np.ndarray
    n: int
    seed: int
    thresholds: dict = field(default_factory=dict)
    heuristic: bool = True


def noise_assessment(
    data: Dataset,
    seed: int = 0,
    noisy_max: float = NOISY_MAX_KS,
    clean_min: float = CLEAN_MIN_KS,
) -> NoiseReport:
    """Compare distance-to-mean spectra of the data and a noise-padded copy.

    Standardizes, appends uniform noise (2n rows), and takes the two-sample
    KS sup-distance between the sorted distance-to-mean vectors. Large
    distances between the spectra mean the data is unlike its own noise
    floor (LIKELY_CLEAN at >= clean_min); near-identical spectra mean it is
    noise-like (LIKELY_NOISY at <= noisy_max). Histograms share Sturges bins
    over the combined sample. Below 20 rows the verdict is INCONCLUSIVE no
    matter the statistic.
    """
    if not 0 <= noisy_max < clean_min:
        raise DataError("thresholds must satisfy 0 <= noisy_max < clean_min")
    standardized = zscore(data)
    noised = add_noise(standardized, seed=seed)
    original_gaps = distance_to_mean(standardized)
    noised_gaps = distance_to_mean(noised)

    combined = np.concatenate((original_gaps, noised_gaps))
    bins = math.ceil(math.log2(combined.size) + 1)  # Sturges on the pool
    edges = np.histogram_bin_edges(combined, bins=bins)
    hist_original, _ = np.histogram(original_gaps, bins=edges)
    hist_noised, _ = np.histogram(noised_gaps, bins=edges)

    ks = float(ks_2samp(original_gaps, noised_gaps).statistic)
    if data.n < MIN_ROWS_FOR_VERDICT:
        verdict = NoiseVerdict.INCONCLUSIVE
    elif ks >= clean_min:
        verdict = NoiseVerdict.LIKELY_CLEAN
    elif ks <= noisy_max:
        verdict = NoiseVerdict.LIKELY_NOISY
    else:
        verdict = NoiseVerdict.INCONCLUSIVE

    return NoiseReport(
        verdict=verdict,
        ks_statistic=ks,
        bin_edges=edges,
        hist_original=hist_original,
        hist_noised=hist_noised,
        n=data.n,
        seed=seed,
        thresholds={"noisy_max": noisy_max, "clean_min": clean_min},
    )


def dump_histograms(report: NoiseReport, path) -> None:
    """Write the two histograms as gnuplot-friendly whitespace columns."""
    lines = ["# bin_left bin_right original noised"]
    for i in range(report.hist_original.size):
        lines.append(
            f"{report.bin_edges[i]:.6g} {report.bin_edges[i + 1]:.6g} "
            f"{int(report.hist_original[i])} {int(report.hist_noised[i])}"
        )
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("\n".join(lines) + "\n")
