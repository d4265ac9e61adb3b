"""Clustering knowledge base: curated algorithm and index profiles plus the
filter and decision-tree engines over them.

Every assessed dimension of a profile is a Cell carrying the value, the
citation strings it is attributed to, and two flags: unknown (no attributable
value; such cells never match any filter) and conflict (sources disagree; the
cell keeps all reported values and matches if any of them matches, with a
warning). Values set editorially rather than from a cited survey carry the
source string "curated".

The decision trees are plain data: each branch contributes filter
constraints, and a leaf's candidates are exactly the result of running the
accumulated constraints through the filter engine. Branches that are not
narrated in the walkthrough literature are marked as reconstructed in the
decision path.

The knowledge base is immutable after load and safe for concurrent reads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import (
    DataError,
    DuplicateName,
    IncompleteAnswers,
    SchemaError,
    UnknownDimension,
    UnknownValue,
)
from .profiler import ComplexityExpr, NoiseVerdict, SizeCategory

SCHEMA_VERSION = 1

_BOOL = (True, False)
_LEVELS = ("low", "medium", "high")

# Filterable dimensions and their domains; None marks free text.
ALGORITHM_DIMENSIONS: dict[str, tuple | None] = {
    "taxonomy_class": ("partitioning", "hierarchical", "density", "grid", "model", "novel"),
    "inputs": None,
    "outputs": None,
    "needs_k_a_priori": _BOOL,
    "dataset_size": ("small", "large", "both"),
    "high_dimensional": _BOOL,
    "handles_noise": _BOOL,
    "data_types": ("numerical", "categorical", "mixed", "spatial", "other"),
    "cluster_shape": ("convex", "arbitrary"),
    "time_complexity": _LEVELS,
    "input_order_sensitivity": ("insensitive", "moderate", "high"),
    "scalability": _LEVELS,
    "implementation_available": _BOOL,
}

INDEX_DIMENSIONS: dict[str, tuple | None] = {
    "arbitrary_shape_capability": _LEVELS,
    "cluster_count_bias": None,
    "biased": _BOOL,
    "handles_noise_without_preprocessing": _BOOL,
    "computational_cost": _LEVELS,
}

# Auxiliary cells attached to a dimension but not filterable themselves.
_ALGORITHM_AUX = {"complexity_expr": None, "ecosystems": None}

# data_types holds a set of type tags rather than a single value
_SET_DIMENSIONS = {"data_types"}

# canonical cell order for rows (export key order)
ALGORITHM_CELL_ORDER = (
    "taxonomy_class",
    "inputs",
    "outputs",
    "needs_k_a_priori",
    "dataset_size",
    "high_dimensional",
    "handles_noise",
    "data_types",
    "cluster_shape",
    "time_complexity",
    "complexity_expr",
    "input_order_sensitivity",
    "scalability",
    "implementation_available",
    "ecosystems",
)
INDEX_CELL_ORDER = (
    "arbitrary_shape_capability",
    "cluster_count_bias",
    "biased",
    "handles_noise_without_preprocessing",
    "computational_cost",
)

# enum dimensions compared when two rows claim to be rated identically
COMPARABLE_DIMENSIONS = tuple(
    d for d in ALGORITHM_CELL_ORDER if d in ALGORITHM_DIMENSIONS and ALGORITHM_DIMENSIONS[d] is not None
)


@dataclass(frozen=True)
class Cell:
    """One assessed table cell: value(s), provenance, unknown/conflict flags."""

    value: object = None
    sources: tuple[str, ...] = ()
    unknown: bool = False
    conflict: bool = False

    def candidates(self) -> tuple:
        """All values the cell may take: empty when unknown, several when
        sources conflict."""
        if self.unknown:
            return ()
        if self.conflict:
            return tuple(self.value)
        return (self.value,)


@dataclass(frozen=True)
class AlgorithmProfile:
    name: str
    cells: dict[str, Cell]

    def cell(self, dimension: str) -> Cell:
        return self.cells[dimension]

    def complexity_expressions(self) -> list[ComplexityExpr]:
        return [ComplexityExpr(v) for v in self.cells["complexity_expr"].candidates()]


@dataclass(frozen=True)
class IndexProfile:
    name: str
    cells: dict[str, Cell]

    def cell(self, dimension: str) -> Cell:
        return self.cells[dimension]


@dataclass(frozen=True)
class KnowledgeBase:
    schema_version: int
    algorithms: tuple[AlgorithmProfile, ...]
    indices: tuple[IndexProfile, ...]

    def algorithm(self, name: str) -> AlgorithmProfile:
        for row in self.algorithms:
            if row.name == name:
                return row
        raise DataError(f"no algorithm named {name!r}")

    def index(self, name: str) -> IndexProfile:
        for row in self.indices:
            if row.name == name:
                return row
        raise DataError(f"no index named {name!r}")


@dataclass
class Recommendation:
    """Ranked candidate names plus the reasoning trail that produced them."""

    candidates: list[str]
    decision_path: list[tuple[str, str]] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)


# ---------------------------------------------------------------------------
# loading / validation


def seed_kb_path() -> Path:
    """Filesystem path of the shipped seed knowledge base."""
    return Path(str(resources.files("clusterkit").joinpath("data/seed_kb.json")))


def load_kb(path=None) -> KnowledgeBase:
    """Load and validate a KB file; defaults to the shipped seed."""
    if path is None:
        text = resources.files("clusterkit").joinpath("data/seed_kb.json").read_text("utf-8")
        where = "seed_kb.json"
    else:
        text = Path(path).read_text("utf-8")
        where = str(path)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"not valid JSON: {exc}", location=where) from None
    return _parse_document(doc)


def _parse_document(doc) -> KnowledgeBase:
    if not isinstance(doc, dict):
        raise SchemaError("top level must be an object")
    extra = set(doc) - {"schema_version", "algorithms", "indices"}
    if extra:
        raise SchemaError(f"unexpected top-level keys {sorted(extra)}")
    version = doc.get("schema_version")
    if version != SCHEMA_VERSION:
        raise SchemaError(
            f"unsupported schema_version {version!r} (expected {SCHEMA_VERSION})"
        )
    algorithms = _parse_rows(
        doc.get("algorithms"), "algorithms", ALGORITHM_CELL_ORDER,
        {**ALGORITHM_DIMENSIONS, **_ALGORITHM_AUX}, AlgorithmProfile,
    )
    indices = _parse_rows(
        doc.get("indices"), "indices", INDEX_CELL_ORDER,
        dict(INDEX_DIMENSIONS), IndexProfile,
    )
    if len(algorithms) + len(indices) == 0:
        raise SchemaError("document contains no rows")
    return KnowledgeBase(
        schema_version=version,
        algorithms=tuple(algorithms),
        indices=tuple(indices),
    )


def _parse_rows(raw, section, cell_order, registry, factory):
    if not isinstance(raw, list):
        raise SchemaError(f"{section} must be a list")
    rows = []
    seen = set()
    for i, entry in enumerate(raw):
        location = f"{section}[{i}]"
        if not isinstance(entry, dict):
            raise SchemaError("row must be an object", location=location)
        name = entry.get("name")
        if not isinstance(name, str) or not name.strip():
            raise SchemaError("row needs a non-empty name", location=location)
        location = f"{section}[{i}] ({name})"
        extra = set(entry) - {"name", *cell_order}
        if extra:
            raise SchemaError(f"unexpected fields {sorted(extra)}", location=location)
        if name.lower() in seen:
            raise DuplicateName(f"duplicate row name {name!r}", location=location)
        seen.add(name.lower())
        cells = {}
        for dim in cell_order:
            if dim not in entry:
                raise SchemaError(f"missing field {dim!r}", location=location)
            cells[dim] = _parse_cell(entry[dim], dim, registry[dim], f"{location}.{dim}")
        if "complexity_expr" in cells:
            for expr in cells["complexity_expr"].candidates():
                try:
                    ComplexityExpr(expr)
                except DataError as exc:
                    raise SchemaError(str(exc), location=f"{location}.complexity_expr") from None
        rows.append(factory(name=name, cells=cells))
    rows.sort(key=lambda r: r.name.lower())
    return rows


def _parse_cell(raw, dimension, domain, location) -> Cell:
    if not isinstance(raw, dict):
        raise SchemaError("cell must be an object", location=location)
    extra = set(raw) - {"value", "sources", "unknown", "conflict"}
    if extra:
        raise SchemaError(f"unexpected cell keys {sorted(extra)}", location=location)
    unknown = raw.get("unknown", False)
    conflict = raw.get("conflict", False)
    value = raw.get("value")
    sources = raw.get("sources", [])
    if not isinstance(unknown, bool) or not isinstance(conflict, bool):
        raise SchemaError("unknown/conflict flags must be booleans", location=location)
    if not isinstance(sources, list) or any(
        not isinstance(s, str) or not s.strip() for s in sources
    ):
        raise SchemaError("sources must be a list of citation strings", location=location)
    if unknown:
        if value is not None or conflict:
            raise SchemaError("unknown cell must have null value and no conflict", location=location)
        return Cell(value=None, sources=tuple(sources), unknown=True)
    if conflict:
        if not isinstance(value, list) or len(value) < 2:
            raise SchemaError("conflicted cell needs a list of >= 2 values", location=location)
        candidates = tuple(_parse_value(v, dimension, domain, location) for v in value)
        if len(set(candidates)) != len(candidates):
            raise SchemaError("conflicted cell repeats a value", location=location)
        return Cell(value=candidates, sources=tuple(sources), conflict=True)
    return Cell(value=_parse_value(value, dimension, domain, location), sources=tuple(sources))


def _parse_value(value, dimension, domain, location):
    if dimension in _SET_DIMENSIONS:
        if not isinstance(value, list) or not value:
            raise SchemaError(f"{dimension} takes a non-empty list", location=location)
        for v in value:
            if v not in domain:
                raise SchemaError(f"value {v!r} outside domain {domain}", location=location)
        return tuple(sorted(value))
    if domain is None:
        if not isinstance(value, str):
            raise SchemaError("free-text cell takes a string", location=location)
        return value
    if domain is _BOOL or domain == _BOOL:
        if not isinstance(value, bool):
            raise SchemaError("boolean cell takes true/false", location=location)
        return value
    if value not in domain:
        raise SchemaError(f"value {value!r} outside domain {domain}", location=location)
    return value


# ---------------------------------------------------------------------------
# canonical export


def _cell_to_json(cell: Cell) -> dict:
    value = cell.value
    if isinstance(value, tuple):
        value = [list(v) if isinstance(v, tuple) else v for v in value]
    return {
        "value": value,
        "sources": list(cell.sources),
        "unknown": cell.unknown,
        "conflict": cell.conflict,
    }


def dumps_kb(kb: KnowledgeBase) -> str:
    """Canonical JSON text: fixed key order, rows sorted by name.

    Re-exporting a loaded document is byte-identical.
    """
    doc = {
        "schema_version": kb.schema_version,
        "algorithms": [
            {"name": row.name, **{d: _cell_to_json(row.cells[d]) for d in ALGORITHM_CELL_ORDER}}
            for row in sorted(kb.algorithms, key=lambda r: r.name.lower())
        ],
        "indices": [
            {"name": row.name, **{d: _cell_to_json(row.cells[d]) for d in INDEX_CELL_ORDER}}
            for row in sorted(kb.indices, key=lambda r: r.name.lower())
        ],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def export_kb(kb: KnowledgeBase, path) -> None:
    Path(path).write_text(dumps_kb(kb), encoding="utf-8")


# ---------------------------------------------------------------------------
# filtering

_SCALABILITY_RANK = {"high": 0, "medium": 1, "low": 2}
_TIME_RANK = {"low": 0, "medium": 1, "high": 2}
_COST_RANK = _TIME_RANK


def _level_rank(cell: Cell, table: dict) -> int:
    # pessimistic: an unknown cell ranks last, a conflicted one by its worst value
    if cell.unknown:
        return len(table) + 1
    return max(table[v] for v in cell.candidates())


def _algorithm_rank_key(row: AlgorithmProfile):
    return (
        _level_rank(row.cells["scalability"], _SCALABILITY_RANK),
        _level_rank(row.cells["time_complexity"], _TIME_RANK),
        row.name.lower(),
    )


def _index_rank_key(row: IndexProfile):
    return (_level_rank(row.cells["computational_cost"], _COST_RANK), row.name.lower())


def _validate_criteria(criteria, registry, kind: str):
    for dimension, wanted in criteria.items():
        if dimension not in registry:
            raise UnknownDimension(f"{kind} have no dimension {dimension!r}")
        domain = registry[dimension]
        if domain is None:
            if not isinstance(wanted, str):
                raise UnknownValue(f"{dimension} takes a string, got {wanted!r}")
        elif domain == _BOOL:
            if not isinstance(wanted, bool):
                raise UnknownValue(f"{dimension} takes true/false, got {wanted!r}")
        elif dimension in _SET_DIMENSIONS:
            if wanted not in domain:
                raise UnknownValue(f"{wanted!r} outside domain {domain} of {dimension}")
        elif wanted not in domain:
            raise UnknownValue(f"{wanted!r} outside domain {domain} of {dimension}")


def _cell_matches(cell: Cell, dimension: str, wanted) -> bool:
    for candidate in cell.candidates():
        if dimension in _SET_DIMENSIONS:
            if wanted in candidate:
                return True
        elif dimension == "dataset_size":
            if candidate == wanted or candidate == "both":
                return True
        elif candidate == wanted:
            return True
    return False


def _filter_rows(rows, criteria, registry, order, rank_key) -> Recommendation:
    ordered_dims = [d for d in order if d in criteria]
    kept = []
    warnings = []
    for row in rows:
        ok = True
        row_notes = []
        for dimension in ordered_dims:
            wanted = criteria[dimension]
            cell = row.cells[dimension]
            if cell.unknown:
                row_notes.append(f"{row.name}: {dimension} is unknown; cannot match")
                ok = False
                continue
            if _cell_matches(cell, dimension, wanted):
                if cell.conflict:
                    values = ", ".join(str(v) for v in cell.candidates())
                    row_notes.append(
                        f"{row.name}: {dimension} has conflicting sources ({values}); matched anyway"
                    )
            else:
                ok = False
        if ok:
            kept.append(row)
            warnings.extend(row_notes)
        else:
            # surface unknown-cell exclusions; plain mismatches stay quiet
            warnings.extend(n for n in row_notes if "unknown" in n)
    kept.sort(key=rank_key)
    if not kept:
        warnings.append("no rows satisfy the stated criteria")
    return Recommendation(candidates=[row.name for row in kept], warnings=warnings)


def filter_algorithms(kb: KnowledgeBase, criteria: dict) -> Recommendation:
    """Rows matching every stated criterion, ranked by scalability (desc),
    time complexity (asc), then name."""
    _validate_criteria(criteria, ALGORITHM_DIMENSIONS, "algorithms")
    return _filter_rows(
        kb.algorithms, criteria, ALGORITHM_DIMENSIONS, ALGORITHM_CELL_ORDER, _algorithm_rank_key
    )


def filter_indices(kb: KnowledgeBase, criteria: dict) -> Recommendation:
    """Index rows matching every stated criterion, ranked by computational
    cost (asc), then name."""
    _validate_criteria(criteria, INDEX_DIMENSIONS, "indices")
    return _filter_rows(
        kb.indices, criteria, INDEX_DIMENSIONS, INDEX_CELL_ORDER, _index_rank_key
    )


# ---------------------------------------------------------------------------
# decision trees


@dataclass(frozen=True)
class Question:
    id: str
    text: str
    choices: tuple[str, ...]


ALGORITHM_QUESTIONS = (
    Question("k_known", "Is the number of clusters known a priori?", ("yes", "no")),
    Question("convex", "Are the expected clusters convex in shape?", ("yes", "no")),
    Question("size", "Is the dataset small or large?", ("small", "large")),
    Question("noise", "Does the data contain noise or outliers?", ("yes", "no")),
)

INDEX_QUESTIONS = (
    Question("arbitrary_shapes", "May clusters take arbitrary shapes?", ("yes", "no")),
    Question(
        "noise_preprocessing_ok",
        "Is a separate noise preprocessing step acceptable?",
        ("yes", "no"),
    ),
    Question(
        "compact",
        "Are clusters expected to be compact and well separated?",
        ("yes", "no"),
    ),
)

# Each branch: (constraints it adds, follow-up node or None, narrated flag).
_ALGORITHM_TREE = {
    "question": "k_known",
    "branches": {
        "yes": {
            "constraints": {"needs_k_a_priori": True},
            "narrated": True,
            "node": {
                "question": "convex",
                "branches": {
                    "yes": {
                        "constraints": {"cluster_shape": "convex", "taxonomy_class": "partitioning"},
                        "narrated": True,
                        "node": {
                            "question": "size",
                            "branches": {
                                "small": {"constraints": {"dataset_size": "small"}, "narrated": True, "node": None},
                                "large": {"constraints": {"dataset_size": "large"}, "narrated": True, "node": None},
                            },
                        },
                    },
                    "no": {
                        "constraints": {"cluster_shape": "arbitrary"},
                        "narrated": False,
                        "node": None,
                    },
                },
            },
        },
        "no": {
            "constraints": {"needs_k_a_priori": False},
            "narrated": False,
            "node": {
                "question": "convex",
                "branches": {
                    "no": {
                        "constraints": {"cluster_shape": "arbitrary"},
                        "narrated": False,
                        "node": {
                            "question": "noise",
                            "branches": {
                                "yes": {
                                    "constraints": {"handles_noise": True, "taxonomy_class": "density"},
                                    "narrated": False,
                                    "node": None,
                                },
                                "no": {
                                    "constraints": {"taxonomy_class": "grid"},
                                    "narrated": False,
                                    "node": None,
                                },
                            },
                        },
                    },
                    "yes": {
                        "constraints": {"cluster_shape": "convex"},
                        "narrated": False,
                        "node": {
                            "question": "noise",
                            "branches": {
                                "yes": {"constraints": {"handles_noise": True}, "narrated": False, "node": None},
                                "no": {"constraints": {}, "narrated": False, "node": None},
                            },
                        },
                    },
                },
            },
        },
    },
}

_INDEX_TREE = {
    "question": "arbitrary_shapes",
    "branches": {
        "yes": {
            "constraints": {"arbitrary_shape_capability": "high"},
            "narrated": True,
            "node": {
                "question": "noise_preprocessing_ok",
                "branches": {
                    "no": {
                        "constraints": {"handles_noise_without_preprocessing": True},
                        "narrated": True,
                        "node": None,
                    },
                    "yes": {"constraints": {}, "narrated": False, "node": None},
                },
            },
        },
        "no": {
            "constraints": {},
            "narrated": False,
            "node": {
                "question": "compact",
                "branches": {
                    "yes": {
                        "constraints": {"arbitrary_shape_capability": "low"},
                        "narrated": False,
                        "node": None,
                    },
                    "no": {
                        "constraints": {"arbitrary_shape_capability": "medium"},
                        "narrated": False,
                        "node": None,
                    },
                },
            },
        },
    },
}


def _normalize_answer(question_id: str, raw, questions) -> str:
    question = next(q for q in questions if q.id == question_id)
    value = raw
    if isinstance(value, bool):
        value = "yes" if value else "no"
    elif isinstance(value, SizeCategory):
        # MEDIUM rides the small branch: the tree's "large" starts where
        # sampling-based variants pay off, which matches the LARGE category
        value = "large" if value is SizeCategory.LARGE else "small"
    elif isinstance(value, str):
        value = value.strip().lower()
    if value not in question.choices:
        raise UnknownValue(
            f"question {question_id!r} takes one of {question.choices}, got {raw!r}"
        )
    return value


def _walk_tree(tree, kb, answers, auto, questions, filter_fn) -> Recommendation:
    constraints: dict = {}
    path: list[tuple[str, str]] = []
    node = tree
    while node is not None:
        qid = node["question"]
        notes = []
        raw = answers.get(qid)
        if raw is None and qid in auto:
            raw = auto[qid]
            notes.append("auto-filled from data profile")
        if raw is None:
            raise IncompleteAnswers([qid])
        answer = _normalize_answer(qid, raw, questions)
        branch = node["branches"][answer]
        if not branch["narrated"]:
            notes.append("reconstructed branch")
        label = answer if not notes else f"{answer} ({'; '.join(notes)})"
        path.append((qid, label))
        constraints.update(branch["constraints"])
        node = branch["node"]
    result = filter_fn(kb, constraints)
    return Recommendation(
        candidates=result.candidates, decision_path=path, warnings=result.warnings
    )


def decision_tree_algorithms(
    kb: KnowledgeBase,
    answers: dict,
    size: SizeCategory | str | None = None,
    noise: NoiseVerdict | bool | None = None,
    convex: bool | None = None,
) -> Recommendation:
    """Walk the algorithm-selection tree.

    answers maps question ids (k_known, convex, size, noise) to yes/no or
    small/large; booleans are accepted. The keyword arguments auto-fill
    unanswered data-derived questions from a profiler run; an explicit answer
    always wins. Raises IncompleteAnswers naming the first open question.
    """
    auto: dict = {}
    if size is not None:
        auto["size"] = size
    if noise is not None:
        if isinstance(noise, NoiseVerdict):
            if noise is not NoiseVerdict.INCONCLUSIVE:
                auto["noise"] = noise is NoiseVerdict.LIKELY_NOISY
        else:
            auto["noise"] = noise
    if convex is not None:
        auto["convex"] = convex
    return _walk_tree(
        _ALGORITHM_TREE, kb, answers, auto, ALGORITHM_QUESTIONS, filter_algorithms
    )


def decision_tree_indices(
    kb: KnowledgeBase, answers: dict, convex: bool | None = None
) -> Recommendation:
    """Walk the validation-index tree (arbitrary_shapes,
    noise_preprocessing_ok, compact). A convexity verdict can auto-fill the
    arbitrary_shapes question."""
    auto: dict = {}
    if convex is not None:
        auto["arbitrary_shapes"] = not convex
    return _walk_tree(_INDEX_TREE, kb, answers, auto, INDEX_QUESTIONS, filter_indices)
