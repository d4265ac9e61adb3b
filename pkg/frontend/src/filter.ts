// Client-side twin of the core engine's filtering: identical cell semantics
// (unknown never matches, conflicted cells match on any recorded value,
// dataset_size "both" covers small and large, data_types matches by
// containment) and identical ranking, so the result panel always equals what
// the CLI would print for the same criteria.

import type { Cell, CellValue, Criteria, FilterResult, KnowledgeBase, Row, Scalar } from "./types.js";

const LEVELS = ["low", "medium", "high"] as const;
const BOOL = [true, false] as const;

// filterable dimensions and their domains; null marks free text
export const ALGORITHM_DIMENSIONS: Record<string, readonly Scalar[] | null> = {
  taxonomy_class: ["partitioning", "hierarchical", "density", "grid", "model", "novel"],
  inputs: null,
  outputs: null,
  needs_k_a_priori: BOOL,
  dataset_size: ["small", "large", "both"],
  high_dimensional: BOOL,
  handles_noise: BOOL,
  data_types: ["numerical", "categorical", "mixed", "spatial", "other"],
  cluster_shape: ["convex", "arbitrary"],
  time_complexity: LEVELS,
  input_order_sensitivity: ["insensitive", "moderate", "high"],
  scalability: LEVELS,
  implementation_available: BOOL,
};

export const INDEX_DIMENSIONS: Record<string, readonly Scalar[] | null> = {
  arbitrary_shape_capability: LEVELS,
  cluster_count_bias: null,
  biased: BOOL,
  handles_noise_without_preprocessing: BOOL,
  computational_cost: LEVELS,
};

export const ALGORITHM_CELL_ORDER = [
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
] as const;

export const INDEX_CELL_ORDER = [
  "arbitrary_shape_capability",
  "cluster_count_bias",
  "biased",
  "handles_noise_without_preprocessing",
  "computational_cost",
] as const;

const SET_DIMENSIONS = new Set(["data_types"]);

export function cellOf(row: Row, dimension: string): Cell {
  const cell = row[dimension];
  if (cell === undefined || typeof cell === "string") {
    throw new Error(`row ${row.name} has no cell ${dimension}`);
  }
  return cell;
}

/** All values a cell may take: none when unknown, several when conflicted. */
export function candidates(cell: Cell): CellValue[] {
  if (cell.unknown) return [];
  if (cell.conflict) return cell.value as CellValue[];
  return [cell.value];
}

function cellMatches(cell: Cell, dimension: string, wanted: Scalar): boolean {
  for (const candidate of candidates(cell)) {
    if (SET_DIMENSIONS.has(dimension)) {
      if (Array.isArray(candidate) && (candidate as string[]).includes(wanted as string)) return true;
    } else if (dimension === "dataset_size") {
      if (candidate === wanted || candidate === "both") return true;
    } else if (candidate === wanted) {
      return true;
    }
  }
  return false;
}

const SCALABILITY_RANK: Record<string, number> = { high: 0, medium: 1, low: 2 };
const TIME_RANK: Record<string, number> = { low: 0, medium: 1, high: 2 };
const COST_RANK = TIME_RANK;

// pessimistic: unknown ranks last, a conflicted cell by its worst value
function levelRank(cell: Cell, table: Record<string, number>): number {
  if (cell.unknown) return 4;
  let worst = -1;
  for (const value of candidates(cell)) {
    const rank = table[value as string];
    if (rank !== undefined && rank > worst) worst = rank;
  }
  return worst < 0 ? 4 : worst;
}

type RankKey = (row: Row) => Array<number | string>;

const algorithmRankKey: RankKey = (row) => [
  levelRank(cellOf(row, "scalability"), SCALABILITY_RANK),
  levelRank(cellOf(row, "time_complexity"), TIME_RANK),
  row.name.toLowerCase(),
];

const indexRankKey: RankKey = (row) => [
  levelRank(cellOf(row, "computational_cost"), COST_RANK),
  row.name.toLowerCase(),
];

function compareKeys(a: Array<number | string>, b: Array<number | string>): number {
  for (let i = 0; i < a.length; i++) {
    const x = a[i]!;
    const y = b[i]!;
    if (typeof x === "number" && typeof y === "number") {
      if (x !== y) return x - y;
    } else {
      const xs = String(x);
      const ys = String(y);
      if (xs !== ys) return xs < ys ? -1 : 1;
    }
  }
  return 0;
}

function filterRows(
  rows: Row[],
  criteria: Criteria,
  order: readonly string[],
  rankKey: RankKey,
): FilterResult {
  const orderedDims = order.filter((d) => d in criteria);
  const kept: Row[] = [];
  const warnings: string[] = [];
  for (const row of rows) {
    let ok = true;
    const notes: string[] = [];
    for (const dimension of orderedDims) {
      const wanted = criteria[dimension]!;
      const cell = cellOf(row, dimension);
      if (cell.unknown) {
        notes.push(`${row.name}: ${dimension} is unknown; cannot match`);
        ok = false;
        continue;
      }
      if (cellMatches(cell, dimension, wanted)) {
        if (cell.conflict) {
          const values = candidates(cell).map(String).join(", ");
          notes.push(`${row.name}: ${dimension} has conflicting sources (${values}); matched anyway`);
        }
      } else {
        ok = false;
      }
    }
    if (ok) {
      kept.push(row);
      warnings.push(...notes);
    } else {
      // surface unknown-cell exclusions; plain mismatches stay quiet
      warnings.push(...notes.filter((n) => n.includes("unknown")));
    }
  }
  kept.sort((a, b) => compareKeys(rankKey(a), rankKey(b)));
  if (kept.length === 0) warnings.push("no rows satisfy the stated criteria");
  return { candidates: kept.map((row) => row.name), warnings };
}

export function filterAlgorithms(kb: KnowledgeBase, criteria: Criteria): FilterResult {
  return filterRows(kb.algorithms, criteria, ALGORITHM_CELL_ORDER, algorithmRankKey);
}

export function filterIndices(kb: KnowledgeBase, criteria: Criteria): FilterResult {
  return filterRows(kb.indices, criteria, INDEX_CELL_ORDER, indexRankKey);
}
