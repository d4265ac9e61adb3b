// Filterable cheat-sheet table. Filtering goes through the same engine as the
// result panel (filterAlgorithms/filterIndices), so unknown cells are excluded
// from positive matches and conflicted cells match on any recorded value, with
// the engine's warnings surfaced under the table.

import type { Cell, CellValue, Criteria, KnowledgeBase, Row, Scalar } from "./types.js";
import {
  ALGORITHM_CELL_ORDER,
  ALGORITHM_DIMENSIONS,
  INDEX_CELL_ORDER,
  INDEX_DIMENSIONS,
  cellOf,
  candidates,
  filterAlgorithms,
  filterIndices,
} from "./filter.js";

export type TableKind = "algorithms" | "indices";

export interface CheatSheet {
  element: HTMLElement;
  setFilter(dimension: string, value: Scalar | null): void;
  clearFilters(): void;
  visibleNames(): string[];
  warnings(): string[];
}

const ANY = "(any)";

function formatScalar(value: CellValue): string {
  if (value === null) return "";
  if (typeof value === "boolean") return value ? "yes" : "no";
  if (Array.isArray(value)) return value.map((v) => formatScalar(v as CellValue)).join(", ");
  return String(value);
}

function renderCell(cell: Cell): HTMLTableCellElement {
  const td = document.createElement("td");
  if (cell.unknown) {
    td.className = "unknown";
    td.textContent = "unknown";
    return td;
  }
  if (cell.conflict) {
    td.className = "conflict";
    const values = candidates(cell).map(formatScalar).join(" / ");
    const text = document.createElement("span");
    text.textContent = values;
    const badge = document.createElement("span");
    badge.className = "badge";
    badge.textContent = "conflict";
    td.append(text, " ", badge);
  } else {
    td.textContent = formatScalar(cell.value);
  }
  if (cell.sources.length > 0) td.title = cell.sources.join("; ");
  return td;
}

function filterOptions(domain: readonly Scalar[]): string[] {
  return domain.map((v) => (typeof v === "boolean" ? (v ? "yes" : "no") : v));
}

function optionToScalar(domain: readonly Scalar[], option: string): Scalar {
  if (domain.includes(true as Scalar) || domain.includes(false as Scalar)) {
    return option === "yes";
  }
  return option;
}

export function createCheatSheet(kb: KnowledgeBase, kind: TableKind): CheatSheet {
  const rows: Row[] = kind === "algorithms" ? kb.algorithms : kb.indices;
  const order = kind === "algorithms" ? ALGORITHM_CELL_ORDER : INDEX_CELL_ORDER;
  const registry = kind === "algorithms" ? ALGORITHM_DIMENSIONS : INDEX_DIMENSIONS;
  const runFilter = kind === "algorithms" ? filterAlgorithms : filterIndices;

  const filters: Criteria = {};
  const selects = new Map<string, HTMLSelectElement>();

  const root = document.createElement("section");
  root.className = "cheatsheet";

  const toolbar = document.createElement("div");
  toolbar.className = "toolbar";
  const count = document.createElement("span");
  count.className = "count";
  const clearButton = document.createElement("button");
  clearButton.type = "button";
  clearButton.textContent = "Clear filters";
  toolbar.append(clearButton, count);

  const table = document.createElement("table");
  const thead = document.createElement("thead");
  const headRow = document.createElement("tr");
  const nameHead = document.createElement("th");
  nameHead.textContent = "name";
  headRow.append(nameHead);

  for (const dimension of order) {
    const th = document.createElement("th");
    const label = document.createElement("div");
    label.textContent = dimension.replace(/_/g, " ");
    th.append(label);
    const domain = registry[dimension];
    if (domain) {
      const select = document.createElement("select");
      select.dataset.dimension = dimension;
      for (const option of [ANY, ...filterOptions(domain)]) {
        const el = document.createElement("option");
        el.value = option;
        el.textContent = option;
        select.append(el);
      }
      select.addEventListener("change", () => {
        if (select.value === ANY) delete filters[dimension];
        else filters[dimension] = optionToScalar(domain, select.value);
        refresh();
      });
      selects.set(dimension, select);
      th.append(select);
    }
    headRow.append(th);
  }
  thead.append(headRow);
  table.append(thead);

  const tbody = document.createElement("tbody");
  const bodyRows = new Map<string, HTMLTableRowElement>();
  for (const row of rows) {
    const tr = document.createElement("tr");
    const nameCell = document.createElement("th");
    nameCell.scope = "row";
    nameCell.textContent = row.name;
    tr.append(nameCell);
    for (const dimension of order) tr.append(renderCell(cellOf(row, dimension)));
    bodyRows.set(row.name, tr);
    tbody.append(tr);
  }
  table.append(tbody);

  const warningBox = document.createElement("ul");
  warningBox.className = "warnings";

  root.append(toolbar, table, warningBox);

  let lastWarnings: string[] = [];

  function refresh() {
    warningBox.replaceChildren();
    if (Object.keys(filters).length === 0) {
      for (const tr of bodyRows.values()) tr.hidden = false;
      count.textContent = `${rows.length} of ${rows.length} rows`;
      lastWarnings = [];
      return;
    }
    const result = runFilter(kb, filters);
    const keep = new Set(result.candidates);
    for (const [name, tr] of bodyRows) tr.hidden = !keep.has(name);
    count.textContent = `${keep.size} of ${rows.length} rows`;
    lastWarnings = result.warnings;
    for (const warning of result.warnings) {
      const li = document.createElement("li");
      li.textContent = warning;
      warningBox.append(li);
    }
  }

  function clearFilters() {
    for (const key of Object.keys(filters)) delete filters[key];
    for (const select of selects.values()) select.value = ANY;
    refresh();
  }

  clearButton.addEventListener("click", clearFilters);
  refresh();

  return {
    element: root,
    setFilter(dimension, value) {
      const select = selects.get(dimension);
      const domain = registry[dimension];
      if (!select || !domain) throw new Error(`${dimension} is not filterable`);
      if (value === null) {
        delete filters[dimension];
        select.value = ANY;
      } else {
        filters[dimension] = value;
        select.value = typeof value === "boolean" ? (value ? "yes" : "no") : value;
      }
      refresh();
    },
    clearFilters,
    visibleNames() {
      return rows.filter((row) => !bodyRows.get(row.name)!.hidden).map((row) => row.name);
    },
    warnings() {
      return [...lastWarnings];
    },
  };
}
