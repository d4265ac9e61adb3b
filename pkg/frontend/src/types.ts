// Shapes of the exported knowledge-base JSON (schema_version 1).

export type Scalar = string | boolean;
export type CellValue = Scalar | string[] | Array<Scalar | string[]> | null;

export interface Cell {
  value: CellValue;
  sources: string[];
  unknown: boolean;
  conflict: boolean;
}

export interface Row {
  name: string;
  [dimension: string]: Cell | string;
}

export interface KnowledgeBase {
  schema_version: number;
  algorithms: Row[];
  indices: Row[];
}

export type Criteria = Record<string, Scalar>;

export interface FilterResult {
  candidates: string[];
  warnings: string[];
}

export interface ParityFixture {
  target: "algorithms" | "indices";
  criteria: Criteria;
  expected: string[];
}

export interface ParityFile {
  schema_version: number;
  seed: number;
  fixtures: ParityFixture[];
}

export const SCHEMA_VERSION = 1;
