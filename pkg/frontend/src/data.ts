/**
 * Loading and validation of the sweep CSV schema and the thresholds
 * sidecar. A sweep CSV is `p,p_out,delta,accept` with 12-significant-digit
 * values; comparator maps carry `nan` in the accept column.
 */

import { readFileSync } from "node:fs";
import { basename } from "node:path";
import Papa from "papaparse";

export const SWEEP_HEADER = ["p", "p_out", "delta", "accept"] as const;

export type FigureKind = "pout" | "delta" | "accept";

export const FIGURE_KINDS: readonly FigureKind[] = ["pout", "delta", "accept"];

export interface SweepRow {
  p: number;
  p_out: number;
  delta: number;
  accept: number;
}

export interface SweepTable {
  name: string;
  rows: SweepRow[];
}

/** One named curve of (p, value) points; p strictly increasing. */
export interface Series {
  name: string;
  points: Array<[number, number]>;
}

/** The named series that one figure draws. */
export interface CurveSet {
  kind: FigureKind;
  series: Series[];
}

function parseValue(token: string, where: string): number {
  if (token === "nan") return NaN;
  const value = Number(token);
  if (token.trim() === "" || Number.isNaN(value)) {
    throw new Error(`${where}: not a number: ${JSON.stringify(token)}`);
  }
  return value;
}

/** Parse one sweep CSV; rejects anything off-schema. */
export function parseSweepCsv(text: string, name: string): SweepTable {
  const parsed = Papa.parse<string[]>(text, { delimiter: ",", skipEmptyLines: true });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0]!;
    throw new Error(`${name}: malformed CSV: ${first.message}`);
  }
  const grid = parsed.data;
  if (grid.length === 0 || grid[0]!.join(",") !== SWEEP_HEADER.join(",")) {
    throw new Error(
      `${name}: expected header ${SWEEP_HEADER.join(",")}, got ${JSON.stringify(
        (grid[0] ?? []).join(","),
      )}`,
    );
  }
  const rows: SweepRow[] = [];
  for (let i = 1; i < grid.length; i++) {
    const cells = grid[i]!;
    if (cells.length !== SWEEP_HEADER.length) {
      throw new Error(`${name}: row ${i} has ${cells.length} fields, expected 4`);
    }
    const where = `${name}: row ${i}`;
    const row: SweepRow = {
      p: parseValue(cells[0]!, where),
      p_out: parseValue(cells[1]!, where),
      delta: parseValue(cells[2]!, where),
      accept: parseValue(cells[3]!, where),
    };
    if (Number.isNaN(row.p)) {
      throw new Error(`${where}: p may not be nan`);
    }
    const prev = rows[rows.length - 1];
    if (prev !== undefined && !(row.p > prev.p)) {
      throw new Error(`${name}: p must be strictly increasing (row ${i})`);
    }
    rows.push(row);
  }
  if (rows.length === 0) {
    throw new Error(`${name}: empty series (no data rows)`);
  }
  return { name, rows };
}

export function seriesName(path: string): string {
  return basename(path).replace(/\.[^.]*$/, "");
}

function columnOf(kind: FigureKind): keyof SweepRow {
  return kind === "pout" ? "p_out" : kind;
}

/**
 * Assemble the figure's curves from sweep tables. Series whose value
 * column is entirely nan are skipped (comparator maps have no acceptance
 * probability); a figure with nothing left to draw is an error.
 */
export function toCurveSet(tables: SweepTable[], kind: FigureKind): CurveSet {
  const column = columnOf(kind);
  const series: Series[] = [];
  for (const table of tables) {
    const raw = table.rows.map((row): [number, number] => [row.p, row[column]]);
    const points = raw.filter(([, value]) => !Number.isNaN(value));
    if (kind !== "accept" && points.length < raw.length) {
      throw new Error(`${table.name}: nan in the ${String(column)} column`);
    }
    if (points.length === 0) continue;
    series.push({ name: table.name, points });
  }
  if (series.length === 0) {
    throw new Error(`no series carries a ${String(column)} column to plot`);
  }
  return { kind, series };
}

export function loadCurveSet(paths: string[], kind: FigureKind): CurveSet {
  if (paths.length === 0) {
    throw new Error("no CSV files given");
  }
  const tables = paths.map((path) =>
    parseSweepCsv(readFileSync(path, "utf8"), seriesName(path)),
  );
  return toCurveSet(tables, kind);
}

/** The error-rate threshold markers (keys `p_*`) of the sidecar. */
export function loadThresholdMarkers(path: string): Array<[string, number]> {
  const payload: unknown = JSON.parse(readFileSync(path, "utf8"));
  if (payload === null || typeof payload !== "object" || Array.isArray(payload)) {
    throw new Error(`${path}: thresholds sidecar must be a JSON object`);
  }
  const markers: Array<[string, number]> = [];
  for (const [key, value] of Object.entries(payload)) {
    if (!key.startsWith("p_")) continue;
    if (typeof value !== "number" || !Number.isFinite(value)) {
      throw new Error(`${path}: ${key} is not a finite number`);
    }
    markers.push([key, value]);
  }
  markers.sort((a, b) => a[1] - b[1]);
  return markers;
}
