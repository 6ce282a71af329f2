/**
 * Grid CSV schema: the fixed column set written by `rstirling grid`.
 * Parsing is strict — a missing column or an empty file is an error
 * naming the problem, so figures are never rendered from partial data.
 */

import Papa from "papaparse";

export const GRID_COLUMNS = [
  "r", "p", "q", "a", "z0", "qz0", "log_exact",
  "rel_err_F", "rel_err_C", "rel_err_W", "scaled_err_F", "regime",
] as const;

export type GridColumn = (typeof GRID_COLUMNS)[number];

export interface GridRow {
  r: number;
  p: number;
  q: number;
  a: number;
  z0: number | null;
  qz0: number | null;
  log_exact: number | null;
  rel_err_F: number | null;
  rel_err_C: number | null;
  rel_err_W: number | null;
  scaled_err_F: number | null;
  regime: string | null;
}

const INT_COLUMNS: GridColumn[] = ["r", "p", "q", "a"];

export class SchemaError extends Error {}

export function parseGridCsv(content: string, source: string): GridRow[] {
  const parsed = Papa.parse<Record<string, string>>(content, {
    header: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0];
    throw new SchemaError(`${source}: malformed CSV (${first.message})`);
  }
  const fields = parsed.meta.fields ?? [];
  for (const column of GRID_COLUMNS) {
    if (!fields.includes(column)) {
      throw new SchemaError(`${source}: missing column "${column}"`);
    }
  }
  if (parsed.data.length === 0) {
    throw new SchemaError(`${source}: no data rows`);
  }
  return parsed.data.map((raw, index) => {
    const row: Partial<Record<GridColumn, unknown>> = {};
    for (const column of GRID_COLUMNS) {
      const cell = raw[column] ?? "";
      if (column === "regime") {
        row[column] = cell === "" ? null : cell;
      } else if (cell === "") {
        // flagged cell: exported as a gap
        row[column] = null;
      } else {
        const value = Number(cell);
        if (!Number.isFinite(value)) {
          throw new SchemaError(
            `${source}: row ${index + 1}: ${column}=${JSON.stringify(cell)} is not numeric`);
        }
        row[column] = INT_COLUMNS.includes(column) ? Math.trunc(value) : value;
      }
    }
    for (const column of INT_COLUMNS) {
      if (row[column] === null) {
        throw new SchemaError(`${source}: row ${index + 1}: ${column} is empty`);
      }
    }
    return row as unknown as GridRow;
  });
}
