/**
 * Figure assembly: turn parsed grid rows into plottable series and
 * compute the overlay statistics the figures are judged by.
 */

import { GridRow, SchemaError } from "./schema";

export interface SeriesPoint {
  x: number;
  y: number;
}

export interface Series {
  label: string;
  points: SeriesPoint[];
  dashed?: boolean;
}

export type FigureKind = "cd_vs_hennecart" | "scaled_error_curve";

export interface FigureSpec {
  figure: FigureKind;
  csvPaths: string[];
  outPath: string;
  /** overlay the 0.083/(p - rq) reference on the CD figure */
  reference?: boolean;
  /** axis labels; each figure kind provides defaults */
  xLabel?: string;
  yLabel?: string;
}

function sortedByX(points: SeriesPoint[]): SeriesPoint[] {
  return [...points].sort((a, b) => a.x - b.x);
}

function pick(rows: GridRow[], value: (row: GridRow) => number | null,
              x: (row: GridRow) => number): SeriesPoint[] {
  const points: SeriesPoint[] = [];
  for (const row of rows) {
    const y = value(row);
    if (y !== null) points.push({ x: x(row), y });
  }
  return sortedByX(points);
}

/** Relative error of the Hennecart and CD formulas against q, one p. */
export function cdVsHennecartSeries(rows: GridRow[], reference = false): Series[] {
  const p = rows[0].p;
  if (!rows.every((row) => row.p === p && row.r === rows[0].r)) {
    throw new SchemaError("cd_vs_hennecart expects a single (r, p) grid");
  }
  const series: Series[] = [
    { label: "Hennecart", points: pick(rows, (r) => r.rel_err_F, (r) => r.q) },
    { label: "CD", points: pick(rows, (r) => r.rel_err_C, (r) => r.q) },
  ];
  if (reference) {
    const points = rows
      .filter((row) => row.a >= 1)
      .map((row) => ({ x: row.q, y: 0.083 / row.a }));
    series.push({ label: "0.083/(p-rq)", points: sortedByX(points), dashed: true });
  }
  return series;
}

/** Scaled error p*(F/S - 1) against q/p, one series per input grid. */
export function scaledErrorSeries(grids: GridRow[][]): Series[] {
  return grids.map((rows) => {
    const p = rows[0].p;
    if (!rows.every((row) => row.p === p)) {
      throw new SchemaError("each scaled-error input must hold a single p");
    }
    return {
      label: `p = ${p}`,
      points: pick(rows, (r) => r.scaled_err_F, (r) => r.q / r.p),
    };
  });
}

export function interpolate(points: SeriesPoint[], x: number): number {
  if (points.length === 0) throw new SchemaError("empty series");
  if (x <= points[0].x) return points[0].y;
  const last = points[points.length - 1];
  if (x >= last.x) return last.y;
  for (let i = 1; i < points.length; i++) {
    if (x <= points[i].x) {
      const lo = points[i - 1];
      const hi = points[i];
      const t = (x - lo.x) / (hi.x - lo.x);
      return lo.y + t * (hi.y - lo.y);
    }
  }
  return last.y;
}

/**
 * Largest vertical gap between two series over their shared x range,
 * sampled at both series' own x positions.
 */
export function maxVerticalSeparation(a: Series, b: Series): number {
  const lo = Math.max(a.points[0].x, b.points[0].x);
  const hi = Math.min(a.points[a.points.length - 1].x,
                      b.points[b.points.length - 1].x);
  if (!(lo < hi)) throw new SchemaError("series share no x range");
  let worst = 0;
  for (const source of [a.points, b.points]) {
    for (const { x } of source) {
      if (x < lo || x > hi) continue;
      const gap = Math.abs(interpolate(a.points, x) - interpolate(b.points, x));
      if (gap > worst) worst = gap;
    }
  }
  return worst;
}
