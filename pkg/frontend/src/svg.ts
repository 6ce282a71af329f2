/**
 * Minimal static SVG line charts.  No DOM, no canvas: the output is a
 * deterministic string, which keeps rendering reproducible and testable
 * in a headless environment.
 */

import { Series } from "./figures";

export interface ChartOptions {
  title: string;
  xLabel: string;
  yLabel: string;
  width?: number;
  height?: number;
}

const COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];
const MARGIN = { top: 42, right: 24, bottom: 46, left: 72 };

function niceTicks(lo: number, hi: number, count = 6): number[] {
  const span = hi - lo;
  if (span <= 0) return [lo];
  const step = Math.pow(10, Math.floor(Math.log10(span / count)));
  const candidates = [step, 2 * step, 5 * step, 10 * step];
  const chosen = candidates.find((s) => span / s <= count) ?? 10 * step;
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / chosen) * chosen; v <= hi + 1e-12 * span; v += chosen) {
    ticks.push(Math.abs(v) < 1e-12 * span ? 0 : v);
  }
  return ticks;
}

function formatTick(value: number): string {
  if (value === 0) return "0";
  const magnitude = Math.abs(value);
  if (magnitude >= 1e4 || magnitude < 1e-3) return value.toExponential(1);
  return String(Number(value.toPrecision(6)));
}

function escapeXml(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

export function renderLineChart(series: Series[], options: ChartOptions): string {
  const width = options.width ?? 760;
  const height = options.height ?? 480;
  const plotW = width - MARGIN.left - MARGIN.right;
  const plotH = height - MARGIN.top - MARGIN.bottom;

  const xs = series.flatMap((s) => s.points.map((pt) => pt.x));
  const ys = series.flatMap((s) => s.points.map((pt) => pt.y));
  let [xLo, xHi] = [Math.min(...xs), Math.max(...xs)];
  let [yLo, yHi] = [Math.min(...ys), Math.max(...ys)];
  if (xLo === xHi) [xLo, xHi] = [xLo - 1, xHi + 1];
  if (yLo === yHi) [yLo, yHi] = [yLo - 1, yHi + 1];
  const yPad = 0.06 * (yHi - yLo);
  yLo -= yPad;
  yHi += yPad;

  const sx = (x: number) => MARGIN.left + ((x - xLo) / (xHi - xLo)) * plotW;
  const sy = (y: number) => MARGIN.top + plotH - ((y - yLo) / (yHi - yLo)) * plotH;

  const parts: string[] = [];
  parts.push(`<svg xmlns="http://www.w3.org/2000/svg" width="${width}" height="${height}" viewBox="0 0 ${width} ${height}" font-family="sans-serif">`);
  parts.push(`<rect width="${width}" height="${height}" fill="white"/>`);
  parts.push(`<text x="${width / 2}" y="22" text-anchor="middle" font-size="15">${escapeXml(options.title)}</text>`);

  // axes and grid
  for (const tick of niceTicks(xLo, xHi)) {
    const x = sx(tick);
    parts.push(`<line x1="${x.toFixed(2)}" y1="${MARGIN.top}" x2="${x.toFixed(2)}" y2="${MARGIN.top + plotH}" stroke="#dddddd"/>`);
    parts.push(`<text x="${x.toFixed(2)}" y="${MARGIN.top + plotH + 18}" text-anchor="middle" font-size="11">${formatTick(tick)}</text>`);
  }
  for (const tick of niceTicks(yLo, yHi)) {
    const y = sy(tick);
    parts.push(`<line x1="${MARGIN.left}" y1="${y.toFixed(2)}" x2="${MARGIN.left + plotW}" y2="${y.toFixed(2)}" stroke="#dddddd"/>`);
    parts.push(`<text x="${MARGIN.left - 8}" y="${(y + 4).toFixed(2)}" text-anchor="end" font-size="11">${formatTick(tick)}</text>`);
  }
  parts.push(`<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" fill="none" stroke="#333333"/>`);
  parts.push(`<text x="${MARGIN.left + plotW / 2}" y="${height - 10}" text-anchor="middle" font-size="13">${escapeXml(options.xLabel)}</text>`);
  parts.push(`<text x="18" y="${MARGIN.top + plotH / 2}" text-anchor="middle" font-size="13" transform="rotate(-90 18 ${MARGIN.top + plotH / 2})">${escapeXml(options.yLabel)}</text>`);

  // series: polyline plus point markers
  series.forEach((s, index) => {
    const color = COLORS[index % COLORS.length];
    const coords = s.points
      .map((pt) => `${sx(pt.x).toFixed(2)},${sy(pt.y).toFixed(2)}`)
      .join(" ");
    const dash = s.dashed ? ` stroke-dasharray="6 4"` : "";
    parts.push(`<polyline points="${coords}" fill="none" stroke="${color}" stroke-width="1.6"${dash} class="series" data-label="${escapeXml(s.label)}"/>`);
    if (!s.dashed) {
      for (const pt of s.points) {
        parts.push(`<circle cx="${sx(pt.x).toFixed(2)}" cy="${sy(pt.y).toFixed(2)}" r="2.4" fill="${color}"/>`);
      }
    }
  });

  // legend
  series.forEach((s, index) => {
    const color = COLORS[index % COLORS.length];
    const y = MARGIN.top + 14 + 18 * index;
    const x = MARGIN.left + 12;
    const dash = s.dashed ? ` stroke-dasharray="6 4"` : "";
    parts.push(`<line x1="${x}" y1="${y - 4}" x2="${x + 26}" y2="${y - 4}" stroke="${color}" stroke-width="1.6"${dash}/>`);
    parts.push(`<text x="${x + 32}" y="${y}" font-size="12">${escapeXml(s.label)}</text>`);
  });

  parts.push("</svg>");
  return parts.join("\n");
}
