/**
 * Render a figure from exported grid CSVs.
 *
 *   node dist/cli.js --figure cd_vs_hennecart --csv r2_p50.csv \
 *     --out overlay.svg --reference
 *   node dist/cli.js --figure scaled_error_curve \
 *     --csv r2_p50.csv --csv r2_p100.csv --out scaled.svg
 *
 * The SVG is written only after every input parses cleanly.
 */

import { readFileSync, writeFileSync } from "fs";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { FigureSpec, cdVsHennecartSeries, scaledErrorSeries } from "./figures";
import { parseGridCsv, SchemaError } from "./schema";
import { renderLineChart } from "./svg";

export function renderFigure(spec: FigureSpec): string {
  const grids = spec.csvPaths.map((path) =>
    parseGridCsv(readFileSync(path, "utf8"), path));

  if (spec.figure === "cd_vs_hennecart") {
    if (grids.length !== 1) {
      throw new SchemaError("cd_vs_hennecart takes exactly one --csv");
    }
    const rows = grids[0];
    const series = cdVsHennecartSeries(rows, spec.reference ?? false);
    return renderLineChart(series, {
      title: `Relative error of the approximations, r=${rows[0].r}, p=${rows[0].p}`,
      xLabel: spec.xLabel ?? "q",
      yLabel: spec.yLabel ?? "approx / exact - 1",
    });
  }
  if (grids.length < 2) {
    throw new SchemaError("scaled_error_curve takes two --csv inputs (one per p)");
  }
  const series = scaledErrorSeries(grids);
  return renderLineChart(series, {
    title: `Scaled relative error p(F/S - 1), r=${grids[0][0].r}`,
    xLabel: spec.xLabel ?? "q/p",
    yLabel: spec.yLabel ?? "p (F/S - 1)",
  });
}

export function main(argv: string[]): number {
  const args = yargs(argv)
    .option("figure", {
      choices: ["cd_vs_hennecart", "scaled_error_curve"] as const,
      demandOption: true,
    })
    .option("csv", { type: "string", array: true, demandOption: true })
    .option("out", { type: "string", demandOption: true })
    .option("reference", { type: "boolean", default: false })
    .strict()
    .exitProcess(false)
    .parseSync();

  try {
    const svg = renderFigure({
      figure: args.figure,
      csvPaths: args.csv,
      outPath: args.out,
      reference: args.reference,
    });
    writeFileSync(args.out, svg);
    console.log(`wrote ${args.out}`);
    return 0;
  } catch (error) {
    if (error instanceof SchemaError) {
      console.error(`schema error: ${error.message}`);
      return 2;
    }
    throw error;
  }
}

if (require.main === module) {
  process.exit(main(hideBin(process.argv)));
}
