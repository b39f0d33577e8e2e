#!/usr/bin/env node
import { writeFileSync } from "node:fs";
import yargs from "yargs";
import { hideBin } from "yargs/helpers";
import { loadResults } from "./csv.js";
import { FIGURE_IDS, FigureId, FigureSpec, buildFigure } from "./figures.js";
import { renderFigureSvg } from "./render.js";

/** Build and write one figure; returns the output path. The output file
 *  is only written after the figure assembles successfully, so bad
 *  input never leaves a file behind. */
export function renderToFile(spec: FigureSpec): string {
  const rows = loadResults(spec.csvPaths);
  const figure = buildFigure(spec.id, rows);
  const svg = renderFigureSvg(figure);
  writeFileSync(spec.outPath, svg);
  return spec.outPath;
}

export function main(argv: string[]): number {
  const args = yargs(argv)
    .command("$0 <figure-id>", "render one figure from harness CSV results", (y) =>
      y
        .positional("figure-id", {
          describe: "which figure to render",
          choices: FIGURE_IDS,
          demandOption: true,
        })
        .option("csv", {
          type: "string",
          array: true,
          demandOption: true,
          describe: "harness result CSV (repeatable)",
        })
        .option("out", {
          type: "string",
          demandOption: true,
          describe: "output SVG path",
        }),
    )
    .strict()
    .exitProcess(false)
    .parseSync();

  try {
    const out = renderToFile({
      id: args["figure-id"] as FigureId,
      csvPaths: args.csv as string[],
      outPath: args.out as string,
    });
    console.log(out);
    return 0;
  } catch (err) {
    console.error(`error: ${err instanceof Error ? err.message : err}`);
    return 1;
  }
}

if (import.meta.url === `file://${process.argv[1]}`) {
  process.exit(main(hideBin(process.argv)));
}
