/**
 * Turn emitted CSV files into one SVG per figure. All inputs for a figure
 * are read and validated before anything is written, so a bad or missing
 * file never leaves a partial image behind.
 */

import * as fs from "node:fs";
import * as path from "node:path";

import { parseTable, numericColumn, TableError } from "./csv.js";
import { FIGURES, FIGURE_IDS, type FigureSpec, type InputSpec } from "./figures.js";
import { buildFigureSvg, type Dataset } from "./svg.js";

function loadDataset(spec: FigureSpec, input: InputSpec, inputDir: string): Dataset {
  const filePath = path.join(inputDir, input.file);
  let text: string;
  try {
    text = fs.readFileSync(filePath, "utf8");
  } catch {
    throw new TableError(`missing input file: ${filePath}`);
  }
  const table = parseTable(text, filePath);
  if (table.figure !== spec.id) {
    throw new TableError(`${filePath}: header says figure '${table.figure}', expected '${spec.id}'`);
  }
  if (table.curve !== input.label) {
    throw new TableError(`${filePath}: header says curve '${table.curve}', expected '${input.label}'`);
  }
  const y = numericColumn(table, spec.yColumn, filePath);
  if (input.kind === "asymptote") {
    return { input, x: [], y: y.slice(0, 1) };
  }
  const x = numericColumn(table, spec.xColumn, filePath);
  if (spec.xScale === "log") {
    for (const value of x) {
      if (value <= 0) {
        throw new TableError(`${filePath}: column '${spec.xColumn}' has ${value}, unusable on a log axis`);
      }
    }
  }
  return { input, x, y };
}

/**
 * Render one figure from the CSVs in `inputDir` into `outputDir/<id>.svg`.
 * Returns the path of the written image.
 */
export function render(figureId: string, inputDir: string, outputDir: string): string {
  const spec = FIGURES[figureId];
  if (spec === undefined) {
    throw new TableError(`unknown figure id '${figureId}' (expected one of: ${FIGURE_IDS.join(", ")})`);
  }
  const datasets = spec.inputs.map((input) => loadDataset(spec, input, inputDir));
  const svg = buildFigureSvg(spec, datasets);
  fs.mkdirSync(outputDir, { recursive: true });
  const outPath = path.join(outputDir, `${spec.id}.svg`);
  fs.writeFileSync(outPath, svg, "utf8");
  return outPath;
}

/** Render every figure; returns the written paths in figure order. */
export function renderAll(inputDir: string, outputDir: string): string[] {
  return FIGURE_IDS.map((figureId) => render(figureId, inputDir, outputDir));
}
