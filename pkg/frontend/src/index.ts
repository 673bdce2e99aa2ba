export { parseTable, numericColumn, TableError, type SweepTable } from "./csv.js";
export { FIGURES, FIGURE_IDS, type FigureSpec, type InputSpec, type CurveStyle, type Scale } from "./figures.js";
export { buildFigureSvg, escapeXml, formatTick, linearTicks, logTicks, makeScale, type Dataset } from "./svg.js";
export { render, renderAll } from "./render.js";
export { main, parseArgs } from "./cli.js";
