/**
 * Hand-rolled SVG output. Everything here is a pure function of the figure
 * spec and the parsed data — no clocks, no randomness — so rendering the
 * same inputs twice produces byte-identical files.
 */

import type { FigureSpec, InputSpec, Scale } from "./figures.js";

/** Parsed data for one input file, ready to draw. */
export interface Dataset {
  input: InputSpec;
  /** Abscissa values; empty for asymptotes (drawn across the full width). */
  x: number[];
  /** Ordinate values; a single value for asymptotes. */
  y: number[];
}

const WIDTH = 720;
const HEIGHT = 480;
const MARGIN = { left: 76, right: 24, top: 48, bottom: 60 };
const FONT = "Helvetica, Arial, sans-serif";

const px = (v: number): string => v.toFixed(2);

export function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;")
    .replace(/'/g, "&apos;");
}

/** Round a positive span to a 1/2/5 step of the right magnitude. */
function niceStep(span: number): number {
  const pow10 = 10 ** Math.floor(Math.log10(span));
  const f = span / pow10;
  if (f < 1.5) return pow10;
  if (f < 3) return 2 * pow10;
  if (f < 7) return 5 * pow10;
  return 10 * pow10;
}

/** Evenly spaced ticks over [lo, hi] at a 1/2/5 step, endpoints not forced. */
export function linearTicks(lo: number, hi: number, count = 5): number[] {
  if (!(hi > lo)) return [lo];
  const step = niceStep((hi - lo) / (count - 1));
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

/** Decade ticks inside [lo, hi], with both endpoints always included. */
export function logTicks(lo: number, hi: number): number[] {
  const ticks = new Set<number>([lo, hi]);
  for (let k = Math.ceil(Math.log10(lo) - 1e-9); 10 ** k <= hi * (1 + 1e-9); k++) {
    const v = 10 ** k;
    if (v >= lo * (1 - 1e-9)) ticks.add(v);
  }
  return [...ticks].sort((a, b) => a - b);
}

/** Compact tick label: plain decimal in the mid range, exponent outside. */
export function formatTick(value: number): string {
  if (value === 0) return "0";
  const magnitude = Math.abs(value);
  if (magnitude >= 0.001 && magnitude < 100000) {
    let s = value.toPrecision(6);
    if (s.includes(".")) s = s.replace(/0+$/, "").replace(/\.$/, "");
    return s;
  }
  return value.toExponential(1).replace(/e([+-])0*(\d)/, "e$1$2").replace("e+", "e");
}

export function makeScale(scale: Scale, domain: [number, number], range: [number, number]): (v: number) => number {
  const [d0, d1] = scale === "log" ? [Math.log10(domain[0]), Math.log10(domain[1])] : domain;
  const [r0, r1] = range;
  const slope = (r1 - r0) / (d1 - d0);
  return (v) => r0 + ((scale === "log" ? Math.log10(v) : v) - d0) * slope;
}

function styleAttrs(input: InputSpec): string {
  const { color, width, dash } = input.style;
  const dashAttr = dash === undefined ? "" : ` stroke-dasharray="${dash}"`;
  return `stroke="${color}" stroke-width="${width}" fill="none"${dashAttr}`;
}

export function buildFigureSvg(spec: FigureSpec, datasets: Dataset[]): string {
  const plotLeft = MARGIN.left;
  const plotRight = WIDTH - MARGIN.right;
  const plotTop = MARGIN.top;
  const plotBottom = HEIGHT - MARGIN.bottom;

  const yMax = Math.max(0, ...datasets.flatMap((d) => d.y));
  const yTop = yMax > 0 ? 1.05 * yMax : 1;
  const toX = makeScale(spec.xScale, spec.xDomain, [plotLeft, plotRight]);
  const toY = makeScale("linear", [0, yTop], [plotBottom, plotTop]);

  const parts: string[] = [
    `<?xml version="1.0" encoding="UTF-8"?>`,
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
    `<rect x="0" y="0" width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`,
    `<text x="${px(WIDTH / 2)}" y="26" font-family="${FONT}" font-size="15" text-anchor="middle">` +
      `${escapeXml(spec.id)}: ${escapeXml(spec.title)}</text>`,
  ];

  const xTicks = spec.xScale === "log" ? logTicks(spec.xDomain[0], spec.xDomain[1]) : linearTicks(spec.xDomain[0], spec.xDomain[1]);
  const yTicks = linearTicks(0, yTop);

  for (const tick of xTicks) {
    const x = px(toX(tick));
    parts.push(`<line x1="${x}" y1="${px(plotTop)}" x2="${x}" y2="${px(plotBottom)}" stroke="#dddddd" stroke-width="1"/>`);
  }
  for (const tick of yTicks) {
    const y = px(toY(tick));
    parts.push(`<line x1="${px(plotLeft)}" y1="${y}" x2="${px(plotRight)}" y2="${y}" stroke="#dddddd" stroke-width="1"/>`);
  }

  for (const dataset of datasets) {
    if (dataset.input.kind === "asymptote") {
      const y = px(toY(dataset.y[0] ?? 0));
      parts.push(`<line x1="${px(plotLeft)}" y1="${y}" x2="${px(plotRight)}" y2="${y}" ${styleAttrs(dataset.input)}/>`);
    } else {
      const points = dataset.x.map((xv, i) => `${px(toX(xv))},${px(toY(dataset.y[i] ?? 0))}`).join(" ");
      parts.push(`<polyline points="${points}" ${styleAttrs(dataset.input)}/>`);
    }
  }

  parts.push(`<rect x="${px(plotLeft)}" y="${px(plotTop)}" width="${px(plotRight - plotLeft)}" height="${px(plotBottom - plotTop)}" fill="none" stroke="#000000" stroke-width="1"/>`);

  for (const tick of xTicks) {
    const x = px(toX(tick));
    parts.push(`<line x1="${x}" y1="${px(plotBottom)}" x2="${x}" y2="${px(plotBottom + 5)}" stroke="#000000" stroke-width="1"/>`);
    parts.push(`<text x="${x}" y="${px(plotBottom + 20)}" font-family="${FONT}" font-size="12" text-anchor="middle">${escapeXml(formatTick(tick))}</text>`);
  }
  for (const tick of yTicks) {
    const y = px(toY(tick));
    parts.push(`<line x1="${px(plotLeft - 5)}" y1="${y}" x2="${px(plotLeft)}" y2="${y}" stroke="#000000" stroke-width="1"/>`);
    parts.push(`<text x="${px(plotLeft - 9)}" y="${px(toY(tick) + 4)}" font-family="${FONT}" font-size="12" text-anchor="end">${escapeXml(formatTick(tick))}</text>`);
  }

  parts.push(`<text x="${px((plotLeft + plotRight) / 2)}" y="${px(HEIGHT - 14)}" font-family="${FONT}" font-size="14" text-anchor="middle">${escapeXml(spec.xLabel)}</text>`);
  parts.push(`<text x="20" y="${px((plotTop + plotBottom) / 2)}" font-family="${FONT}" font-size="14" text-anchor="middle" transform="rotate(-90 20 ${px((plotTop + plotBottom) / 2)})">${escapeXml(spec.yLabel)}</text>`);

  const legendWidth = Math.max(...datasets.map((d) => d.input.label.length)) * 6.8 + 48;
  const legendX = plotRight - legendWidth - 10;
  const legendY = plotTop + 10;
  const rowHeight = 18;
  parts.push(`<rect x="${px(legendX)}" y="${px(legendY)}" width="${px(legendWidth)}" height="${px(datasets.length * rowHeight + 10)}" fill="#ffffff" fill-opacity="0.9" stroke="#999999" stroke-width="1"/>`);
  datasets.forEach((dataset, i) => {
    const rowY = legendY + 14 + i * rowHeight;
    parts.push(`<line x1="${px(legendX + 8)}" y1="${px(rowY - 4)}" x2="${px(legendX + 34)}" y2="${px(rowY - 4)}" ${styleAttrs(dataset.input)}/>`);
    parts.push(`<text x="${px(legendX + 40)}" y="${px(rowY)}" font-family="${FONT}" font-size="12">${escapeXml(dataset.input.label)}</text>`);
  });

  parts.push(`</svg>`);
  return parts.join("\n") + "\n";
}
