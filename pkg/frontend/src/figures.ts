/**
 * Layout table for the five figures: which CSV files feed each one, the
 * legend label every file must carry, per-curve line styles, and the axis
 * ranges the plot has to cover.
 */

export type Scale = "linear" | "log";

export interface CurveStyle {
  /** Stroke color. */
  color: string;
  /** Stroke width in px. */
  width: number;
  /** SVG stroke-dasharray; omitted for solid lines. */
  dash?: string;
}

export interface InputSpec {
  /** File name inside the input directory. */
  file: string;
  /** Sweep curves are polylines; asymptotes are horizontal reference lines. */
  kind: "curve" | "asymptote";
  /** Expected `# curve:` header value; also the legend entry. */
  label: string;
  style: CurveStyle;
}

export interface FigureSpec {
  id: string;
  title: string;
  inputs: InputSpec[];
  /** Abscissa column in the curve files. */
  xColumn: string;
  xLabel: string;
  xScale: Scale;
  /** Axis range to cover, independent of where the data happens to stop. */
  xDomain: [number, number];
  /** Ordinate column; every figure plots the normalized negativity K. */
  yColumn: string;
  yLabel: string;
}

const RED = "#d62728";
const BLUE = "#1f77b4";
const ORANGE = "#ff7f0e";
const NEUTRAL = "#555555";

const solid = (color: string, width = 1.5): CurveStyle => ({ color, width });
const dashed = (color: string, width = 1.5): CurveStyle => ({ color, width, dash: "6 4" });

const K_LABEL = "K = 2π²N/α²";

function epsTrio(prefix: string, values: [string, string, string]): InputSpec[] {
  const colors = [RED, BLUE, ORANGE] as const;
  return values.map((value, i) => ({
    file: `${prefix}${i + 1}.csv`,
    kind: "curve" as const,
    label: `eps = ${value}`,
    style: solid(colors[i] ?? NEUTRAL),
  }));
}

export const FIGURES: Record<string, FigureSpec> = {
  fig2: {
    id: "fig2",
    title: "Dirichlet plates, pair axis perpendicular to the walls",
    inputs: epsTrio("fig2_curve", ["0.015", "0.02", "0.03"]),
    xColumn: "gamma",
    xLabel: "γ = d/Lx",
    xScale: "log",
    xDomain: [0.01, 1],
    yColumn: "k",
    yLabel: K_LABEL,
  },
  fig3: {
    id: "fig3",
    title: "Dirichlet plates, pair axis parallel to the walls",
    inputs: epsTrio("fig3_curve", ["0.015", "0.02", "0.03"]),
    xColumn: "gamma",
    xLabel: "γ = d/Lx",
    xScale: "log",
    xDomain: [0.01, 2],
    yColumn: "k",
    yLabel: K_LABEL,
  },
  fig4: {
    id: "fig4",
    title: "Gaussian potential, entangled pair",
    inputs: [
      { file: "fig4_curve1.csv", kind: "curve", label: "lambda V0 / m^2 = -0.01", style: solid(RED, 2.5) },
      { file: "fig4_curve2.csv", kind: "curve", label: "lambda V0 / m^2 = 0", style: dashed(NEUTRAL) },
      { file: "fig4_curve3.csv", kind: "curve", label: "lambda V0 / m^2 = +0.01", style: solid(BLUE, 1) },
      { file: "fig4_asymptote1.csv", kind: "asymptote", label: "N(m -> sqrt(1 - 1/50) m)", style: dashed(ORANGE) },
      { file: "fig4_asymptote2.csv", kind: "asymptote", label: "N(m -> sqrt(1 + 1/50) m)", style: dashed(ORANGE) },
    ],
    xColumn: "sigma_b",
    xLabel: "mσ_B",
    xScale: "log",
    xDomain: [0.2, 20],
    yColumn: "k",
    yLabel: K_LABEL,
  },
  fig5: {
    id: "fig5",
    title: "Gaussian potential, entanglement onset",
    inputs: [
      { file: "fig5_curve1.csv", kind: "curve", label: "lambda V0 / m^2 = -0.01", style: solid(RED, 2.5) },
      { file: "fig5_curve2.csv", kind: "curve", label: "lambda V0 / m^2 = +0.01", style: solid(BLUE, 1) },
      { file: "fig5_asymptote1.csv", kind: "asymptote", label: "N(m -> sqrt(1 - 1/50) m)", style: dashed(ORANGE) },
    ],
    xColumn: "sigma_b",
    xLabel: "mσ_B",
    xScale: "log",
    xDomain: [0.2, 20],
    yColumn: "k",
    yLabel: K_LABEL,
  },
  fig6: {
    id: "fig6",
    title: "Thermal field state",
    inputs: [
      { file: "fig6_curve1.csv", kind: "curve", label: "eps = 0.07", style: solid(RED) },
      { file: "fig6_curve2.csv", kind: "curve", label: "eps = 0.075", style: solid(BLUE) },
      { file: "fig6_curve3.csv", kind: "curve", label: "eps = 0.08", style: solid(ORANGE) },
    ],
    xColumn: "theta",
    xLabel: "θ = k_B T/m",
    xScale: "linear",
    xDomain: [0, 0.2],
    yColumn: "k",
    yLabel: K_LABEL,
  },
};

export const FIGURE_IDS = Object.keys(FIGURES);
