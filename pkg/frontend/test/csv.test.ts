import * as fs from "node:fs";
import * as path from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { numericColumn, parseTable, TableError } from "../src/csv.js";

const FIXTURES = fileURLToPath(new URL("./fixtures", import.meta.url));

const read = (name: string): string => fs.readFileSync(path.join(FIXTURES, name), "utf8");

describe("parseTable", () => {
  it("parses a real emitted file", () => {
    const table = parseTable(read("fig6_curve1.csv"), "fig6_curve1.csv");
    expect(table.version).toBe("0.1.0");
    expect(table.figure).toBe("fig6");
    expect(table.curve).toBe("eps = 0.07");
    expect(table.config["scenario"]).toBe("thermal");
    expect(table.columns).toContain("theta");
    expect(table.columns).toContain("k");
    expect(table.rows).toHaveLength(50);
  });

  it("maps NA cells to null", () => {
    const table = parseTable(read("fig4_curve1.csv"), "fig4_curve1.csv");
    const absE = table.columns.indexOf("abs_e");
    expect(table.rows[0]?.[absE]).toBeNull();
  });

  it("keeps the flags column as text", () => {
    const table = parseTable(read("fig2_curve1.csv"), "fig2_curve1.csv");
    const flags = table.columns.indexOf("flags");
    expect(typeof table.rows[0]?.[flags]).toBe("string");
  });

  it("rejects an empty file, naming it", () => {
    expect(() => parseTable("", "empty.csv")).toThrow(/empty\.csv/);
  });

  it("rejects a missing figure header line", () => {
    const lines = read("fig6_curve1.csv").split("\n");
    lines.splice(1, 1);
    expect(() => parseTable(lines.join("\n"), "broken.csv")).toThrow(/broken\.csv.*# figure:/);
  });

  it("rejects a malformed config echo", () => {
    const text = read("fig6_curve1.csv").replace(/^# config:.*$/m, "# config: {not json");
    expect(() => parseTable(text, "badcfg.csv")).toThrow(/badcfg\.csv.*not valid JSON/);
  });

  it("rejects a ragged data row", () => {
    const text = read("fig6_curve1.csv") + "1,2,3\n";
    expect(() => parseTable(text, "ragged.csv")).toThrow(TableError);
  });

  it("rejects a header-only file with no rows", () => {
    const text = read("fig6_curve1.csv").split("\n").slice(0, 5).join("\n") + "\n";
    expect(() => parseTable(text, "norows.csv")).toThrow(/norows\.csv.*no data rows/);
  });
});

describe("numericColumn", () => {
  it("extracts a fully numeric column", () => {
    const table = parseTable(read("fig6_curve1.csv"), "fig6_curve1.csv");
    const theta = numericColumn(table, "theta", "fig6_curve1.csv");
    expect(theta).toHaveLength(50);
    expect(theta[0]).toBe(0);
    expect(theta[49]).toBeCloseTo(0.2, 12);
  });

  it("rejects a column with NA cells, naming the file", () => {
    const table = parseTable(read("fig4_curve1.csv"), "fig4_curve1.csv");
    expect(() => numericColumn(table, "abs_e", "fig4_curve1.csv")).toThrow(/fig4_curve1\.csv.*abs_e/);
  });

  it("rejects a missing column", () => {
    const table = parseTable(read("fig6_curve1.csv"), "fig6_curve1.csv");
    expect(() => numericColumn(table, "nope", "f.csv")).toThrow(/missing column 'nope'/);
  });
});
