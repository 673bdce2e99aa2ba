import * as fs from "node:fs";
import * as os from "node:os";
import * as path from "node:path";
import { fileURLToPath } from "node:url";
import { afterEach, describe, expect, it, vi } from "vitest";

import { main, parseArgs } from "../src/cli.js";

const FIXTURES = fileURLToPath(new URL("./fixtures", import.meta.url));

afterEach(() => {
  vi.restoreAllMocks();
});

function quiet() {
  const logs: string[] = [];
  const errors: string[] = [];
  vi.spyOn(console, "log").mockImplementation((msg: unknown) => void logs.push(String(msg)));
  vi.spyOn(console, "error").mockImplementation((msg: unknown) => void errors.push(String(msg)));
  return { logs, errors };
}

describe("parseArgs", () => {
  it("accepts a figure id with both directories", () => {
    expect(parseArgs(["fig4", "--in", "a", "--out", "b"])).toEqual({ target: "fig4", inputDir: "a", outputDir: "b" });
    expect(parseArgs(["--in", "a", "all", "--out", "b"]).target).toBe("all");
  });

  it("rejects missing pieces and unknown options", () => {
    expect(() => parseArgs([])).toThrow(/required/);
    expect(() => parseArgs(["fig2", "--in", "a"])).toThrow(/required/);
    expect(() => parseArgs(["fig2", "--in"])).toThrow(/--in requires/);
    expect(() => parseArgs(["fig2", "--in", "a", "--out", "b", "--fast"])).toThrow(/unknown option/);
    expect(() => parseArgs(["fig9", "--in", "a", "--out", "b"])).toThrow(/unknown figure id/);
  });
});

describe("main", () => {
  it("renders all figures and prints the written paths", () => {
    const { logs, errors } = quiet();
    const out = fs.mkdtempSync(path.join(os.tmpdir(), "cli-out-"));
    try {
      expect(main(["all", "--in", FIXTURES, "--out", out])).toBe(0);
      expect(logs).toHaveLength(5);
      expect(errors).toHaveLength(0);
      expect(fs.readdirSync(out).sort()).toEqual(["fig2.svg", "fig3.svg", "fig4.svg", "fig5.svg", "fig6.svg"]);
    } finally {
      fs.rmSync(out, { recursive: true, force: true });
    }
  });

  it("returns 2 on usage errors", () => {
    const { errors } = quiet();
    expect(main([])).toBe(2);
    expect(main(["fig9", "--in", "a", "--out", "b"])).toBe(2);
    expect(errors.some((line) => line.includes("usage:"))).toBe(true);
  });

  it("returns 1 when inputs are missing, naming the file", () => {
    const { errors } = quiet();
    const empty = fs.mkdtempSync(path.join(os.tmpdir(), "cli-empty-"));
    const out = path.join(empty, "out");
    try {
      expect(main(["fig2", "--in", empty, "--out", out])).toBe(1);
      expect(errors.join("\n")).toMatch(/fig2_curve1\.csv/);
      expect(fs.existsSync(out)).toBe(false);
    } finally {
      fs.rmSync(empty, { recursive: true, force: true });
    }
  });
});
