#!/usr/bin/env node
/**
 * Command line entry point:
 *
 *   render_figures <figure_id|all> --in DIR --out DIR
 *
 * Writes one SVG per requested figure and prints the written paths.
 */

import * as fs from "node:fs";
import { pathToFileURL } from "node:url";

import { FIGURE_IDS } from "./figures.js";
import { render, renderAll } from "./render.js";

const USAGE = `usage: render_figures <figure_id|all> --in DIR --out DIR
  figure_id: one of ${FIGURE_IDS.join(", ")}, or 'all'`;

interface CliArgs {
  target: string;
  inputDir: string;
  outputDir: string;
}

export function parseArgs(argv: string[]): CliArgs {
  let target: string | undefined;
  let inputDir: string | undefined;
  let outputDir: string | undefined;
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--in" || arg === "--out") {
      const value = argv[++i];
      if (value === undefined) {
        throw new Error(`${arg} requires a directory argument`);
      }
      if (arg === "--in") inputDir = value;
      else outputDir = value;
    } else if (arg !== undefined && arg.startsWith("-")) {
      throw new Error(`unknown option '${arg}'`);
    } else if (target === undefined) {
      target = arg;
    } else {
      throw new Error(`unexpected argument '${arg}'`);
    }
  }
  if (target === undefined || inputDir === undefined || outputDir === undefined) {
    throw new Error("a figure id (or 'all'), --in and --out are all required");
  }
  if (target !== "all" && !FIGURE_IDS.includes(target)) {
    throw new Error(`unknown figure id '${target}' (expected one of: ${FIGURE_IDS.join(", ")}, all)`);
  }
  return { target, inputDir, outputDir };
}

/** Run the CLI; returns the process exit code instead of calling exit. */
export function main(argv: string[]): number {
  let args: CliArgs;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    console.error(USAGE);
    return 2;
  }
  try {
    const written =
      args.target === "all"
        ? renderAll(args.inputDir, args.outputDir)
        : [render(args.target, args.inputDir, args.outputDir)];
    for (const outPath of written) {
      console.log(outPath);
    }
    return 0;
  } catch (err) {
    console.error(`error: ${(err as Error).message}`);
    return 1;
  }
}

function invokedDirectly(): boolean {
  const entry = process.argv[1];
  if (entry === undefined) return false;
  try {
    return import.meta.url === pathToFileURL(fs.realpathSync(entry)).href;
  } catch {
    return false;
  }
}

if (invokedDirectly()) {
  process.exit(main(process.argv.slice(2)));
}
