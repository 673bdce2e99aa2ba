/**
 * Reader for the sweep CSV format emitted by the pairfield CLI.
 *
 * Each file starts with a `#`-prefixed header block (tool version, figure
 * id, curve label, canonical JSON config echo), followed by a column-name
 * row and the data rows. Numeric cells use scientific notation; cells that
 * could not be computed hold the sentinel `NA`.
 */

/** One parsed CSV file: header metadata plus a rectangular value table. */
export interface SweepTable {
  /** First header line, e.g. "pairfield 0.1.0". */
  version: string;
  /** Figure id from the `# figure:` line, e.g. "fig2". */
  figure: string;
  /** Curve label from the `# curve:` line, e.g. "eps = 0.015". */
  curve: string;
  /** Parsed `# config:` JSON echo. */
  config: Record<string, unknown>;
  /** Column names in file order. */
  columns: string[];
  /** Data rows; `null` marks an `NA` cell, strings keep free-text cells. */
  rows: Array<Array<number | string | null>>;
}

export class TableError extends Error {}

function fail(path: string, message: string): never {
  throw new TableError(`${path}: ${message}`);
}

function headerValue(line: string | undefined, key: string, path: string): string {
  const prefix = `# ${key}:`;
  if (line === undefined || !line.startsWith(prefix)) {
    fail(path, `expected header line '${prefix} ...', got ${JSON.stringify(line ?? "<end of file>")}`);
  }
  return line.slice(prefix.length).trim();
}

function parseCell(raw: string, column: string): number | string | null {
  if (raw === "NA") {
    return null;
  }
  if (column === "flags") {
    return raw;
  }
  const value = Number(raw);
  if (!Number.isFinite(value)) {
    return Number.NaN;
  }
  return value;
}

/**
 * Parse one emitted CSV file. `path` is used only for error messages, so
 * callers that already hold the text can pass any descriptive name.
 */
export function parseTable(text: string, path: string): SweepTable {
  const lines = text.split("\n");
  while (lines.length > 0 && lines[lines.length - 1] === "") {
    lines.pop();
  }
  if (lines.length === 0) {
    fail(path, "file is empty");
  }

  const first = lines[0];
  if (first === undefined || !first.startsWith("# pairfield ")) {
    fail(path, `expected header line '# pairfield <version>', got ${JSON.stringify(first ?? "<end of file>")}`);
  }
  const version = first.slice("# pairfield ".length).trim();

  const figure = headerValue(lines[1], "figure", path);
  const curve = headerValue(lines[2], "curve", path);
  const configText = headerValue(lines[3], "config", path);

  let config: Record<string, unknown>;
  try {
    config = JSON.parse(configText) as Record<string, unknown>;
  } catch (err) {
    fail(path, `config header is not valid JSON (${(err as Error).message})`);
  }

  const columnLine = lines[4];
  if (columnLine === undefined || columnLine.startsWith("#") || columnLine === "") {
    fail(path, "missing column-name row after the header block");
  }
  const columns = columnLine.split(",");

  const rows: Array<Array<number | string | null>> = [];
  for (let i = 5; i < lines.length; i++) {
    const line = lines[i];
    if (line === undefined || line === "") {
      continue;
    }
    const cells = line.split(",");
    if (cells.length !== columns.length) {
      fail(path, `row ${i + 1} has ${cells.length} cells, expected ${columns.length}`);
    }
    rows.push(cells.map((cell, j) => parseCell(cell, columns[j] ?? "")));
  }
  if (rows.length === 0) {
    fail(path, "no data rows");
  }
  return { version, figure, curve, config, columns, rows };
}

/**
 * Extract one column as numbers. `NA` cells and non-numeric text are
 * rejected: plotted columns must be fully populated.
 */
export function numericColumn(table: SweepTable, name: string, path: string): number[] {
  const index = table.columns.indexOf(name);
  if (index < 0) {
    fail(path, `missing column '${name}' (have: ${table.columns.join(", ")})`);
  }
  return table.rows.map((row, i) => {
    const cell = row[index];
    if (typeof cell !== "number" || !Number.isFinite(cell)) {
      fail(path, `column '${name}' row ${i + 1} is not a finite number (got ${JSON.stringify(cell)})`);
    }
    return cell;
  });
}
