/**
 * Strict parsers for the two simulator CSV formats.
 *
 * Weights CSV: `index,weight` header then one `i,w` row per sub-channel.
 * Comparison CSV: optional `# key=value` comment lines, a `k,<method>,...`
 * header, then one row per message length with empty cells where the target
 * BLER was not reached.
 */

export interface WeightPoint {
  index: number;
  weight: number;
}

export interface ComparisonTable {
  methods: string[];
  rows: { k: number; values: (number | null)[] }[];
}

export class CsvError extends Error {}

function dataLines(text: string): string[] {
  return text
    .split(/\r?\n/)
    .map((line) => line.trim())
    .filter((line) => line.length > 0 && !line.startsWith("#"));
}

function parseNumber(cell: string, context: string): number {
  const value = Number(cell);
  if (cell === "" || !Number.isFinite(value)) {
    throw new CsvError(`malformed numeric cell ${JSON.stringify(cell)} in ${context}`);
  }
  return value;
}

export function parseWeightsCsv(text: string): WeightPoint[] {
  const lines = dataLines(text);
  if (lines.length === 0) {
    throw new CsvError("weights CSV is empty");
  }
  if (lines[0] !== "index,weight") {
    throw new CsvError(`expected "index,weight" header, got ${JSON.stringify(lines[0])}`);
  }
  const points: WeightPoint[] = [];
  for (const line of lines.slice(1)) {
    const cells = line.split(",");
    if (cells.length !== 2) {
      throw new CsvError(`expected 2 columns, got ${cells.length}: ${JSON.stringify(line)}`);
    }
    const index = parseNumber(cells[0], "index column");
    if (!Number.isInteger(index) || index < 0) {
      throw new CsvError(`index must be a non-negative integer, got ${cells[0]}`);
    }
    points.push({ index, weight: parseNumber(cells[1], `weight of index ${index}`) });
  }
  if (points.length === 0) {
    throw new CsvError("weights CSV has a header but no data rows");
  }
  return points;
}

export function parseComparisonCsv(text: string): ComparisonTable {
  const lines = dataLines(text);
  if (lines.length === 0) {
    throw new CsvError("comparison CSV is empty");
  }
  const header = lines[0].split(",");
  if (header[0] !== "k" || header.length < 2) {
    throw new CsvError(`expected "k,<method>,..." header, got ${JSON.stringify(lines[0])}`);
  }
  const methods = header.slice(1);
  const rows: ComparisonTable["rows"] = [];
  for (const line of lines.slice(1)) {
    const cells = line.split(",");
    if (cells.length !== header.length) {
      throw new CsvError(
        `row has ${cells.length} cells, header has ${header.length}: ${JSON.stringify(line)}`,
      );
    }
    const k = parseNumber(cells[0], "k column");
    const values = cells
      .slice(1)
      .map((cell) => (cell === "" ? null : parseNumber(cell, `required SNR at k=${k}`)));
    rows.push({ k, values });
  }
  if (rows.length === 0) {
    throw new CsvError("comparison CSV has a header but no data rows");
  }
  return { methods, rows };
}
