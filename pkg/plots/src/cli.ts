#!/usr/bin/env node
/**
 * plot weights|required-snr --in <csv> --out <svg> [--zoom kmin:kmax]
 *
 * Exit codes: 0 success, 1 runtime failure (missing/malformed input, empty
 * zoom window), 2 usage error.
 */

import { readFileSync, writeFileSync } from "fs";

import { CsvError, parseComparisonCsv, parseWeightsCsv } from "./csv";
import { parseZoom, renderRequiredSnrChart } from "./requiredSnr";
import { renderWeightsChart } from "./weights";

interface Args {
  kind: "weights" | "required-snr";
  input: string;
  output: string;
  zoom?: string;
}

const USAGE = "usage: plot weights|required-snr --in <csv> --out <svg> [--zoom kmin:kmax]";

function parseArgs(argv: string[]): Args {
  const [kind, ...rest] = argv;
  if (kind !== "weights" && kind !== "required-snr") {
    throw new UsageError(`unknown chart kind ${JSON.stringify(kind ?? "")}\n${USAGE}`);
  }
  let input: string | undefined;
  let output: string | undefined;
  let zoom: string | undefined;
  for (let i = 0; i < rest.length; i += 2) {
    const flag = rest[i];
    const value = rest[i + 1];
    if (value === undefined) {
      throw new UsageError(`flag ${flag} needs a value\n${USAGE}`);
    }
    if (flag === "--in") input = value;
    else if (flag === "--out") output = value;
    else if (flag === "--zoom") zoom = value;
    else throw new UsageError(`unknown flag ${flag}\n${USAGE}`);
  }
  if (!input || !output) {
    throw new UsageError(`--in and --out are required\n${USAGE}`);
  }
  if (zoom !== undefined && kind !== "required-snr") {
    throw new UsageError(`--zoom only applies to required-snr\n${USAGE}`);
  }
  return { kind, input, output, zoom };
}

class UsageError extends Error {}

export function main(argv: string[]): number {
  let args: Args;
  try {
    args = parseArgs(argv);
  } catch (err) {
    console.error(String(err instanceof Error ? err.message : err));
    return 2;
  }
  try {
    const text = readFileSync(args.input, "utf8");
    let svg: string;
    if (args.kind === "weights") {
      svg = renderWeightsChart(parseWeightsCsv(text));
    } else {
      const zoom = args.zoom !== undefined ? parseZoom(args.zoom) : undefined;
      svg = renderRequiredSnrChart(parseComparisonCsv(text), zoom);
    }
    writeFileSync(args.output, svg);
    console.log(`wrote ${args.output}`);
    return 0;
  } catch (err) {
    if (err instanceof CsvError) {
      console.error(`error: ${err.message}`);
    } else {
      console.error(`failure: ${err instanceof Error ? err.message : err}`);
    }
    return 1;
  }
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
