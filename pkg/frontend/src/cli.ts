#!/usr/bin/env node
/**
 * plots <kind> <out.svg> <csv...> [--thresholds file.json]
 *
 * kind: pout | delta | accept
 *
 * Renders the sweep CSVs into one SVG figure. Threshold markers come from
 * the JSON sidecar written by `magicdist thresholds --out`; when the flag
 * is omitted a `thresholds.json` next to the first CSV (or in the working
 * directory) is used.
 */

import { existsSync, writeFileSync } from "node:fs";
import { dirname, join } from "node:path";
import { pathToFileURL } from "node:url";
import { parseArgs } from "node:util";

import { FIGURE_KINDS, FigureKind, loadCurveSet, loadThresholdMarkers } from "./data.js";
import { renderFigure } from "./svg.js";

export interface Invocation {
  kind: FigureKind;
  outPath: string;
  csvPaths: string[];
  thresholdsPath: string;
}

const USAGE = "usage: plots <pout|delta|accept> <out.svg> <csv...> [--thresholds file.json]";

function resolveThresholds(flag: string | undefined, firstCsv: string): string {
  if (flag !== undefined) return flag;
  for (const candidate of [join(dirname(firstCsv), "thresholds.json"), "thresholds.json"]) {
    if (existsSync(candidate)) return candidate;
  }
  throw new Error(
    "no thresholds sidecar found; pass --thresholds or create one with " +
      "`magicdist thresholds --out thresholds.json`",
  );
}

export function parseInvocation(argv: string[]): Invocation {
  const { values, positionals } = parseArgs({
    args: argv,
    options: { thresholds: { type: "string" } },
    allowPositionals: true,
  });
  if (positionals.length < 3) {
    throw new Error(USAGE);
  }
  const [kind, outPath, ...csvPaths] = positionals;
  if (!(FIGURE_KINDS as readonly string[]).includes(kind!)) {
    throw new Error(`unknown figure kind ${JSON.stringify(kind)}; ${USAGE}`);
  }
  return {
    kind: kind as FigureKind,
    outPath: outPath!,
    csvPaths,
    thresholdsPath: resolveThresholds(values.thresholds, csvPaths[0]!),
  };
}

export function main(argv: string[]): number {
  let invocation: Invocation;
  try {
    invocation = parseInvocation(argv);
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 1;
  }
  try {
    const curves = loadCurveSet(invocation.csvPaths, invocation.kind);
    const markers = loadThresholdMarkers(invocation.thresholdsPath);
    writeFileSync(invocation.outPath, renderFigure(curves, markers));
  } catch (err) {
    process.stderr.write(`error: ${(err as Error).message}\n`);
    return 1;
  }
  return 0;
}

if (process.argv[1] !== undefined && import.meta.url === pathToFileURL(process.argv[1]).href) {
  process.exit(main(process.argv.slice(2)));
}
