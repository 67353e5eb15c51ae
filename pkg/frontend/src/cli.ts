#!/usr/bin/env node
/**
 * plot --spec <figure.json> [--style <style.json>]
 *
 * FigureSpec:
 *   {
 *     "kind": "NORM_GROWTH" | "KERNEL_PROFILE" | "SYMBOL_DECOMP" | "POSITIVITY_HEATMAP",
 *     "inputs": { "csv": "...", "json": "..." },   // kind-dependent
 *     "output": "figure.svg",
 *     "axes": { "x_scale": "linear"|"log", "y_scale": "linear"|"log" }  // optional
 *   }
 *
 * Inputs must conform to the simulator's documented schemas; any mismatch
 * is a hard error and no partial figure is written.
 */

import { mkdirSync, readFileSync, writeFileSync } from "fs";
import { dirname, join } from "path";
import { fileURLToPath } from "url";

import {
  AxisScale,
  renderKernelProfile,
  renderNormGrowth,
  renderPositivityHeatmap,
  renderSymbolDecomposition,
} from "./figures.js";
import {
  loadExperimentReport,
  loadKernelProfile,
  loadNormSeries,
  loadPositivityScan,
  loadSymbolTable,
  SchemaError,
} from "./schemas.js";
import { Style } from "./svg.js";

const KINDS = ["NORM_GROWTH", "KERNEL_PROFILE", "SYMBOL_DECOMP", "POSITIVITY_HEATMAP"] as const;
type Kind = (typeof KINDS)[number];

export interface FigureSpec {
  kind: Kind;
  inputs: { csv?: string; json?: string };
  output: string;
  axes?: { x_scale?: AxisScale; y_scale?: AxisScale };
}

export function defaultStylePath(): string {
  return join(dirname(fileURLToPath(import.meta.url)), "..", "style.json");
}

export function loadStyle(path: string): Style {
  const doc = JSON.parse(readFileSync(path, "utf8")) as Style;
  for (const key of ["width", "height", "margin", "background", "seriesColors"] as const) {
    if (!(key in doc)) {
      throw new SchemaError(`style ${path}: missing ${key}`);
    }
  }
  return doc;
}

export function parseFigureSpec(path: string): FigureSpec {
  let doc: Record<string, unknown>;
  try {
    doc = JSON.parse(readFileSync(path, "utf8"));
  } catch (err) {
    throw new SchemaError(`cannot parse figure spec ${path}: ${(err as Error).message}`);
  }
  const kind = doc.kind as Kind;
  if (!KINDS.includes(kind)) {
    throw new SchemaError(`figure spec ${path}: kind must be one of ${KINDS.join(", ")}`);
  }
  if (typeof doc.output !== "string" || doc.output.length === 0) {
    throw new SchemaError(`figure spec ${path}: missing output path`);
  }
  if (typeof doc.inputs !== "object" || doc.inputs === null) {
    throw new SchemaError(`figure spec ${path}: missing inputs object`);
  }
  const axes = (doc.axes ?? {}) as FigureSpec["axes"];
  for (const scale of [axes?.x_scale, axes?.y_scale]) {
    if (scale !== undefined && scale !== "linear" && scale !== "log") {
      throw new SchemaError(`figure spec ${path}: axis scales must be "linear" or "log"`);
    }
  }
  return { kind, inputs: doc.inputs as FigureSpec["inputs"], output: doc.output, axes };
}

function requireInput(spec: FigureSpec, key: "csv" | "json"): string {
  const value = spec.inputs[key];
  if (typeof value !== "string" || value.length === 0) {
    throw new SchemaError(`figure kind ${spec.kind} requires inputs.${key}`);
  }
  return value;
}

export function renderFigure(spec: FigureSpec, style: Style): string {
  switch (spec.kind) {
    case "NORM_GROWTH": {
      const series = loadNormSeries(requireInput(spec, "csv"));
      const report = loadExperimentReport(requireInput(spec, "json"));
      return renderNormGrowth(series, report, style, spec.axes?.y_scale ?? "log");
    }
    case "KERNEL_PROFILE":
      return renderKernelProfile(loadKernelProfile(requireInput(spec, "csv")), style,
                                 spec.axes?.y_scale ?? "linear");
    case "SYMBOL_DECOMP":
      return renderSymbolDecomposition(loadSymbolTable(requireInput(spec, "csv")), style,
                                       spec.axes?.x_scale ?? "linear");
    case "POSITIVITY_HEATMAP":
      return renderPositivityHeatmap(loadPositivityScan(requireInput(spec, "json")), style);
  }
}

export function main(argv: string[]): number {
  let specPath: string | undefined;
  let stylePath = defaultStylePath();
  for (let i = 0; i < argv.length; i += 1) {
    if (argv[i] === "--spec") {
      specPath = argv[++i];
    } else if (argv[i] === "--style") {
      stylePath = argv[++i];
    } else {
      process.stderr.write(`unknown argument: ${argv[i]}\n`);
      return 1;
    }
  }
  if (!specPath) {
    process.stderr.write("usage: plot --spec <figure.json> [--style <style.json>]\n");
    return 1;
  }
  try {
    const spec = parseFigureSpec(specPath);
    const svg = renderFigure(spec, loadStyle(stylePath));
    mkdirSync(dirname(spec.output), { recursive: true });
    writeFileSync(spec.output, svg);
    process.stdout.write(`wrote ${spec.output}\n`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaError) {
      process.stderr.write(`schema error: ${err.message}\n`);
      return 2;
    }
    throw err;
  }
}

if (process.argv[1] && fileURLToPath(import.meta.url) === process.argv[1]) {
  process.exit(main(process.argv.slice(2)));
}
