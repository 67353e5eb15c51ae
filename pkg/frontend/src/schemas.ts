/**
 * Parsers/validators for the simulator's documented CSV and JSON schemas.
 *
 * Every mismatch is a hard error naming the offending file and field; the
 * renderer never guesses at malformed input.
 */

import { readFileSync } from "fs";

export class SchemaError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SchemaError";
  }
}

export interface NormSeries {
  times: number[];
  /** column name (e.g. "norm_p_2", "norm_inf") -> values */
  norms: Map<string, number[]>;
  minTheta: number[];
  maxTheta: number[];
}

export interface ExperimentReport {
  growthConstant: Map<string, number>;
  boundConstant: number;
  residualL1Estimate: number;
  residualL1Converged: boolean;
  passed: boolean;
}

export interface KernelProfile {
  x: number[];
  k: number[];
}

export interface SymbolTable {
  xi: number[];
  full: number[];
  main: number[];
  residual: number[];
}

export interface PositivityScan {
  beta: number;
  t: number;
  gammas: number[];
  lambdas: number[];
  /** negative_mass_fraction indexed [gamma][lambda] */
  cells: number[][];
}

function parseNumber(raw: string, where: string): number {
  const v = Number(raw);
  if (!Number.isFinite(v)) {
    throw new SchemaError(`${where}: expected a finite number, got ${JSON.stringify(raw)}`);
  }
  return v;
}

function readCsv(path: string): { header: string[]; rows: string[][] } {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch (err) {
    throw new SchemaError(`cannot read ${path}: ${(err as Error).message}`);
  }
  const lines = text.split("\n").filter((line) => line.length > 0);
  if (lines.length < 1) {
    throw new SchemaError(`${path}: empty CSV`);
  }
  const header = lines[0].split(",");
  const rows = lines.slice(1).map((line) => line.split(","));
  for (const [i, row] of rows.entries()) {
    if (row.length !== header.length) {
      throw new SchemaError(
        `${path}: row ${i + 2} has ${row.length} fields, header has ${header.length}`,
      );
    }
  }
  return { header, rows };
}

export function loadNormSeries(path: string): NormSeries {
  const { header, rows } = readCsv(path);
  if (header[0] !== "t") {
    throw new SchemaError(`${path}: first column must be "t", got ${JSON.stringify(header[0])}`);
  }
  for (const required of ["norm_inf", "min_theta", "max_theta"]) {
    if (!header.includes(required)) {
      throw new SchemaError(`${path}: missing column ${JSON.stringify(required)}`);
    }
  }
  const normColumns = header.filter((h) => h.startsWith("norm_"));
  if (rows.length === 0) {
    throw new SchemaError(`${path}: no samples`);
  }
  const series: NormSeries = {
    times: [],
    norms: new Map(normColumns.map((c) => [c, []])),
    minTheta: [],
    maxTheta: [],
  };
  for (const row of rows) {
    const get = (col: string) =>
      parseNumber(row[header.indexOf(col)], `${path}:${col}`);
    series.times.push(get("t"));
    for (const col of normColumns) {
      series.norms.get(col)!.push(get(col));
    }
    series.minTheta.push(get("min_theta"));
    series.maxTheta.push(get("max_theta"));
  }
  return series;
}

function requireKey(doc: Record<string, unknown>, key: string, path: string): unknown {
  if (!(key in doc)) {
    throw new SchemaError(`${path}: missing field ${JSON.stringify(key)}`);
  }
  return doc[key];
}

function loadJson(path: string): Record<string, unknown> {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch (err) {
    throw new SchemaError(`cannot read ${path}: ${(err as Error).message}`);
  }
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (err) {
    throw new SchemaError(`${path}: invalid JSON: ${(err as Error).message}`);
  }
  if (typeof doc !== "object" || doc === null || Array.isArray(doc)) {
    throw new SchemaError(`${path}: expected a JSON object`);
  }
  return doc as Record<string, unknown>;
}

export function loadExperimentReport(path: string): ExperimentReport {
  const doc = loadJson(path);
  const growth = requireKey(doc, "growth_constant", path);
  if (typeof growth !== "object" || growth === null) {
    throw new SchemaError(`${path}: growth_constant must be an object`);
  }
  const growthConstant = new Map<string, number>();
  for (const [p, value] of Object.entries(growth as Record<string, unknown>)) {
    if (typeof value !== "number") {
      throw new SchemaError(`${path}: growth_constant[${p}] must be a number`);
    }
    growthConstant.set(p, value);
  }
  const bound = requireKey(doc, "bound_constant", path);
  const est = requireKey(doc, "residual_l1_estimate", path);
  const conv = requireKey(doc, "residual_l1_converged", path);
  const passed = requireKey(doc, "pass", path);
  if (typeof bound !== "number" || typeof est !== "number") {
    throw new SchemaError(`${path}: bound_constant and residual_l1_estimate must be numbers`);
  }
  if (typeof conv !== "boolean" || typeof passed !== "boolean") {
    throw new SchemaError(`${path}: residual_l1_converged and pass must be booleans`);
  }
  return {
    growthConstant,
    boundConstant: bound,
    residualL1Estimate: est,
    residualL1Converged: conv,
    passed,
  };
}

export function loadKernelProfile(path: string): KernelProfile {
  const { header, rows } = readCsv(path);
  if (header.length !== 2 || header[0] !== "x" || header[1] !== "K") {
    throw new SchemaError(`${path}: expected header "x,K", got ${JSON.stringify(header.join(","))}`);
  }
  const x: number[] = [];
  const k: number[] = [];
  for (const row of rows) {
    x.push(parseNumber(row[0], `${path}:x`));
    k.push(parseNumber(row[1], `${path}:K`));
  }
  if (x.length === 0) {
    throw new SchemaError(`${path}: no samples`);
  }
  return { x, k };
}

export function loadSymbolTable(path: string): SymbolTable {
  const { header, rows } = readCsv(path);
  const expected = ["xi", "full", "main", "residual"];
  if (header.length !== 4 || expected.some((name, i) => header[i] !== name)) {
    throw new SchemaError(
      `${path}: expected header ${JSON.stringify(expected.join(","))}, got ${JSON.stringify(header.join(","))}`,
    );
  }
  const table: SymbolTable = { xi: [], full: [], main: [], residual: [] };
  for (const row of rows) {
    table.xi.push(parseNumber(row[0], `${path}:xi`));
    table.full.push(parseNumber(row[1], `${path}:full`));
    table.main.push(parseNumber(row[2], `${path}:main`));
    table.residual.push(parseNumber(row[3], `${path}:residual`));
  }
  if (table.xi.length === 0) {
    throw new SchemaError(`${path}: no samples`);
  }
  return table;
}

export function loadPositivityScan(path: string): PositivityScan {
  const doc = loadJson(path);
  const gammas = requireKey(doc, "gammas", path);
  const lambdas = requireKey(doc, "lambdas", path);
  const cells = requireKey(doc, "cells", path);
  if (!Array.isArray(gammas) || !Array.isArray(lambdas) || !Array.isArray(cells)) {
    throw new SchemaError(`${path}: gammas, lambdas and cells must be arrays`);
  }
  const beta = requireKey(doc, "beta", path);
  const t = requireKey(doc, "t", path);
  if (typeof beta !== "number" || typeof t !== "number") {
    throw new SchemaError(`${path}: beta and t must be numbers`);
  }
  const grid: number[][] = gammas.map(() => lambdas.map(() => NaN));
  for (const cell of cells as Record<string, unknown>[]) {
    if (typeof cell !== "object" || cell === null) {
      throw new SchemaError(`${path}: each cell must be an object`);
    }
    if ("error" in cell) {
      throw new SchemaError(`${path}: scan contains a failed cell: ${String(cell.error)}`);
    }
    const g = cell.gamma;
    const lam = cell.lambda;
    const nmf = cell.negative_mass_fraction;
    if (typeof g !== "number" || typeof lam !== "number" || typeof nmf !== "number") {
      throw new SchemaError(
        `${path}: cells need numeric gamma, lambda, negative_mass_fraction`,
      );
    }
    const gi = (gammas as number[]).indexOf(g);
    const li = (lambdas as number[]).indexOf(lam);
    if (gi < 0 || li < 0) {
      throw new SchemaError(`${path}: cell (${g}, ${lam}) not on the declared axes`);
    }
    grid[gi][li] = nmf;
  }
  for (const [gi, row] of grid.entries()) {
    for (const [li, value] of row.entries()) {
      if (Number.isNaN(value)) {
        throw new SchemaError(
          `${path}: missing cell for gamma=${(gammas as number[])[gi]}, lambda=${(lambdas as number[])[li]}`,
        );
      }
    }
  }
  return { beta: beta as number, t: t as number, gammas: gammas as number[], lambdas: lambdas as number[], cells: grid };
}
