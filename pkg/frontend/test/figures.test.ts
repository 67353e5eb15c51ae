import { mkdtempSync, readFileSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";
import { describe, expect, it } from "vitest";

import { loadStyle, main, parseFigureSpec, renderFigure, FigureSpec } from "../src/cli.js";
import {
  loadExperimentReport,
  loadNormSeries,
  loadPositivityScan,
  SchemaError,
} from "../src/schemas.js";

const FIXTURES = join(__dirname, "..", "fixtures");
const STYLE = loadStyle(join(__dirname, "..", "style.json"));

function spec(kind: FigureSpec["kind"], inputs: FigureSpec["inputs"]): FigureSpec {
  return { kind, inputs, output: "unused.svg" };
}

describe("figure rendering from acceptance-run outputs", () => {
  const cases: Array<[string, FigureSpec]> = [
    ["NORM_GROWTH", spec("NORM_GROWTH", {
      csv: join(FIXTURES, "norms.csv"),
      json: join(FIXTURES, "report.json"),
    })],
    ["KERNEL_PROFILE", spec("KERNEL_PROFILE", { csv: join(FIXTURES, "kernel_profile.csv") })],
    ["SYMBOL_DECOMP", spec("SYMBOL_DECOMP", { csv: join(FIXTURES, "symbol.csv") })],
    ["POSITIVITY_HEATMAP", spec("POSITIVITY_HEATMAP", {
      json: join(FIXTURES, "positivity_scan.json"),
    })],
  ];

  for (const [name, figureSpec] of cases) {
    it(`renders ${name} deterministically`, () => {
      const first = renderFigure(figureSpec, STYLE);
      const second = renderFigure(figureSpec, STYLE);
      expect(first.startsWith("<svg")).toBe(true);
      expect(first.endsWith("</svg>\n")).toBe(true);
      expect(second).toBe(first);
      expect(first.length).toBeGreaterThan(500);
    });
  }

  it("overlays one envelope line per norm column", () => {
    const svg = renderFigure(cases[0][1], STYLE);
    const dashed = svg.match(/stroke-dasharray="5,4"/g) ?? [];
    // three norm columns (p=1, p=2, inf) plus the legend sample
    expect(dashed.length).toBe(4);
  });

  it("renders a single-sample series without crashing", () => {
    const dir = mkdtempSync(join(tmpdir(), "logdiss-fig-"));
    const csv = join(dir, "single.csv");
    const src = readFileSync(join(FIXTURES, "norms.csv"), "utf8").split("\n");
    writeFileSync(csv, src.slice(0, 2).join("\n") + "\n");
    const svg = renderFigure(
      spec("NORM_GROWTH", { csv, json: join(FIXTURES, "report.json") }), STYLE);
    expect(svg).toContain("<circle");
  });
});

describe("schema validation fails loudly", () => {
  it("names a missing norm column", () => {
    const dir = mkdtempSync(join(tmpdir(), "logdiss-fig-"));
    const bad = join(dir, "bad.csv");
    const lines = readFileSync(join(FIXTURES, "norms.csv"), "utf8").split("\n");
    lines[0] = lines[0].replace("norm_inf", "norm_oops");
    writeFileSync(bad, lines.join("\n"));
    expect(() => loadNormSeries(bad)).toThrowError(/norm_inf/);
  });

  it("rejects a report without growth constants", () => {
    const dir = mkdtempSync(join(tmpdir(), "logdiss-fig-"));
    const bad = join(dir, "bad.json");
    const doc = JSON.parse(readFileSync(join(FIXTURES, "report.json"), "utf8"));
    delete doc.growth_constant;
    writeFileSync(bad, JSON.stringify(doc));
    expect(() => loadExperimentReport(bad)).toThrowError(/growth_constant/);
  });

  it("rejects a scan with a missing cell", () => {
    const dir = mkdtempSync(join(tmpdir(), "logdiss-fig-"));
    const bad = join(dir, "bad.json");
    const doc = JSON.parse(readFileSync(join(FIXTURES, "positivity_scan.json"), "utf8"));
    doc.cells.pop();
    writeFileSync(bad, JSON.stringify(doc));
    expect(() => loadPositivityScan(bad)).toThrowError(/missing cell/);
  });

  it("rejects ragged CSV rows", () => {
    const dir = mkdtempSync(join(tmpdir(), "logdiss-fig-"));
    const bad = join(dir, "bad.csv");
    writeFileSync(bad, "x,K\n1.0,2.0\n3.0\n");
    expect(() => renderFigure(spec("KERNEL_PROFILE", { csv: bad }), STYLE))
      .toThrowError(SchemaError);
  });

  it("rejects an unknown figure kind", () => {
    const dir = mkdtempSync(join(tmpdir(), "logdiss-fig-"));
    const path = join(dir, "spec.json");
    writeFileSync(path, JSON.stringify({ kind: "PIE", inputs: {}, output: "x.svg" }));
    expect(() => parseFigureSpec(path)).toThrowError(/kind/);
  });

  it("requires the inputs a kind needs", () => {
    expect(() => renderFigure(spec("NORM_GROWTH", {}), STYLE))
      .toThrowError(/inputs\.csv/);
  });
});

describe("cli", () => {
  it("writes an SVG for a valid spec and returns 0", () => {
    const dir = mkdtempSync(join(tmpdir(), "logdiss-fig-"));
    const specPath = join(dir, "figure.json");
    const outPath = join(dir, "out", "symbol.svg");
    writeFileSync(specPath, JSON.stringify({
      kind: "SYMBOL_DECOMP",
      inputs: { csv: join(FIXTURES, "symbol.csv") },
      output: outPath,
    }));
    expect(main(["--spec", specPath])).toBe(0);
    const svg = readFileSync(outPath, "utf8");
    expect(svg.startsWith("<svg")).toBe(true);
  });

  it("returns 2 on schema violations and writes nothing", () => {
    const dir = mkdtempSync(join(tmpdir(), "logdiss-fig-"));
    const specPath = join(dir, "figure.json");
    writeFileSync(specPath, JSON.stringify({
      kind: "KERNEL_PROFILE",
      inputs: { csv: join(FIXTURES, "report.json") },
      output: join(dir, "nope.svg"),
    }));
    expect(main(["--spec", specPath])).toBe(2);
  });
});
