/**
 * The four figure kinds, each a pure function (parsed data, style) -> SVG.
 */

import {
  ExperimentReport,
  KernelProfile,
  NormSeries,
  PositivityScan,
  SchemaError,
  SymbolTable,
} from "./schemas.js";
import {
  fmt,
  linearScale,
  logScale,
  logTicks,
  niceTicks,
  Scale,
  Style,
  SvgDoc,
} from "./svg.js";

export type AxisScale = "linear" | "log";

function plotArea(style: Style): { x0: number; x1: number; y0: number; y1: number } {
  return {
    x0: style.margin.left,
    x1: style.width - style.margin.right,
    y0: style.height - style.margin.bottom,
    y1: style.margin.top,
  };
}

function columnLabel(col: string): string {
  if (col === "norm_inf") return "p = inf";
  return `p = ${col.replace("norm_p_", "")}`;
}

/** Map a norm column name to the growth-constant key in the report. */
function growthKey(col: string): string {
  return col === "norm_inf" ? "inf" : col.replace("norm_p_", "");
}

export function renderNormGrowth(series: NormSeries, report: ExperimentReport,
                                 style: Style, yScale: AxisScale = "log"): string {
  const doc = new SvgDoc(style, "norm growth with certified envelopes");
  const area = plotArea(style);
  const tMax = series.times[series.times.length - 1];
  const columns = [...series.norms.keys()];
  let lo = Infinity;
  let hi = -Infinity;
  for (const col of columns) {
    for (const v of series.norms.get(col)!) {
      lo = Math.min(lo, v);
      hi = Math.max(hi, v);
    }
  }
  for (const col of columns) {
    const c = report.growthConstant.get(growthKey(col));
    if (c !== undefined) {
      hi = Math.max(hi, series.norms.get(col)![0] * Math.exp(c * tMax));
    }
  }
  if (yScale === "log" && lo <= 0) {
    throw new SchemaError("log axis requested but norms include non-positive values");
  }
  const sx = linearScale(0, tMax || 1, area.x0, area.x1);
  const sy: Scale = yScale === "log"
    ? logScale(lo / 1.05, hi * 1.05, area.y0, area.y1)
    : linearScale(lo - 0.05 * (hi - lo), hi + 0.05 * (hi - lo), area.y0, area.y1);
  const xTicks = niceTicks(0, tMax || 1).map((v): [number, string] => [sx(v), fmt(v)]);
  const yVals = yScale === "log" ? logTicks(lo / 1.05, hi * 1.05) : niceTicks(lo, hi);
  const yTicks = yVals.map((v): [number, string] => [sy(v), fmt(v)]);
  doc.frame(xTicks, yTicks, "t", yScale === "log" ? "norm (log)" : "norm");

  const legend: Array<[string, string, string]> = [];
  columns.forEach((col, i) => {
    const color = style.seriesColors[i % style.seriesColors.length];
    const values = series.norms.get(col)!;
    const pts = series.times.map((t, j): [number, number] => [sx(t), sy(values[j])]);
    if (pts.length === 1) {
      doc.circle(pts[0][0], pts[0][1], 3, color);
    } else {
      doc.polyline(pts, color, 1.5);
    }
    legend.push([columnLabel(col), color, ""]);
    const c = report.growthConstant.get(growthKey(col));
    if (c !== undefined && series.times.length > 1) {
      const envelope = series.times.map((t, j): [number, number] => [
        sx(t),
        sy(values[0] * Math.exp(c * t)),
      ]);
      doc.polyline(envelope, color, 1, "5,4");
    }
  });
  legend.push(["envelope e^(ct)", style.axisColor, "5,4"]);
  doc.legend(legend);
  return doc.render();
}

export function renderKernelProfile(profile: KernelProfile, style: Style,
                                    yScale: AxisScale = "linear"): string {
  const doc = new SvgDoc(style, "real-space kernel profile");
  const area = plotArea(style);
  const xLo = profile.x[0];
  const xHi = profile.x[profile.x.length - 1];
  let lo = Math.min(...profile.k);
  let hi = Math.max(...profile.k);
  if (yScale === "log") {
    const positive = profile.k.filter((v) => v > 0);
    if (positive.length === 0) throw new SchemaError("log axis on a non-positive kernel");
    lo = Math.min(...positive);
    hi = Math.max(...positive);
  }
  const pad = 0.05 * (hi - lo || 1);
  const sx = linearScale(xLo, xHi, area.x0, area.x1);
  const sy: Scale = yScale === "log"
    ? logScale(lo, hi, area.y0, area.y1)
    : linearScale(lo - pad, hi + pad, area.y0, area.y1);
  const xTicks = niceTicks(xLo, xHi).map((v): [number, string] => [sx(v), fmt(v)]);
  const yVals = yScale === "log" ? logTicks(lo, hi) : niceTicks(lo - pad, hi + pad);
  const yTicks = yVals.map((v): [number, string] => [sy(v), fmt(v)]);
  doc.frame(xTicks, yTicks, "x", "K(x)");
  if (yScale === "linear" && lo < 0 && hi > 0) {
    doc.line(area.x0, sy(0), area.x1, sy(0), style.gridColor, 1, "2,3");
  }
  const pts: Array<[number, number]> = [];
  for (let i = 0; i < profile.x.length; i += 1) {
    if (yScale === "log" && profile.k[i] <= 0) continue;
    pts.push([sx(profile.x[i]), sy(profile.k[i])]);
  }
  doc.polyline(pts, style.seriesColors[0], 1.2);
  return doc.render();
}

export function renderSymbolDecomposition(table: SymbolTable, style: Style,
                                          xScaleKind: AxisScale = "linear"): string {
  const doc = new SvgDoc(style, "symbol decomposition: full = main + residual");
  const area = plotArea(style);
  const xs = table.xi;
  const xLoRaw = xs[0];
  const xLo = xScaleKind === "log" ? Math.max(xLoRaw, xs[1] ?? 1e-3) : xLoRaw;
  const xHi = xs[xs.length - 1];
  const all = [...table.full, ...table.main, ...table.residual];
  const lo = Math.min(...all);
  const hi = Math.max(...all);
  const pad = 0.05 * (hi - lo || 1);
  const sx: Scale = xScaleKind === "log"
    ? logScale(xLo, xHi, area.x0, area.x1)
    : linearScale(xLo, xHi, area.x0, area.x1);
  const sy = linearScale(lo - pad, hi + pad, area.y0, area.y1);
  const xVals = xScaleKind === "log" ? logTicks(xLo, xHi) : niceTicks(xLo, xHi);
  const xTicks = xVals.map((v): [number, string] => [sx(v), fmt(v)]);
  const yTicks = niceTicks(lo - pad, hi + pad).map((v): [number, string] => [sy(v), fmt(v)]);
  doc.frame(xTicks, yTicks, "|xi|", "multiplier");
  const seriesOf: Array<[string, number[]]> = [
    ["full", table.full],
    ["main term", table.main],
    ["residual", table.residual],
  ];
  const legend: Array<[string, string, string]> = [];
  seriesOf.forEach(([label, values], i) => {
    const color = style.seriesColors[i % style.seriesColors.length];
    const pts: Array<[number, number]> = [];
    for (let j = 0; j < xs.length; j += 1) {
      if (xScaleKind === "log" && xs[j] <= 0) continue;
      pts.push([sx(xs[j]), sy(values[j])]);
    }
    doc.polyline(pts, color, 1.5);
    legend.push([label, color, ""]);
  });
  doc.legend(legend);
  return doc.render();
}

function heatColor(v: number, vMax: number, style: Style): string {
  const t = vMax > 0 ? Math.min(v / vMax, 1) : 0;
  const mix = (a: number, b: number) => Math.round(a + (b - a) * t);
  const [r0, g0, b0] = style.heatLow;
  const [r1, g1, b1] = style.heatHigh;
  return `rgb(${mix(r0, r1)},${mix(g0, g1)},${mix(b0, b1)})`;
}

export function renderPositivityHeatmap(scan: PositivityScan, style: Style): string {
  const doc = new SvgDoc(style,
    `heat-kernel negative mass over (gamma, lambda), beta=${fmt(scan.beta)}, t=${fmt(scan.t)}`);
  const area = plotArea(style);
  const nG = scan.gammas.length;
  const nL = scan.lambdas.length;
  const cellW = (area.x1 - area.x0) / nL;
  const cellH = (area.y0 - area.y1) / nG;
  const vMax = Math.max(...scan.cells.flat());
  for (let gi = 0; gi < nG; gi += 1) {
    for (let li = 0; li < nL; li += 1) {
      const v = scan.cells[gi][li];
      const x = area.x0 + li * cellW;
      const y = area.y0 - (gi + 1) * cellH;
      doc.rect(x, y, cellW, cellH, heatColor(v, vMax, style), style.gridColor);
      doc.text(x + cellW / 2, y + cellH / 2 + 4, fmt(v), "middle");
    }
  }
  for (let li = 0; li < nL; li += 1) {
    doc.text(area.x0 + (li + 0.5) * cellW, area.y0 + 16, fmt(scan.lambdas[li]), "middle");
  }
  for (let gi = 0; gi < nG; gi += 1) {
    doc.text(area.x0 - 7, area.y0 - (gi + 0.5) * cellH + 4, fmt(scan.gammas[gi]), "end");
  }
  doc.text((area.x0 + area.x1) / 2, style.height - 6, "lambda", "middle");
  doc.text(14, (area.y0 + area.y1) / 2, "gamma", "middle");
  return doc.render();
}
