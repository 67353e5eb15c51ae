/**
 * Minimal deterministic SVG construction: fixed number formatting, no
 * timestamps, no randomness, so identical inputs give identical bytes.
 */

export interface Style {
  width: number;
  height: number;
  margin: { top: number; right: number; bottom: number; left: number };
  background: string;
  axisColor: string;
  gridColor: string;
  fontFamily: string;
  fontSize: number;
  seriesColors: string[];
  heatLow: [number, number, number];
  heatHigh: [number, number, number];
}

export function fmt(v: number): string {
  if (!Number.isFinite(v)) throw new Error(`cannot format non-finite ${v}`);
  if (v === 0) return "0";
  const s = v.toPrecision(6);
  return s.includes(".") || s.includes("e")
    ? s.replace(/\.?0+($|e)/, "$1")
    : s;
}

export type Scale = (v: number) => number;

export function linearScale(d0: number, d1: number, r0: number, r1: number): Scale {
  const span = d1 - d0 || 1;
  return (v) => r0 + ((v - d0) / span) * (r1 - r0);
}

export function logScale(d0: number, d1: number, r0: number, r1: number): Scale {
  if (d0 <= 0 || d1 <= 0) throw new Error("log scale needs positive domain");
  const l0 = Math.log10(d0);
  const span = Math.log10(d1) - l0 || 1;
  return (v) => r0 + ((Math.log10(v) - l0) / span) * (r1 - r0);
}

export function niceTicks(lo: number, hi: number, count = 6): number[] {
  if (!(hi > lo)) return [lo];
  const rawStep = (hi - lo) / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rawStep)));
  const norm = rawStep / mag;
  const step = (norm >= 5 ? 5 : norm >= 2 ? 2 : 1) * mag;
  const start = Math.ceil(lo / step) * step;
  const ticks: number[] = [];
  for (let v = start; v <= hi + 1e-12 * Math.abs(hi); v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

export function logTicks(lo: number, hi: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.ceil(Math.log10(lo) - 1e-12); Math.pow(10, e) <= hi * (1 + 1e-12); e += 1) {
    const v = Math.pow(10, e);
    if (v >= lo * (1 - 1e-12)) ticks.push(v);
  }
  return ticks.length > 0 ? ticks : [lo, hi];
}

export class SvgDoc {
  private parts: string[] = [];

  constructor(readonly style: Style, title: string) {
    this.parts.push(
      `<svg xmlns="http://www.w3.org/2000/svg" width="${style.width}" height="${style.height}" ` +
        `viewBox="0 0 ${style.width} ${style.height}" font-family="${style.fontFamily}" ` +
        `font-size="${style.fontSize}">`,
    );
    this.parts.push(
      `<rect x="0" y="0" width="${style.width}" height="${style.height}" fill="${style.background}"/>`,
    );
    this.text(style.width / 2, style.margin.top / 2 + 4, title, "middle", style.fontSize + 2);
  }

  line(x1: number, y1: number, x2: number, y2: number, color: string, width = 1, dash = ""): void {
    const d = dash ? ` stroke-dasharray="${dash}"` : "";
    this.parts.push(
      `<line x1="${fmt(x1)}" y1="${fmt(y1)}" x2="${fmt(x2)}" y2="${fmt(y2)}" ` +
        `stroke="${color}" stroke-width="${width}"${d}/>`,
    );
  }

  polyline(points: Array<[number, number]>, color: string, width = 1.5, dash = ""): void {
    const d = dash ? ` stroke-dasharray="${dash}"` : "";
    const pts = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
    this.parts.push(
      `<polyline points="${pts}" fill="none" stroke="${color}" stroke-width="${width}"${d}/>`,
    );
  }

  circle(x: number, y: number, r: number, color: string): void {
    this.parts.push(`<circle cx="${fmt(x)}" cy="${fmt(y)}" r="${r}" fill="${color}"/>`);
  }

  rect(x: number, y: number, w: number, h: number, fill: string, stroke = "none"): void {
    this.parts.push(
      `<rect x="${fmt(x)}" y="${fmt(y)}" width="${fmt(w)}" height="${fmt(h)}" ` +
        `fill="${fill}" stroke="${stroke}"/>`,
    );
  }

  text(x: number, y: number, content: string, anchor = "start", size?: number): void {
    const esc = content.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
    const fs = size ? ` font-size="${size}"` : "";
    this.parts.push(
      `<text x="${fmt(x)}" y="${fmt(y)}" text-anchor="${anchor}"${fs}>${esc}</text>`,
    );
  }

  /** Axis frame plus ticks; tick values are pre-scaled by the caller. */
  frame(xTicks: Array<[number, string]>, yTicks: Array<[number, string]>,
        xLabel: string, yLabel: string): void {
    const { margin, width, height, axisColor, gridColor } = this.style;
    const x0 = margin.left;
    const x1 = width - margin.right;
    const y0 = height - margin.bottom;
    const y1 = margin.top;
    for (const [px] of xTicks) {
      this.line(px, y0, px, y1, gridColor, 0.5);
    }
    for (const [py] of yTicks) {
      this.line(x0, py, x1, py, gridColor, 0.5);
    }
    this.line(x0, y0, x1, y0, axisColor, 1);
    this.line(x0, y0, x0, y1, axisColor, 1);
    for (const [px, label] of xTicks) {
      this.line(px, y0, px, y0 + 4, axisColor, 1);
      this.text(px, y0 + 16, label, "middle");
    }
    for (const [py, label] of yTicks) {
      this.line(x0 - 4, py, x0, py, axisColor, 1);
      this.text(x0 - 7, py + 4, label, "end");
    }
    this.text((x0 + x1) / 2, height - 6, xLabel, "middle");
    this.parts.push(
      `<text x="14" y="${fmt((y0 + y1) / 2)}" text-anchor="middle" ` +
        `transform="rotate(-90 14 ${fmt((y0 + y1) / 2)})">${yLabel}</text>`,
    );
  }

  legend(entries: Array<[string, string, string]>): void {
    const { width, margin } = this.style;
    let y = margin.top + 14;
    for (const [label, color, dash] of entries) {
      const x = width - margin.right - 130;
      this.line(x, y - 4, x + 24, y - 4, color, 2, dash);
      this.text(x + 30, y, label);
      y += 16;
    }
  }

  render(): string {
    return this.parts.join("\n") + "\n</svg>\n";
  }
}
