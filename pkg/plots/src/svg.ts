/**
 * Minimal deterministic SVG chart scaffolding: fixed canvas, linear scales,
 * 1-2-5 tick steps and a small marker vocabulary. All coordinates are emitted
 * with two decimals so identical inputs produce identical bytes.
 */

export const WIDTH = 860;
export const HEIGHT = 520;
export const MARGIN = { top: 40, right: 170, bottom: 55, left: 70 };

export interface SeriesStyle {
  color: string;
  marker: "circle" | "square" | "diamond" | "triangle";
}

export const SERIES_STYLES: SeriesStyle[] = [
  { color: "#1f77b4", marker: "circle" },
  { color: "#d62728", marker: "square" },
  { color: "#2ca02c", marker: "diamond" },
  { color: "#9467bd", marker: "triangle" },
  { color: "#ff7f0e", marker: "circle" },
  { color: "#8c564b", marker: "square" },
];

const fmt = (v: number): string => v.toFixed(2);

export class LinearScale {
  constructor(
    readonly d0: number,
    readonly d1: number,
    readonly r0: number,
    readonly r1: number,
  ) {}

  apply(v: number): number {
    if (this.d1 === this.d0) {
      return (this.r0 + this.r1) / 2;
    }
    return this.r0 + ((v - this.d0) / (this.d1 - this.d0)) * (this.r1 - this.r0);
  }
}

/** Tick positions with a 1/2/5 step covering [min, max]. */
export function ticks(min: number, max: number, count = 6): number[] {
  if (min === max) {
    return [min];
  }
  const raw = (max - min) / Math.max(1, count);
  const power = Math.pow(10, Math.floor(Math.log10(raw)));
  let step = power;
  for (const mult of [1, 2, 5, 10]) {
    if (raw <= mult * power) {
      step = mult * power;
      break;
    }
  }
  const out: number[] = [];
  for (let v = Math.ceil(min / step) * step; v <= max + step * 1e-9; v += step) {
    out.push(Number(v.toFixed(10)));
  }
  return out;
}

export function pad(min: number, max: number, frac = 0.06): [number, number] {
  if (min === max) {
    const d = Math.max(1, Math.abs(min)) * frac;
    return [min - d, max + d];
  }
  const d = (max - min) * frac;
  return [min - d, max + d];
}

export function marker(
  style: SeriesStyle,
  x: number,
  y: number,
  cls: string,
  size = 4,
  extra = "",
): string {
  const a = ` class="${cls}" fill="${style.color}"${extra}`;
  switch (style.marker) {
    case "circle":
      return `<circle${a} cx="${fmt(x)}" cy="${fmt(y)}" r="${fmt(size)}"/>`;
    case "square":
      return `<rect${a} x="${fmt(x - size)}" y="${fmt(y - size)}" width="${fmt(2 * size)}" height="${fmt(2 * size)}"/>`;
    case "diamond":
      return `<path${a} d="M${fmt(x)} ${fmt(y - size * 1.3)}L${fmt(x + size * 1.3)} ${fmt(y)}L${fmt(x)} ${fmt(y + size * 1.3)}L${fmt(x - size * 1.3)} ${fmt(y)}Z"/>`;
    case "triangle":
      return `<path${a} d="M${fmt(x)} ${fmt(y - size * 1.3)}L${fmt(x + size * 1.2)} ${fmt(y + size)}L${fmt(x - size * 1.2)} ${fmt(y + size)}Z"/>`;
  }
}

export interface FrameOptions {
  title: string;
  xLabel: string;
  yLabel: string;
  xScale: LinearScale;
  yScale: LinearScale;
  xTicks: number[];
  yTicks: number[];
  xTickFormat?: (v: number) => string;
}

export function frame(opts: FrameOptions): string[] {
  const { xScale, yScale } = opts;
  const x0 = MARGIN.left;
  const x1 = WIDTH - MARGIN.right;
  const y0 = HEIGHT - MARGIN.bottom;
  const y1 = MARGIN.top;
  const xfmt = opts.xTickFormat ?? ((v: number) => String(v));
  const parts: string[] = [];
  parts.push(`<rect x="0" y="0" width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`);
  parts.push(
    `<text class="title" x="${fmt((x0 + x1) / 2)}" y="24" text-anchor="middle" font-size="16">${opts.title}</text>`,
  );
  for (const t of opts.xTicks) {
    const px = xScale.apply(t);
    parts.push(
      `<line x1="${fmt(px)}" y1="${fmt(y0)}" x2="${fmt(px)}" y2="${fmt(y1)}" stroke="#e0e0e0"/>`,
      `<text x="${fmt(px)}" y="${fmt(y0 + 18)}" text-anchor="middle" font-size="11">${xfmt(t)}</text>`,
    );
  }
  for (const t of opts.yTicks) {
    const py = yScale.apply(t);
    parts.push(
      `<line x1="${fmt(x0)}" y1="${fmt(py)}" x2="${fmt(x1)}" y2="${fmt(py)}" stroke="#e0e0e0"/>`,
      `<text x="${fmt(x0 - 8)}" y="${fmt(py + 4)}" text-anchor="end" font-size="11">${xfmt(t)}</text>`,
    );
  }
  parts.push(
    `<line x1="${fmt(x0)}" y1="${fmt(y0)}" x2="${fmt(x1)}" y2="${fmt(y0)}" stroke="#333333"/>`,
    `<line x1="${fmt(x0)}" y1="${fmt(y0)}" x2="${fmt(x0)}" y2="${fmt(y1)}" stroke="#333333"/>`,
    `<text x="${fmt((x0 + x1) / 2)}" y="${fmt(HEIGHT - 14)}" text-anchor="middle" font-size="13">${opts.xLabel}</text>`,
    `<text x="20" y="${fmt((y0 + y1) / 2)}" text-anchor="middle" font-size="13" transform="rotate(-90 20 ${fmt((y0 + y1) / 2)})">${opts.yLabel}</text>`,
  );
  return parts;
}

export function polyline(points: [number, number][], color: string, cls: string): string {
  const coords = points.map(([x, y]) => `${fmt(x)},${fmt(y)}`).join(" ");
  return `<polyline class="${cls}" points="${coords}" fill="none" stroke="${color}" stroke-width="1.5"/>`;
}

export function legend(entries: { label: string; style: SeriesStyle }[]): string[] {
  const x = WIDTH - MARGIN.right + 14;
  const parts: string[] = [];
  entries.forEach((entry, i) => {
    const y = MARGIN.top + 16 + i * 22;
    parts.push(
      `<g class="legend-entry">${marker(entry.style, x, y - 4, "legend-marker")}` +
        `<text x="${fmt(x + 12)}" y="${fmt(y)}" font-size="12">${escapeXml(entry.label)}</text></g>`,
    );
  });
  return parts;
}

export function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function document(body: string[]): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
    `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif">\n` +
    body.join("\n") +
    "\n</svg>\n"
  );
}
