/**
 * Per-sub-channel weight chart: one marker per index connected by a line,
 * with the extreme of every aligned block of four highlighted (the weight
 * pattern repeats with period four) and sub-channels 3 and 32 annotated when
 * present.
 */

import { WeightPoint } from "./csv";
import {
  LinearScale,
  MARGIN,
  HEIGHT,
  WIDTH,
  SERIES_STYLES,
  document as svgDocument,
  frame,
  marker,
  pad,
  polyline,
  ticks,
} from "./svg";

export interface BlockExtremes {
  valleys: number[];
  peaks: number[];
}

/** Indices of the minimum and maximum weight inside each aligned 4-block. */
export function blockExtremes(points: WeightPoint[]): BlockExtremes {
  const byIndex = new Map(points.map((p) => [p.index, p.weight]));
  const valleys: number[] = [];
  const peaks: number[] = [];
  const maxIndex = Math.max(...points.map((p) => p.index));
  for (let base = 0; base + 3 <= maxIndex; base += 4) {
    const block = [0, 1, 2, 3]
      .map((off) => base + off)
      .filter((i) => byIndex.has(i));
    if (block.length < 4) {
      continue;
    }
    let lo = block[0];
    let hi = block[0];
    for (const i of block) {
      if (byIndex.get(i)! < byIndex.get(lo)!) lo = i;
      if (byIndex.get(i)! > byIndex.get(hi)!) hi = i;
    }
    valleys.push(lo);
    peaks.push(hi);
  }
  return { valleys, peaks };
}

const ANNOTATED = [3, 32];

export function renderWeightsChart(points: WeightPoint[]): string {
  const sorted = [...points].sort((a, b) => a.index - b.index);
  const [xMin, xMax] = pad(sorted[0].index, sorted[sorted.length - 1].index);
  const weights = sorted.map((p) => p.weight);
  const [yMin, yMax] = pad(Math.min(...weights), Math.max(...weights));
  const xScale = new LinearScale(xMin, xMax, MARGIN.left, WIDTH - MARGIN.right);
  const yScale = new LinearScale(yMin, yMax, HEIGHT - MARGIN.bottom, MARGIN.top);

  const body = frame({
    title: `Sub-channel weights (N = ${sorted.length})`,
    xLabel: "sub-channel index",
    yLabel: "weight",
    xScale,
    yScale,
    xTicks: ticks(sorted[0].index, sorted[sorted.length - 1].index, 8),
    yTicks: ticks(yMin, yMax, 6),
  });

  const style = SERIES_STYLES[0];
  body.push(
    polyline(
      sorted.map((p) => [xScale.apply(p.index), yScale.apply(p.weight)]),
      style.color,
      "weight-line",
    ),
  );
  for (const p of sorted) {
    body.push(
      marker(style, xScale.apply(p.index), yScale.apply(p.weight), "pt", 3, ` data-index="${p.index}"`),
    );
  }

  const extremes = blockExtremes(sorted);
  const byIndex = new Map(sorted.map((p) => [p.index, p.weight]));
  const valleyStyle = { color: "#d62728", marker: "triangle" as const };
  for (const i of extremes.valleys) {
    body.push(
      marker(valleyStyle, xScale.apply(i), yScale.apply(byIndex.get(i)!) + 9, "valley", 4, ` data-index="${i}"`),
    );
  }
  const peakStyle = { color: "#2ca02c", marker: "triangle" as const };
  for (const i of extremes.peaks) {
    body.push(
      marker(peakStyle, xScale.apply(i), yScale.apply(byIndex.get(i)!) - 9, "peak", 4, ` data-index="${i}"`),
    );
  }

  for (const i of ANNOTATED) {
    if (byIndex.has(i)) {
      const x = xScale.apply(i);
      const y = yScale.apply(byIndex.get(i)!);
      body.push(
        `<g class="annotation" data-index="${i}">` +
          `<circle cx="${x.toFixed(2)}" cy="${y.toFixed(2)}" r="7" fill="none" stroke="#111111" stroke-dasharray="2 2"/>` +
          `<text x="${(x + 10).toFixed(2)}" y="${(y - 8).toFixed(2)}" font-size="12">i=${i}: ${byIndex
            .get(i)!
            .toPrecision(4)}</text></g>`,
      );
    }
  }
  return svgDocument(body);
}
