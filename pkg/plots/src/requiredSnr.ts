/**
 * Required-SNR-versus-K chart: one curve per construction method column of a
 * comparison CSV, with an optional zoom window on K for the crowded
 * upper-rate region.
 */

import { ComparisonTable, CsvError } from "./csv";
import {
  LinearScale,
  MARGIN,
  HEIGHT,
  WIDTH,
  SERIES_STYLES,
  document as svgDocument,
  frame,
  legend,
  marker,
  pad,
  polyline,
  ticks,
} from "./svg";

export interface ZoomWindow {
  kMin: number;
  kMax: number;
}

export function parseZoom(text: string): ZoomWindow {
  const m = /^(-?\d+(?:\.\d+)?):(-?\d+(?:\.\d+)?)$/.exec(text.trim());
  if (!m) {
    throw new CsvError(`zoom must be kmin:kmax, got ${JSON.stringify(text)}`);
  }
  const kMin = Number(m[1]);
  const kMax = Number(m[2]);
  if (kMin >= kMax) {
    throw new CsvError(`zoom window is empty: ${kMin}:${kMax}`);
  }
  return { kMin, kMax };
}

export function renderRequiredSnrChart(table: ComparisonTable, zoom?: ZoomWindow): string {
  let rows = table.rows;
  if (zoom) {
    rows = rows.filter((row) => row.k >= zoom.kMin && row.k <= zoom.kMax);
    if (rows.length === 0) {
      throw new CsvError(
        `zoom window ${zoom.kMin}:${zoom.kMax} excludes every data row`,
      );
    }
  }
  const values: number[] = [];
  for (const row of rows) {
    for (const v of row.values) {
      if (v !== null) {
        values.push(v);
      }
    }
  }
  if (values.length === 0) {
    throw new CsvError("no finite required-SNR values to plot");
  }
  const [xMin, xMax] = pad(rows[0].k, rows[rows.length - 1].k);
  const [yMin, yMax] = pad(Math.min(...values), Math.max(...values));
  const xScale = new LinearScale(xMin, xMax, MARGIN.left, WIDTH - MARGIN.right);
  const yScale = new LinearScale(yMin, yMax, HEIGHT - MARGIN.bottom, MARGIN.top);

  const zoomNote = zoom ? ` (zoom ${zoom.kMin}..${zoom.kMax})` : "";
  const body = frame({
    title: `Required SNR to reach the target BLER${zoomNote}`,
    xLabel: "information length K",
    yLabel: "required SNR (dB)",
    xScale,
    yScale,
    xTicks: ticks(rows[0].k, rows[rows.length - 1].k, 8),
    yTicks: ticks(yMin, yMax, 6),
    xTickFormat: (v) => (Number.isInteger(v) ? String(v) : v.toFixed(2)),
  });

  table.methods.forEach((method, col) => {
    const style = SERIES_STYLES[col % SERIES_STYLES.length];
    const pts: [number, number][] = [];
    for (const row of rows) {
      const v = row.values[col];
      if (v !== null) {
        pts.push([xScale.apply(row.k), yScale.apply(v)]);
      }
    }
    if (pts.length >= 2) {
      body.push(polyline(pts, style.color, `curve curve-${col}`));
    }
    for (const [x, y] of pts) {
      body.push(marker(style, x, y, `series-${col}`, 4));
    }
  });

  body.push(...legend(table.methods.map((label, col) => ({
    label,
    style: SERIES_STYLES[col % SERIES_STYLES.length],
  }))));
  return svgDocument(body);
}
