import { readFileSync } from "fs";
import { join } from "path";
import { describe, expect, it } from "vitest";

import { CsvError, parseComparisonCsv } from "../src/csv";
import { parseZoom, renderRequiredSnrChart } from "../src/requiredSnr";

const CMP = parseComparisonCsv(readFileSync(join(__dirname, "fixtures", "cmp128.csv"), "utf8"));

describe("required-SNR chart", () => {
  it("draws one legend entry per method column", () => {
    const svg = renderRequiredSnrChart(CMP);
    expect(svg.match(/class="legend-entry"/g)).toHaveLength(4);
    expect(svg).toContain("ga:snr=3.0");
  });

  it("draws one curve per method", () => {
    const svg = renderRequiredSnrChart(CMP);
    for (let col = 0; col < 4; col++) {
      expect(svg).toContain(`curve-${col}`);
      expect(svg.match(new RegExp(`class="series-${col}"`, "g"))).toHaveLength(3);
    }
  });

  it("handles a single-row table without polylines", () => {
    const table = parseComparisonCsv("k,pw,ga\n40,2.5,2.75\n");
    const svg = renderRequiredSnrChart(table);
    expect(svg).not.toContain("<polyline");
    expect(svg.match(/class="series-0"/g)).toHaveLength(1);
  });

  it("skips missing cells but keeps the method in the legend", () => {
    const table = parseComparisonCsv("k,pw,ga\n8,1.0,\n16,2.0,\n");
    const svg = renderRequiredSnrChart(table);
    expect(svg.match(/class="legend-entry"/g)).toHaveLength(2);
    expect(svg.match(/class="series-1"/g)).toBeNull();
  });

  it("zooms to a K window", () => {
    const svg = renderRequiredSnrChart(CMP, parseZoom("50:100"));
    expect(svg.match(/class="series-0"/g)).toHaveLength(2);
    expect(svg).toContain("zoom 50..100");
  });

  it("rejects a zoom window that excludes all data", () => {
    expect(() => renderRequiredSnrChart(CMP, parseZoom("500:600"))).toThrow(/excludes every data row/);
  });

  it("rejects malformed zoom strings", () => {
    expect(() => parseZoom("abc")).toThrow(CsvError);
    expect(() => parseZoom("10:5")).toThrow(/empty/);
  });

  it("rejects tables with no finite values", () => {
    const table = parseComparisonCsv("k,pw\n8,\n");
    expect(() => renderRequiredSnrChart(table)).toThrow(/no finite/);
  });

  it("renders deterministically", () => {
    expect(renderRequiredSnrChart(CMP)).toBe(renderRequiredSnrChart(CMP));
  });
});
