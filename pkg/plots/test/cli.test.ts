import { mkdtempSync, readFileSync, writeFileSync } from "fs";
import { tmpdir } from "os";
import { join } from "path";
import { describe, expect, it } from "vitest";

import { main } from "../src/cli";

const FIXTURES = join(__dirname, "fixtures");
const scratch = () => mkdtempSync(join(tmpdir(), "polar-plots-"));

describe("plot CLI", () => {
  it("renders the weights fixture", () => {
    const out = join(scratch(), "pw64.svg");
    const code = main(["weights", "--in", join(FIXTURES, "pw64.csv"), "--out", out]);
    expect(code).toBe(0);
    expect(readFileSync(out, "utf8")).toContain("<svg");
  });

  it("renders the comparison fixture with zoom", () => {
    const out = join(scratch(), "cmp.svg");
    const code = main([
      "required-snr", "--in", join(FIXTURES, "cmp128.csv"), "--out", out, "--zoom", "30:70",
    ]);
    expect(code).toBe(0);
    expect(readFileSync(out, "utf8")).toContain("legend-entry");
  });

  it("regenerates byte-identical output", () => {
    const dir = scratch();
    const a = join(dir, "a.svg");
    const b = join(dir, "b.svg");
    expect(main(["weights", "--in", join(FIXTURES, "pw64.csv"), "--out", a])).toBe(0);
    expect(main(["weights", "--in", join(FIXTURES, "pw64.csv"), "--out", b])).toBe(0);
    expect(readFileSync(a)).toEqual(readFileSync(b));
  });

  it("fails with exit 1 on an empty CSV", () => {
    const dir = scratch();
    const empty = join(dir, "empty.csv");
    writeFileSync(empty, "");
    expect(main(["weights", "--in", empty, "--out", join(dir, "x.svg")])).toBe(1);
  });

  it("fails with exit 1 on a missing input file", () => {
    const dir = scratch();
    expect(main(["weights", "--in", join(dir, "nope.csv"), "--out", join(dir, "x.svg")])).toBe(1);
  });

  it("fails with exit 1 when the zoom excludes all rows", () => {
    const dir = scratch();
    const code = main([
      "required-snr", "--in", join(FIXTURES, "cmp128.csv"),
      "--out", join(dir, "x.svg"), "--zoom", "900:999",
    ]);
    expect(code).toBe(1);
  });

  it("fails with exit 2 on usage errors", () => {
    expect(main(["pie-chart", "--in", "a", "--out", "b"])).toBe(2);
    expect(main(["weights", "--in", "a"])).toBe(2);
    expect(main(["weights", "--in", "a", "--out", "b", "--bogus", "1"])).toBe(2);
    expect(main(["weights", "--in", "a", "--out", "b", "--zoom", "1:2"])).toBe(2);
  });
});
