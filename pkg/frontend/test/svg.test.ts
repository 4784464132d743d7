import { readFileSync } from "node:fs";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import {
  CurveSet,
  loadThresholdMarkers,
  parseSweepCsv,
  toCurveSet,
} from "../src/data.js";
import { renderFigure } from "../src/svg.js";

const FIXTURES = fileURLToPath(new URL("./fixtures", import.meta.url));

const read = (name: string) => readFileSync(join(FIXTURES, name), "utf8");

const tables = ["steane", "golay", "bk15", "rm15"].map((name) =>
  parseSweepCsv(read(`${name}.csv`), name),
);
const markers = loadThresholdMarkers(join(FIXTURES, "thresholds.json"));

const count = (text: string, needle: string) => text.split(needle).length - 1;

describe("renderFigure", () => {
  it("is a pure function of its inputs", () => {
    const curves = toCurveSet(tables, "pout");
    expect(renderFigure(curves, markers)).toBe(renderFigure(curves, markers));
  });

  it("draws every series, the identity line and the markers on pout", () => {
    const svg = renderFigure(toCurveSet(tables, "pout"), markers);
    expect(count(svg, 'class="curve"')).toBe(4);
    for (const name of ["steane", "golay", "bk15", "rm15"]) {
      expect(svg).toContain(`data-name="${name}"`);
    }
    expect(count(svg, 'class="identity"')).toBe(1);
    expect(count(svg, 'class="threshold"')).toBe(3);
    for (const name of ["p_H_new", "p_H_bk", "p_T"]) {
      expect(svg).toContain(`data-name="${name}"`);
    }
  });

  it("skips the comparator on accept figures and uses a log axis", () => {
    const svg = renderFigure(toCurveSet(tables, "accept"), markers);
    expect(count(svg, 'class="curve"')).toBe(3);
    expect(svg).not.toContain('data-name="bk15"');
    expect(svg).toContain(">1e-7<");
    expect(svg).toContain(">1e-1<");
    expect(svg).not.toContain('class="identity"');
  });

  it("draws the zero line on delta figures", () => {
    const svg = renderFigure(toCurveSet(tables, "delta"), markers);
    expect(count(svg, 'class="zero"')).toBe(1);
  });

  it("rejects non-positive values on the log axis", () => {
    const curves: CurveSet = {
      kind: "accept",
      series: [{ name: "x", points: [[0, 0], [0.1, 0.5]] }],
    };
    expect(() => renderFigure(curves, markers)).toThrow(/positive/);
  });

  it("omits markers outside the plotted range", () => {
    const svg = renderFigure(toCurveSet(tables, "pout"), [
      ...markers,
      ["p_far", 0.4],
    ]);
    expect(count(svg, 'class="threshold"')).toBe(3);
    expect(svg).not.toContain("p_far");
  });
});

describe("figure-level facts from the engine sweeps", () => {
  it("shows golay acceptance strictly below steane at every grid point", () => {
    const steane = tables.find((t) => t.name === "steane")!;
    const golay = tables.find((t) => t.name === "golay")!;
    expect(golay.rows).toHaveLength(steane.rows.length);
    for (let i = 0; i < steane.rows.length; i++) {
      expect(golay.rows[i]!.p).toBe(steane.rows[i]!.p);
      expect(golay.rows[i]!.accept).toBeLessThan(steane.rows[i]!.accept);
    }
  });

  it("crosses the identity upward at each procedure's threshold", () => {
    const expected: Record<string, number> = {
      steane: (2 - Math.SQRT2) / 4,
      golay: (2 - Math.SQRT2) / 4,
      bk15: 0.14148029265616732,
    };
    for (const [name, threshold] of Object.entries(expected)) {
      const rows = tables.find((t) => t.name === name)!.rows;
      // Skip the p = 0 row, where p_out - p is rounding noise.  Golay also
      // crosses the identity downward near its spurious attractor, so only
      // the upward sign change of p_out - p marks the threshold.
      const up: Array<[number, number]> = [];
      for (let i = 2; i < rows.length; i++) {
        const a = rows[i - 1]!;
        const b = rows[i]!;
        if (a.p_out - a.p < 0 && b.p_out - b.p > 0) {
          up.push([a.p, b.p]);
        }
      }
      expect(up).toHaveLength(1);
      const [lo, hi] = up[0]!;
      expect(lo).toBeLessThan(threshold);
      expect(hi).toBeGreaterThan(threshold);
      expect(hi - lo).toBeCloseTo(0.01, 12);
    }
  });

  it("golay makes small inputs worse on its way to the wrong attractor", () => {
    const at = (name: string, p: number) =>
      tables
        .find((t) => t.name === name)!
        .rows.find((row) => Math.abs(row.p - p) < 1e-12)!;
    expect(at("golay", 0.01).p_out).toBeGreaterThan(0.01);
    expect(at("steane", 0.01).p_out).toBeLessThan(0.01);
  });
});
