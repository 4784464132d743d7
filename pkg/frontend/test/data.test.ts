import { readFileSync } from "node:fs";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import {
  loadThresholdMarkers,
  parseSweepCsv,
  seriesName,
  toCurveSet,
} from "../src/data.js";

const FIXTURES = fileURLToPath(new URL("./fixtures", import.meta.url));

const read = (name: string) => readFileSync(join(FIXTURES, name), "utf8");

describe("parseSweepCsv", () => {
  it("parses a sweep produced by the engine", () => {
    const table = parseSweepCsv(read("steane.csv"), "steane");
    expect(table.name).toBe("steane");
    expect(table.rows).toHaveLength(26);
    expect(table.rows[0]).toEqual({
      p: 0,
      p_out: -1.11022302463e-16,
      delta: -1.11022302463e-16,
      accept: 0.0703125,
    });
    expect(table.rows[25]!.p).toBeCloseTo(0.25, 12);
  });

  it("keeps nan acceptance of comparator maps", () => {
    const table = parseSweepCsv(read("bk15.csv"), "bk15");
    expect(table.rows.every((row) => Number.isNaN(row.accept))).toBe(true);
    expect(table.rows.every((row) => Number.isFinite(row.p_out))).toBe(true);
  });

  it("rejects a wrong header", () => {
    expect(() => parseSweepCsv("p,pout,delta,accept\n0,0,0,1\n", "x")).toThrow(
      /expected header/,
    );
    expect(() => parseSweepCsv("", "x")).toThrow(/expected header/);
  });

  it("rejects empty series", () => {
    expect(() => parseSweepCsv("p,p_out,delta,accept\n", "x")).toThrow(
      /empty series/,
    );
  });

  it("rejects non-increasing p", () => {
    const body = "p,p_out,delta,accept\n0.2,0,0,1\n0.1,0,0,1\n";
    expect(() => parseSweepCsv(body, "x")).toThrow(/strictly increasing/);
    const dup = "p,p_out,delta,accept\n0.2,0,0,1\n0.2,0,0,1\n";
    expect(() => parseSweepCsv(dup, "x")).toThrow(/strictly increasing/);
  });

  it("rejects junk values, nan p, and short rows", () => {
    expect(() =>
      parseSweepCsv("p,p_out,delta,accept\n0,zero,0,1\n", "x"),
    ).toThrow(/not a number/);
    expect(() =>
      parseSweepCsv("p,p_out,delta,accept\nnan,0,0,1\n", "x"),
    ).toThrow(/p may not be nan/);
    expect(() => parseSweepCsv("p,p_out,delta,accept\n0,0,0\n", "x")).toThrow(
      /expected 4/,
    );
  });
});

describe("seriesName", () => {
  it("uses the file stem", () => {
    expect(seriesName("/tmp/run/steane.csv")).toBe("steane");
    expect(seriesName("golay.sweep.csv")).toBe("golay.sweep");
  });
});

describe("toCurveSet", () => {
  const steane = parseSweepCsv(read("steane.csv"), "steane");
  const bk15 = parseSweepCsv(read("bk15.csv"), "bk15");

  it("selects the column for the figure kind", () => {
    const pout = toCurveSet([steane], "pout");
    expect(pout.series[0]!.points[5]).toEqual([
      steane.rows[5]!.p,
      steane.rows[5]!.p_out,
    ]);
    const delta = toCurveSet([steane], "delta");
    expect(delta.series[0]!.points[5]![1]).toBe(steane.rows[5]!.delta);
  });

  it("skips nan-acceptance series on accept figures", () => {
    const curves = toCurveSet([steane, bk15], "accept");
    expect(curves.series.map((s) => s.name)).toEqual(["steane"]);
  });

  it("errors when nothing is left to draw", () => {
    expect(() => toCurveSet([bk15], "accept")).toThrow(/no series/);
  });

  it("errors on nan in a non-accept column", () => {
    const bad = parseSweepCsv("p,p_out,delta,accept\n0,nan,0,1\n", "bad");
    expect(() => toCurveSet([bad], "pout")).toThrow(/nan in the p_out column/);
  });
});

describe("loadThresholdMarkers", () => {
  it("extracts the p_* constants sorted by value", () => {
    const markers = loadThresholdMarkers(join(FIXTURES, "thresholds.json"));
    expect(markers.map(([name]) => name)).toEqual(["p_H_bk", "p_H_new", "p_T"]);
    const values = markers.map(([, p]) => p);
    expect(values[0]).toBeCloseTo(0.14148029265616732, 12);
    expect(values[1]).toBeCloseTo((2 - Math.SQRT2) / 4, 12);
    expect(values[2]).toBeCloseTo(0.17267316464601146, 12);
  });
});
