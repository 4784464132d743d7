import { execFileSync } from "node:child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { main, parseInvocation } from "../src/cli.js";

const FIXTURES = fileURLToPath(new URL("./fixtures", import.meta.url));

const steaneCsv = join(FIXTURES, "steane.csv");
const golayCsv = join(FIXTURES, "golay.csv");
const sidecar = join(FIXTURES, "thresholds.json");

function tmp(): string {
  return mkdtempSync(join(tmpdir(), "plots-"));
}

function engineAvailable(): boolean {
  try {
    execFileSync("python3", ["-m", "magicdist", "thresholds"], { stdio: "pipe" });
    return true;
  } catch {
    return false;
  }
}

describe("parseInvocation", () => {
  it("reads kind, output, inputs and the sidecar flag", () => {
    const inv = parseInvocation([
      "accept",
      "out.svg",
      steaneCsv,
      golayCsv,
      "--thresholds",
      sidecar,
    ]);
    expect(inv.kind).toBe("accept");
    expect(inv.outPath).toBe("out.svg");
    expect(inv.csvPaths).toEqual([steaneCsv, golayCsv]);
    expect(inv.thresholdsPath).toBe(sidecar);
  });

  it("finds thresholds.json next to the first CSV", () => {
    const inv = parseInvocation(["pout", "out.svg", steaneCsv]);
    expect(inv.thresholdsPath).toBe(sidecar);
  });

  it("rejects unknown kinds and missing arguments", () => {
    expect(() => parseInvocation(["spiral", "o.svg", steaneCsv])).toThrow(
      /unknown figure kind/,
    );
    expect(() => parseInvocation(["pout"])).toThrow(/usage/);
  });
});

describe("main", () => {
  it("writes identical SVG on repeated runs", () => {
    const dir = tmp();
    const a = join(dir, "a.svg");
    const b = join(dir, "b.svg");
    expect(main(["pout", a, steaneCsv, golayCsv, "--thresholds", sidecar])).toBe(0);
    expect(main(["pout", b, steaneCsv, golayCsv, "--thresholds", sidecar])).toBe(0);
    const svg = readFileSync(a, "utf8");
    expect(svg).toBe(readFileSync(b, "utf8"));
    expect(svg.startsWith("<svg ")).toBe(true);
    expect(svg.trimEnd().endsWith("</svg>")).toBe(true);
  });

  it("fails without clobbering on schema errors", () => {
    const dir = tmp();
    const bad = join(dir, "bad.csv");
    writeFileSync(bad, "p,wrong\n0,1\n");
    const out = join(dir, "out.svg");
    expect(main(["pout", out, bad, "--thresholds", sidecar])).toBe(1);
    expect(() => readFileSync(out)).toThrow();
  });

  it("fails on an empty series", () => {
    const dir = tmp();
    const empty = join(dir, "empty.csv");
    writeFileSync(empty, "p,p_out,delta,accept\n");
    expect(main(["pout", join(dir, "o.svg"), empty, "--thresholds", sidecar])).toBe(1);
  });

  it("fails when no sidecar can be found", () => {
    const dir = tmp();
    const csv = join(dir, "s.csv");
    writeFileSync(csv, readFileSync(steaneCsv));
    const cwd = process.cwd();
    process.chdir(dir);
    try {
      expect(main(["pout", join(dir, "o.svg"), csv])).toBe(1);
    } finally {
      process.chdir(cwd);
    }
  });
});

describe("against the live engine", () => {
  it.skipIf(!engineAvailable())("fixtures match freshly generated sweeps", () => {
    const dir = tmp();
    const fresh = join(dir, "steane.csv");
    execFileSync("python3", [
      "-m",
      "magicdist",
      "sweep",
      "--code",
      "steane",
      "--grid",
      "0:0.25:26",
      "--out",
      fresh,
    ]);
    expect(readFileSync(fresh, "utf8")).toBe(readFileSync(steaneCsv, "utf8"));
    const thresholds = execFileSync("python3", ["-m", "magicdist", "thresholds"], {
      encoding: "utf8",
    });
    expect(JSON.parse(thresholds)).toEqual(
      JSON.parse(readFileSync(sidecar, "utf8")),
    );
  });
});
