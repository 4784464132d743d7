/**
 * Deterministic SVG rendering for sweep figures. The output is a pure
 * function of the curve data and the threshold markers: fixed canvas,
 * fixed palette, fixed number formatting, no timestamps.
 *
 * Figure kinds:
 *   pout    p_out vs p, linear axes, with the identity line p_out = p
 *   delta   p_out - p vs p, linear axes, with the zero line
 *   accept  acceptance probability vs p on a log axis (the curves span
 *           several decades)
 * All kinds draw vertical markers at the `p_*` threshold constants.
 */

import type { CurveSet, FigureKind, Series } from "./data.js";

export const WIDTH = 640;
export const HEIGHT = 420;
const MARGIN = { left: 64, right: 16, top: 16, bottom: 46 } as const;

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#8c564b", "#e377c2"];
const DASHES = ["", "6 3", "2 3", "8 3 2 3", "4 2", "1 3"];

const Y_LABEL: Record<FigureKind, string> = {
  pout: "output error p_out",
  delta: "improvement p_out - p",
  accept: "acceptance probability",
};

/** Pixel coordinates rounded to a fixed grid so re-renders are identical. */
function px(value: number): string {
  const fixed = value.toFixed(2);
  return fixed === "-0.00" ? "0.00" : fixed;
}

/** Tick label: shortest round-trip-stable decimal of a round tick value. */
function label(value: number): string {
  if (value !== 0 && (Math.abs(value) < 1e-3 || Math.abs(value) >= 1e4)) {
    return value.toExponential(0).replace("e+", "e").replace("e-", "e-");
  }
  return String(parseFloat(value.toPrecision(10)));
}

function niceStep(rough: number): number {
  const power = Math.pow(10, Math.floor(Math.log10(rough)));
  for (const mult of [1, 2, 5, 10]) {
    if (rough <= mult * power) return mult * power;
  }
  return 10 * power;
}

interface Scale {
  (value: number): number;
  readonly lo: number;
  readonly hi: number;
}

function linearScale(lo: number, hi: number, outLo: number, outHi: number): Scale {
  const f = (value: number) => outLo + ((value - lo) / (hi - lo)) * (outHi - outLo);
  return Object.assign(f, { lo, hi });
}

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function dataExtent(series: Series[], axis: 0 | 1): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const s of series) {
    for (const point of s.points) {
      const v = point[axis];
      if (v < lo) lo = v;
      if (v > hi) hi = v;
    }
  }
  return [lo, hi];
}

function yDomain(curves: CurveSet): [number, number] {
  const [lo, hi] = dataExtent(curves.series, 1);
  switch (curves.kind) {
    case "pout": {
      const top = Math.max(0.25, hi);
      return [0, Math.ceil(top / 0.05) * 0.05];
    }
    case "delta": {
      const step = niceStep(Math.max(hi - lo, 1e-12) / 5);
      return [
        Math.min(0, Math.floor(lo / step) * step),
        Math.max(0, Math.ceil(hi / step) * step),
      ];
    }
    case "accept": {
      if (lo <= 0) {
        throw new Error("acceptance must be positive for the log axis");
      }
      return [Math.floor(Math.log10(lo)), Math.ceil(Math.log10(hi))];
    }
  }
}

function linearTicks(lo: number, hi: number, target = 6): number[] {
  const step = niceStep((hi - lo) / (target - 1));
  const ticks: number[] = [];
  for (let v = Math.ceil(lo / step) * step; v <= hi + step * 1e-9; v += step) {
    ticks.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return ticks;
}

function pathOf(points: Array<[number, number]>, x: Scale, y: Scale, ly: boolean): string {
  return points
    .map(([p, v], i) => {
      const yy = ly ? Math.log10(v) : v;
      return `${i === 0 ? "M" : "L"}${px(x(p))} ${px(y(yy))}`;
    })
    .join(" ");
}

/** Render one figure; markers are (name, p) pairs from the sidecar. */
export function renderFigure(
  curves: CurveSet,
  markers: Array<[string, number]>,
): string {
  const logY = curves.kind === "accept";
  const [, pHi] = dataExtent(curves.series, 0);
  const x = linearScale(0, Math.max(0.25, pHi), MARGIN.left, WIDTH - MARGIN.right);
  const [yLo, yHi] = yDomain(curves);
  const y = linearScale(yLo, yHi, HEIGHT - MARGIN.bottom, MARGIN.top);

  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" ` +
      `viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif" font-size="11">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
  ];

  // axes frame
  const plotBottom = HEIGHT - MARGIN.bottom;
  parts.push(
    `<g class="frame" stroke="#333" fill="none">` +
      `<line x1="${px(MARGIN.left)}" y1="${px(MARGIN.top)}" ` +
      `x2="${px(MARGIN.left)}" y2="${px(plotBottom)}"/>` +
      `<line x1="${px(MARGIN.left)}" y1="${px(plotBottom)}" ` +
      `x2="${px(WIDTH - MARGIN.right)}" y2="${px(plotBottom)}"/></g>`,
  );

  // x ticks every 0.05
  const xTicks: string[] = [];
  for (let v = 0; v <= x.hi + 1e-9; v += 0.05) {
    const xx = px(x(v));
    xTicks.push(
      `<line x1="${xx}" y1="${px(plotBottom)}" x2="${xx}" y2="${px(plotBottom + 5)}" stroke="#333"/>` +
        `<text x="${xx}" y="${px(plotBottom + 18)}" text-anchor="middle">${label(v)}</text>`,
    );
  }
  parts.push(`<g class="x-axis">${xTicks.join("")}</g>`);

  // y ticks: linear ladder or one per decade
  const yTickValues = logY
    ? Array.from({ length: yHi - yLo + 1 }, (_, i) => yLo + i)
    : linearTicks(yLo, yHi);
  const yTicks = yTickValues.map((v) => {
    const yy = px(y(v));
    const text = logY ? (v === 0 ? "1" : `1e${v}`) : label(v);
    return (
      `<line x1="${px(MARGIN.left - 5)}" y1="${yy}" x2="${px(MARGIN.left)}" y2="${yy}" stroke="#333"/>` +
      `<text x="${px(MARGIN.left - 8)}" y="${yy}" dy="3" text-anchor="end">${text}</text>`
    );
  });
  parts.push(`<g class="y-axis">${yTicks.join("")}</g>`);

  // axis labels
  parts.push(
    `<text x="${px((MARGIN.left + WIDTH - MARGIN.right) / 2)}" y="${px(HEIGHT - 10)}" ` +
      `text-anchor="middle">input error p</text>`,
    `<text x="14" y="${px((MARGIN.top + plotBottom) / 2)}" text-anchor="middle" ` +
      `transform="rotate(-90 14 ${px((MARGIN.top + plotBottom) / 2)})">` +
      `${esc(Y_LABEL[curves.kind])}</text>`,
  );

  // reference lines: identity for pout, zero for delta
  if (curves.kind === "pout") {
    const end = Math.min(x.hi, yHi);
    parts.push(
      `<line class="identity" x1="${px(x(0))}" y1="${px(y(0))}" ` +
        `x2="${px(x(end))}" y2="${px(y(end))}" stroke="#999" stroke-dasharray="3 3"/>`,
    );
  } else if (curves.kind === "delta" && yLo < 0 && yHi > 0) {
    parts.push(
      `<line class="zero" x1="${px(MARGIN.left)}" y1="${px(y(0))}" ` +
        `x2="${px(WIDTH - MARGIN.right)}" y2="${px(y(0))}" stroke="#999" stroke-dasharray="3 3"/>`,
    );
  }

  // vertical threshold markers
  const markerParts = markers
    .filter(([, p]) => p >= x.lo && p <= x.hi)
    .map(([name, p]) => {
      const xx = px(x(p));
      return (
        `<line class="threshold" data-name="${esc(name)}" x1="${xx}" y1="${px(MARGIN.top)}" ` +
        `x2="${xx}" y2="${px(plotBottom)}" stroke="#bbb" stroke-dasharray="1 3"/>` +
        `<text x="${xx}" y="${px(MARGIN.top + 9)}" dx="3" fill="#888">${esc(name)}</text>`
      );
    });
  parts.push(`<g class="markers">${markerParts.join("")}</g>`);

  // the curves
  const curveParts = curves.series.map((s, i) => {
    const color = PALETTE[i % PALETTE.length]!;
    const dash = DASHES[i % DASHES.length]!;
    const dashAttr = dash === "" ? "" : ` stroke-dasharray="${dash}"`;
    return (
      `<path class="curve" data-name="${esc(s.name)}" fill="none" ` +
      `stroke="${color}" stroke-width="1.5"${dashAttr} ` +
      `d="${pathOf(s.points, x, y, logY)}"/>`
    );
  });
  parts.push(`<g class="curves">${curveParts.join("")}</g>`);

  // legend, top-right inside the frame
  const legendX = WIDTH - MARGIN.right - 150;
  const legend = curves.series.map((s, i) => {
    const yy = MARGIN.top + 12 + 16 * i;
    const color = PALETTE[i % PALETTE.length]!;
    const dash = DASHES[i % DASHES.length]!;
    const dashAttr = dash === "" ? "" : ` stroke-dasharray="${dash}"`;
    return (
      `<line x1="${px(legendX)}" y1="${px(yy)}" x2="${px(legendX + 26)}" y2="${px(yy)}" ` +
      `stroke="${color}" stroke-width="1.5"${dashAttr}/>` +
      `<text x="${px(legendX + 32)}" y="${px(yy)}" dy="3">${esc(s.name)}</text>`
    );
  });
  parts.push(`<g class="legend">${legend.join("")}</g>`);

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
