export {
  FIGURE_KINDS,
  SWEEP_HEADER,
  loadCurveSet,
  loadThresholdMarkers,
  parseSweepCsv,
  seriesName,
  toCurveSet,
} from "./data.js";
export type { CurveSet, FigureKind, Series, SweepRow, SweepTable } from "./data.js";
export { HEIGHT, WIDTH, renderFigure } from "./svg.js";
export { main, parseInvocation } from "./cli.js";
export type { Invocation } from "./cli.js";
