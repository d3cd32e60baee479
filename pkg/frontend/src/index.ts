export { checkHeader, parseConformanceCsv, parseSweepCsv } from "./csv";
export {
  FigureSpec, defaultSpec, render, renderConformanceFigure,
  renderNpmFigure, renderThetaFigure,
} from "./figure";
export {
  CONFORMANCE_COLUMNS, ConformanceRow, DataError, FIGURE_KINDS, FigureKind,
  SchemaError, SWEEP_COLUMNS, SweepRow,
} from "./schema";
export { run } from "./run";
