/**
 * Published CSV schemas and the row types the figures consume.
 *
 * The plotter refuses any CSV whose header does not match the published
 * schema exactly (same columns, same order); the error always names a
 * column so the producer knows what to fix.
 */

export const SWEEP_COLUMNS = [
  "sweep_name", "sweep_var", "sweep_value", "series",
  "msp", "msp_stderr", "sdp", "sdp_stderr", "n_draws", "seed",
] as const;

export const CONFORMANCE_COLUMNS = [
  "term", "closed_form", "oracle_mean", "oracle_stderr", "z_score",
] as const;

export type FigureKind = "theta" | "npm" | "conformance";

export const FIGURE_KINDS: readonly FigureKind[] =
  ["theta", "npm", "conformance"];

export interface SweepRow {
  sweepName: string;
  sweepVar: string;
  sweepValue: number;
  series: string;
  msp: number;
  mspStderr: number;
  sdp: number;
  sdpStderr: number;
  nDraws: number;
  seed: number;
}

export interface ConformanceRow {
  term: string;
  closedForm: number;
  oracleMean: number;
  oracleStderr: number;
  /** May be +-Infinity for exactly-deterministic terms. */
  zScore: number;
}

/** The CSV header does not match the published schema. */
export class SchemaError extends Error {}

/** The CSV is structurally fine but its contents cannot be plotted. */
export class DataError extends Error {}

export function expectedColumns(kind: FigureKind): readonly string[] {
  return kind === "conformance" ? CONFORMANCE_COLUMNS : SWEEP_COLUMNS;
}
