/**
 * CSV parsing and exact-schema validation for the two published layouts.
 */

import Papa from "papaparse";

import {
  CONFORMANCE_COLUMNS, ConformanceRow, DataError, FigureKind, SchemaError,
  SWEEP_COLUMNS, SweepRow, expectedColumns,
} from "./schema";

function splitCsv(text: string): string[][] {
  const parsed = Papa.parse<string[]>(text, { skipEmptyLines: true });
  if (parsed.errors.length > 0) {
    const e = parsed.errors[0];
    throw new DataError(`malformed CSV: ${e.message} (row ${e.row})`);
  }
  return parsed.data;
}

/** Enforce an exact header match, always naming an offending column. */
export function checkHeader(found: string[], kind: FigureKind): void {
  const expected = expectedColumns(kind);
  const missing = expected.filter((c) => !found.includes(c));
  if (missing.length > 0) {
    throw new SchemaError(
      `schema mismatch: missing column "${missing[0]}" ` +
      `(expected ${expected.join(",")})`);
  }
  const extra = found.filter((c) => !expected.includes(c));
  if (extra.length > 0) {
    throw new SchemaError(
      `schema mismatch: unexpected column "${extra[0]}" ` +
      `(expected ${expected.join(",")})`);
  }
  for (let i = 0; i < expected.length; i++) {
    if (found[i] !== expected[i]) {
      throw new SchemaError(
        `schema mismatch: column "${expected[i]}" expected at position ` +
        `${i + 1}, found "${found[i]}"`);
    }
  }
}

function toNumber(cell: string, column: string, row: number,
                  allowInfinite = false): number {
  if (allowInfinite) {
    if (cell === "inf") return Infinity;
    if (cell === "-inf") return -Infinity;
  }
  const value = Number(cell);
  if (cell.trim() === "" || !Number.isFinite(value)) {
    throw new DataError(
      `non-numeric value "${cell}" in column "${column}" (data row ${row})`);
  }
  return value;
}

export function parseSweepCsv(text: string, kind: "theta" | "npm"):
    SweepRow[] {
  const table = splitCsv(text);
  if (table.length === 0) {
    throw new SchemaError(
      `schema mismatch: missing column "${SWEEP_COLUMNS[0]}" (empty file)`);
  }
  checkHeader(table[0], kind);
  const body = table.slice(1);
  if (body.length === 0) throw new DataError("no data rows in CSV");
  return body.map((cells, i) => {
    if (cells.length !== SWEEP_COLUMNS.length) {
      throw new DataError(
        `data row ${i + 1} has ${cells.length} cells, ` +
        `expected ${SWEEP_COLUMNS.length}`);
    }
    const row: SweepRow = {
      sweepName: cells[0],
      sweepVar: cells[1],
      sweepValue: toNumber(cells[2], "sweep_value", i + 1),
      series: cells[3],
      msp: toNumber(cells[4], "msp", i + 1),
      mspStderr: toNumber(cells[5], "msp_stderr", i + 1),
      sdp: toNumber(cells[6], "sdp", i + 1),
      sdpStderr: toNumber(cells[7], "sdp_stderr", i + 1),
      nDraws: toNumber(cells[8], "n_draws", i + 1),
      seed: toNumber(cells[9], "seed", i + 1),
    };
    if (row.sweepName !== kind) {
      throw new DataError(
        `CSV holds a "${row.sweepName}" sweep, not "${kind}" ` +
        `(data row ${i + 1})`);
    }
    return row;
  });
}

export function parseConformanceCsv(text: string): ConformanceRow[] {
  const table = splitCsv(text);
  if (table.length === 0) {
    throw new SchemaError(
      `schema mismatch: missing column "${CONFORMANCE_COLUMNS[0]}" ` +
      "(empty file)");
  }
  checkHeader(table[0], "conformance");
  const body = table.slice(1);
  if (body.length === 0) throw new DataError("no data rows in CSV");
  return body.map((cells, i) => {
    if (cells.length !== CONFORMANCE_COLUMNS.length) {
      throw new DataError(
        `data row ${i + 1} has ${cells.length} cells, ` +
        `expected ${CONFORMANCE_COLUMNS.length}`);
    }
    return {
      term: cells[0],
      closedForm: toNumber(cells[1], "closed_form", i + 1),
      oracleMean: toNumber(cells[2], "oracle_mean", i + 1),
      oracleStderr: toNumber(cells[3], "oracle_stderr", i + 1),
      zScore: toNumber(cells[4], "z_score", i + 1, true),
    };
  });
}
