import { describe, expect, it } from "vitest";

import { checkHeader, parseConformanceCsv, parseSweepCsv } from "../src/csv";
import { DataError, SchemaError, SWEEP_COLUMNS } from "../src/schema";
import { CONFORMANCE_HEADER, SWEEP_HEADER, conformanceCsv,
         thetaCsv } from "./fixtures";

describe("sweep CSV parsing", () => {
  it("round-trips a valid file", () => {
    const rows = parseSweepCsv(thetaCsv(), "theta");
    expect(rows).toHaveLength(9);
    expect(rows[0]).toEqual({
      sweepName: "theta", sweepVar: "theta_pm_t", sweepValue: 0,
      series: "r=10m", msp: 1, mspStderr: 0.01, sdp: 1, sdpStderr: 0.02,
      nDraws: 100, seed: 1,
    });
  });

  it("names a missing column", () => {
    const broken = thetaCsv().replace(",sdp_stderr", "");
    expect(() => parseSweepCsv(broken, "theta"))
      .toThrow(/missing column "sdp_stderr"/);
  });

  it("names an unexpected column", () => {
    const broken = thetaCsv().replace("sdp_stderr", "sdp_error");
    let message = "";
    try {
      parseSweepCsv(broken, "theta");
    } catch (err) {
      expect(err).toBeInstanceOf(SchemaError);
      message = (err as Error).message;
    }
    expect(message).toContain("sdp_stderr");
  });

  it("rejects reordered columns by name", () => {
    const cols = [...SWEEP_COLUMNS];
    [cols[0], cols[1]] = [cols[1], cols[0]];
    expect(() => checkHeader(cols, "theta"))
      .toThrow(/column "sweep_name" expected at position 1/);
  });

  it("rejects an empty data section", () => {
    expect(() => parseSweepCsv(SWEEP_HEADER + "\n", "theta"))
      .toThrow(/no data rows/);
  });

  it("names the column holding a non-numeric cell", () => {
    const broken = thetaCsv().replace("1,0.01", "one,0.01");
    expect(() => parseSweepCsv(broken, "theta"))
      .toThrow(DataError);
    expect(() => parseSweepCsv(broken, "theta"))
      .toThrow(/column "msp"/);
  });

  it("refuses a sweep of the wrong kind", () => {
    expect(() => parseSweepCsv(thetaCsv(), "npm"))
      .toThrow(/"theta" sweep, not "npm"/);
  });
});

describe("conformance CSV parsing", () => {
  it("parses finite and infinite z-scores", () => {
    const rows = parseConformanceCsv(conformanceCsv(true));
    expect(rows).toHaveLength(4);
    expect(rows[0].zScore).toBe(0.5);
    expect(rows[3].zScore).toBe(-Infinity);
    expect(rows[3].term).toBe("DS (printed)");
  });

  it("keeps infinities out of the other numeric columns", () => {
    const broken = conformanceCsv().replace("1.5e-09", "inf");
    expect(() => parseConformanceCsv(broken))
      .toThrow(/column "closed_form"/);
  });

  it("rejects a sweep header outright", () => {
    expect(() => parseConformanceCsv(thetaCsv()))
      .toThrow(/missing column "term"/);
  });

  it("rejects an empty data section", () => {
    expect(() => parseConformanceCsv(CONFORMANCE_HEADER + "\n"))
      .toThrow(/no data rows/);
  });
});
