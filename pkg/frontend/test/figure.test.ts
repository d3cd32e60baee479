import { describe, expect, it } from "vitest";

import { parseConformanceCsv, parseSweepCsv } from "../src/csv";
import { defaultSpec, renderConformanceFigure, renderNpmFigure,
         renderThetaFigure } from "../src/figure";
import { conformanceCsv, count, npmCsv, thetaCsv } from "./fixtures";

const thetaSpec = defaultSpec("theta", "in.csv", "out.svg");
const npmSpec = defaultSpec("npm", "in.csv", "out.svg");
const confSpec = defaultSpec("conformance", "in.csv", "out.svg");

function polylinePoints(svg: string, cls: string): number[][][] {
  const out: number[][][] = [];
  const re = new RegExp(`<polyline[^>]*class="${cls}"[^>]*>`, "g");
  for (const element of svg.match(re) ?? []) {
    const pts = /points="([^"]*)"/.exec(element)![1];
    out.push(pts.split(" ").map((p) => p.split(",").map(Number)));
  }
  return out;
}

describe("theta figure", () => {
  const rows = parseSweepCsv(thetaCsv(), "theta");

  it("draws one MSP and one SDP curve per radius", () => {
    const svg = renderThetaFigure(rows, thetaSpec);
    expect(count(svg, 'class="curve"')).toBe(6);
    expect(count(svg, "MSP r=10m")).toBeGreaterThan(0);
    expect(count(svg, "SDP r=100m")).toBeGreaterThan(0);
  });

  it("draws one error bar per plotted point", () => {
    const svg = renderThetaFigure(rows, thetaSpec);
    expect(count(svg, 'class="errbar"')).toBe(18);
  });

  it("is deterministic", () => {
    expect(renderThetaFigure(rows, thetaSpec))
      .toBe(renderThetaFigure(rows, thetaSpec));
  });

  it("keeps the x-axis monotone even for shuffled rows", () => {
    const shuffled = [rows[7], rows[2], rows[0], rows[5], rows[1],
                      rows[8], rows[3], rows[6], rows[4]];
    const svg = renderThetaFigure(shuffled, thetaSpec);
    for (const pts of polylinePoints(svg, "curve")) {
      const xs = pts.map((p) => p[0]);
      expect(xs).toEqual([...xs].sort((a, b) => a - b));
    }
  });

  it("is a valid standalone SVG document", () => {
    const svg = renderThetaFigure(rows, thetaSpec);
    expect(svg.startsWith("<svg xmlns=")).toBe(true);
    expect(svg.trimEnd().endsWith("</svg>")).toBe(true);
    expect(svg).not.toContain("NaN");
  });
});

describe("npm figure", () => {
  const rows = parseSweepCsv(npmCsv(), "npm");

  it("renders the baseline as a flat reference line", () => {
    const svg = renderNpmFigure(rows, npmSpec);
    expect(count(svg, 'class="refline"')).toBe(1);
    expect(count(svg, 'class="curve"')).toBe(2);
    const [pts] = polylinePoints(svg, "refline");
    const ys = new Set(pts.map((p) => p[1]));
    expect(ys.size).toBe(1);
  });

  it("draws error bars for every series including the baseline", () => {
    const svg = renderNpmFigure(rows, npmSpec);
    expect(count(svg, 'class="errbar"')).toBe(12);
  });

  it("labels all three series in the legend", () => {
    const svg = renderNpmFigure(rows, npmSpec);
    for (const label of ["baseline", "P_pm=1W", "P_pm=3W"]) {
      expect(svg).toContain(`>${label}</text>`);
    }
  });
});

describe("conformance figure", () => {
  it("draws one bar per report row with |z| = 4 guides", () => {
    const rows = parseConformanceCsv(conformanceCsv());
    const svg = renderConformanceFigure(rows, confSpec);
    expect(count(svg, 'class="zbar')).toBe(3);
    expect(count(svg, 'class="guide"')).toBe(2);
  });

  it("clips infinite z-scores to the plot edge", () => {
    const rows = parseConformanceCsv(conformanceCsv(true));
    const svg = renderConformanceFigure(rows, confSpec);
    expect(count(svg, 'class="zbar clipped"')).toBe(1);
    expect(svg).not.toContain("Infinity");
  });
});
