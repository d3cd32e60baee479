/**
 * Figure rendering: sweep curves with error bars and the conformance
 * z-score chart, all as hand-assembled deterministic SVG.
 *
 * The plotter computes no statistics -- every coordinate comes straight
 * from a CSV cell.  Points are sorted by the sweep value so the x-axis is
 * monotone regardless of row order; a constant series (the monitor-off
 * baseline) therefore renders as a flat reference line.
 */

import * as fs from "fs";
import * as path from "path";

import { parseConformanceCsv, parseSweepCsv } from "./csv";
import { ConformanceRow, FigureKind, SweepRow } from "./schema";
import { document, errorBar, fmt, line, polyline, tag, text } from "./svg";

export interface FigureSpec {
  csvPath: string;
  kind: FigureKind;
  outPath: string;
  xLabel: string;
  yLabel: string;
  seriesColumn: string;
}

const KIND_DEFAULTS: Record<FigureKind, { x: string; y: string }> = {
  theta: { x: "monitor power split toward target (theta_pm,t)",
           y: "probability" },
  npm: { x: "monitor antennas (N_pm)", y: "SDP" },
  conformance: { x: "z-score", y: "term" },
};

export function defaultSpec(kind: FigureKind, csvPath: string,
                            outPath: string): FigureSpec {
  return { csvPath, kind, outPath, xLabel: KIND_DEFAULTS[kind].x,
           yLabel: KIND_DEFAULTS[kind].y, seriesColumn: "series" };
}

const WIDTH = 720;
const HEIGHT = 480;
const ML = 62;
const MR = 168;
const MT = 42;
const MB = 54;
const PW = WIDTH - ML - MR;
const PH = HEIGHT - MT - MB;

const PALETTE = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                 "#8c564b"];
const BASELINE_COLOR = "#555555";

function uniqueInOrder<T>(values: T[]): T[] {
  return [...new Set(values)];
}

function clamp01(v: number): number {
  return Math.min(1, Math.max(0, v));
}

interface Scales {
  x: (v: number) => number;
  y: (p: number) => number;
  xTicks: number[];
}

function sweepScales(rows: SweepRow[]): Scales {
  const xs = uniqueInOrder(rows.map((r) => r.sweepValue))
    .sort((a, b) => a - b);
  const x0 = xs[0];
  const span = xs[xs.length - 1] - x0;
  return {
    x: (v) => span === 0 ? ML + PW / 2 : ML + ((v - x0) / span) * PW,
    y: (p) => MT + (1 - clamp01(p)) * PH,
    xTicks: xs,
  };
}

function frame(scales: Scales, title: string, xLabel: string,
               yLabel: string): string[] {
  const parts: string[] = [];
  parts.push(text(WIDTH / 2, MT - 18, title,
                  { "text-anchor": "middle", "font-size": 14 }));
  for (let i = 0; i <= 5; i++) {
    const p = i / 5;
    const y = scales.y(p);
    parts.push(line(ML, y, ML + PW, y,
                    { stroke: "#dddddd", "stroke-width": 0.5 }));
    parts.push(text(ML - 8, y + 4, p.toFixed(1),
                    { "text-anchor": "end", "font-size": 11 }));
  }
  for (const v of scales.xTicks) {
    const x = scales.x(v);
    parts.push(line(x, MT + PH, x, MT + PH + 4, { stroke: "#000000" }));
    parts.push(text(x, MT + PH + 17, String(v),
                    { "text-anchor": "middle", "font-size": 11 }));
  }
  parts.push(tag("rect", { x: ML, y: MT, width: PW, height: PH,
                           fill: "none", stroke: "#000000" }));
  parts.push(text(ML + PW / 2, HEIGHT - 14, xLabel,
                  { "text-anchor": "middle" }));
  parts.push(tag("text",
                 { x: 0, y: 0, "font-family": "Helvetica, Arial, sans-serif",
                   "font-size": 12, fill: "#000", "text-anchor": "middle",
                   transform: `translate(16 ${fmt(MT + PH / 2)}) rotate(-90)` },
                 yLabel));
  return parts;
}

interface Curve {
  label: string;
  color: string;
  dash: string;
  points: Array<[number, number, number]>;  // x value, y value, stderr
  reference: boolean;
}

function drawCurves(curves: Curve[], scales: Scales): string[] {
  const parts: string[] = [];
  for (const curve of curves) {
    const pts = [...curve.points].sort((a, b) => a[0] - b[0]);
    const xy: Array<[number, number]> =
      pts.map(([x, y]) => [scales.x(x), scales.y(y)]);
    const style: Record<string, string | number> = {
      class: curve.reference ? "refline" : "curve",
      "data-series": curve.label,
      stroke: curve.color,
      "stroke-width": 1.5,
    };
    if (curve.dash !== "") style["stroke-dasharray"] = curve.dash;
    parts.push(polyline(xy, style));
    for (const [x, y, err] of pts) {
      parts.push(errorBar(scales.x(x), scales.y(y - err),
                          scales.y(y + err), curve.color));
      if (!curve.reference) {
        parts.push(tag("circle", { class: "pt", cx: scales.x(x),
                                   cy: scales.y(y), r: 2.5,
                                   fill: curve.color }));
      }
    }
  }
  return parts;
}

function drawLegend(curves: Curve[]): string[] {
  const parts: string[] = [];
  const lx = WIDTH - MR + 14;
  curves.forEach((curve, i) => {
    const y = MT + 10 + i * 20;
    const style: Record<string, string | number> = {
      class: "legend-line", stroke: curve.color, "stroke-width": 1.5,
    };
    if (curve.dash !== "") style["stroke-dasharray"] = curve.dash;
    parts.push(line(lx, y, lx + 26, y, style));
    parts.push(text(lx + 32, y + 4, curve.label, { "font-size": 11 }));
  });
  return parts;
}

/** MSP and SDP versus the power split, one curve pair per radius. */
export function renderThetaFigure(rows: SweepRow[],
                                  spec: FigureSpec): string {
  const scales = sweepScales(rows);
  const curves: Curve[] = [];
  uniqueInOrder(rows.map((r) => r.series)).forEach((series, i) => {
    const own = rows.filter((r) => r.series === series);
    const color = PALETTE[i % PALETTE.length];
    curves.push({
      label: `SDP ${series}`, color, dash: "",
      points: own.map((r) => [r.sweepValue, r.sdp, r.sdpStderr]),
      reference: false,
    });
    curves.push({
      label: `MSP ${series}`, color, dash: "6 3",
      points: own.map((r) => [r.sweepValue, r.msp, r.mspStderr]),
      reference: false,
    });
  });
  return document(WIDTH, HEIGHT, [
    ...frame(scales, "Monitoring success and sensing detection vs "
             + "jamming split", spec.xLabel, spec.yLabel),
    ...drawCurves(curves, scales),
    ...drawLegend(curves),
  ]);
}

/** SDP versus array size; the monitor-off baseline is a reference line. */
export function renderNpmFigure(rows: SweepRow[], spec: FigureSpec): string {
  const scales = sweepScales(rows);
  const curves: Curve[] = [];
  let colorIndex = 0;
  for (const series of uniqueInOrder(rows.map((r) => r.series))) {
    const own = rows.filter((r) => r.series === series);
    const reference = series === "baseline";
    curves.push({
      label: series,
      color: reference ? BASELINE_COLOR : PALETTE[colorIndex++ % PALETTE.length],
      dash: reference ? "8 4" : "",
      points: own.map((r) => [r.sweepValue, r.sdp, r.sdpStderr]),
      reference,
    });
  }
  return document(WIDTH, HEIGHT, [
    ...frame(scales, "Sensing detection vs monitor array size",
             spec.xLabel, spec.yLabel),
    ...drawCurves(curves, scales),
    ...drawLegend(curves),
  ]);
}

/** Horizontal z-score bars, one per report row, with |z| = 4 guides. */
export function renderConformanceFigure(rows: ConformanceRow[],
                                        spec: FigureSpec): string {
  const labelW = 150;
  const pw = WIDTH - labelW - 40;
  const rowH = 26;
  const height = MT + rows.length * rowH + MB;
  const finite = rows.map((r) => Math.abs(r.zScore))
    .filter((z) => Number.isFinite(z));
  const limit = Math.max(5, Math.ceil(Math.max(0, ...finite)));
  const x = (z: number) => labelW + ((z + limit) / (2 * limit)) * pw;
  const parts: string[] = [];
  parts.push(text(WIDTH / 2, MT - 18, "Closed form vs oracle, per term",
                  { "text-anchor": "middle", "font-size": 14 }));
  const ticks = [-limit, -limit / 2, 0, limit / 2, limit];
  for (const t of ticks) {
    const tx = x(t);
    parts.push(line(tx, MT, tx, MT + rows.length * rowH,
                    { stroke: "#dddddd", "stroke-width": 0.5 }));
    parts.push(text(tx, MT + rows.length * rowH + 16,
                    Number.isInteger(t) ? String(t) : t.toFixed(1),
                    { "text-anchor": "middle", "font-size": 11 }));
  }
  for (const guide of [-4, 4]) {
    parts.push(line(x(guide), MT, x(guide), MT + rows.length * rowH,
                    { class: "guide", stroke: "#d62728",
                      "stroke-dasharray": "4 3" }));
  }
  parts.push(line(x(0), MT, x(0), MT + rows.length * rowH,
                  { stroke: "#000000" }));
  rows.forEach((row, i) => {
    const y = MT + i * rowH;
    const clipped = !Number.isFinite(row.zScore);
    const z = clipped ? Math.sign(row.zScore) * limit
      : Math.max(-limit, Math.min(limit, row.zScore));
    const x0 = x(0);
    const x1 = x(z);
    const cls = clipped ? "zbar clipped" : "zbar";
    const color = Math.abs(row.zScore) > 4 ? "#d62728" : "#1f77b4";
    parts.push(tag("rect", {
      class: cls, x: Math.min(x0, x1), y: y + rowH * 0.2,
      width: Math.abs(x1 - x0), height: rowH * 0.6, fill: color,
    }));
    parts.push(text(labelW - 8, y + rowH * 0.65, row.term,
                    { "text-anchor": "end", "font-size": 11 }));
  });
  parts.push(text(labelW + pw / 2, height - 14, spec.xLabel,
                  { "text-anchor": "middle" }));
  return document(WIDTH, height, parts);
}

/** Read the CSV named by the spec, render it, write the SVG. */
export function render(spec: FigureSpec): void {
  const csvText = fs.readFileSync(spec.csvPath, "utf8");
  let svg: string;
  if (spec.kind === "conformance") {
    svg = renderConformanceFigure(parseConformanceCsv(csvText), spec);
  } else if (spec.kind === "theta") {
    svg = renderThetaFigure(parseSweepCsv(csvText, "theta"), spec);
  } else {
    svg = renderNpmFigure(parseSweepCsv(csvText, "npm"), spec);
  }
  fs.mkdirSync(path.dirname(path.resolve(spec.outPath)), { recursive: true });
  fs.writeFileSync(spec.outPath, svg);
}
