import { CONFORMANCE_COLUMNS, SWEEP_COLUMNS } from "../src/schema";

export const SWEEP_HEADER = SWEEP_COLUMNS.join(",");
export const CONFORMANCE_HEADER = CONFORMANCE_COLUMNS.join(",");

function sweepRow(name: string, variable: string, value: number,
                  series: string, msp: number, sdp: number): string {
  return [name, variable, value, series, msp, 0.01, sdp, 0.02, 100, 1]
    .join(",");
}

/** Three radii, three split values: 9 rows, 6 expected curves. */
export function thetaCsv(): string {
  const lines = [SWEEP_HEADER];
  for (const r of ["r=10m", "r=50m", "r=100m"]) {
    for (const t of [0.0, 0.5, 1.0]) {
      lines.push(sweepRow("theta", "theta_pm_t", t, r, 1.0, 1.0 - 0.6 * t));
    }
  }
  return lines.join("\n") + "\n";
}

/** Baseline plus two power series over four array sizes: 12 rows. */
export function npmCsv(): string {
  const lines = [SWEEP_HEADER];
  for (const n of [8, 16, 32, 64]) {
    lines.push(sweepRow("npm", "n_pm", n, "baseline", 0.1, 0.9));
  }
  for (const [series, slope] of [["P_pm=1W", 0.003], ["P_pm=3W", 0.009]] as
       Array<[string, number]>) {
    for (const n of [8, 16, 32, 64]) {
      lines.push(sweepRow("npm", "n_pm", n, series, 0.95, 0.9 - slope * n));
    }
  }
  return lines.join("\n") + "\n";
}

export function conformanceCsv(withInf = false): string {
  const lines = [CONFORMANCE_HEADER];
  lines.push("DS,1.5e-09,1.51e-09,2e-11,0.5");
  lines.push("BU,2.0e-17,1.9e-17,2e-19,-0.5");
  lines.push("IS,8.0e-10,8.9e-10,2e-11,4.5");
  if (withInf) lines.push("DS (printed),2.5e-09,1.51e-09,0.0,-inf");
  return lines.join("\n") + "\n";
}

export function count(svg: string, needle: string): number {
  return svg.split(needle).length - 1;
}
