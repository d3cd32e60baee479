#!/usr/bin/env python3
"""The two headline experiments, at demo scale, with CSV output.

Sweep 1 splits the monitor's transmit power between jamming the target
(theta_pm_t) and jamming the suspicious UE: as more power goes to the
target, the malicious network's sensing detection probability (SDP)
falls, while the monitoring success probability (MSP) stays high.

Sweep 2 grows the monitor's antenna array at fixed power: a bigger array
focuses the jamming beam and pushes the SDP further below the
monitor-off baseline.

Both sweeps reuse the same scene draws at every grid point (common
random numbers), so the curves differ only through the swept parameter.
The CSVs written here have the same schema as the full-scale
``python3 -m cfisac.runner sweep`` outputs and can be rendered with the
plotter in frontend/:

    node frontend/dist/cli.js plot theta demo_out/sweep_theta.csv -o theta.svg
    node frontend/dist/cli.js plot npm demo_out/sweep_npm.csv -o npm.svg
"""

import os

from cfisac import default_config, sweep_npm, sweep_theta
from cfisac.metrics import sweep_rows
from cfisac.runner import _csv_text, SWEEP_CSV_HEADER

topologies = 200
cfg = default_config()
out_dir = "demo_out"
os.makedirs(out_dir, exist_ok=True)

print(f"power-split sweep ({topologies} scenes per point) ...")
theta_points = sweep_theta(cfg, n_topologies=topologies)
for label in ("r=10m", "r=50m", "r=100m"):
    curve = [p for p in theta_points if p.series == label]
    ends = (curve[0], curve[-1])
    drop = 100.0 * (ends[0].sdp - ends[1].sdp) / ends[0].sdp
    msp_min = min(p.msp for p in curve if p.sweep_value <= 0.5)
    print(f"  {label:<7} SDP {ends[0].sdp:.3f} -> {ends[1].sdp:.3f} "
          f"({drop:.0f}% down), MSP >= {msp_min:.3f} up to theta 0.5")

print(f"array-size sweep ({topologies} scenes per point) ...")
npm_points = sweep_npm(cfg, n_topologies=topologies)
base = {p.sweep_value: p.sdp for p in npm_points if p.series == "baseline"}
for label in ("P_pm=1W", "P_pm=3W"):
    curve = [p for p in npm_points if p.series == label]
    drops = [100.0 * (base[p.sweep_value] - p.sdp) / base[p.sweep_value]
             for p in curve]
    pretty = ", ".join(f"{int(p.sweep_value)} ant: {d:.0f}%"
                       for p, d in zip(curve, drops))
    print(f"  {label}: SDP below baseline by {pretty}")

for name, points in (("sweep_theta", theta_points),
                     ("sweep_npm", npm_points)):
    path = os.path.join(out_dir, f"{name}.csv")
    with open(path, "w", newline="") as fh:
        fh.write(_csv_text(SWEEP_CSV_HEADER,
                           sweep_rows(name.split("_")[1], points)))
    print(f"wrote {path}")
