"""Monitoring-success and sensing-detection probabilities over ensembles.

MSP is the fraction of scene draws where the monitor's closed-form SINR is
at least the suspicious UE's; SDP is the fraction where the sensing CPU's
SINR clears the detection threshold kappa.  The probabilities are taken
over random topologies, shadowing, and estimation statistics through the
closed-form SINRs, which already average over fast fading -- the only
reading under which the two probabilities are nondegenerate, since the
closed forms are deterministic given the large-scale state.

Both sweeps use common random numbers: for a fixed seed, scene draw i is
identical across every grid point and series (stream paths depend only on
the draw index), so curves differ only through the swept parameter.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

from .channel import large_scale
from .closedform import sinr_cpu, sinr_monitor, sinr_ue
from .config import SystemConfig, kappa_linear
from .estimation import estimation_model, with_gamma
from .geometry import draw_topology
from .power import full_power_coefficients
from .seeding import SHADOWING, TOPOLOGY, substream

THETA_GRID = tuple(round(0.1 * i, 1) for i in range(11))
R_VALUES_M = (10.0, 50.0, 100.0)
NPM_GRID = (8, 16, 32, 64)
P_PM_VALUES_W = (1.0, 3.0)


@dataclass(frozen=True)
class MetricPoint:
    sweep_var: str
    sweep_value: float
    series: str
    msp: float
    sdp: float
    msp_stderr: float
    sdp_stderr: float
    n_draws: int
    seed: int


def _stderr(p: float, n: int) -> float:
    return math.sqrt(p * (1.0 - p) / n)


def draw_scene(cfg: SystemConfig, seed: int, index: int):
    """Topology, large-scale state, and estimation model for draw `index`."""
    topo = draw_topology(cfg, substream(seed, TOPOLOGY, index))
    ls = large_scale(cfg, topo, substream(seed, SHADOWING, index))
    est = estimation_model(cfg, ls)
    return topo, with_gamma(ls, est), est


def scene_indicators(cfg: SystemConfig, ls, est, *,
                     variant: str = "corrected") -> tuple[bool, bool]:
    """(monitoring success, detection success) for one large-scale draw."""
    pa = full_power_coefficients(ls, cfg)
    sinr_pm = sinr_monitor(ls, est, pa, cfg, variant=variant).sinr
    sinr_1 = sinr_ue(1, ls, est, pa, cfg, variant=variant).sinr
    sinr_s = sinr_cpu(ls, est, pa, cfg, variant=variant).sinr
    return sinr_pm >= sinr_1, sinr_s >= kappa_linear(cfg)


def point_metrics(cfg: SystemConfig, n_topologies: int, seed: int, *,
                  variant: str = "corrected", series: str = "default",
                  sweep_var: str = "none", sweep_value: float = 0.0,
                  n_threads: int = 1) -> MetricPoint:
    """MSP and SDP at the configured operating point over fresh draws."""
    if n_topologies < 1:
        raise ValueError("need at least one topology draw")

    def one(i: int) -> tuple[bool, bool]:
        _, ls, est = draw_scene(cfg, seed, i)
        return scene_indicators(cfg, ls, est, variant=variant)

    flags = _map_indexed(one, n_topologies, n_threads)
    m = sum(1 for f in flags if f[0]) / n_topologies
    s = sum(1 for f in flags if f[1]) / n_topologies
    return MetricPoint(sweep_var=sweep_var, sweep_value=sweep_value,
                       series=series, msp=m, sdp=s,
                       msp_stderr=_stderr(m, n_topologies),
                       sdp_stderr=_stderr(s, n_topologies),
                       n_draws=n_topologies, seed=seed)


def msp(cfg: SystemConfig, n_topologies: int, seed: int, **kw) -> MetricPoint:
    """Monitoring success probability; the returned point carries SDP too."""
    return point_metrics(cfg, n_topologies, seed, **kw)


def sdp(cfg: SystemConfig, n_topologies: int, seed: int, **kw) -> MetricPoint:
    """Sensing detection probability; the returned point carries MSP too."""
    return point_metrics(cfg, n_topologies, seed, **kw)


def _map_indexed(fn, n: int, n_threads: int) -> list:
    """Apply fn to range(n), results in index order for any worker count."""
    if n_threads > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            return list(pool.map(fn, range(n)))
    return [fn(i) for i in range(n)]


def sweep_theta(cfg: SystemConfig, theta_grid=THETA_GRID,
                r_values=R_VALUES_M, n_topologies: int = 500,
                seed: int | None = None, *, variant: str = "corrected",
                n_threads: int = 1) -> list[MetricPoint]:
    """Monitor power-split sweep: theta_pm_t over the grid, theta_pm_1 the
    complement (full monitor power), one series per monitor radius."""
    seed = cfg.seed if seed is None else seed
    if any(not 0.0 <= t <= 1.0 for t in theta_grid):
        raise ValueError("theta grid values must lie in [0, 1]")
    points = []
    for r in r_values:
        cfg_r = replace(cfg, monitor_radius_m=float(r))

        def one(i: int) -> list[tuple[bool, bool]]:
            _, ls, est = draw_scene(cfg_r, seed, i)
            flags = []
            for t in theta_grid:
                cfg_t = replace(cfg_r, theta_pm_t=float(t),
                                theta_pm_1=1.0 - float(t))
                flags.append(scene_indicators(cfg_t, ls, est, variant=variant))
            return flags

        rows = _map_indexed(one, n_topologies, n_threads)
        for j, t in enumerate(theta_grid):
            m = sum(1 for row in rows if row[j][0]) / n_topologies
            s = sum(1 for row in rows if row[j][1]) / n_topologies
            points.append(MetricPoint(
                sweep_var="theta_pm_t", sweep_value=float(t),
                series=f"r={r:g}m", msp=m, sdp=s,
                msp_stderr=_stderr(m, n_topologies),
                sdp_stderr=_stderr(s, n_topologies),
                n_draws=n_topologies, seed=seed))
    return points


def sweep_npm(cfg: SystemConfig, npm_grid=NPM_GRID,
              p_pm_values=P_PM_VALUES_W, n_topologies: int = 500,
              seed: int | None = None, *, variant: str = "corrected",
              n_threads: int = 1) -> list[MetricPoint]:
    """Monitor array-size sweep at an even jamming power split, including a
    monitor-off baseline series (transmit power zero, listening intact)."""
    seed = cfg.seed if seed is None else seed
    series_list = [("baseline", 0.0)] + \
        [(f"P_pm={p:g}W", float(p)) for p in p_pm_values]
    points = []
    for label, p_pm in series_list:
        for npm in npm_grid:
            cfg_n = replace(cfg, n_ant_pm=int(npm), p_pm=p_pm,
                            theta_pm_t=0.5, theta_pm_1=0.5)

            def one(i: int) -> tuple[bool, bool]:
                _, ls, est = draw_scene(cfg_n, seed, i)
                return scene_indicators(cfg_n, ls, est, variant=variant)

            flags = _map_indexed(one, n_topologies, n_threads)
            m = sum(1 for f in flags if f[0]) / n_topologies
            s = sum(1 for f in flags if f[1]) / n_topologies
            points.append(MetricPoint(
                sweep_var="n_pm", sweep_value=float(npm), series=label,
                msp=m, sdp=s, msp_stderr=_stderr(m, n_topologies),
                sdp_stderr=_stderr(s, n_topologies),
                n_draws=n_topologies, seed=seed))
    return points


SWEEP_CSV_HEADER = ("sweep_name", "sweep_var", "sweep_value", "series",
                    "msp", "msp_stderr", "sdp", "sdp_stderr",
                    "n_draws", "seed")


def sweep_rows(sweep_name: str, points: list[MetricPoint]) -> list[dict]:
    """CSV-ready rows in point order under SWEEP_CSV_HEADER."""
    rows = []
    for p in points:
        rows.append({"sweep_name": sweep_name, "sweep_var": p.sweep_var,
                     "sweep_value": p.sweep_value, "series": p.series,
                     "msp": p.msp, "msp_stderr": p.msp_stderr,
                     "sdp": p.sdp, "sdp_stderr": p.sdp_stderr,
                     "n_draws": p.n_draws, "seed": p.seed})
    return rows
