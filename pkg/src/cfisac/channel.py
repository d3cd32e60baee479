"""Large-scale coefficients and per-trial small-scale channel draws.

Ground links (AP-UE, AP-monitor, monitor-UE, AP-AP) are i.i.d. Rayleigh
with a per-link variance beta from a three-slope path loss times log-normal
shadowing.  Air links to and from the aerial target are deterministic
line-of-sight: sqrt(zeta) times a ULA steering vector, with
zeta = (lambda / (4 pi d))^L.  The target re-radiates with power gain
alpha = 4 pi sigma_RCS / lambda^2.
"""

import json
from dataclasses import dataclass

import numpy as np

from .config import SystemConfig, db2lin, wavelength_m
from .geometry import Topology, departure_angles, distance_3d_to_target, \
    steering_vector, torus_distance_2d

# three-slope model constants (distances in meters)
D0_M = 10.0
D1_M = 50.0
L_3SLOPE_DB = 140.7


def three_slope_pathloss_db(d_m) -> np.ndarray:
    """Three-slope path loss in dB at distance d_m meters (elementwise).

    -L - 35 log10(d)                 for d > d1,
    -L - 15 log10(d1) - 20 log10(d)  for d0 < d <= d1,
    -L - 15 log10(d1) - 20 log10(d0) for d <= d0,
    with d0 = 10 m, d1 = 50 m, L = 140.7 dB.  Continuous at d1; constant
    below d0.
    """
    d = np.asarray(d_m, dtype=float)
    if np.any(d <= 0):
        raise ValueError("path loss undefined for non-positive distance")
    inner = -L_3SLOPE_DB - 15.0 * np.log10(D1_M) - 20.0 * np.log10(D0_M)
    middle = -L_3SLOPE_DB - 15.0 * np.log10(D1_M) - 20.0 * np.log10(d)
    outer = -L_3SLOPE_DB - 35.0 * np.log10(d)
    out = np.where(d > D1_M, outer, np.where(d > D0_M, middle, inner))
    return out if out.ndim else float(out)


@dataclass(frozen=True)
class LargeScale:
    """All large-scale state for one topology + shadowing draw.

    Index convention: C-APs 0..n_cap-1, probing S-APs 0..n_sap_tx-1,
    echo S-APs 0..n_sap_rx-1, UEs 0..n_ue-1 with UE index 0 suspicious.
    """
    beta_c_ue: np.ndarray    # (n_cap, n_ue)        C-AP -> UE
    beta_st_ue: np.ndarray   # (n_sap_tx, n_ue)     probing S-AP -> UE
    beta_c_pm: np.ndarray    # (n_cap,)             C-AP -> monitor
    beta_st_pm: np.ndarray   # (n_sap_tx,)          probing S-AP -> monitor
    beta_pm_ue: np.ndarray   # (n_ue,)              monitor -> UE
    beta_c_sr: np.ndarray    # (n_cap, n_sap_rx)    C-AP -> echo S-AP
    beta_pm_sr: np.ndarray   # (n_sap_rx,)          monitor -> echo S-AP
    beta_pm_pm: float        # self-interference variance sigma_SI^2
    zeta_st_t: np.ndarray    # (n_sap_tx,)          probing S-AP -> target
    zeta_t_sr: np.ndarray    # (n_sap_rx,)          target -> echo S-AP
    zeta_pm_t: float         # monitor <-> target (reciprocal)
    zeta_t_ue: np.ndarray    # (n_ue,)              target -> UE
    alpha_refl: float        # 4 pi sigma_RCS / lambda^2
    gamma: np.ndarray | None = None  # (n_cap, n_ue), filled by pilot estimation


def zeta_los(d_m, wavelength: float, exponent: float) -> np.ndarray:
    """Free-space LoS gain (lambda / (4 pi d))^L, exponent on the whole factor."""
    return (wavelength / (4.0 * np.pi * np.asarray(d_m, dtype=float))) ** exponent


def _shadowed(pl_db: np.ndarray, sigma_sh_db: float,
              rng: np.random.Generator) -> np.ndarray:
    z = rng.standard_normal(np.shape(pl_db))
    return db2lin(pl_db + sigma_sh_db * z)


def large_scale(cfg: SystemConfig, topo: Topology,
                rng: np.random.Generator) -> LargeScale:
    """Betas, zetas, and reflection gain for one topology.

    Shadowing is drawn independently per ground link in a fixed field
    order (c_ue, st_ue, c_pm, st_pm, pm_ue, c_sr, pm_sr), so results are
    reproducible from the stream.  Air links carry no shadowing.
    """
    side = topo.side_m
    lam = wavelength_m(cfg)

    def beta(a, b):
        d = torus_distance_2d(a, b, side)
        return _shadowed(three_slope_pathloss_db(d), cfg.sigma_sh_db, rng)

    beta_c_ue = beta(topo.cap_pos[:, None, :], topo.ue_pos[None, :, :])
    beta_st_ue = beta(topo.sap_tx_pos[:, None, :], topo.ue_pos[None, :, :])
    beta_c_pm = beta(topo.cap_pos, topo.monitor_pos[None, :])
    beta_st_pm = beta(topo.sap_tx_pos, topo.monitor_pos[None, :])
    beta_pm_ue = beta(topo.monitor_pos[None, :], topo.ue_pos)
    beta_c_sr = beta(topo.cap_pos[:, None, :], topo.sap_rx_pos[None, :, :])
    beta_pm_sr = beta(topo.monitor_pos[None, :], topo.sap_rx_pos)

    def zeta(ground_pos):
        d = distance_3d_to_target(ground_pos, topo.target_pos, side)
        return zeta_los(d, lam, cfg.pathloss_exponent)

    zeta_st_t = zeta(topo.sap_tx_pos)
    zeta_t_sr = zeta(topo.sap_rx_pos)
    zeta_pm_t = float(zeta(topo.monitor_pos))
    zeta_t_ue = zeta(topo.ue_pos)

    alpha_refl = 4.0 * np.pi * cfg.sigma_rcs_m2 / lam**2
    return LargeScale(beta_c_ue=beta_c_ue, beta_st_ue=beta_st_ue,
                      beta_c_pm=beta_c_pm, beta_st_pm=beta_st_pm,
                      beta_pm_ue=beta_pm_ue, beta_c_sr=beta_c_sr,
                      beta_pm_sr=beta_pm_sr,
                      beta_pm_pm=db2lin(cfg.sigma_si_db),
                      zeta_st_t=zeta_st_t, zeta_t_sr=zeta_t_sr,
                      zeta_pm_t=zeta_pm_t, zeta_t_ue=zeta_t_ue,
                      alpha_refl=alpha_refl)


def dump_large_scale(ls: LargeScale) -> str:
    """Structured-text debug dump of a LargeScale, for regression fixtures.

    Full-precision JSON; two dumps are equal iff every gain is bit-equal.
    """
    fields = {}
    for name in ("beta_c_ue", "beta_st_ue", "beta_c_pm", "beta_st_pm",
                 "beta_pm_ue", "beta_c_sr", "beta_pm_sr", "zeta_st_t",
                 "zeta_t_sr", "zeta_t_ue"):
        fields[name] = getattr(ls, name).tolist()
    fields["beta_pm_pm"] = ls.beta_pm_pm
    fields["zeta_pm_t"] = ls.zeta_pm_t
    fields["alpha_refl"] = ls.alpha_refl
    fields["gamma"] = None if ls.gamma is None else ls.gamma.tolist()
    return json.dumps(fields, indent=2)


@dataclass(frozen=True)
class LosChannels:
    """Deterministic LoS channels, identical across trials of one topology."""
    h_st_t: np.ndarray   # (n_sap_tx, n_ant_ap)  probing S-AP array toward target
    h_t_sr: np.ndarray   # (n_sap_rx, n_ant_ap)  echo S-AP array toward target
    h_pm_t: np.ndarray   # (n_ant_pm,)           monitor array toward target
    h_t_pm: np.ndarray   # (n_ant_pm,)           target toward monitor (= h_pm_t)
    h_t_ue: np.ndarray   # (n_ue,) scalar target->UE with path phase


def los_channels(cfg: SystemConfig, topo: Topology, ls: LargeScale) -> LosChannels:
    """sqrt(zeta) times the steering vector for every air link.

    Single-antenna endpoints (UEs) get the pure path phase exp(-j 2 pi d / lambda)
    instead of a steering vector.  The monitor-target link is reciprocal:
    the same vector serves both directions.
    """
    side = topo.side_m
    lam = wavelength_m(cfg)

    def steer_to_target(pos, n_ant, gain):
        az, el = departure_angles(pos, topo.target_pos, side)
        return np.sqrt(gain) * steering_vector(az, el, n_ant)

    h_st_t = np.stack([steer_to_target(topo.sap_tx_pos[i], cfg.n_ant_ap, ls.zeta_st_t[i])
                       for i in range(cfg.n_sap_tx)])
    h_t_sr = np.stack([steer_to_target(topo.sap_rx_pos[i], cfg.n_ant_ap, ls.zeta_t_sr[i])
                       for i in range(cfg.n_sap_rx)])
    h_pm_t = steer_to_target(topo.monitor_pos, cfg.n_ant_pm, ls.zeta_pm_t)
    d_t_ue = distance_3d_to_target(topo.ue_pos, topo.target_pos, side)
    h_t_ue = np.sqrt(ls.zeta_t_ue) * np.exp(-2j * np.pi * d_t_ue / lam)
    return LosChannels(h_st_t=h_st_t, h_t_sr=h_t_sr, h_pm_t=h_pm_t,
                       h_t_pm=h_pm_t.copy(), h_t_ue=h_t_ue)


@dataclass(frozen=True)
class ChannelRealization:
    """One trial's small-scale channels; estimates attached by pilot-estimation."""
    g_c_ue: np.ndarray    # (n_cap, n_ue, n_ant_ap)   true C-AP -> UE
    g_st_ue: np.ndarray   # (n_sap_tx, n_ue, n_ant_ap)
    g_pm_ue: np.ndarray   # (n_ue, n_ant_pm)          monitor -> UE
    G_c_pm: np.ndarray    # (n_cap, n_ant_ap, n_ant_pm)
    G_st_pm: np.ndarray   # (n_sap_tx, n_ant_ap, n_ant_pm)
    G_pm_pm: np.ndarray   # (n_ant_pm, n_ant_pm)      self-interference
    G_c_sr: np.ndarray    # (n_cap, n_sap_rx, n_ant_ap, n_ant_ap)
    G_pm_sr: np.ndarray   # (n_sap_rx, n_ant_pm, n_ant_ap)
    los: LosChannels
    g_hat: np.ndarray | None = None    # (n_cap, n_ue, n_ant_ap) MMSE estimate
    g_tilde: np.ndarray | None = None  # estimation error, g_c_ue - g_hat


def crandn(rng: np.random.Generator, *shape) -> np.ndarray:
    """Standard circular complex Gaussian, unit variance per entry."""
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) \
        / np.sqrt(2.0)


def draw_small_scale(cfg: SystemConfig, topo: Topology, ls: LargeScale,
                     rng: np.random.Generator,
                     los: LosChannels | None = None) -> ChannelRealization:
    """One i.i.d. draw of every Rayleigh link; LoS channels copied in.

    Draw order is fixed (g_c_ue, g_st_ue, g_pm_ue, G_c_pm, G_st_pm,
    G_pm_pm, G_c_sr, G_pm_sr) for stream reproducibility.
    """
    n, npm = cfg.n_ant_ap, cfg.n_ant_pm
    if los is None:
        los = los_channels(cfg, topo, ls)
    g_c_ue = np.sqrt(ls.beta_c_ue)[:, :, None] * crandn(rng, cfg.n_cap, cfg.n_ue, n)
    g_st_ue = np.sqrt(ls.beta_st_ue)[:, :, None] * crandn(rng, cfg.n_sap_tx, cfg.n_ue, n)
    g_pm_ue = np.sqrt(ls.beta_pm_ue)[:, None] * crandn(rng, cfg.n_ue, npm)
    G_c_pm = np.sqrt(ls.beta_c_pm)[:, None, None] * crandn(rng, cfg.n_cap, n, npm)
    G_st_pm = np.sqrt(ls.beta_st_pm)[:, None, None] * crandn(rng, cfg.n_sap_tx, n, npm)
    G_pm_pm = np.sqrt(ls.beta_pm_pm) * crandn(rng, npm, npm)
    G_c_sr = np.sqrt(ls.beta_c_sr)[:, :, None, None] \
        * crandn(rng, cfg.n_cap, cfg.n_sap_rx, n, n)
    G_pm_sr = np.sqrt(ls.beta_pm_sr)[:, None, None] \
        * crandn(rng, cfg.n_sap_rx, npm, n)
    return ChannelRealization(g_c_ue=g_c_ue, g_st_ue=g_st_ue, g_pm_ue=g_pm_ue,
                              G_c_pm=G_c_pm, G_st_pm=G_st_pm, G_pm_pm=G_pm_pm,
                              G_c_sr=G_c_sr, G_pm_sr=G_pm_sr, los=los)
