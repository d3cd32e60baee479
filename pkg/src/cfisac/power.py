"""Full-power coefficients, monitor power split, and conjugate precoders."""

from dataclasses import dataclass

import numpy as np

from .channel import ChannelRealization, LargeScale
from .config import SystemConfig, noise_power_w
from .estimation import EstimationModel


@dataclass(frozen=True)
class PowerAllocation:
    """Per-transmitter power coefficients plus normalized SNRs.

    eta_c and eta_s satisfy the full-power conditions
    eta_c[m, k] = 1 / (N sum_k gamma_{m,k}) and eta_s[m'] = 1 / (N zeta_{m',t});
    the monitor coefficients invert N_pm eta_pm_t zeta_pm_t = theta_pm_t and
    N_pm eta_pm_1 beta_pm_1 = theta_pm_1 so the split fractions are exact.
    """
    eta_c: np.ndarray    # (n_cap, n_ue)
    eta_s: np.ndarray    # (n_sap_tx,)
    eta_pm_t: float
    eta_pm_1: float
    rho_c: float         # P_c / noise power
    rho_s: float
    rho_p: float
    rho_pm: float
    theta_pm_t: float
    theta_pm_1: float


def full_power_coefficients(ls: LargeScale, cfg: SystemConfig) -> PowerAllocation:
    """Fill every eta from the full-power formulas and the theta split."""
    if ls.gamma is None:
        raise ValueError("LargeScale.gamma missing; run pilot estimation first")
    gamma_sums = ls.gamma.sum(axis=1)
    if np.any(gamma_sums <= 0):
        raise ValueError("degenerate config: zero estimation quality sum at a C-AP")
    n = cfg.n_ant_ap
    eta_c = np.broadcast_to(1.0 / (n * gamma_sums)[:, None], ls.gamma.shape).copy()
    eta_s = 1.0 / (n * ls.zeta_st_t)
    eta_pm_t = cfg.theta_pm_t / (cfg.n_ant_pm * ls.zeta_pm_t)
    eta_pm_1 = cfg.theta_pm_1 / (cfg.n_ant_pm * ls.beta_pm_ue[0])
    noise = noise_power_w(cfg)
    return PowerAllocation(eta_c=eta_c, eta_s=eta_s,
                           eta_pm_t=eta_pm_t, eta_pm_1=eta_pm_1,
                           rho_c=cfg.p_c / noise, rho_s=cfg.p_s / noise,
                           rho_p=cfg.p_p / noise, rho_pm=cfg.p_pm / noise,
                           theta_pm_t=cfg.theta_pm_t, theta_pm_1=cfg.theta_pm_1)


@dataclass(frozen=True)
class Precoders:
    """Unnormalized conjugate precoders; eta carries the power scaling."""
    w_c: np.ndarray      # (n_cap, n_ue, n_ant_ap) = conj(g_hat)
    w_s: np.ndarray      # (n_sap_tx, n_ant_ap)    = conj(h_{m',t})
    w_pm_t: np.ndarray   # (n_ant_pm,)             = conj(h_{pm,t})
    w_pm_1: np.ndarray   # (n_ant_pm,)             = conj(g_{pm,1}), true channel


def precoders(real: ChannelRealization, est: EstimationModel) -> Precoders:
    """Conjugate precoding at C-APs, probing S-APs, and the monitor.

    C-APs beamform on their channel estimates; the monitor has perfect CSI
    and uses the true UE-1 channel for its communication jamming beam.
    """
    if real.g_hat is None:
        raise ValueError("realization lacks channel estimates; attach them first")
    return Precoders(w_c=np.conj(real.g_hat),
                     w_s=np.conj(real.los.h_st_t),
                     w_pm_t=np.conj(real.los.h_pm_t),
                     w_pm_1=np.conj(real.g_pm_ue[0]))
