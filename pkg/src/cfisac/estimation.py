"""MMSE channel estimation quality under the monitor's pilot-spoofing attack.

During training the monitor replays UE 1's pilot, so every C-AP's estimate
of the suspicious channel is biased toward the monitor and its quality
gamma_{m,1} degrades.  Pilots are orthogonal across UEs, so only UE 1 is
affected.  The pilot phase itself is not simulated: the closed forms and
the oracle only need the resulting (estimate, error) statistics.
"""

from dataclasses import dataclass, replace

import numpy as np

from .channel import ChannelRealization, LargeScale, crandn
from .config import SystemConfig, noise_power_w


@dataclass(frozen=True)
class EstimationModel:
    gamma: np.ndarray      # (n_cap, n_ue) estimation quality per C-AP/UE pair
    tau_rho_p: float       # pilot energy tau_p * rho_p
    tau_rho_p_pm: float    # spoofing pilot energy tau_p * rho_p_pm


def gamma_mk(beta_mk, beta_m_pm, tau_rho_p: float, tau_rho_p_pm: float,
             is_suspicious: bool):
    """MMSE estimation quality for one C-AP/UE link (elementwise).

    Suspicious UE: tau rho_p beta^2 / (tau rho_p beta + tau rho_p_pm beta_pm + 1);
    other UEs see no spoofing energy in the denominator.
    """
    beta_mk = np.asarray(beta_mk, dtype=float)
    denom = tau_rho_p * beta_mk + 1.0
    if is_suspicious:
        denom = denom + tau_rho_p_pm * np.asarray(beta_m_pm, dtype=float)
    return tau_rho_p * beta_mk**2 / denom


def estimation_model(cfg: SystemConfig, ls: LargeScale) -> EstimationModel:
    """gamma for every C-AP/UE pair; UE index 0 is the suspicious one."""
    rho_p = cfg.p_p / noise_power_w(cfg)
    tau_rho_p = cfg.tau_p * rho_p
    tau_rho_p_pm = cfg.tau_p * cfg.rho_p_pm_scale * rho_p
    gamma = gamma_mk(ls.beta_c_ue, 0.0, tau_rho_p, 0.0, is_suspicious=False)
    gamma[:, 0] = gamma_mk(ls.beta_c_ue[:, 0], ls.beta_c_pm, tau_rho_p,
                           tau_rho_p_pm, is_suspicious=True)
    return EstimationModel(gamma=gamma, tau_rho_p=tau_rho_p,
                           tau_rho_p_pm=tau_rho_p_pm)


def with_gamma(ls: LargeScale, est: EstimationModel) -> LargeScale:
    """LargeScale copy carrying the estimation qualities."""
    return replace(ls, gamma=est.gamma)


def split_estimate(g: np.ndarray, beta, gamma, rng: np.random.Generator):
    """Split a true channel into an MMSE estimate and an orthogonal error.

    Given g ~ CN(0, beta I), the conditional law of the estimate is
    g_hat | g ~ CN((gamma/beta) g, gamma (1 - gamma/beta) I), which makes
    (g_hat, g_tilde = g - g_hat) jointly Gaussian with var(g_hat) = gamma,
    var(g_tilde) = beta - gamma, and zero cross-covariance.  beta and gamma
    broadcast against g's leading axes.
    """
    g = np.asarray(g)
    beta = np.asarray(beta, dtype=float)
    gamma = np.asarray(gamma, dtype=float)
    if np.any(gamma <= 0) or np.any(gamma >= beta):
        raise ValueError("split requires 0 < gamma < beta")
    ratio = (gamma / beta)[..., None]
    cond_std = np.sqrt((gamma * (1.0 - gamma / beta))[..., None])
    g_hat = ratio * g + cond_std * crandn(rng, *g.shape)
    return g_hat, g - g_hat


def attach_estimates(real: ChannelRealization, ls: LargeScale,
                     est: EstimationModel,
                     rng: np.random.Generator) -> ChannelRealization:
    """Realization with (g_hat, g_tilde) attached for the C-AP/UE links."""
    g_hat, g_tilde = split_estimate(real.g_c_ue, ls.beta_c_ue, est.gamma, rng)
    return replace(real, g_hat=g_hat, g_tilde=g_tilde)
