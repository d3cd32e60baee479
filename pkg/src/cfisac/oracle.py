"""Signal-level Monte Carlo ground truth for every closed-form term.

Each trial draws fresh small-scale channels because the harness knows every
transmitted symbol, the coefficient multiplying each symbol in the combined
receive signal can be read off exactly.  Expectation terms then follow with
zero estimator bias: the desired-signal mean is the average coefficient of
the desired symbol, beamforming uncertainty is its sample variance,
interference terms are mean squared magnitudes, and noise terms use the
conditional expectation ||w||^2 given the combiner (an exact average over
the thermal noise).

Expectations are over small-scale fading, estimation error, symbols, and
noise for a fixed topology and shadowing draw, matching the conditioning of
the closed forms.

Determinism: trials are processed in fixed-size chunks; chunk c of receiver
r for topology draw i reads stream (seed, TRIAL, i, r, c).  Results are
reduced in chunk order, so estimates are bit-identical for any worker
count.  CHUNK_TRIALS is part of that contract.
"""

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .channel import ChannelRealization, LargeScale, crandn, draw_small_scale, \
    los_channels
from .config import SystemConfig
from .estimation import EstimationModel, attach_estimates
from .geometry import Topology
from .power import PowerAllocation, Precoders, precoders
from .seeding import TRIAL, substream

CHUNK_TRIALS = 512
MIN_TRIALS = 100

# receiver ids inside stream paths; part of the reproducibility contract
_RECEIVER_STREAM_ID = {"monitor": 0, "cpu": 1}  # ue k maps to 10 + k


class DegenerateSignalError(ValueError):
    """Empirical SINR undefined: denominator terms sum to zero."""


@dataclass(frozen=True)
class TermEstimate:
    mean: float
    std_err: float
    n_trials: int


def _stream_id(receiver: str) -> int:
    if receiver in _RECEIVER_STREAM_ID:
        return _RECEIVER_STREAM_ID[receiver]
    if receiver.startswith("ue"):
        return 10 + int(receiver[2:])
    raise ValueError(f"unknown receiver label {receiver!r}")


def _power_stats(x: np.ndarray) -> TermEstimate:
    # constant arrays (deterministic terms) have exactly zero variance;
    # computing it numerically would pick up pairwise-summation ulps
    n = x.shape[0]
    if bool(np.all(x == x[0])):
        return TermEstimate(mean=float(x[0]), std_err=0.0, n_trials=n)
    se = float(x.std(ddof=1)) / math.sqrt(n) if n > 1 else 0.0
    return TermEstimate(mean=float(x.mean()), std_err=se, n_trials=n)


def _ds_and_bu(c: np.ndarray) -> tuple[TermEstimate, TermEstimate]:
    """Mean coefficient (DS) and its sample variance (BU) with stderrs."""
    n = c.shape[0]
    if bool(np.all(c == c[0])):
        ds = TermEstimate(mean=float(c[0].real), std_err=0.0, n_trials=n)
        return ds, TermEstimate(mean=0.0, std_err=0.0, n_trials=n)
    re = c.real
    ds_se = float(re.std(ddof=1)) / math.sqrt(n) if n > 1 else 0.0
    ds = TermEstimate(mean=float(re.mean()), std_err=ds_se, n_trials=n)
    y = np.abs(c - c.mean()) ** 2
    bu_mean = float(y.sum()) / (n - 1) if n > 1 else 0.0
    bu_se = float(y.std(ddof=1)) / math.sqrt(n) if n > 1 else 0.0
    return ds, TermEstimate(mean=bu_mean, std_err=bu_se, n_trials=n)


# ---------------------------------------------------------------------------
# per-receiver chunk kernels: return per-trial coefficient arrays


def _monitor_chunk(cfg, ls, est, pa, los, rng, b):
    n, npm = cfg.n_ant_ap, cfg.n_ant_pm
    mc, mst, k = cfg.n_cap, cfg.n_sap_tx, cfg.n_ue
    ghat = np.sqrt(est.gamma)[None, :, :, None] * crandn(rng, b, mc, k, n)
    g_c_pm = np.sqrt(ls.beta_c_pm)[None, :, None, None] * crandn(rng, b, mc, n, npm)
    g_st_pm = np.sqrt(ls.beta_st_pm)[None, :, None, None] * crandn(rng, b, mst, n, npm)
    g_pm_pm = math.sqrt(ls.beta_pm_pm) * crandn(rng, b, npm, npm)
    g_pm_1 = math.sqrt(ls.beta_pm_ue[0]) * crandn(rng, b, npm)

    amp_c = np.sqrt(pa.eta_c * pa.rho_c)  # (mc, k)
    # b_k = sum_m sqrt(eta_mk rho_c) G_{m,pm}^T ghat*_{m,k}; the UE-1 column
    # is also the maximum-ratio combiner (conjugated)
    bvec = np.einsum("bmni,bmkn->bki", g_c_pm, amp_c[None, :, :, None] * np.conj(ghat))
    w = bvec[:, 0, :]
    c_des = np.einsum("bi,bi->b", np.conj(w), w)
    ic_pow = np.sum(np.abs(np.einsum("bi,bki->bk", np.conj(w), bvec[:, 1:, :])) ** 2,
                    axis=1)

    amp_s = np.sqrt(pa.eta_s * pa.rho_s)
    probe = np.einsum("bmni,mn->bi", g_st_pm, amp_s[:, None] * np.conj(los.h_st_t))
    refl_amp = math.sqrt(ls.alpha_refl) * float(np.sum(amp_s * n * ls.zeta_st_t))
    c_t = np.einsum("bi,bi->b", np.conj(w), probe + refl_amp * los.h_t_pm[None, :])

    v1 = np.einsum("bij,i->bj", g_pm_pm, np.conj(los.h_pm_t))
    amp2 = math.sqrt(ls.alpha_refl) * float(np.real(los.h_pm_t @ np.conj(los.h_pm_t)))
    c_pmt = math.sqrt(pa.eta_pm_t * pa.rho_pm) * np.einsum(
        "bi,bi->b", np.conj(w), v1 + amp2 * los.h_t_pm[None, :])

    v2 = np.einsum("bij,bi->bj", g_pm_pm, np.conj(g_pm_1))
    amp3 = math.sqrt(ls.alpha_refl) * np.einsum("i,bi->b", los.h_pm_t, np.conj(g_pm_1))
    c_pm1 = math.sqrt(pa.eta_pm_1 * pa.rho_pm) * np.einsum(
        "bi,bi->b", np.conj(w), v2 + amp3[:, None] * los.h_t_pm[None, :])

    return {"_c_des": c_des, "IC": ic_pow, "IS": np.abs(c_t) ** 2,
            "SI_s": np.abs(c_pmt) ** 2, "SI_c": np.abs(c_pm1) ** 2,
            "noise": c_des.real.copy()}


def _ue_chunk(cfg, ls, est, pa, los, rng, b, i):
    n, npm = cfg.n_ant_ap, cfg.n_ant_pm
    mc, mst, k = cfg.n_cap, cfg.n_sap_tx, cfg.n_ue
    ghat = np.sqrt(est.gamma)[None, :, :, None] * crandn(rng, b, mc, k, n)
    gtilde = np.sqrt(ls.beta_c_ue[:, i] - est.gamma[:, i])[None, :, None] \
        * crandn(rng, b, mc, n)
    g_true = ghat[:, :, i, :] + gtilde
    g_st = np.sqrt(ls.beta_st_ue[:, i])[None, :, None] * crandn(rng, b, mst, n)
    g_pm_k = math.sqrt(ls.beta_pm_ue[i]) * crandn(rng, b, npm)
    # UE 1's link to the monitor is the one the jamming beam is matched to
    g_pm_1 = g_pm_k if i == 0 else math.sqrt(ls.beta_pm_ue[0]) * crandn(rng, b, npm)

    amp_c = np.sqrt(pa.eta_c * pa.rho_c)
    c_all = np.einsum("bmn,bmkn->bk", g_true, amp_c[None, :, :, None] * np.conj(ghat))
    c_des = c_all[:, i]
    others = [kp for kp in range(k) if kp != i]
    iui_pow = np.sum(np.abs(c_all[:, others]) ** 2, axis=1)

    amp_s = np.sqrt(pa.eta_s * pa.rho_s)
    refl_amp = math.sqrt(ls.alpha_refl) * float(np.sum(amp_s * n * ls.zeta_st_t))
    c_t = np.einsum("bmn,mn->b", g_st, amp_s[:, None] * np.conj(los.h_st_t)) \
        + refl_amp * los.h_t_ue[i]

    norm_pm = float(np.real(los.h_pm_t @ np.conj(los.h_pm_t)))
    c_pmt = math.sqrt(pa.eta_pm_t * pa.rho_pm) * (
        np.einsum("bi,i->b", g_pm_k, np.conj(los.h_pm_t))
        + math.sqrt(ls.alpha_refl) * los.h_t_ue[i] * norm_pm)
    c_pm1 = math.sqrt(pa.eta_pm_1 * pa.rho_pm) * (
        np.einsum("bi,bi->b", g_pm_k, np.conj(g_pm_1))
        + math.sqrt(ls.alpha_refl) * los.h_t_ue[i]
        * np.einsum("i,bi->b", los.h_pm_t, np.conj(g_pm_1)))

    return {"_c_des": c_des, "IUI": iui_pow, "IS": np.abs(c_t) ** 2,
            "JS_s": np.abs(c_pmt) ** 2, "JS_c": np.abs(c_pm1) ** 2,
            "noise": np.ones(b)}


def _cpu_chunk(cfg, ls, est, pa, los, rng, b):
    n, npm = cfg.n_ant_ap, cfg.n_ant_pm
    mc, msr, k = cfg.n_cap, cfg.n_sap_rx, cfg.n_ue
    ghat = np.sqrt(est.gamma)[None, :, :, None] * crandn(rng, b, mc, k, n)
    g_c_sr = np.sqrt(ls.beta_c_sr)[None, :, :, None, None] \
        * crandn(rng, b, mc, msr, n, n)
    g_pm_sr = np.sqrt(ls.beta_pm_sr)[None, :, None, None] * crandn(rng, b, msr, npm, n)
    g_pm_1 = math.sqrt(ls.beta_pm_ue[0]) * crandn(rng, b, npm)

    amp_s = np.sqrt(pa.eta_s * pa.rho_s)
    a_comb = math.sqrt(ls.alpha_refl) * float(np.sum(amp_s * n * ls.zeta_st_t))
    z_sum = float(np.sum(ls.zeta_t_sr))
    c_des = np.full(b, a_comb * a_comb * n * z_sum, dtype=complex)

    amp_c = np.sqrt(pa.eta_c * pa.rho_c)
    c_k = a_comb * np.einsum("ri,bmrni,bmkn->bk", np.conj(los.h_t_sr), g_c_sr,
                             amp_c[None, :, :, None] * np.conj(ghat))
    ic_pow = np.sum(np.abs(c_k) ** 2, axis=1)

    norms = n * ls.zeta_t_sr  # ||h_{t,m''}||^2 per echo S-AP
    path_t = np.einsum("ri,brji,j->br", np.conj(los.h_t_sr), g_pm_sr,
                       np.conj(los.h_pm_t))
    refl_t = math.sqrt(ls.alpha_refl) * norms[None, :] \
        * float(np.real(los.h_pm_t @ np.conj(los.h_pm_t)))
    c_pmt = math.sqrt(pa.eta_pm_t * pa.rho_pm) * a_comb \
        * np.sum(path_t + refl_t, axis=1)

    path_1 = np.einsum("ri,brji,bj->br", np.conj(los.h_t_sr), g_pm_sr,
                       np.conj(g_pm_1))
    dot_1 = np.einsum("i,bi->b", los.h_pm_t, np.conj(g_pm_1))
    refl_1 = math.sqrt(ls.alpha_refl) * norms[None, :] * dot_1[:, None]
    c_pm1 = math.sqrt(pa.eta_pm_1 * pa.rho_pm) * a_comb \
        * np.sum(path_1 + refl_1, axis=1)

    noise = np.full(b, a_comb * a_comb * n * z_sum)  # sum_r ||w_r||^2
    return {"_c_des": c_des, "IC": ic_pow, "JS_s": np.abs(c_pmt) ** 2,
            "JS_c": np.abs(c_pm1) ** 2, "noise": noise}


# ---------------------------------------------------------------------------


def estimate_terms(receiver: str, cfg: SystemConfig, topo: Topology,
                   ls: LargeScale, est: EstimationModel, pa: PowerAllocation,
                   n_trials: int, seed: int, *, topo_index: int = 0,
                   n_threads: int = 1) -> dict[str, TermEstimate]:
    """Empirical estimate of every closed-form term for one receiver.

    receiver is "monitor", "cpu", or "ue<k>" with 1-based k.  Requires at
    least MIN_TRIALS trials for meaningful standard errors.
    """
    if n_trials < MIN_TRIALS:
        raise ValueError(f"need at least {MIN_TRIALS} trials, got {n_trials}")
    rid = _stream_id(receiver)
    los = los_channels(cfg, topo, ls)

    if receiver == "monitor":
        def kernel(rng, b):
            return _monitor_chunk(cfg, ls, est, pa, los, rng, b)
    elif receiver == "cpu":
        def kernel(rng, b):
            return _cpu_chunk(cfg, ls, est, pa, los, rng, b)
    else:
        i = int(receiver[2:]) - 1
        if not 0 <= i < cfg.n_ue:
            raise ValueError(f"UE index out of range in {receiver!r}")

        def kernel(rng, b):
            return _ue_chunk(cfg, ls, est, pa, los, rng, b, i)

    sizes = [CHUNK_TRIALS] * (n_trials // CHUNK_TRIALS)
    if n_trials % CHUNK_TRIALS:
        sizes.append(n_trials % CHUNK_TRIALS)

    def run_chunk(c: int) -> dict[str, np.ndarray]:
        rng = substream(seed, TRIAL, topo_index, rid, c)
        return kernel(rng, sizes[c])

    if n_threads > 1:
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            chunks = list(pool.map(run_chunk, range(len(sizes))))
    else:
        chunks = [run_chunk(c) for c in range(len(sizes))]

    merged = {key: np.concatenate([ch[key] for ch in chunks])
              for key in chunks[0]}
    ds, bu = _ds_and_bu(merged.pop("_c_des"))
    out = {"DS": ds, "BU": bu}
    for name, arr in merged.items():
        out[name] = _power_stats(arr)
    return out


def empirical_sinr(terms: dict[str, TermEstimate]) -> float:
    """|E{DS}|^2 over the summed denominator terms, closed-form layout."""
    denom = math.fsum(v.mean for name, v in terms.items() if name != "DS")
    if denom == 0.0:
        raise DegenerateSignalError("denominator terms sum to zero")
    return terms["DS"].mean ** 2 / denom


# ---------------------------------------------------------------------------
# single-trial signal simulation (readable reference path + bookkeeping)


@dataclass(frozen=True)
class TrialSignals:
    """All transmitted symbols, noises, and received signals of one trial."""
    real: ChannelRealization
    prec: Precoders
    s_ue: np.ndarray      # (n_ue,) unit-power Gaussian data symbols
    s_t: complex          # sensing probe symbol
    s_pm_t: complex       # monitor jamming symbol toward the target
    s_pm_1: complex       # monitor jamming symbol toward UE 1
    n_ue: np.ndarray      # (n_ue,)
    n_pm: np.ndarray      # (n_ant_pm,)
    n_sr: np.ndarray      # (n_sap_rx, n_ant_ap)
    y_ue: np.ndarray      # (n_ue,) received at each UE
    y_pm: np.ndarray      # (n_ant_pm,) received at the monitor
    y_sr: np.ndarray      # (n_sap_rx, n_ant_ap) after S-AP cooperation


def simulate_trial(cfg: SystemConfig, topo: Topology, ls: LargeScale,
                   est: EstimationModel, pa: PowerAllocation,
                   rng: np.random.Generator) -> TrialSignals:
    """One signal-level trial of the full network.

    Builds the transmit vectors from the conjugate precoders, propagates
    them over every modeled path (direct ground links plus target echoes),
    and adds unit-variance noise.  The probing S-AP to echo S-AP ground
    coupling is cancelled by AP cooperation and therefore never added.
    """
    n, npm, k = cfg.n_ant_ap, cfg.n_ant_pm, cfg.n_ue
    real = attach_estimates(draw_small_scale(cfg, topo, ls, rng), ls, est, rng)
    prec = precoders(real, est)
    los = real.los
    alpha_sq = math.sqrt(ls.alpha_refl)

    s_ue = crandn(rng, k)
    s_t = complex(crandn(rng))
    s_pm_t = complex(crandn(rng))
    s_pm_1 = complex(crandn(rng))
    n_ue = crandn(rng, k)
    n_pm = crandn(rng, npm)
    n_sr = crandn(rng, cfg.n_sap_rx, n)

    # transmit vectors of the C-APs, probing S-APs, and monitor
    amp_c = np.sqrt(pa.eta_c * pa.rho_c)
    x_c = np.einsum("mk,mkn,k->mn", amp_c, prec.w_c, s_ue)
    amp_s = np.sqrt(pa.eta_s * pa.rho_s)
    x_s = amp_s[:, None] * prec.w_s * s_t
    x_pm = math.sqrt(pa.eta_pm_t * pa.rho_pm) * prec.w_pm_t * s_pm_t \
        + math.sqrt(pa.eta_pm_1 * pa.rho_pm) * prec.w_pm_1 * s_pm_1

    # received at each UE: C-APs direct; S-AP probes and monitor jamming
    # arrive both directly and reflected off the target
    y_ue = np.empty(k, dtype=complex)
    for kk in range(k):
        direct_c = np.einsum("mn,mn->", real.g_c_ue[:, kk, :], x_c)
        direct_s = np.einsum("mn,mn->", real.g_st_ue[:, kk, :], x_s)
        echo_s = alpha_sq * los.h_t_ue[kk] * np.einsum("mn,mn->", los.h_st_t, x_s)
        direct_pm = real.g_pm_ue[kk] @ x_pm
        echo_pm = alpha_sq * los.h_t_ue[kk] * (los.h_pm_t @ x_pm)
        y_ue[kk] = direct_c + direct_s + echo_s + direct_pm + echo_pm + n_ue[kk]

    # received at the monitor
    y_pm = np.einsum("mni,mn->i", real.G_c_pm, x_c) \
        + np.einsum("mni,mn->i", real.G_st_pm, x_s) \
        + alpha_sq * los.h_t_pm * np.einsum("mn,mn->", los.h_st_t, x_s) \
        + real.G_pm_pm.T @ x_pm \
        + alpha_sq * los.h_t_pm * (los.h_pm_t @ x_pm) \
        + n_pm

    # received at each echo S-AP after cooperation cancellation
    y_sr = np.empty((cfg.n_sap_rx, n), dtype=complex)
    for r in range(cfg.n_sap_rx):
        echo_probe = alpha_sq * los.h_t_sr[r] * np.einsum("mn,mn->", los.h_st_t, x_s)
        direct_c = np.einsum("mni,mn->i", real.G_c_sr[:, r], x_c)
        direct_pm = real.G_pm_sr[r].T @ x_pm
        echo_pm = alpha_sq * los.h_t_sr[r] * (los.h_pm_t @ x_pm)
        y_sr[r] = echo_probe + direct_c + direct_pm + echo_pm + n_sr[r]

    return TrialSignals(real=real, prec=prec, s_ue=s_ue, s_t=s_t,
                        s_pm_t=s_pm_t, s_pm_1=s_pm_1, n_ue=n_ue, n_pm=n_pm,
                        n_sr=n_sr, y_ue=y_ue, y_pm=y_pm, y_sr=y_sr)


def trial_decomposition(cfg: SystemConfig, ls: LargeScale, est: EstimationModel,
                        pa: PowerAllocation, trial: TrialSignals) -> dict:
    """Per-symbol coefficients and combined signals for one trial.

    For each receiver, returns the combined signal z, the coefficient of
    every independent symbol, and the effective noise, computed directly
    from the drawn channels (independently of how y was accumulated).
    The identity z = sum_s coeff_s * s + noise_eff is the completeness
    check on the decomposition.
    """
    real, prec, los = trial.real, trial.prec, trial.real.los
    n, npm, k = cfg.n_ant_ap, cfg.n_ant_pm, cfg.n_ue
    alpha_sq = math.sqrt(ls.alpha_refl)
    amp_c = np.sqrt(pa.eta_c * pa.rho_c)
    amp_s = np.sqrt(pa.eta_s * pa.rho_s)
    amp_pm_t = math.sqrt(pa.eta_pm_t * pa.rho_pm)
    amp_pm_1 = math.sqrt(pa.eta_pm_1 * pa.rho_pm)
    symbols = {f"s_ue{kk + 1}": trial.s_ue[kk] for kk in range(k)}
    symbols.update({"s_t": trial.s_t, "s_pm_t": trial.s_pm_t,
                    "s_pm_1": trial.s_pm_1})
    out = {"symbols": symbols, "receivers": {}}

    refl_probe = alpha_sq * float(np.sum(amp_s * n * ls.zeta_st_t))

    # ---- UEs
    for kk in range(k):
        coeffs = {}
        for kp in range(k):
            coeffs[f"s_ue{kp + 1}"] = complex(np.einsum(
                "mn,mn->", real.g_c_ue[:, kk, :], amp_c[:, kp, None] * prec.w_c[:, kp, :]))
        coeffs["s_t"] = complex(
            np.einsum("mn,mn->", real.g_st_ue[:, kk, :], amp_s[:, None] * prec.w_s)
            + refl_probe * los.h_t_ue[kk])
        coeffs["s_pm_t"] = complex(amp_pm_t * (
            real.g_pm_ue[kk] @ prec.w_pm_t
            + alpha_sq * los.h_t_ue[kk] * (los.h_pm_t @ prec.w_pm_t)))
        coeffs["s_pm_1"] = complex(amp_pm_1 * (
            real.g_pm_ue[kk] @ prec.w_pm_1
            + alpha_sq * los.h_t_ue[kk] * (los.h_pm_t @ prec.w_pm_1)))
        out["receivers"][f"ue{kk + 1}"] = {
            "z": complex(trial.y_ue[kk]),
            "coeffs": coeffs,
            "noise_eff": complex(trial.n_ue[kk]),
        }

    # ---- monitor: maximum-ratio combining on the UE-1 estimate beams
    w_pm = np.conj(np.einsum("mni,mn->i", real.G_c_pm,
                             amp_c[:, 0, None] * prec.w_c[:, 0, :]))
    coeffs = {}
    for kp in range(k):
        path = np.einsum("mni,mn->i", real.G_c_pm, amp_c[:, kp, None] * prec.w_c[:, kp, :])
        coeffs[f"s_ue{kp + 1}"] = complex(w_pm @ path)
    probe_path = np.einsum("mni,mn->i", real.G_st_pm, amp_s[:, None] * prec.w_s) \
        + refl_probe * los.h_t_pm
    coeffs["s_t"] = complex(w_pm @ probe_path)
    si_t = amp_pm_t * (real.G_pm_pm.T @ prec.w_pm_t
                       + alpha_sq * los.h_t_pm * (los.h_pm_t @ prec.w_pm_t))
    si_1 = amp_pm_1 * (real.G_pm_pm.T @ prec.w_pm_1
                       + alpha_sq * los.h_t_pm * (los.h_pm_t @ prec.w_pm_1))
    coeffs["s_pm_t"] = complex(w_pm @ si_t)
    coeffs["s_pm_1"] = complex(w_pm @ si_1)
    out["receivers"]["monitor"] = {
        "z": complex(w_pm @ trial.y_pm),
        "coeffs": coeffs,
        "noise_eff": complex(w_pm @ trial.n_pm),
    }

    # ---- CPU: matched combining of the target echo at each echo S-AP
    a_comb = alpha_sq * float(np.sum(amp_s * n * ls.zeta_st_t))
    w_sr = a_comb * np.conj(los.h_t_sr)  # (n_sap_rx, n)
    coeffs = {}
    for kp in range(k):
        val = 0.0 + 0.0j
        for r in range(cfg.n_sap_rx):
            path = np.einsum("mni,mn->i", real.G_c_sr[:, r],
                             amp_c[:, kp, None] * prec.w_c[:, kp, :])
            val += w_sr[r] @ path
        coeffs[f"s_ue{kp + 1}"] = complex(val)
    coeffs["s_t"] = complex(np.sum(w_sr * (refl_probe * los.h_t_sr)))
    val_t = 0.0 + 0.0j
    val_1 = 0.0 + 0.0j
    for r in range(cfg.n_sap_rx):
        base_t = real.G_pm_sr[r].T @ prec.w_pm_t \
            + alpha_sq * los.h_t_sr[r] * (los.h_pm_t @ prec.w_pm_t)
        base_1 = real.G_pm_sr[r].T @ prec.w_pm_1 \
            + alpha_sq * los.h_t_sr[r] * (los.h_pm_t @ prec.w_pm_1)
        val_t += w_sr[r] @ base_t
        val_1 += w_sr[r] @ base_1
    coeffs["s_pm_t"] = complex(amp_pm_t * val_t)
    coeffs["s_pm_1"] = complex(amp_pm_1 * val_1)
    out["receivers"]["cpu"] = {
        "z": complex(np.einsum("rn,rn->", w_sr, trial.y_sr)),
        "coeffs": coeffs,
        "noise_eff": complex(np.einsum("rn,rn->", w_sr, trial.n_sr)),
    }
    return out


def bookkeeping_residuals(decomp: dict) -> dict[str, float]:
    """Relative residual of z - (sum coeff * symbol + noise) per receiver."""
    out = {}
    for name, rec in decomp["receivers"].items():
        recon = math.fsum([(rec["coeffs"][s] * decomp["symbols"][s]).real
                           for s in rec["coeffs"]]) \
            + 1j * math.fsum([(rec["coeffs"][s] * decomp["symbols"][s]).imag
                              for s in rec["coeffs"]]) \
            + rec["noise_eff"]
        scale = max(abs(rec["z"]), 1e-300)
        out[name] = abs(rec["z"] - recon) / scale
    return out
