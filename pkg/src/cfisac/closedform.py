"""Closed-form SINR breakdowns for the monitor, each UE, and the sensing CPU.

Every expression follows the use-and-then-forget decomposition: a
deterministic desired-signal mean (DS) over a denominator of uncorrelated
effective-noise powers (beamforming uncertainty, interference, jamming,
self-interference, thermal noise).  Each term is returned by name so the
Monte Carlo oracle can check it individually.

Two variants are provided per receiver:

* ``corrected`` (default): the forms supported by a from-scratch moment
  derivation and by the oracle.  They differ from the published text in a
  handful of places (see docs/CONFORMANCE.md): the monitor BU/IC/IS
  moments, the self-interference sum taken over communication APs, the UE
  sensing-interference term, the UE-1 jamming fourth moment applied only
  to the beamformed UE, and the CPU terms (coherent combining factor, a
  missing reflection gain in IC, coherent target-echo summation).
* ``printed``: the literal published expressions, kept for adjudication.
  In this variant the monitor's probing self-interference sums over
  sensing APs, which allocate no power toward UE 1, so it evaluates to 0.

Denominators are accumulated with compensated summation (math.fsum), which
is exact regardless of term magnitude spread.
"""

import math
from dataclasses import dataclass, field

import numpy as np

from .channel import LargeScale
from .config import SystemConfig
from .estimation import EstimationModel
from .power import PowerAllocation

VARIANTS = ("corrected", "printed")

# fixed denominator-term order per receiver, used for CSV layouts
MONITOR_TERMS = ("BU", "IC", "IS", "SI_s", "SI_c", "noise")
UE_TERMS = ("BU", "IUI", "IS", "JS_s", "JS_c", "noise")
CPU_TERMS = ("BU", "IC", "JS_s", "JS_c", "noise")


class ContractError(ValueError):
    """Inconsistent inputs: dimensions, unknown variant, bad receiver index."""


@dataclass(frozen=True)
class SinrBreakdown:
    """One receiver's SINR split into named numerator/denominator pieces."""
    label: str                       # "monitor", "ue<k>", or "cpu"
    ds_mean: float                   # E{DS}, real and nonnegative here
    terms: dict[str, float] = field(default_factory=dict)

    def __post_init__(self):
        # normalize any stray numpy scalars so downstream repr() is clean
        object.__setattr__(self, "ds_mean", float(self.ds_mean))
        object.__setattr__(
            self, "terms", {k: float(v) for k, v in self.terms.items()})

    @property
    def numerator(self) -> float:
        return self.ds_mean ** 2

    @property
    def sinr(self) -> float:
        denom = math.fsum(self.terms.values())
        if denom == 0.0:
            return 0.0  # all-silent edge case: zero signal over zero noise
        return self.numerator / denom

    def to_csv_row(self) -> dict[str, float | str]:
        row: dict[str, float | str] = {"receiver": self.label, "DS": self.ds_mean}
        row.update(self.terms)
        row["sinr"] = self.sinr
        return row


def _check(ls: LargeScale, est: EstimationModel, pa: PowerAllocation,
           cfg: SystemConfig, variant: str) -> None:
    if variant not in VARIANTS:
        raise ContractError(f"unknown variant {variant!r}; expected one of {VARIANTS}")
    expected = (cfg.n_cap, cfg.n_ue)
    for name, arr in (("beta_c_ue", ls.beta_c_ue), ("gamma", est.gamma),
                      ("eta_c", pa.eta_c)):
        if arr.shape != expected:
            raise ContractError(f"{name} has shape {arr.shape}, config implies {expected}")
    if ls.zeta_st_t.shape != (cfg.n_sap_tx,):
        raise ContractError("zeta_st_t inconsistent with n_sap_tx")
    if ls.zeta_t_sr.shape != (cfg.n_sap_rx,):
        raise ContractError("zeta_t_sr inconsistent with n_sap_rx")


def sinr_monitor(ls: LargeScale, est: EstimationModel, pa: PowerAllocation,
                 cfg: SystemConfig, variant: str = "corrected") -> SinrBreakdown:
    """Monitor's SINR for overhearing UE 1 under maximum-ratio combining."""
    _check(ls, est, pa, cfg, variant)
    n, npm = float(cfg.n_ant_ap), float(cfg.n_ant_pm)
    rc, rs, rpm = pa.rho_c, pa.rho_s, pa.rho_pm
    alpha, zpm = ls.alpha_refl, ls.zeta_pm_t
    g1 = est.gamma[:, 0]
    # e_m couples AP m's UE-1 beam to the monitor; S and Q are its sums
    e = pa.eta_c[:, 0] * ls.beta_c_pm * g1
    s_e = float(np.sum(e))
    q_e = float(np.sum(e * e))
    ds = rc * n * npm * s_e

    if variant == "corrected":
        bu = rc**2 * n * npm * ((npm + 1.0) * q_e + n * s_e**2)
    else:
        bu = rc**2 * n**2 * npm * (1.0 + npm) * (q_e + s_e**2) - ds**2

    # interference from the other UEs' beams, summed over k' != 1
    f = pa.eta_c[:, 1:] * est.gamma[:, 1:] * ls.beta_c_pm[:, None]
    if variant == "corrected":
        inner = (n + npm) * e[:, None] + n * (s_e - e)[:, None]
    else:
        inner = (n + npm) * e[:, None] + n * s_e
    ic = rc**2 * n * npm * float(np.sum(f * inner))

    # sensing probes: direct into the monitor array plus the target echo
    u_zeta = np.sqrt(pa.eta_s) * ls.zeta_st_t
    phi = float(np.sum(u_zeta)) ** 2
    is_direct = rs * rc * n**2 * npm * s_e \
        * float(np.sum(pa.eta_s * ls.beta_st_pm * ls.zeta_st_t))
    if variant == "corrected":
        echo_factor = phi
    else:
        echo_factor = float(np.sum(pa.eta_s * ls.zeta_st_t**2)) + phi
    is_echo = alpha * rs * rc * n**3 * npm * zpm * s_e * echo_factor
    is_pm = is_direct + is_echo

    si_common = rpm * rc * n * npm**2 * s_e
    if variant == "corrected":
        si_s = pa.eta_pm_t * si_common * zpm * (ls.beta_pm_pm + alpha * npm * zpm**2)
    else:
        # published sum ranges over sensing APs, which carry no UE-1
        # allocation (eta_{m,1} = gamma_{m,1} = 0), so it is empty
        si_s = 0.0
    si_c = pa.eta_pm_1 * si_common * ls.beta_pm_ue[0] \
        * (ls.beta_pm_pm + alpha * zpm**2)

    noise = rc * n * npm * s_e
    return SinrBreakdown(label="monitor", ds_mean=ds,
                         terms={"BU": bu, "IC": ic, "IS": is_pm,
                                "SI_s": si_s, "SI_c": si_c, "noise": noise})


def sinr_ue(k: int, ls: LargeScale, est: EstimationModel, pa: PowerAllocation,
            cfg: SystemConfig, variant: str = "corrected") -> SinrBreakdown:
    """Effective SINR of UE k (1-based; k = 1 is the suspicious UE)."""
    _check(ls, est, pa, cfg, variant)
    if not 1 <= k <= cfg.n_ue:
        raise ContractError(f"k must be in 1..{cfg.n_ue}, got {k}")
    i = k - 1
    n, npm = float(cfg.n_ant_ap), float(cfg.n_ant_pm)
    rc, rs, rpm = pa.rho_c, pa.rho_s, pa.rho_pm
    alpha, zpm = ls.alpha_refl, ls.zeta_pm_t
    beta_k = ls.beta_c_ue[:, i]
    gamma_k = est.gamma[:, i]

    ds = math.sqrt(rc) * n * float(np.sum(np.sqrt(pa.eta_c[:, i]) * gamma_k))
    bu = rc * n * float(np.sum(pa.eta_c[:, i] * gamma_k * beta_k))

    others = [kp for kp in range(cfg.n_ue) if kp != i]
    iui = rc * n * float(np.sum(pa.eta_c[:, others] * est.gamma[:, others]
                                * beta_k[:, None]))

    u_zeta = np.sqrt(pa.eta_s) * ls.zeta_st_t
    phi = float(np.sum(u_zeta)) ** 2
    if variant == "corrected":
        is_direct = rs * n * float(np.sum(pa.eta_s * ls.zeta_st_t * ls.beta_st_ue[:, i]))
        echo_factor = phi
    else:
        is_direct = rs * n * float(np.sum(np.sqrt(pa.eta_s) * ls.zeta_st_t
                                          * ls.beta_st_ue[:, i]))
        echo_factor = float(np.sum(np.sqrt(pa.eta_s) * ls.zeta_st_t**2)) + phi
    is_k = is_direct + rs * alpha * ls.zeta_t_ue[i] * n**2 * echo_factor

    js_s = pa.eta_pm_t * rpm * (ls.beta_pm_ue[i] * zpm * npm
                                + alpha * ls.zeta_t_ue[i] * npm**2 * zpm**2)

    beta_pm_1 = ls.beta_pm_ue[0]
    if variant == "corrected":
        # the (N_pm + 1) fourth moment only applies to the UE the jamming
        # beam is matched to; other UEs see an uncorrelated channel
        direct = (npm + 1.0) * beta_pm_1 if i == 0 else ls.beta_pm_ue[i]
    else:
        direct = (npm + 1.0) * beta_pm_1
    js_c = pa.eta_pm_1 * rpm * npm * beta_pm_1 \
        * (direct + alpha * ls.zeta_t_ue[i] * zpm)

    return SinrBreakdown(label=f"ue{k}", ds_mean=ds,
                         terms={"BU": bu, "IUI": iui, "IS": is_k,
                                "JS_s": js_s, "JS_c": js_c, "noise": 1.0})


def sinr_cpu(ls: LargeScale, est: EstimationModel, pa: PowerAllocation,
             cfg: SystemConfig, variant: str = "corrected") -> SinrBreakdown:
    """Sensing SINR at the CPU after matched combining of the S-AP echoes."""
    _check(ls, est, pa, cfg, variant)
    n, npm = float(cfg.n_ant_ap), float(cfg.n_ant_pm)
    rc, rs, rpm = pa.rho_c, pa.rho_s, pa.rho_pm
    alpha, zpm = ls.alpha_refl, ls.zeta_pm_t
    u_zeta = np.sqrt(pa.eta_s) * ls.zeta_st_t
    phi = float(np.sum(u_zeta)) ** 2
    if variant == "printed":
        phi = float(np.sum(pa.eta_s * ls.zeta_st_t**2)) + phi
    z_sum = float(np.sum(ls.zeta_t_sr))

    ds = alpha * rs * n**3 * phi * z_sum
    bu = 0.0

    # every C-AP/UE beam leaking into each echo S-AP
    w_r = np.einsum("mk,mr->r", pa.eta_c * est.gamma, ls.beta_c_sr)
    ic = rc * rs * n**4 * phi * float(np.sum(ls.zeta_t_sr * w_r))
    if variant == "corrected":
        ic *= alpha  # reflection gain on the combiner, absent from the text

    leak = ls.beta_pm_sr * ls.zeta_t_sr
    if variant == "corrected":
        # echoes add coherently across receiving S-APs
        js_s_inner = float(np.sum(leak)) + alpha * n * npm * zpm * z_sum**2
        js_c_inner = float(np.sum(leak)) + alpha * n * zpm * z_sum**2
    else:
        js_s_inner = float(np.sum(leak + alpha * n * npm * zpm * ls.zeta_t_sr**2))
        js_c_inner = float(np.sum(leak + alpha * n * zpm * ls.zeta_t_sr**2))
    js_common = alpha * rs * n**3 * npm * phi * rpm
    js_s = js_common * pa.eta_pm_t * zpm * js_s_inner
    js_c = js_common * pa.eta_pm_1 * ls.beta_pm_ue[0] * js_c_inner

    noise = alpha * rs * n**3 * phi * z_sum  # equals DS: unit-power noise
    return SinrBreakdown(label="cpu", ds_mean=ds,
                         terms={"BU": bu, "IC": ic, "JS_s": js_s,
                                "JS_c": js_c, "noise": noise})
