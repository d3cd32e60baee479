"""System parameters, validation, and the flat key = value config format.

SystemConfig is the single source of truth for every scalar parameter of
the simulation.  Defaults follow the reference network setup: 20 C-APs,
3 + 3 S-APs, 5 UEs on a 1 km wrap-around square, P_c = P_s = 1 W,
P_p = 0.2 W, 9 dB shadowing, 8 dB noise figure, kappa = 3 dB,
sigma_RCS = 0.1 m^2.  Parameters the setup leaves open (carrier,
bandwidth, self-interference level, monitor geometry, power split) get
documented defaults and are all overridable from config files or
--set key=value pairs.
"""

import math
from dataclasses import dataclass, fields, replace

from scipy.constants import Boltzmann, speed_of_light

T0_KELVIN = 290.0  # reference temperature for thermal noise


class ConfigError(ValueError):
    """Malformed config text, unknown key, or uncoercible value."""


def db2lin(x_db: float) -> float:
    return 10.0 ** (x_db / 10.0)


def lin2db(x: float) -> float:
    return 10.0 * math.log10(x)


@dataclass(frozen=True)
class SystemConfig:
    # node counts
    n_cap: int = 20            # C-APs sending communication signals (|M_c|)
    n_sap_tx: int = 3          # S-APs probing the target (|M_s,t|)
    n_sap_rx: int = 3          # S-APs receiving target echoes (|M_s,r|)
    n_ue: int = 5              # UEs; UE 1 is the suspicious one
    n_ant_ap: int = 5          # antennas per AP (N)
    n_ant_pm: int = 32         # monitor antennas (N_pm)
    # transmit powers, watts
    p_c: float = 1.0           # per C-AP communication power
    p_s: float = 1.0           # per S-AP probing power
    p_p: float = 0.2           # UE pilot power
    p_pm: float = 1.0          # monitor power budget; 0 switches the monitor off
    # RF and noise
    noise_figure_db: float = 8.0
    bandwidth_hz: float = 1.0e5   # narrowband sensing default, see README
    carrier_hz: float = 1.9e9     # sets the wavelength
    # pilots
    tau_p: int = 5             # pilot length; >= n_ue for orthogonal pilots
    rho_p_pm_scale: float = 1.0   # spoofing pilot power as a multiple of rho_p
    # propagation
    sigma_sh_db: float = 9.0   # log-normal shadowing std dev
    # Residual self-interference variance sigma_SI^2 in dB relative to unity.
    # Default models near-perfect cancellation: the monitor knows its own
    # jamming waveform, and with the very lossy ground links modeled here any
    # weaker cancellation would bury its listening SINR under its own leakage.
    sigma_si_db: float = -160.0
    sigma_rcs_m2: float = 0.1  # target radar cross-section
    pathloss_exponent: float = 2.0   # L in zeta = (lambda / 4 pi d)^L for air links
    target_height_m: float = 100.0   # aerial target altitude h
    monitor_radius_m: float = 10.0   # monitor distance r from UE 1
    area_km: float = 1.0       # side of the wrap-around square
    # thresholds and power split
    kappa_db: float = 3.0      # sensing detection threshold
    theta_pm_t: float = 0.5    # monitor power fraction jamming the target
    theta_pm_1: float = 0.5    # monitor power fraction jamming UE 1
    # reproducibility and sample sizes
    seed: int = 1
    mc_trials: int = 100_000
    topo_draws: int = 500


def default_config() -> SystemConfig:
    """The reference network setup with documented defaults elsewhere."""
    return SystemConfig()


_COUNT_FIELDS = ("n_cap", "n_sap_tx", "n_sap_rx", "n_ue", "n_ant_ap", "n_ant_pm")
_POSITIVE_FIELDS = ("p_c", "p_s", "p_p", "bandwidth_hz", "carrier_hz", "tau_p",
                    "sigma_rcs_m2", "target_height_m", "monitor_radius_m", "area_km")
_NONNEGATIVE_FIELDS = ("p_pm", "rho_p_pm_scale", "sigma_sh_db", "monitor_radius_m")


def validate(cfg: SystemConfig) -> list[str]:
    """Every violated invariant as a message; empty list iff admissible.

    Violations are data, not exceptions: callers decide whether to abort.
    p_pm = 0 is allowed deliberately (monitor switched off), unlike the
    other transmit powers.
    """
    out = []
    for name in _COUNT_FIELDS:
        if getattr(cfg, name) < 1:
            out.append(f"{name} must be >= 1, got {getattr(cfg, name)}")
    for name in _POSITIVE_FIELDS:
        if not getattr(cfg, name) > 0:
            out.append(f"{name} must be > 0, got {getattr(cfg, name)}")
    for name in _NONNEGATIVE_FIELDS:
        if getattr(cfg, name) < 0:
            out.append(f"{name} must be >= 0, got {getattr(cfg, name)}")
    for name in ("theta_pm_t", "theta_pm_1"):
        v = getattr(cfg, name)
        if not 0.0 <= v <= 1.0:
            out.append(f"{name} must lie in [0, 1], got {v}")
    if cfg.theta_pm_t + cfg.theta_pm_1 > 1.0 + 1e-12:
        out.append("power split violated: theta_pm_t + theta_pm_1 = "
                   f"{cfg.theta_pm_t + cfg.theta_pm_1} exceeds 1")
    if cfg.tau_p < cfg.n_ue:
        out.append(f"tau_p = {cfg.tau_p} too short for {cfg.n_ue} orthogonal pilots")
    if not math.isfinite(cfg.kappa_db):
        out.append(f"kappa_db must be finite, got {cfg.kappa_db}")
    if cfg.mc_trials < 1:
        out.append(f"mc_trials must be >= 1, got {cfg.mc_trials}")
    if cfg.topo_draws < 1:
        out.append(f"topo_draws must be >= 1, got {cfg.topo_draws}")
    return out


def noise_power_w(cfg: SystemConfig) -> float:
    """Thermal noise power k_B T0 B scaled by the receiver noise figure."""
    if not cfg.bandwidth_hz > 0:
        raise ConfigError(f"bandwidth_hz must be > 0, got {cfg.bandwidth_hz}")
    return Boltzmann * T0_KELVIN * cfg.bandwidth_hz * db2lin(cfg.noise_figure_db)


def wavelength_m(cfg: SystemConfig) -> float:
    return speed_of_light / cfg.carrier_hz


def kappa_linear(cfg: SystemConfig) -> float:
    return db2lin(cfg.kappa_db)


# ---------------------------------------------------------------------------
# flat key = value config file format

_FIELD_TYPES = {f.name: f.type for f in fields(SystemConfig)}


def _coerce(name: str, raw: str):
    kind = _FIELD_TYPES[name]
    try:
        if kind == "int" or kind is int:
            return int(raw)
        return float(raw)
    except ValueError as exc:
        raise ConfigError(f"cannot parse value for {name!r}: {raw!r}") from exc


def parse_config(text: str, base: SystemConfig | None = None) -> SystemConfig:
    """Parse flat 'key = value' lines on top of defaults.

    Lines that are blank or start with '#' are skipped.  Unknown keys are
    errors: a silent typo would quietly fall back to a default.
    """
    cfg = base if base is not None else default_config()
    updates = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"line {lineno}: expected 'key = value', got {stripped!r}")
        key, _, raw = stripped.partition("=")
        key = key.strip()
        if key not in _FIELD_TYPES:
            raise ConfigError(f"line {lineno}: unknown config key {key!r}")
        updates[key] = _coerce(key, raw.strip())
    return replace(cfg, **updates)


def load_config(path) -> SystemConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config(fh.read())


def serialize_config(cfg: SystemConfig) -> str:
    """Emit every field as 'key = value', parseable by parse_config."""
    lines = [f"{f.name} = {getattr(cfg, f.name)!r}" for f in fields(SystemConfig)]
    return "\n".join(lines) + "\n"


def apply_overrides(cfg: SystemConfig, pairs: list[str]) -> SystemConfig:
    """Apply --set style 'key=value' overrides; unknown keys are errors."""
    updates = {}
    for pair in pairs:
        if "=" not in pair:
            raise ConfigError(f"override must look like key=value, got {pair!r}")
        key, _, raw = pair.partition("=")
        key = key.strip()
        if key not in _FIELD_TYPES:
            raise ConfigError(f"unknown config key {key!r}")
        updates[key] = _coerce(key, raw.strip())
    return replace(cfg, **updates)
