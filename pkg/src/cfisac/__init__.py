"""Cell-free massive MIMO ISAC simulator with a proactive monitor.

Closed-form effective SINRs for the monitor, the user equipments, and the
sensing CPU, validated term by term against a signal-level Monte Carlo
oracle, plus the monitoring-success / successful-detection experiments
built on top of them.
"""

from .channel import (ChannelRealization, LargeScale, LosChannels,
                      draw_small_scale, dump_large_scale, large_scale,
                      los_channels, three_slope_pathloss_db, zeta_los)
from .closedform import (CPU_TERMS, MONITOR_TERMS, UE_TERMS, VARIANTS,
                         ContractError, SinrBreakdown, sinr_cpu, sinr_monitor,
                         sinr_ue)
from .config import (ConfigError, SystemConfig, apply_overrides, db2lin,
                     default_config, lin2db, load_config, noise_power_w,
                     parse_config, serialize_config, validate, wavelength_m)
from .estimation import (EstimationModel, estimation_model, gamma_mk,
                         split_estimate, with_gamma)
from .geometry import (GeometryError, Topology, departure_angles,
                       distance_3d_to_target, draw_topology, parse_topology,
                       serialize_topology, steering_vector, torus_distance_2d)
from .metrics import (MetricPoint, draw_scene, msp, point_metrics,
                      scene_indicators, sdp, sweep_npm, sweep_theta)
from .oracle import (DegenerateSignalError, TermEstimate,
                     bookkeeping_residuals, empirical_sinr, estimate_terms,
                     simulate_trial, trial_decomposition)
from .power import (PowerAllocation, Precoders, full_power_coefficients,
                    precoders)

__version__ = "0.1.0"

__all__ = [
    "ChannelRealization", "LargeScale", "LosChannels", "draw_small_scale",
    "dump_large_scale", "large_scale", "los_channels",
    "three_slope_pathloss_db", "zeta_los",
    "CPU_TERMS", "MONITOR_TERMS", "UE_TERMS", "VARIANTS", "ContractError",
    "SinrBreakdown", "sinr_cpu", "sinr_monitor", "sinr_ue",
    "ConfigError", "SystemConfig", "apply_overrides", "db2lin",
    "default_config", "lin2db", "load_config", "noise_power_w",
    "parse_config", "serialize_config", "validate", "wavelength_m",
    "EstimationModel", "estimation_model", "gamma_mk", "split_estimate",
    "with_gamma",
    "GeometryError", "Topology", "departure_angles", "distance_3d_to_target",
    "draw_topology", "parse_topology", "serialize_topology",
    "steering_vector", "torus_distance_2d",
    "MetricPoint", "draw_scene", "msp", "point_metrics", "scene_indicators",
    "sdp", "sweep_npm", "sweep_theta",
    "DegenerateSignalError", "TermEstimate", "bookkeeping_residuals",
    "empirical_sinr", "estimate_terms", "simulate_trial",
    "trial_decomposition",
    "PowerAllocation", "Precoders", "full_power_coefficients", "precoders",
    "__version__",
]
