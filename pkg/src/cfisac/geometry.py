"""Node placement, wrap-around distances, and ULA steering vectors.

The deployment square is a torus: every distance uses per-axis minimal-image
deltas so edge effects vanish.  Air links to the aerial target use the same
wrapped horizontal component plus the height.  All arrays are ULAs along the
x-axis with half-wavelength spacing unless overridden.
"""

import json
from dataclasses import dataclass

import numpy as np

from .config import SystemConfig


class GeometryError(ValueError):
    """Degenerate geometry, e.g. coincident nodes for an angle query."""


@dataclass(frozen=True)
class Topology:
    """One placement of all nodes; immutable once drawn.

    Ground positions are (x, y) in meters on the [0, side) x [0, side)
    square; the target carries (x, y, z) with z = h > 0.
    """
    cap_pos: np.ndarray      # (n_cap, 2)
    sap_tx_pos: np.ndarray   # (n_sap_tx, 2)
    sap_rx_pos: np.ndarray   # (n_sap_rx, 2)
    ue_pos: np.ndarray       # (n_ue, 2)
    monitor_pos: np.ndarray  # (2,), on the circle of radius r around UE 1
    target_pos: np.ndarray   # (3,)
    side_m: float


def draw_topology(cfg: SystemConfig, rng: np.random.Generator) -> Topology:
    """APs, UEs, and target uniform on the square; monitor on the UE-1 circle.

    The monitor is placed at UE1 + r (cos phi, sin phi) for a uniform
    phi and wrapped back into the square, so its torus distance to UE 1
    is exactly r.
    """
    side = cfg.area_km * 1000.0
    cap = rng.uniform(0.0, side, (cfg.n_cap, 2))
    sap_tx = rng.uniform(0.0, side, (cfg.n_sap_tx, 2))
    sap_rx = rng.uniform(0.0, side, (cfg.n_sap_rx, 2))
    ue = rng.uniform(0.0, side, (cfg.n_ue, 2))
    phi = rng.uniform(0.0, 2.0 * np.pi)
    monitor = (ue[0] + cfg.monitor_radius_m * np.array([np.cos(phi), np.sin(phi)])) % side
    tgt_xy = rng.uniform(0.0, side, 2)
    target = np.array([tgt_xy[0], tgt_xy[1], cfg.target_height_m])
    return Topology(cap_pos=cap, sap_tx_pos=sap_tx, sap_rx_pos=sap_rx,
                    ue_pos=ue, monitor_pos=monitor, target_pos=target,
                    side_m=side)


def serialize_topology(topo: Topology) -> str:
    """Structured-text form of a topology for regression fixtures.

    JSON with full-precision floats; parse_topology restores it exactly.
    """
    return json.dumps({
        "cap_pos": topo.cap_pos.tolist(),
        "sap_tx_pos": topo.sap_tx_pos.tolist(),
        "sap_rx_pos": topo.sap_rx_pos.tolist(),
        "ue_pos": topo.ue_pos.tolist(),
        "monitor_pos": topo.monitor_pos.tolist(),
        "target_pos": topo.target_pos.tolist(),
        "side_m": topo.side_m,
    }, indent=2)


def parse_topology(text: str) -> Topology:
    """Inverse of serialize_topology; bit-exact round trip."""
    data = json.loads(text)
    try:
        return Topology(
            cap_pos=np.asarray(data["cap_pos"], dtype=float),
            sap_tx_pos=np.asarray(data["sap_tx_pos"], dtype=float),
            sap_rx_pos=np.asarray(data["sap_rx_pos"], dtype=float),
            ue_pos=np.asarray(data["ue_pos"], dtype=float),
            monitor_pos=np.asarray(data["monitor_pos"], dtype=float),
            target_pos=np.asarray(data["target_pos"], dtype=float),
            side_m=float(data["side_m"]))
    except KeyError as exc:
        raise GeometryError(f"topology text missing field {exc}") from None


def wrapped_delta(a: np.ndarray, b: np.ndarray, side: float) -> np.ndarray:
    """Minimal-image displacement b - a per axis, each in [-side/2, side/2)."""
    return (np.asarray(b) - np.asarray(a) + side / 2.0) % side - side / 2.0


def torus_distance_2d(a: np.ndarray, b: np.ndarray, side: float) -> np.ndarray:
    """Euclidean distance under per-axis wrap-around; broadcasts over (..., 2)."""
    if not side > 0:
        raise GeometryError(f"side must be > 0, got {side}")
    d = np.abs(np.asarray(b, dtype=float) - np.asarray(a, dtype=float))
    d = np.minimum(d, side - d)
    return np.sqrt(np.sum(d * d, axis=-1))


def distance_3d_to_target(ap: np.ndarray, target: np.ndarray, side: float) -> np.ndarray:
    """3D distance from a ground node to the target.

    The horizontal component uses the torus metric, consistent with the
    ground links; the vertical component is the target height.
    """
    target = np.asarray(target, dtype=float)
    horiz = torus_distance_2d(np.asarray(ap, dtype=float), target[..., :2], side)
    return np.sqrt(horiz * horiz + target[..., 2] ** 2)


def departure_angles(ap: np.ndarray, target: np.ndarray, side: float) -> tuple[float, float]:
    """(azimuth, elevation) from a ground node toward the target.

    Azimuth is atan2 of the minimal-image ground displacement, in (-pi, pi];
    elevation is atan2(h, horizontal distance), in [0, pi/2].
    """
    target = np.asarray(target, dtype=float)
    delta = wrapped_delta(np.asarray(ap, dtype=float), target[:2], side)
    horiz = float(np.hypot(delta[0], delta[1]))
    h = float(target[2])
    if horiz == 0.0 and h == 0.0:
        raise GeometryError("angles undefined for coincident nodes")
    return float(np.arctan2(delta[1], delta[0])), float(np.arctan2(h, horiz))


def steering_vector(azimuth: float, elevation: float, n_ant: int,
                    spacing_ratio: float = 0.5) -> np.ndarray:
    """ULA steering vector along the x-axis.

    Entry n (1-based) is exp(j 2 pi spacing_ratio (n - 1) sin(az) cos(el));
    all entries are unit modulus, so the squared norm is n_ant.
    """
    if n_ant < 1:
        raise GeometryError(f"n_ant must be >= 1, got {n_ant}")
    n = np.arange(n_ant)
    phase = 2.0 * np.pi * spacing_ratio * n * np.sin(azimuth) * np.cos(elevation)
    return np.exp(1j * phase)
