"""Wrap-around geometry, node placement, angles, and steering vectors."""

import json
import math

import numpy as np
import pytest

from cfisac.geometry import (GeometryError, departure_angles,
                             distance_3d_to_target, draw_topology,
                             parse_topology, serialize_topology,
                             steering_vector, torus_distance_2d,
                             wrapped_delta)

SIDE = 1000.0


def test_torus_distance_known_values():
    assert torus_distance_2d((0.0, 0.0), (3.0, 4.0), SIDE) == 5.0
    # the wrap-around image at -10 is closer than the direct 980 m path
    assert torus_distance_2d((10.0, 0.0), (990.0, 0.0), SIDE) == 20.0
    assert math.isclose(torus_distance_2d((0.0, 0.0), (500.0, 500.0), SIDE),
                        500.0 * math.sqrt(2.0), rel_tol=1e-12)


def test_torus_distance_never_exceeds_direct_distance():
    rng = np.random.default_rng(1)
    for _ in range(200):
        a, b = rng.uniform(0.0, SIDE, (2, 2))
        direct = float(np.hypot(*(a - b)))
        assert torus_distance_2d(a, b, SIDE) <= direct + 1e-12


def test_torus_distance_is_a_metric():
    rng = np.random.default_rng(2)
    for _ in range(200):
        a, b, c = rng.uniform(0.0, SIDE, (3, 2))
        dab = torus_distance_2d(a, b, SIDE)
        assert dab >= 0.0
        assert torus_distance_2d(a, a, SIDE) == 0.0
        assert math.isclose(dab, torus_distance_2d(b, a, SIDE), rel_tol=1e-12)
        assert dab <= torus_distance_2d(a, c, SIDE) \
            + torus_distance_2d(c, b, SIDE) + 1e-9


def test_torus_distance_broadcasts():
    a = np.zeros((4, 1, 2))
    b = np.array([[3.0, 4.0], [990.0, 0.0]])[None, :, :]
    d = torus_distance_2d(a, b, SIDE)
    assert d.shape == (4, 2)
    assert np.allclose(d[:, 0], 5.0) and np.allclose(d[:, 1], 10.0)


def test_torus_distance_rejects_bad_side():
    with pytest.raises(GeometryError):
        torus_distance_2d((0.0, 0.0), (1.0, 1.0), 0.0)


def test_wrapped_delta_is_minimal_image():
    d = wrapped_delta(np.array([10.0, 0.0]), np.array([990.0, 0.0]), SIDE)
    assert np.allclose(d, [-20.0, 0.0])


def test_distance_3d_known_values():
    assert distance_3d_to_target((0.0, 0.0), (3.0, 4.0, 12.0), SIDE) == 13.0
    # wrapped horizontal 20 m with height 99 m: a 20-99-101 triple
    assert math.isclose(
        distance_3d_to_target((10.0, 0.0), (990.0, 0.0, 99.0), SIDE),
        101.0, rel_tol=1e-12)


def test_distance_3d_at_least_target_height():
    rng = np.random.default_rng(3)
    target = np.array([400.0, 600.0, 100.0])
    pts = rng.uniform(0.0, SIDE, (100, 2))
    assert np.all(distance_3d_to_target(pts, target, SIDE) >= 100.0)


def test_departure_angles_known_values():
    az, el = departure_angles((0.0, 0.0), (10.0, 0.0, 10.0), SIDE)
    assert math.isclose(az, 0.0, abs_tol=1e-12)
    assert math.isclose(el, math.pi / 4.0, rel_tol=1e-12)
    az, el = departure_angles((0.0, 0.0), (0.0, 5.0, 5.0), SIDE)
    assert math.isclose(az, math.pi / 2.0, rel_tol=1e-12)
    # directly overhead: elevation straight up, azimuth irrelevant but defined
    _, el = departure_angles((7.0, 7.0), (7.0, 7.0, 50.0), SIDE)
    assert math.isclose(el, math.pi / 2.0, rel_tol=1e-12)
    # wrap-around changes the sign of the ground displacement
    az, _ = departure_angles((10.0, 0.0), (990.0, 0.0, 100.0), SIDE)
    assert math.isclose(abs(az), math.pi, rel_tol=1e-12)


def test_departure_angles_reject_coincident_nodes():
    with pytest.raises(GeometryError):
        departure_angles((5.0, 5.0), (5.0, 5.0, 0.0), SIDE)


def test_steering_vector_known_values():
    assert np.allclose(steering_vector(0.0, 0.3, 4), np.ones(4))
    assert np.allclose(steering_vector(math.pi / 2.0, 0.0, 2), [1.0, -1.0])


def test_steering_vector_unit_modulus_and_norm():
    rng = np.random.default_rng(4)
    for _ in range(50):
        az = rng.uniform(-math.pi, math.pi)
        el = rng.uniform(0.0, math.pi / 2.0)
        n = int(rng.integers(1, 12))
        v = steering_vector(az, el, n)
        assert np.allclose(np.abs(v), 1.0, atol=1e-12)
        assert math.isclose(float(np.vdot(v, v).real), n, rel_tol=1e-12)


def test_steering_vector_rejects_empty_array():
    with pytest.raises(GeometryError):
        steering_vector(0.0, 0.0, 0)


def test_angles_invariant_under_common_translation():
    rng = np.random.default_rng(5)
    for _ in range(50):
        ap = rng.uniform(0.0, SIDE, 2)
        tgt = np.append(rng.uniform(0.0, SIDE, 2), rng.uniform(10.0, 200.0))
        shift = rng.uniform(-2.0 * SIDE, 2.0 * SIDE, 2)
        ref = steering_vector(*departure_angles(ap, tgt, SIDE), 6)
        moved = steering_vector(*departure_angles(
            ap + shift, tgt + np.append(shift, 0.0), SIDE), 6)
        assert np.allclose(ref, moved, atol=1e-9)


def test_draw_topology_shapes_and_bounds(cfg_default):
    topo = draw_topology(cfg_default, np.random.default_rng(6))
    side = cfg_default.area_km * 1000.0
    assert topo.side_m == side
    assert topo.cap_pos.shape == (cfg_default.n_cap, 2)
    assert topo.sap_tx_pos.shape == (cfg_default.n_sap_tx, 2)
    assert topo.sap_rx_pos.shape == (cfg_default.n_sap_rx, 2)
    assert topo.ue_pos.shape == (cfg_default.n_ue, 2)
    for arr in (topo.cap_pos, topo.sap_tx_pos, topo.sap_rx_pos, topo.ue_pos,
                topo.monitor_pos, topo.target_pos[:2]):
        assert np.all(arr >= 0.0) and np.all(arr < side)
    assert topo.target_pos[2] == cfg_default.target_height_m


def test_monitor_sits_on_circle_around_suspicious_ue(cfg_default):
    for s in range(20):
        topo = draw_topology(cfg_default, np.random.default_rng(s))
        d = torus_distance_2d(topo.monitor_pos, topo.ue_pos[0], topo.side_m)
        assert math.isclose(float(d), cfg_default.monitor_radius_m,
                            rel_tol=1e-9)


def test_draw_topology_deterministic_per_stream(cfg_default):
    a = draw_topology(cfg_default, np.random.default_rng(7))
    b = draw_topology(cfg_default, np.random.default_rng(7))
    c = draw_topology(cfg_default, np.random.default_rng(8))
    assert np.array_equal(a.cap_pos, b.cap_pos)
    assert np.array_equal(a.monitor_pos, b.monitor_pos)
    assert not np.array_equal(a.cap_pos, c.cap_pos)


def test_topology_serialization_round_trip(cfg_default):
    topo = draw_topology(cfg_default, np.random.default_rng(9))
    back = parse_topology(serialize_topology(topo))
    for name in ("cap_pos", "sap_tx_pos", "sap_rx_pos", "ue_pos",
                 "monitor_pos", "target_pos"):
        assert np.array_equal(getattr(back, name), getattr(topo, name)), name
    assert back.side_m == topo.side_m


def test_parse_topology_names_missing_field(cfg_default):
    topo = draw_topology(cfg_default, np.random.default_rng(10))
    data = json.loads(serialize_topology(topo))
    del data["ue_pos"]
    with pytest.raises(GeometryError, match="ue_pos"):
        parse_topology(json.dumps(data))
