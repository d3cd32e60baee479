"""Shared fixtures: a shrunken network for fast tests plus pre-drawn scenes."""

import pytest

from cfisac.config import SystemConfig, default_config
from cfisac.metrics import draw_scene
from cfisac.power import full_power_coefficients


def small_config(**overrides) -> SystemConfig:
    """A small network that keeps every closed-form term active.

    Two of everything where the formulas sum over transmitters, three UEs
    so both the suspicious and the generic UE branch are exercised.
    """
    base = dict(n_cap=4, n_sap_tx=2, n_sap_rx=2, n_ue=3, n_ant_ap=2,
                n_ant_pm=4, tau_p=3)
    base.update(overrides)
    return SystemConfig(**base)


@pytest.fixture(scope="session")
def cfg_default() -> SystemConfig:
    return default_config()


@pytest.fixture(scope="session")
def cfg_small() -> SystemConfig:
    return small_config()


@pytest.fixture(scope="session")
def scene_small(cfg_small):
    """(topo, ls, est, pa) for one fixed draw of the small network."""
    topo, ls, est = draw_scene(cfg_small, 7, 0)
    return topo, ls, est, full_power_coefficients(ls, cfg_small)


@pytest.fixture(scope="session")
def scene_default(cfg_default):
    """(topo, ls, est, pa) for one fixed draw of the default network."""
    topo, ls, est = draw_scene(cfg_default, 1, 0)
    return topo, ls, est, full_power_coefficients(ls, cfg_default)
