import numpy as np
import pytest

from superarrivals.barrier import (
    BarrierSchedule,
    height_at,
    potential_on_grid,
    ramped_barrier,
    static_barrier,
)
from superarrivals.errors import ConfigError, UnderResolvedBarrierWarning
from superarrivals.model import build_grid

from conftest import make_config

H = 100.0


@pytest.fixture
def ramp():
    return ramped_barrier(center=0.0, width=0.016, height0=H, t_p=8e-4, epsilon=2e-4)


def test_static_height_constant():
    b = static_barrier(0.0, 0.016, H)
    for t in (0.0, 1e-4, 1.0):
        assert height_at(b, t) == H


def test_ramp_height_law(ramp):
    assert height_at(ramp, ramp.t_p) == H
    assert height_at(ramp, ramp.t_p + ramp.epsilon / 2) == pytest.approx(H / 2)
    assert height_at(ramp, ramp.t_p + 2 * ramp.epsilon) == 0.0


def test_ramp_height_continuous_and_monotone(ramp):
    ts = np.linspace(0.0, ramp.t_p + 2 * ramp.epsilon, 5001)
    hs = np.array([height_at(ramp, t) for t in ts])
    assert (np.diff(hs) <= 1e-12).all()
    # continuity: no jump larger than the linear slope allows
    max_step = H / ramp.epsilon * (ts[1] - ts[0]) * 1.0001
    assert np.max(np.abs(np.diff(hs))) <= max_step
    assert (hs[ts >= ramp.t_p + ramp.epsilon] == 0.0).all()


def test_schedule_validation():
    with pytest.raises(ConfigError):
        BarrierSchedule(center=0.0, width=0.0, height0=H)
    with pytest.raises(ConfigError):
        BarrierSchedule(center=0.0, width=0.01, height0=-1.0)
    with pytest.raises(ConfigError):
        BarrierSchedule(center=0.0, width=0.01, height0=H, mode="linear_ramp")
    with pytest.raises(ConfigError):
        BarrierSchedule(center=0.0, width=0.01, height0=H, mode="sine")


def test_potential_support_count_default_grid():
    # width 0.016 at dx 2e-4: nodes in [-0.008, +0.008], closed interval
    cfg = make_config()
    v = potential_on_grid(cfg.barrier, cfg.grid, 0.0)
    assert np.count_nonzero(v) == 81


def test_potential_values_and_edges():
    grid = build_grid(-1.0, 1.0, 10001, 2e-6)
    b = static_barrier(0.0, 0.016, H)
    v = potential_on_grid(b, grid, 0.0)
    assert v[grid.node_of(0.0)] == H
    assert v[grid.node_of(0.016)] == 0.0
    # half-weighted edge nodes keep the effective width at the nominal value
    assert v[grid.node_of(-0.008)] == H / 2
    assert v[grid.node_of(0.008)] == H / 2
    v_closed = potential_on_grid(b, grid, 0.0, edge_weight=1.0)
    assert v_closed[grid.node_of(-0.008)] == H
    assert np.count_nonzero(v_closed) == 81


def test_potential_support_measure():
    grid = build_grid(-1.0, 1.0, 10001, 2e-6)
    for width in (0.016, 0.0071, 0.004):
        b = static_barrier(0.0, width, H)
        v = potential_on_grid(b, grid, 0.0, edge_weight=1.0)
        measure = np.count_nonzero(v) * grid.dx
        assert abs(measure - width) <= grid.dx * (1 + 1e-9)


def test_potential_during_ramp(ramp):
    grid = build_grid(-1.0, 1.0, 10001, 2e-6)
    v = potential_on_grid(ramp, grid, ramp.t_p + ramp.epsilon / 2)
    assert v[grid.node_of(0.0)] == pytest.approx(H / 2)
    v = potential_on_grid(ramp, grid, ramp.t_p + ramp.epsilon)
    assert not v.any()


def test_under_resolved_barrier_warns():
    grid = build_grid(-1.0, 1.0, 101, 2e-6)  # dx = 0.02
    b = static_barrier(0.0, 0.016, H)
    with pytest.warns(UnderResolvedBarrierWarning):
        potential_on_grid(b, grid, 0.0)
