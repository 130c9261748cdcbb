import numpy as np
import pytest

from superarrivals.barrier import STATIC
from superarrivals.errors import (
    BoundaryContaminationWarning,
    ConfigError,
    SnapshotTimeError,
)
from superarrivals.model import build_grid
from superarrivals.oracles import free_gaussian_moments
from superarrivals.solver import (
    WaveFunction,
    evolve,
    fidelity,
    init_gaussian,
    reflection_probability,
    step,
)

from conftest import make_config


@pytest.fixture(scope="module")
def cfg():
    return make_config()


@pytest.fixture(scope="module")
def free_cfg():
    # no barrier, short run
    return make_config(**{"barrier.height_factor": 0.0, "epsilon": 0.0, "t_end": 8e-4})


def test_initial_packet_normalized(cfg):
    wf = init_gaussian(cfg.packet, cfg.grid)
    assert wf.norm() == pytest.approx(1.0, abs=1e-12)
    assert wf.amplitudes[0] == 0.0 and wf.amplitudes[-1] == 0.0


def test_initial_packet_center(cfg):
    wf = init_gaussian(cfg.packet, cfg.grid)
    assert abs(wf.position_mean() - cfg.packet.x0) <= cfg.grid.dx


def test_initial_packet_momentum(cfg):
    wf = init_gaussian(cfg.packet, cfg.grid)
    assert wf.momentum_mean() == pytest.approx(cfg.packet.p0, rel=1e-3)


def test_step_requires_grid_dt(cfg):
    wf = init_gaussian(cfg.packet, cfg.grid)
    with pytest.raises(ConfigError, match="dt"):
        step(wf, cfg.barrier, cfg.grid.dt * 2)


def test_step_preserves_norm(cfg):
    sched = cfg.with_barrier_mode(STATIC).barrier
    wf = init_gaussian(cfg.packet, cfg.grid)
    for _ in range(20):
        prev = wf.norm()
        wf = step(wf, sched, cfg.grid.dt)
        assert abs(wf.norm() - prev) < 1e-12


def test_free_drift_matches_oracle(free_cfg):
    # <x> must track x0 + v_g t to 0.1% after 100 steps
    t = 100 * free_cfg.grid.dt
    _, snaps = evolve(free_cfg, snapshot_times=[t])
    wf = snaps[0]
    mean_x, _ = free_gaussian_moments(free_cfg.packet, t)
    drift = mean_x - free_cfg.packet.x0
    assert wf.position_mean() - free_cfg.packet.x0 == pytest.approx(drift, rel=1e-3)


def test_free_spreading_matches_oracle(free_cfg):
    t = 8e-4
    _, snaps = evolve(free_cfg, snapshot_times=[t])
    wf = snaps[0]
    _, sigma_t = free_gaussian_moments(free_cfg.packet, t)
    assert wf.position_std() == pytest.approx(sigma_t, rel=5e-3)


def test_free_packet_leaves_detector_region(free_cfg):
    series, _ = evolve(free_cfg)
    assert series.values[-1] < 1e-4
    assert series.norm_drift < 1e-10


def test_time_reversal_fidelity(cfg):
    sched = cfg.with_barrier_mode(STATIC).barrier
    wf0 = init_gaussian(cfg.packet, cfg.grid)
    wf = wf0
    for _ in range(300):
        wf = step(wf, sched, cfg.grid.dt)
    wf = WaveFunction(grid=wf.grid, amplitudes=np.conj(wf.amplitudes), t=0.0)
    for _ in range(300):
        wf = step(wf, sched, cfg.grid.dt)
    wf = WaveFunction(grid=wf.grid, amplitudes=np.conj(wf.amplitudes), t=0.0)
    assert fidelity(wf, wf0) > 0.999


def test_reflection_probability_fractional_cell():
    # uniform density: the integral is exact for any detector position
    grid = build_grid(-1.0, 1.0, 2001, 1e-6)
    dens = np.full(grid.n_points, 0.5)
    for det in (-0.4, -0.4 + grid.dx / 3, -0.4 + grid.dx * 0.789):
        expect = 0.5 * (det - grid.x_min)
        assert reflection_probability(dens, grid, det) == pytest.approx(
            expect, abs=1e-14
        )


def test_reflection_probability_rejects_outside_box():
    grid = build_grid(-1.0, 1.0, 101, 1e-6)
    with pytest.raises(ConfigError):
        reflection_probability(np.ones(101), grid, 1.5)


def test_evolve_sample_stride():
    short = make_config(epsilon=0.0, t_end=4e-5, sample_stride=4)
    series, _ = evolve(short)
    assert series.times.size == 20 // 4 + 1
    assert series.stride == pytest.approx(4 * short.grid.dt, rel=1e-12)


def test_snapshot_times_validated(cfg):
    with pytest.raises(SnapshotTimeError):
        evolve(cfg, snapshot_times=[0.0])
    with pytest.raises(SnapshotTimeError):
        evolve(cfg, snapshot_times=[cfg.t_end * 2])


def test_snapshots_sorted_and_timed():
    short = make_config(epsilon=0.0, t_end=2e-4)
    series, snaps = evolve(short, snapshot_times=[1.5e-4, 5e-5])
    assert [w.t for w in snaps] == pytest.approx([5e-5, 1.5e-4], rel=1e-12)
    assert all(w.norm() == pytest.approx(1.0, abs=1e-9) for w in snaps)


def test_initial_overlap_rejected():
    # packet launched close enough that its tail reaches the barrier
    from superarrivals.errors import OverlapError

    cfg = make_config(x0=-0.12, detector_x=-0.21, epsilon=0.0, t_end=1e-4)
    with pytest.raises(OverlapError):
        evolve(cfg)


def test_boundary_contamination_warns():
    # free packet runs into the right wall region within t_end
    cfg = make_config(
        **{
            "x_min": -0.5,
            "x_max": 0.5,
            "n_points": 5001,
            "barrier.height_factor": 0.0,
            "epsilon": 0.0,
            "t_end": 2.2e-3,
        }
    )
    with pytest.warns(BoundaryContaminationWarning):
        evolve(cfg)
