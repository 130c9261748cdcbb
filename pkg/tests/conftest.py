import pytest

from superarrivals.config import build_config


@pytest.fixture(scope="session")
def default_cfg():
    return build_config({})


def make_config(**overrides):
    """Config from the defaults with key=value overrides (config-file keys)."""
    return build_config(overrides)


@pytest.fixture
def fast_cfg():
    """Coarse, short config for CLI/mechanics tests (dx = lambda/40)."""
    return make_config(
        n_points=2001,
        t_p=5e-5,
        epsilon=2e-5,
        t_end=2e-4,
        n_particles=2000,
    )
