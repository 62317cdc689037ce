import pytest

from coeflab import config
from coeflab.config import Settings, current, settings_from_mapping, using
from coeflab.pairing import disk_grid


def test_defaults():
    s = current()
    assert s.zero_tol == 1e-14 and s.max_iter == 500


def test_using_restores():
    with using(Settings(grid_nr=16, grid_ntheta=32)):
        assert disk_grid().n_r == 16
    assert disk_grid().n_r == 128


def test_mapping():
    s = settings_from_mapping({"max_iter": 50})
    assert s.max_iter == 50 and s.zero_tol == config.DEFAULT.zero_tol
    with pytest.raises(KeyError):
        settings_from_mapping({"nope": 1})


def test_frozen():
    with pytest.raises(Exception):
        config.DEFAULT.max_iter = 3
