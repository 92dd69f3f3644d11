import textwrap

import numpy as np
import pytest

from clsaddle.core.params import LatticeParams, ModelParams


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def decoupled_model():
    """Closed system in the ground state of ``omega_r = 0.08``."""
    return ModelParams(
        omega_r=0.08, omega_cut=2.0, gamma=0.0, beta=0.05, n_env=0
    )


@pytest.fixture
def small_model():
    return ModelParams(
        omega_r=0.08, omega_cut=2.0, gamma=0.1, beta=0.05, n_env=4
    )


@pytest.fixture
def small_lattice():
    return LatticeParams.from_times(eps=0.05, t_final=0.5, beta=0.05)


@pytest.fixture
def write_config(tmp_path):
    """Write a flat configuration file and return its path."""
    def write(text, name="sweep.cfg"):
        path = tmp_path / name
        path.write_text(textwrap.dedent(text), encoding="utf8")
        return path
    return write


@pytest.fixture
def time_config_text(tmp_path):
    return textwrap.dedent("""\
        omega_r = 0.08
        omega_cut = 2.0
        gamma = 0.1
        beta = 0.05
        n_env = 4
        eps = 0.05
        t_max = 0.3
        sweep_axis = time
        out = {}
        """).format(tmp_path / "series.csv")
