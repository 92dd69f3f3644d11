import math

import numpy as np
import pytest

from clsaddle.core.params import (
    DerivedParams, LatticeParams, ModelParams, bare_frequency,
    coupling_from_gamma, default_eps_tilde, environment_frequencies,
    euclidean_steps
)
from clsaddle.errors import ParameterDomainError


def test_environment_frequencies_are_ohmic_ladder():
    omega = environment_frequencies(2.0, 64)
    assert omega.shape == (64,)
    assert np.all(np.diff(omega) > 0)
    assert omega[-1] == pytest.approx(2.0)
    assert omega[7] == pytest.approx(2.0 * (8 / 64) ** (1 / 3))


@pytest.mark.parametrize("omega_cut, n_env", [(0.0, 4), (-1.0, 4), (2.0, 0)])
def test_environment_frequencies_domain(omega_cut, n_env):
    with pytest.raises(ParameterDomainError):
        environment_frequencies(omega_cut, n_env)


@pytest.mark.parametrize("n_env", [1, 8, 64])
@pytest.mark.parametrize("gamma, omega_cut", [
    (0.1, 2.0), (0.025, 0.5), (0.4, 7.0),
])
def test_coupling_reproduces_frequency_shift(n_env, gamma, omega_cut):
    c = coupling_from_gamma(gamma, omega_cut, n_env)
    omega = environment_frequencies(omega_cut, n_env)
    shift = c ** 2 * np.sum(1 / omega ** 2)
    assert shift == pytest.approx(4 * gamma * omega_cut / math.pi, rel=1e-13)


def test_zero_coupling():
    assert coupling_from_gamma(0.0, 2.0, 8) == 0.0


def test_coupling_and_bare_frequency_are_monotone():
    gammas = np.linspace(0.0, 0.4, 9)
    cuts = np.linspace(0.5, 4.0, 8)
    couplings = [coupling_from_gamma(g, 2.0, 16) for g in gammas]
    assert np.all(np.diff(couplings) >= 0)
    assert np.all(np.diff([bare_frequency(0.08, g, 2.0) for g in gammas]) >= 0)
    assert np.all(np.diff([bare_frequency(0.08, 0.1, w) for w in cuts]) >= 0)


def test_renormalized_frequency_round_trip():
    model = ModelParams(
        omega_r=0.08, omega_cut=2.0, gamma=0.4, beta=0.05, n_env=16
    )
    derived = DerivedParams.from_model(model)
    assert derived.omega_b == pytest.approx(bare_frequency(0.08, 0.4, 2.0))
    assert derived.renormalized_frequency() == pytest.approx(0.08, rel=1e-12)


def test_derived_without_environment(decoupled_model):
    derived = DerivedParams.from_model(decoupled_model)
    assert derived.omega_b == 0.08
    assert derived.coupling_c == 0.0
    assert derived.omega_k == ()
    assert derived.n_env == 0


@pytest.mark.parametrize("beta, expected", [
    (0.05, 0.0125), (0.1, 0.025), (0.2, 0.05), (1.6, 0.05),
])
def test_default_eps_tilde(beta, expected):
    assert default_eps_tilde(beta) == pytest.approx(expected)


def test_euclidean_steps_close_at_beta():
    eps_tilde, n_beta = euclidean_steps(0.3, 0.07)
    assert n_beta == 4
    assert n_beta * eps_tilde == pytest.approx(0.3)
    assert euclidean_steps(0.05) == (pytest.approx(0.0125), 4)


def test_euclidean_steps_at_least_one():
    assert euclidean_steps(0.01, 1.0)[1] == 1


@pytest.mark.parametrize("changes", [
    {"omega_r": 0.0},
    {"omega_cut": -1.0},
    {"gamma": -0.1},
    {"beta": 0.0},
    {"n_env": -1},
    {"n_env": 0},
    {"sigma_sq_override": 0.0},
])
def test_model_domain(small_model, changes):
    with pytest.raises(ParameterDomainError):
        small_model.replace(**changes)


def test_sigma_sq(small_model):
    assert small_model.sigma_sq == pytest.approx(1 / 0.16)
    assert small_model.replace(sigma_sq_override=2.0).sigma_sq == 2.0


def test_lattice_from_times():
    lattice = LatticeParams.from_times(0.05, 1.1, 0.05)
    assert lattice.n_t == 22
    assert lattice.t_final == pytest.approx(1.1)
    assert lattice.n_beta == 4
    assert lattice.beta == pytest.approx(0.05)


def test_lattice_needs_one_step():
    with pytest.raises(ParameterDomainError):
        LatticeParams.from_times(0.05, 0.01, 0.05)


def test_refined_lattice_keeps_end_points():
    lattice = LatticeParams.from_times(0.05, 0.5, 0.4).refined(2)
    assert lattice.eps == pytest.approx(0.025)
    assert lattice.n_t == 20
    assert lattice.t_final == pytest.approx(0.5)
    assert lattice.beta == pytest.approx(0.4)
    with pytest.raises(ParameterDomainError):
        lattice.refined(0)
