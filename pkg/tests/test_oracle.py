import numpy as np
import pytest
import scipy.linalg

from clsaddle.core.observables import observe
from clsaddle.core.oracle import (
    CovarianceState, evolve, generator_matrix, initial_covariance,
    oracle_widths, symplectic_propagator, widths_from_covariance
)
from clsaddle.core.params import DerivedParams, LatticeParams
from clsaddle.errors import (
    InstabilityError, NonPositiveDefiniteError, ParameterDomainError
)


def _symplectic_form(n):
    return np.kron(np.eye(n), np.array([[0.0, 1.0], [-1.0, 0.0]]))


@pytest.mark.parametrize("t", [0.0, 0.3, 2.0])
def test_propagator_matches_matrix_exponential(small_model, t):
    derived = DerivedParams.from_model(small_model)
    np.testing.assert_allclose(
        symplectic_propagator(derived, t),
        scipy.linalg.expm(generator_matrix(derived) * t),
        atol=1e-10
    )


def test_propagator_is_symplectic(small_model):
    derived = DerivedParams.from_model(small_model)
    s = symplectic_propagator(derived, 1.7)
    omega = _symplectic_form(1 + derived.n_env)
    np.testing.assert_allclose(s @ omega @ s.T, omega, atol=1e-10)
    assert np.linalg.det(s) == pytest.approx(1.0, abs=1e-9)


def test_single_environment_oscillator(small_model):
    model = small_model.replace(n_env=1)
    derived = DerivedParams.from_model(model)
    assert generator_matrix(derived).shape == (4, 4)
    s = symplectic_propagator(derived, 0.8)
    np.testing.assert_allclose(
        s, scipy.linalg.expm(generator_matrix(derived) * 0.8), atol=1e-10
    )


def test_ground_state_is_stationary(decoupled_model):
    derived = DerivedParams.from_model(decoupled_model)
    state = initial_covariance(decoupled_model, derived)
    for t in (0.0, 1.0, 10.0):
        widths = widths_from_covariance(evolve(state, derived, t))
        assert widths == (pytest.approx(0.16), pytest.approx(0.16))


def test_initial_thermal_bath(small_model):
    derived = DerivedParams.from_model(small_model)
    state = initial_covariance(small_model, derived)
    omega = derived.omega_k[0]
    coth = 1 / np.tanh(small_model.beta * omega / 2)
    assert state.sigma[2, 2] == pytest.approx(coth / (2 * omega))
    assert state.sigma[3, 3] == pytest.approx(omega * coth / 2)
    assert state.uncertainty_product == pytest.approx(0.25)


def test_evolve_composes(small_model):
    derived = DerivedParams.from_model(small_model)
    state = initial_covariance(small_model, derived)
    two_steps = evolve(evolve(state, derived, 0.3), derived, 0.4)
    one_step = evolve(state, derived, 0.7)
    assert two_steps.t == pytest.approx(0.7)
    np.testing.assert_allclose(
        two_steps.sigma, one_step.sigma, rtol=1e-9, atol=1e-12
    )


def test_uncertainty_grows_under_coupling(small_model):
    state = evolve(
        initial_covariance(small_model, DerivedParams.from_model(small_model)),
        DerivedParams.from_model(small_model), 1.0
    )
    assert state.uncertainty_product > 0.25


def test_negative_duration(small_model):
    derived = DerivedParams.from_model(small_model)
    with pytest.raises(ParameterDomainError):
        evolve(initial_covariance(small_model, derived), derived, -0.1)


def test_unbounded_potential():
    derived = DerivedParams(omega_b=0.1, coupling_c=5.0, omega_k=(1.0,))
    with pytest.raises(InstabilityError) as info:
        symplectic_propagator(derived, 1.0)
    assert info.value.eigenvalue < 0


def test_non_positive_covariance():
    with pytest.raises(NonPositiveDefiniteError):
        widths_from_covariance(CovarianceState(np.diag([-1.0, 1.0])))


@pytest.mark.parametrize("n_env", [2, 4, 8])
@pytest.mark.parametrize("t", [0.5, 1.0])
def test_lattice_agrees_with_oracle(small_model, n_env, t):
    model = small_model.replace(n_env=n_env)
    lattice = LatticeParams.from_times(0.025, t, model.beta, 0.00625)
    obs = observe(model, lattice)
    gamma_diag, gamma_offdiag = oracle_widths(model, t)
    assert obs.gamma_diag == pytest.approx(gamma_diag, rel=0.02)
    assert obs.gamma_offdiag == pytest.approx(gamma_offdiag, rel=0.02)
