import dataclasses
import math

import numpy as np
import pytest

from clsaddle.core.assembly import assemble
from clsaddle.core.contour import build_contour
from clsaddle.core.observables import (
    DecoherenceObservables, GridSpec, check_widths, compute_jk, density_grid,
    gamma_tilde, gammas, jk_estimates, master_equation_reference, observe,
    reduced_action
)
from clsaddle.core.params import DerivedParams, LatticeParams
from clsaddle.core.solver import factorize
from clsaddle.errors import (
    EmptyGridError, NonPositiveWidthWarning, NumericalInconsistencyError,
    UndefinedRescalingError
)


@pytest.fixture
def form(small_model, small_lattice):
    contour = build_contour(
        small_lattice.n_t, small_lattice.n_beta, small_model.n_env
    )
    return assemble(
        DerivedParams.from_model(small_model), small_model, small_lattice,
        contour
    )


def test_jk_identities_hold(form):
    estimates = jk_estimates(form, factorize(form))
    assert estimates.asymmetry < 1e-9
    j, k = compute_jk(form, factorize(form))
    assert j == estimates.j
    assert k == estimates.k


def test_inconsistent_branches_are_detected(form):
    broken = dataclasses.replace(form, c_tilde_vec=2.0 * form.c_tilde_vec)
    with pytest.raises(NumericalInconsistencyError):
        compute_jk(broken, factorize(broken))


@pytest.mark.parametrize("x_f, x_tilde_f", [(1.0, 0.0), (0.3, -1.2), (2.0, 2.0)])
def test_reduced_action_matches_jk(form, x_f, x_tilde_f):
    factorization = factorize(form)
    j, k = compute_jk(form, factorization)
    action = reduced_action(form, factorization, x_f, x_tilde_f)
    expected = 0.5 * (j * x_f ** 2 - 2 * k * x_f * x_tilde_f + j * x_tilde_f ** 2)
    assert action.real == pytest.approx(expected, rel=1e-9, abs=1e-12)


def test_reduced_action_is_action_at_saddle(form):
    factorization = factorize(form)
    source = form.saddle_source(0.4, -0.9)
    x_bar = factorization.solve(source)
    assert form.evaluate(x_bar, 0.4, -0.9) == pytest.approx(
        reduced_action(form, factorization, 0.4, -0.9), rel=1e-9
    )


def test_gammas():
    assert gammas(3.0, 1.0) == (4.0, 8.0)
    with pytest.warns(NonPositiveWidthWarning):
        gammas(1.0, 2.0)


def test_gamma_tilde():
    assert gamma_tilde(0.16 + 16.0, 0.1, 0.05, 0.08) == pytest.approx(1.0)
    assert gamma_tilde(2.0, 0.1, 0.05, 0.08, initial=1.0) == \
        pytest.approx(0.0625)
    with pytest.raises(UndefinedRescalingError):
        gamma_tilde(1.0, 0.0, 0.05, 0.08)


def test_master_equation_reference():
    assert master_equation_reference(0.1, 0.05, 1.0) == pytest.approx(16.0)


@pytest.mark.parametrize("t", [0.05, 1.0, 3.0])
def test_decoupled_widths_are_stationary(decoupled_model, t):
    lattice = LatticeParams.from_times(0.05, t, decoupled_model.beta)
    obs = observe(decoupled_model, lattice)
    assert obs.gamma_diag == pytest.approx(0.16, rel=1e-2)
    assert obs.gamma_offdiag == pytest.approx(0.16, rel=1e-2)
    assert math.isnan(obs.gamma_tilde)
    obs.check()


def test_coupling_grows_offdiagonal_width(small_model):
    early = observe(small_model, LatticeParams.from_times(0.05, 0.5, 0.05))
    late = observe(small_model, LatticeParams.from_times(0.05, 1.0, 0.05))
    assert early.t == pytest.approx(0.5)
    assert 0.16 < early.gamma_offdiag < late.gamma_offdiag
    assert late.gamma_tilde > early.gamma_tilde > 0
    assert late.jk_asymmetry < 1e-9


def test_check_rejects_non_positive_width():
    obs = DecoherenceObservables(
        t=1.0, j=1.0, k=2.0, gamma_diag=-2.0, gamma_offdiag=6.0,
        gamma_tilde=0.0
    )
    with pytest.raises(NumericalInconsistencyError):
        obs.check()


def test_check_rejects_asymmetry():
    obs = DecoherenceObservables(
        t=1.0, j=2.0, k=1.0, gamma_diag=2.0, gamma_offdiag=6.0,
        gamma_tilde=0.0, jk_asymmetry=1e-6
    )
    with pytest.raises(NumericalInconsistencyError):
        obs.check()


def test_trace_normalized_grid(form):
    grid = density_grid(form, factorize(form), GridSpec(x_max=20.0,
                                                        n_points=201))
    assert grid.trace() == pytest.approx(1.0)
    np.testing.assert_allclose(grid.values, grid.values.T)
    center = grid.values.shape[0] // 2
    assert grid.values[center, center] == grid.values.max()


def test_peak_normalized_grid(form):
    factorization = factorize(form)
    j, k = compute_jk(form, factorization)
    spec = GridSpec.around(*gammas(j, k), n_points=21)
    grid = density_grid(form, factorization, spec, normalization="peak")
    assert grid.values.max() == pytest.approx(1.0)
    assert grid.normalization == "peak"


def test_unnormalized_grid_peaks_at_one(form):
    grid = density_grid(form, factorize(form), GridSpec(1.0, 3), "none")
    assert grid.values[1, 1] == pytest.approx(1.0)


def test_grid_errors(form):
    factorization = factorize(form)
    with pytest.raises(EmptyGridError):
        density_grid(form, factorization, GridSpec(1.0, 0))
    with pytest.raises(ValueError):
        density_grid(form, factorization, GridSpec(1.0, 5), "max")


def test_zero_extent_grid(form):
    with pytest.raises(EmptyGridError):
        density_grid(form, factorize(form), GridSpec(0.0, 5))


def test_grid_around_needs_positive_widths():
    with pytest.raises(NumericalInconsistencyError):
        GridSpec.around(-0.1, 0.2)
    with pytest.raises(NumericalInconsistencyError):
        check_widths(0.2, 0.0, t=1.0)
    assert GridSpec.around(0.04, 1.0, widths=5.0).x_max == pytest.approx(25.0)


def test_decoupled_grid_is_ground_state_product(decoupled_model):
    lattice = LatticeParams.from_times(0.05, 1.0, decoupled_model.beta)
    contour = build_contour(lattice.n_t, lattice.n_beta, 0)
    form = assemble(
        DerivedParams.from_model(decoupled_model), decoupled_model, lattice,
        contour
    )
    grid = density_grid(form, factorize(form), GridSpec(5.0, 21), "none")
    x, x_tilde = np.meshgrid(grid.x, grid.x, indexing="ij")
    # |psi(x) psi*(x~)| of the ground state, up to normalization
    expected = np.exp(-0.5 * 0.08 * (x ** 2 + x_tilde ** 2))
    np.testing.assert_allclose(grid.values, expected, rtol=0.03)


@pytest.mark.parametrize("beta", [0.05, 1.6])
@pytest.mark.parametrize("gamma", [0.025, 0.4])
@pytest.mark.parametrize("t", [0.5, 3.0])
def test_widths_positive_across_parameters(small_model, beta, gamma, t):
    model = small_model.replace(beta=beta, gamma=gamma, n_env=8)
    obs = observe(model, LatticeParams.from_times(0.05, t, beta))
    assert obs.j - obs.k > 0
    assert obs.j + obs.k > 0
    assert obs.jk_asymmetry < 1e-9
    obs.check()
