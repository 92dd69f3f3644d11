"""Decoherence observables of the reduced density matrix.

Integrating out the fluctuations around the saddle point gives
``|rho(x_F, x~_F)| ~ exp(-Re A)`` with

    Re A = 1/2 (J x_F**2 - 2 K x_F x~_F + J x~_F**2)
         = 1/4 {(J - K)(x_F + x~_F)**2 + (J + K)(x_F - x~_F)**2},

    J = Re(c.M^-1.c) = Re(c~.M^-1.c~),  K = Re(c.M^-1.c~) = Re(c~.M^-1.c),

so the fall-off widths along the diagonal and off-diagonal directions
are ``gamma_diag = 2 (J - K)`` and ``gamma_offdiag = 2 (J + K)``.
"""

import dataclasses
import logging
import math
import warnings
from typing import NamedTuple

import numpy as np
from scipy.integrate import trapezoid
from typing_extensions import Literal

from clsaddle.errors import (
    EmptyGridError, NonPositiveWidthWarning, NumericalInconsistencyError,
    UndefinedRescalingError
)
from .assembly import assemble
from .contour import build_contour
from .params import DerivedParams
from .solver import factorize, solve


logger = logging.getLogger(__name__)

Normalization = Literal["trace", "peak", "none"]
NORMALIZATIONS = ("trace", "peak", "none")

#: Relative tolerance of the J/K identities.
JK_RTOL = 1e-9


class JKEstimates(NamedTuple):

    """Both evaluations of each of ``J`` and ``K``."""

    j: float
    k: float
    j_alt: float
    k_alt: float

    @property
    def asymmetry(self):
        """Larger relative mismatch of the two identities."""
        return max(
            abs(self.j - self.j_alt) / (1 + abs(self.j)),
            abs(self.k - self.k_alt) / (1 + abs(self.k)),
        )


def check_widths(gamma_diag, gamma_offdiag, t=None):
    """Raise :class:`NumericalInconsistencyError` unless both widths are
    positive."""
    if gamma_diag > 0 and gamma_offdiag > 0:
        return
    where = "" if t is None else " at t={}".format(t)
    raise NumericalInconsistencyError(
        "width positivity" + where, gamma_diag, gamma_offdiag
    )


@dataclasses.dataclass(frozen=True)
class DecoherenceObservables:

    """Widths of the reduced density matrix at one time.

    Attributes
    ----------
    t : float
        Final time ``n_t * eps``.
    j, k : float
        ``J`` and ``K``.
    gamma_diag : float
        ``2 (J - K)``.
    gamma_offdiag : float
        ``2 (J + K)``.
    gamma_tilde : float
        Rescaled off-diagonal growth, ``nan`` when ``gamma == 0``.
    jk_asymmetry : float
        Relative mismatch of the J/K identities.
    """

    t: float
    j: float
    k: float
    gamma_diag: float
    gamma_offdiag: float
    gamma_tilde: float
    jk_asymmetry: float = 0.0

    def check(self, rtol=JK_RTOL):
        """Recheck positivity and the J/K identities.

        Raises
        ------
        NumericalInconsistencyError
            When a width is not positive or the identities are violated.
        """
        check_widths(self.gamma_diag, self.gamma_offdiag, self.t)
        if self.jk_asymmetry > rtol:
            raise NumericalInconsistencyError(
                "J/K identities at t={}".format(self.t),
                self.jk_asymmetry, rtol
            )


def jk_estimates(form, factorization):
    """Return both evaluations of ``J`` and ``K``.

    Two solves: ``u = M^-1 c`` and ``v = M^-1 c~``.
    """
    u = solve(factorization, form.c_vec)
    v = solve(factorization, form.c_tilde_vec)
    return JKEstimates(
        j=float(np.real(form.c_vec @ u)),
        k=float(np.real(form.c_vec @ v)),
        j_alt=float(np.real(form.c_tilde_vec @ v)),
        k_alt=float(np.real(form.c_tilde_vec @ u)),
    )


def compute_jk(form, factorization, rtol=JK_RTOL):
    """Return ``(J, K)``.

    Raises
    ------
    NumericalInconsistencyError
        When ``Re(c.M^-1.c) != Re(c~.M^-1.c~)`` or
        ``Re(c.M^-1.c~) != Re(c~.M^-1.c)`` beyond ``rtol``, which
        means the two branches were assembled inconsistently.
    """
    return _checked_jk(jk_estimates(form, factorization), rtol)


def gammas(j, k):
    """Return ``(gamma_diag, gamma_offdiag) = (2 (J - K), 2 (J + K))``.

    Warns with :class:`NonPositiveWidthWarning` when a width is not
    positive.
    """
    gamma_diag, gamma_offdiag = 2.0 * (j - k), 2.0 * (j + k)
    if gamma_diag <= 0 or gamma_offdiag <= 0:
        warnings.warn(NonPositiveWidthWarning(gamma_diag, gamma_offdiag))
    return gamma_diag, gamma_offdiag


def gamma_tilde(gamma_offdiag_t, gamma, beta, omega_r, initial=None):
    """Rescaled off-diagonal width ``beta / (8 gamma) (G(t) - G(0))``.

    Parameters
    ----------
    gamma_offdiag_t : float
        Off-diagonal width at time t.
    gamma, beta, omega_r : float
        Model parameters.
    initial : float, optional
        Off-diagonal width at ``t = 0``. Defaults to the ground-state
        value ``2 omega_r``.

    Raises
    ------
    UndefinedRescalingError
        When ``gamma == 0``.
    """
    if gamma == 0:
        raise UndefinedRescalingError()
    if initial is None:
        initial = 2.0 * omega_r
    return beta / (8.0 * gamma) * (gamma_offdiag_t - initial)


def master_equation_reference(gamma, beta, t):
    """Return the master-equation growth ``8 gamma t / beta``."""
    return 8.0 * gamma * t / beta


def reduced_action(form, factorization, x_f, x_tilde_f):
    """Return ``A = B - 1/2 C.M^-1.C`` for given end points.

    ``Re A`` equals the J/K quadratic form; ``Im A`` is the phase of
    the density matrix.
    """
    source = form.saddle_source(x_f, x_tilde_f)
    saddle = solve(factorization, source)
    return form.boundary_scalar(x_f, x_tilde_f) - 0.5 * source @ saddle


def observe(model, lattice):
    """Evaluate the observables at the final time of a lattice.

    Runs assemble, factorize, J/K extraction and the width formulas.
    The rescaled width uses ``1 / sigma**2`` as the initial width,
    which is ``2 omega_r`` for the default ground-state packet.

    Returns
    -------
    DecoherenceObservables
    """
    derived = DerivedParams.from_model(model)
    contour = build_contour(lattice.n_t, lattice.n_beta, model.n_env)
    form = assemble(derived, model, lattice, contour)
    factorization = factorize(form)
    est = jk_estimates(form, factorization)
    logger.debug("t=%g: J=%r K=%r asymmetry=%.2e", lattice.t_final, est.j,
                 est.k, est.asymmetry)
    j, k = _checked_jk(est)
    gamma_diag, gamma_offdiag = gammas(j, k)
    if model.gamma == 0:
        rescaled = math.nan
    else:
        rescaled = gamma_tilde(
            gamma_offdiag, model.gamma, model.beta, model.omega_r,
            initial=1.0 / model.sigma_sq
        )
    return DecoherenceObservables(
        t=lattice.t_final, j=j, k=k, gamma_diag=gamma_diag,
        gamma_offdiag=gamma_offdiag, gamma_tilde=rescaled,
        jk_asymmetry=est.asymmetry,
    )


def _checked_jk(est, rtol=JK_RTOL):
    if abs(est.j - est.j_alt) > rtol * (1 + abs(est.j)):
        raise NumericalInconsistencyError("J", est.j, est.j_alt)
    if abs(est.k - est.k_alt) > rtol * (1 + abs(est.k)):
        raise NumericalInconsistencyError("K", est.k, est.k_alt)
    return est.j, est.k


@dataclasses.dataclass(frozen=True)
class GridSpec:

    """Square grid ``x_F, x~_F in linspace(-x_max, x_max, n_points)``."""

    x_max: float
    n_points: int

    @classmethod
    def around(cls, gamma_diag, gamma_offdiag, widths=5.0, n_points=101):
        """Grid covering ``widths`` times the wider fall-off length.

        Raises
        ------
        NumericalInconsistencyError
            When a width is not positive.
        """
        check_widths(gamma_diag, gamma_offdiag)
        narrowest = min(gamma_diag, gamma_offdiag)
        return cls(x_max=widths / math.sqrt(narrowest), n_points=n_points)

    def positions(self):
        if self.n_points < 1 or not self.x_max > 0:
            raise EmptyGridError()
        return np.linspace(-self.x_max, self.x_max, self.n_points)


@dataclasses.dataclass(frozen=True, eq=False)
class DensityGrid:

    """``|rho|`` sampled on a square grid.

    ``values[i, j]`` is ``|rho(x[i], x[j])|``.
    """

    x: np.ndarray
    values: np.ndarray
    normalization: str

    def trace(self):
        """Trapezoidal trace along the diagonal."""
        if self.x.size < 2:
            return float(self.values.diagonal().sum())
        return float(trapezoid(self.values.diagonal(), self.x))


def density_values(gamma_diag, gamma_offdiag, x_f, x_tilde_f):
    """Unnormalized ``|rho|`` from the two widths (broadcasts)."""
    mean = 0.5 * (np.asarray(x_f) + np.asarray(x_tilde_f))
    half_gap = 0.5 * (np.asarray(x_f) - np.asarray(x_tilde_f))
    return np.exp(
        -0.5 * gamma_diag * mean ** 2 - 0.5 * gamma_offdiag * half_gap ** 2
    )


def density_grid(form, factorization, grid,
                 normalization: Normalization = "trace"):
    """Sample ``|rho(x_F, x~_F)|`` on a grid.

    The ``det(M)**-1/2`` prefactor is never computed; the
    normalization replaces it.

    Parameters
    ----------
    form : QuadraticForm
    factorization : Factorization
    grid : GridSpec
    normalization : {"trace", "peak", "none"}, optional
        ``trace`` makes the trapezoidal diagonal integral one, ``peak``
        makes the maximum one (default="trace").

    Returns
    -------
    DensityGrid

    Raises
    ------
    EmptyGridError
        When the grid has no points.
    """
    if normalization not in NORMALIZATIONS:
        raise ValueError("Unknown normalization {!r}".format(normalization))
    x = grid.positions()
    j, k = compute_jk(form, factorization)
    gamma_diag, gamma_offdiag = gammas(j, k)
    values = density_values(gamma_diag, gamma_offdiag, x[:, None], x[None, :])
    result = DensityGrid(x=x, values=values, normalization=normalization)
    if normalization == "trace":
        values = values / result.trace()
    elif normalization == "peak":
        values = values / values.max()
    return DensityGrid(x=x, values=values, normalization=normalization)
