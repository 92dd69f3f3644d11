"""Continuum reference from phase-space covariance evolution.

The full system is linear, so a Gaussian initial state stays Gaussian
and is described exactly by its covariance matrix. Phase-space order
is interleaved: ``(x, p, q_0, p_0, q_1, p_1, ...)``.

Widths of a Gaussian state
--------------------------
With reduced covariance ``(S_xx, S_xp, S_pp)`` of the system, write
``X = (x + x~)/2`` and ``y = x - x~``. The density matrix is the
Fourier transform of the Wigner function in ``p``:

    rho(X + y/2, X - y/2) = int dp W(X, p) exp(i p y).

``W`` factorizes into the marginal of ``X`` (variance ``S_xx``) times
the conditional of ``p`` given ``X`` (variance ``det S / S_xx``), and
the Fourier transform of the latter is a Gaussian in ``y`` with
inverse variance ``det S / S_xx`` times a phase. Hence

    |rho| = exp(-X**2 / (2 S_xx) - (det S / S_xx) y**2 / 2).

Matching ``exp(-G_diag X**2 / 2 - G_off ((x - x~)/2)**2 / 2)`` gives

    G_diag = 1 / S_xx,   G_off = 4 det S / S_xx.

For the ground state of ``omega`` (``S_xx = 1/(2 omega)``,
``S_pp = omega / 2``) both widths equal ``2 omega``.
"""

import dataclasses
import logging

import numpy as np
import scipy.linalg

from clsaddle.errors import (
    InstabilityError, NonPositiveDefiniteError, ParameterDomainError
)
from .params import DerivedParams


logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True, eq=False)
class CovarianceState:

    """Gaussian state of system plus environment.

    Attributes
    ----------
    sigma : numpy.ndarray
        Symmetric ``(2 + 2 n_env)`` square covariance matrix.
    t : float
        Time of the state.
    """

    sigma: np.ndarray
    t: float = 0.0

    @property
    def reduced_block(self):
        """
        System block ``[[S_xx, S_xp], [S_xp, S_pp]]``.

        :type: numpy.ndarray
        """
        return self.sigma[:2, :2]

    @property
    def uncertainty_product(self):
        """``S_xx S_pp - S_xp**2`` of the system, at least 1/4."""
        block = self.reduced_block
        return float(block[0, 0] * block[1, 1] - block[0, 1] ** 2)


def _interleave(n):
    """Permutation from block order ``(Q, P)`` to ``(q_0, p_0, ...)``."""
    perm = np.empty(2 * n, dtype=int)
    perm[0::2] = np.arange(n)
    perm[1::2] = n + np.arange(n)
    return perm


def frequency_matrix(derived):
    """Return the frequency-squared matrix of ``H``.

    ``H = p**2/2 + omega_b**2 x**2/2 + sum_k (p_k**2 + omega_k**2 q_k**2)/2
    - c x sum_k q_k``, so ``V = Q^T Omega2 Q / 2`` with ``Q = (x, q_k)``.
    """
    n = 1 + derived.n_env
    omega2 = np.zeros((n, n))
    omega2[0, 0] = derived.omega_b ** 2
    omega2[1:, 0] = omega2[0, 1:] = -derived.coupling_c
    omega2[np.arange(1, n), np.arange(1, n)] = np.asarray(derived.omega_k) ** 2
    return omega2


def generator_matrix(derived):
    """Return ``A`` with ``d/dt z = A z`` in interleaved order.

    ``S(t) = expm(A t)``.
    """
    n = 1 + derived.n_env
    block = np.zeros((2 * n, 2 * n))
    block[:n, n:] = np.eye(n)
    block[n:, :n] = -frequency_matrix(derived)
    perm = _interleave(n)
    return block[np.ix_(perm, perm)]


def symplectic_propagator(derived, t):
    """Return ``S(t)`` by diagonalizing the frequency-squared matrix.

    Raises
    ------
    InstabilityError
        When the frequency-squared matrix has a negative eigenvalue.
    """
    omega2 = frequency_matrix(derived)
    eigenvalues, modes = scipy.linalg.eigh(omega2)
    lowest = float(eigenvalues.min())
    if lowest < 0:
        raise InstabilityError(lowest)
    w = np.sqrt(eigenvalues)
    cos = (modes * np.cos(w * t)) @ modes.T
    # sin(w t)/w, finite at w = 0
    sin_over_w = (modes * (t * np.sinc(w * t / np.pi))) @ modes.T
    w_sin = (modes * (w * np.sin(w * t))) @ modes.T
    n = omega2.shape[0]
    block = np.block([[cos, sin_over_w], [-w_sin, cos]])
    perm = _interleave(n)
    return block[np.ix_(perm, perm)]


def initial_covariance(model, derived):
    """Return the product initial state.

    The system is the Gaussian packet of variance ``sigma**2``; each
    environment oscillator is thermal at inverse temperature ``beta``
    with its free frequency.

    Returns
    -------
    CovarianceState
    """
    n = 1 + derived.n_env
    sigma = np.zeros((2 * n, 2 * n))
    sigma[0, 0] = model.sigma_sq
    sigma[1, 1] = 1.0 / (4.0 * model.sigma_sq)
    if derived.n_env:
        omega_k = np.asarray(derived.omega_k)
        coth = 1.0 / np.tanh(0.5 * model.beta * omega_k)
        q = 2 + 2 * np.arange(derived.n_env)
        sigma[q, q] = coth / (2.0 * omega_k)
        sigma[q + 1, q + 1] = 0.5 * omega_k * coth
    return CovarianceState(sigma=sigma, t=0.0)


def evolve(state, derived, t):
    """Advance a state by the duration ``t``.

    ``Sigma(t) = S(t) Sigma S(t)^T``; the returned state carries
    ``state.t + t``.

    Raises
    ------
    ParameterDomainError
        When ``t < 0``.
    InstabilityError
        See :func:`symplectic_propagator`.
    """
    if t < 0:
        raise ParameterDomainError("t", t, "t >= 0")
    propagator = symplectic_propagator(derived, t)
    sigma = propagator @ state.sigma @ propagator.T
    return CovarianceState(sigma=0.5 * (sigma + sigma.T), t=state.t + t)


def widths_from_covariance(state):
    """Return ``(gamma_diag, gamma_offdiag)`` of the reduced state.

    ``gamma_diag = 1 / S_xx`` and ``gamma_offdiag = 4 det S / S_xx``,
    see the module docstring.

    Raises
    ------
    NonPositiveDefiniteError
        When the reduced block is not positive definite.
    """
    block = state.reduced_block
    s_xx = float(block[0, 0])
    det = float(block[0, 0] * block[1, 1] - block[0, 1] * block[1, 0])
    if s_xx <= 0 or det <= 0:
        raise NonPositiveDefiniteError(block.tolist())
    return 1.0 / s_xx, 4.0 * det / s_xx


def oracle_widths(model, t):
    """Return the continuum ``(gamma_diag, gamma_offdiag)`` at time ``t``."""
    derived = DerivedParams.from_model(model)
    state = evolve(initial_covariance(model, derived), derived, t)
    logger.debug("Oracle at t=%g: uncertainty product %.6g", t,
                 state.uncertainty_product)
    return widths_from_covariance(state)
