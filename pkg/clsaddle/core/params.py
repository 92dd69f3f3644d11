"""Physical and lattice parameters of the Caldeira-Leggett model.

Masses are set to one (``M = m = 1``). The environment realizes an
Ohmic spectral density through the frequency assignment
``omega_k = omega_cut * (k / n_env) ** (1/3)`` and the coupling ``c``
is fixed so that the bath-induced frequency shift equals
``4 * gamma * omega_cut / pi`` at any finite ``n_env``.
"""

import dataclasses
import math
from typing import Optional, Tuple

import numpy as np

from clsaddle.errors import ParameterDomainError


#: Euclidean step used for inverse temperatures ``beta >= 0.2``.
DEFAULT_EPS_TILDE = 0.05


def _require(name, value, ok, rule):
    if not ok:
        raise ParameterDomainError(name, value, rule)


def environment_frequencies(omega_cut, n_env):
    """Return the environment frequencies.

    Parameters
    ----------
    omega_cut : float
        Frequency cutoff, ``> 0``.
    n_env : int
        Number of environment oscillators, ``>= 1``.

    Returns
    -------
    numpy.ndarray
        ``omega_cut * (k / n_env) ** (1/3)`` for ``k = 1..n_env``,
        strictly increasing, last entry equal to ``omega_cut``.

    Raises
    ------
    ParameterDomainError
        When ``omega_cut <= 0`` or ``n_env < 1``.
    """
    _require("omega_cut", omega_cut, omega_cut > 0, "omega_cut > 0")
    _require("n_env", n_env, n_env >= 1, "n_env >= 1")
    k = np.arange(1, n_env + 1, dtype=float)
    return omega_cut * np.cbrt(k / n_env)


def coupling_from_gamma(gamma, omega_cut, n_env):
    """Return the microscopic coupling ``c`` for an effective coupling.

    ``c**2 = (4 gamma / pi) omega_cut**3 / sum_k (n_env / k)**(2/3)``,
    nonnegative root.
    """
    _require("gamma", gamma, gamma >= 0, "gamma >= 0")
    _require("omega_cut", omega_cut, omega_cut > 0, "omega_cut > 0")
    _require("n_env", n_env, n_env >= 1, "n_env >= 1")
    k = np.arange(1, n_env + 1, dtype=float)
    weight = np.sum((n_env / k) ** (2.0 / 3.0))
    return math.sqrt(4.0 * gamma / math.pi * omega_cut ** 3 / weight)


def bare_frequency(omega_r, gamma, omega_cut):
    """Return ``sqrt(omega_r**2 + 4 gamma omega_cut / pi)``."""
    return math.sqrt(omega_r ** 2 + 4.0 * gamma * omega_cut / math.pi)


def default_eps_tilde(beta):
    """Return the Euclidean step for an inverse temperature.

    ``0.05`` for ``beta >= 0.2`` and ``beta / 4`` otherwise. Use
    :func:`euclidean_steps` to close the thermal leg exactly at ``beta``.
    """
    _require("beta", beta, beta > 0, "beta > 0")
    if beta >= 0.2:
        return DEFAULT_EPS_TILDE
    return beta / 4.0


def euclidean_steps(beta, eps_tilde=None):
    """Return ``(eps_tilde, n_beta)`` with ``n_beta * eps_tilde == beta``.

    Parameters
    ----------
    beta : float
        Inverse temperature.
    eps_tilde : float, optional
        Requested Euclidean step. Defaults to
        :func:`default_eps_tilde`.

    Returns
    -------
    eps_tilde : float
        Step recomputed as ``beta / n_beta``.
    n_beta : int
        ``round(beta / eps_tilde)``, at least 1.
    """
    if eps_tilde is None:
        eps_tilde = default_eps_tilde(beta)
    _require("beta", beta, beta > 0, "beta > 0")
    _require("eps_tilde", eps_tilde, eps_tilde > 0, "eps_tilde > 0")
    n_beta = max(1, int(round(beta / eps_tilde)))
    return beta / n_beta, n_beta


@dataclasses.dataclass(frozen=True)
class ModelParams:

    """Physical inputs.

    Attributes
    ----------
    omega_r : float
        Renormalized system frequency.
    omega_cut : float
        Environment frequency cutoff.
    gamma : float
        Effective coupling of the master equation.
    beta : float
        Inverse temperature of the environment.
    n_env : int
        Number of environment oscillators. ``0`` gives a closed system
        and requires ``gamma == 0``.
    sigma_sq_override : float or None
        Variance of the initial wave packet. ``None`` selects the
        ground state of ``omega_r``, i.e. ``1 / (2 omega_r)``.
    """

    omega_r: float
    omega_cut: float
    gamma: float
    beta: float
    n_env: int
    sigma_sq_override: Optional[float] = None

    def __post_init__(self):
        _require("omega_r", self.omega_r, self.omega_r > 0, "omega_r > 0")
        _require(
            "omega_cut", self.omega_cut, self.omega_cut > 0, "omega_cut > 0"
        )
        _require("gamma", self.gamma, self.gamma >= 0, "gamma >= 0")
        _require("beta", self.beta, self.beta > 0, "beta > 0")
        _require(
            "n_env", self.n_env,
            isinstance(self.n_env, (int, np.integer)) and self.n_env >= 0,
            "integer n_env >= 0"
        )
        _require(
            "gamma", self.gamma, self.n_env > 0 or self.gamma == 0,
            "gamma == 0 when n_env == 0"
        )
        if self.sigma_sq_override is not None:
            _require(
                "sigma_sq_override", self.sigma_sq_override,
                self.sigma_sq_override > 0, "sigma_sq_override > 0"
            )

    @property
    def sigma_sq(self):
        """
        Variance of the initial wave packet.

        :type: float
        """
        if self.sigma_sq_override is not None:
            return self.sigma_sq_override
        return 1.0 / (2.0 * self.omega_r)

    def replace(self, **changes):
        """Return a validated copy with some fields replaced."""
        return dataclasses.replace(self, **changes)


@dataclasses.dataclass(frozen=True)
class LatticeParams:

    """Time discretization.

    Attributes
    ----------
    eps : float
        Real-time step.
    n_t : int
        Number of real-time steps, final time is ``n_t * eps``.
    eps_tilde : float
        Euclidean step, always equal to ``beta / n_beta``.
    n_beta : int
        Number of Euclidean steps.
    """

    eps: float
    n_t: int
    eps_tilde: float
    n_beta: int

    def __post_init__(self):
        _require("eps", self.eps, self.eps > 0, "eps > 0")
        _require("n_t", self.n_t, self.n_t >= 1, "n_t >= 1")
        _require(
            "eps_tilde", self.eps_tilde, self.eps_tilde > 0, "eps_tilde > 0"
        )
        _require("n_beta", self.n_beta, self.n_beta >= 1, "n_beta >= 1")

    @classmethod
    def from_times(cls, eps, t_final, beta, eps_tilde=None):
        """Build a lattice reaching ``t_final`` in steps of ``eps``.

        ``n_t = round(t_final / eps)`` and the Euclidean leg follows
        :func:`euclidean_steps`.
        """
        _require("eps", eps, eps > 0, "eps > 0")
        n_t = int(round(t_final / eps))
        _require("t_final", t_final, n_t >= 1, "t_final >= eps")
        eps_tilde, n_beta = euclidean_steps(beta, eps_tilde)
        return cls(eps=eps, n_t=n_t, eps_tilde=eps_tilde, n_beta=n_beta)

    @property
    def beta(self):
        return self.n_beta * self.eps_tilde

    @property
    def t_final(self):
        """
        Final time ``n_t * eps``.

        :type: float
        """
        return self.n_t * self.eps

    def refined(self, level):
        """Return the lattice with both steps divided by ``level``.

        The final time and ``beta`` are unchanged.
        """
        _require("level", level, int(level) == level and level >= 1,
                 "integer level >= 1")
        level = int(level)
        return LatticeParams(
            eps=self.eps / level, n_t=self.n_t * level,
            eps_tilde=self.eps_tilde / level, n_beta=self.n_beta * level
        )


@dataclasses.dataclass(frozen=True)
class DerivedParams:

    """Constants derived from :class:`ModelParams`.

    Attributes
    ----------
    omega_b : float
        Bare system frequency.
    coupling_c : float
        Microscopic coupling ``c``.
    omega_k : tuple of float
        Environment frequencies, empty when ``n_env == 0``.
    """

    omega_b: float
    coupling_c: float
    omega_k: Tuple[float, ...]

    @classmethod
    def from_model(cls, model):
        if model.n_env == 0:
            return cls(omega_b=model.omega_r, coupling_c=0.0, omega_k=())
        omega_k = environment_frequencies(model.omega_cut, model.n_env)
        return cls(
            omega_b=bare_frequency(model.omega_r, model.gamma, model.omega_cut),
            coupling_c=coupling_from_gamma(
                model.gamma, model.omega_cut, model.n_env
            ),
            omega_k=tuple(float(w) for w in omega_k),
        )

    @property
    def n_env(self):
        return len(self.omega_k)

    def frequency_shift(self):
        """Return ``c**2 * sum_k omega_k**-2``."""
        if not self.omega_k:
            return 0.0
        return self.coupling_c ** 2 * float(
            np.sum(1.0 / np.asarray(self.omega_k) ** 2)
        )

    def renormalized_frequency(self):
        """Recompute ``omega_r`` from the bare frequency and the bath."""
        return math.sqrt(self.omega_b ** 2 - self.frequency_shift())
