"""Quadratic form of the effective action.

The effective action of the reduced density matrix is

    S_eff = -i {S(x, q) - S(x~, q~)} + S_0(q~_0) + (x_0**2 + x~_0**2) / (4 sigma**2)

where ``S`` is the trapezoidal real-time lattice action and ``S_0`` the
free Euclidean action of the environment. It is exactly

    S_eff = 1/2 X^T M X - C.X + B,
    C = i (c x_F - c~ x~_F),
    B = -(i/2) b (x_F**2 - x~_F**2),  b = 1/eps - omega_b**2 eps / 2

with a complex symmetric ``M`` and real source vectors ``c``, ``c~``.
"""

import dataclasses
import logging

import numpy as np
import scipy.sparse as sps

from clsaddle.errors import DimensionMismatchError, NumericalInconsistencyError
from .contour import X_FINAL, X_TILDE_FINAL, Segment


logger = logging.getLogger(__name__)

#: Coefficient of ``S`` in ``S_eff`` on each real-time branch.
BRANCH_SIGN = {
    Segment.FORWARD_SYSTEM: -1j,
    Segment.BACKWARD_SYSTEM: 1j,
    Segment.FORWARD_ENV: -1j,
    Segment.BACKWARD_ENV: 1j,
}


@dataclasses.dataclass(frozen=True, eq=False)
class QuadraticForm:

    """``S_eff(X; x_F, x~_F) = 1/2 X^T M X - C.X + B``.

    Attributes
    ----------
    m : scipy.sparse.csc_matrix
        Complex symmetric ``d x d`` matrix, independent of the end
        points.
    c_vec : numpy.ndarray
        Real source multiplying ``x_F``.
    c_tilde_vec : numpy.ndarray
        Real source multiplying ``x~_F``.
    b : float
        Boundary scalar ``1/eps - omega_b**2 eps / 2``.
    """

    m: sps.csc_matrix
    c_vec: np.ndarray
    c_tilde_vec: np.ndarray
    b: float

    @property
    def d(self):
        return self.m.shape[0]

    def saddle_source(self, x_f, x_tilde_f):
        """Return ``C = i (c x_F - c~ x~_F)``."""
        return 1j * (self.c_vec * x_f - self.c_tilde_vec * x_tilde_f)

    def boundary_scalar(self, x_f, x_tilde_f):
        """Return ``B = -(i/2) b (x_F**2 - x~_F**2)``."""
        return -0.5j * self.b * (x_f ** 2 - x_tilde_f ** 2)

    def evaluate(self, x, x_f, x_tilde_f):
        """Return ``1/2 X^T M X - C.X + B`` (bilinear, no conjugation)."""
        x = np.asarray(x)
        if x.shape != (self.d,):
            raise DimensionMismatchError("X", self.d, x.size)
        quadratic = 0.5 * x @ (self.m @ x)
        return (
            quadratic - self.saddle_source(x_f, x_tilde_f) @ x
            + self.boundary_scalar(x_f, x_tilde_f)
        )


class _Accumulator:

    """Collect action terms ``a * u * v`` into ``M``, ``c``, ``c~``, ``b``.

    ``u`` and ``v`` are flat indices or boundary markers. Terms between
    two variables go to ``M`` (duplicates summed), terms linear in a
    variable go to the source vectors and terms quadratic in a
    boundary value go to ``b``.
    """

    def __init__(self, d):
        self.d = d
        self.rows = []
        self.cols = []
        self.values = []
        self.c_vec = np.zeros(d, dtype=complex)
        self.c_tilde_vec = np.zeros(d, dtype=complex)
        self.b_forward = 0j
        self.b_backward = 0j

    def add(self, u, v, a):
        if u < 0 and v < 0:
            if u != v:
                raise NumericalInconsistencyError(
                    "boundary term", u, v
                )
            # a x_F^2 = -(i/2) b x_F^2 ;  a x~_F^2 = (i/2) b x~_F^2
            if u == X_FINAL:
                self.b_forward += 2j * a
            else:
                self.b_backward -= 2j * a
            return
        if v < 0:
            u, v = v, u
        if u == X_FINAL:
            # a x_F X_v = -C_v X_v with C_v = i c_v x_F
            self.c_vec[v] += 1j * a
        elif u == X_TILDE_FINAL:
            self.c_tilde_vec[v] -= 1j * a
        elif u == v:
            self._append(u, u, 2 * a)
        else:
            self._append(u, v, a)
            self._append(v, u, a)

    def _append(self, row, col, value):
        self.rows.append(row)
        self.cols.append(col)
        self.values.append(value)

    def matrix(self):
        m = sps.coo_matrix(
            (np.asarray(self.values, dtype=complex),
             (np.asarray(self.rows, dtype=np.int64),
              np.asarray(self.cols, dtype=np.int64))),
            shape=(self.d, self.d)
        ).tocsc()
        m.sum_duplicates()
        m.eliminate_zeros()
        return m


def _real_source(vector, name):
    if np.any(vector.imag != 0):
        raise NumericalInconsistencyError(
            "{} imaginary part".format(name), 0.0,
            float(np.abs(vector.imag).max())
        )
    return vector.real.copy()


def _frequency(derived, link):
    if link.segment.is_system:
        return derived.omega_b
    return derived.omega_k[link.oscillator]


def assemble(derived, model, lattice, contour):
    """Build the quadratic form of the effective action.

    Parameters
    ----------
    derived : DerivedParams
    model : ModelParams
    lattice : LatticeParams
    contour : ContourIndex
        Must match ``lattice`` and ``model``.

    Returns
    -------
    QuadraticForm

    Raises
    ------
    DimensionMismatchError
        When the contour does not match the lattice or the model.
    """
    for what, expected, got in (
        ("contour n_t", lattice.n_t, contour.n_t),
        ("contour n_beta", lattice.n_beta, contour.n_beta),
        ("contour n_env", derived.n_env, contour.n_env),
        ("model n_env", derived.n_env, model.n_env),
    ):
        if expected != got:
            raise DimensionMismatchError(what, expected, got)
    eps, eps_tilde = lattice.eps, lattice.eps_tilde
    acc = _Accumulator(contour.d)
    for link in contour.links():
        omega_sq = _frequency(derived, link) ** 2
        u, v = link.left, link.right
        if link.segment is Segment.EUCLIDEAN_ENV:
            # eps~/2 [((u - v)/eps~)^2 + omega^2 (u^2 + v^2)/2]
            site = 0.5 / eps_tilde + 0.25 * omega_sq * eps_tilde
            cross = -1.0 / eps_tilde
        else:
            # kappa eps/2 [((u - v)/eps)^2 - omega^2 (u^2 + v^2)/2]
            kappa = BRANCH_SIGN[link.segment]
            site = kappa * (0.5 / eps - 0.25 * omega_sq * eps)
            cross = -kappa / eps
        acc.add(u, u, site)
        acc.add(v, v, site)
        acc.add(u, v, cross)
    if derived.coupling_c != 0:
        for pair in contour.couplings():
            kappa = BRANCH_SIGN[pair.segment]
            acc.add(pair.system, pair.env,
                    kappa * derived.coupling_c * eps * pair.weight)
    packet = 1.0 / (4.0 * model.sigma_sq)
    for segment in (Segment.FORWARD_SYSTEM, Segment.BACKWARD_SYSTEM):
        start = contour.index(segment, 0)
        acc.add(start, start, packet)
    b_forward, b_backward = acc.b_forward, acc.b_backward
    if abs(b_forward - b_backward) > 1e-12 * (1 + abs(b_forward)):
        raise NumericalInconsistencyError("boundary scalar b", b_forward,
                                          b_backward)
    form = QuadraticForm(
        m=acc.matrix(),
        c_vec=_real_source(acc.c_vec, "c"),
        c_tilde_vec=_real_source(acc.c_tilde_vec, "c~"),
        b=float(b_forward.real),
    )
    logger.debug(
        "Assembled D=%d (n_t=%d, n_beta=%d, n_env=%d), nnz=%d",
        form.d, contour.n_t, contour.n_beta, contour.n_env, form.m.nnz
    )
    return form


def _real_time_action(x, q, omega_b, omega_k, c, eps):
    """Literal lattice action ``S(x, q)`` on one real-time branch.

    ``x`` has ``n_t + 1`` entries and ``q`` has shape
    ``(n_env, n_t + 1)``.
    """
    kinetic = 0.5 / eps * np.sum(np.diff(x) ** 2)
    potential = 0.25 * eps * omega_b ** 2 * np.sum(x[:-1] ** 2 + x[1:] ** 2)
    action = kinetic - potential
    if q.shape[0]:
        omega_sq = np.asarray(omega_k)[:, None] ** 2
        action += 0.5 / eps * np.sum(np.diff(q, axis=1) ** 2)
        action -= 0.25 * eps * np.sum(
            omega_sq * (q[:, :-1] ** 2 + q[:, 1:] ** 2)
        )
        action += 0.5 * c * eps * np.sum(
            x[None, :-1] * q[:, :-1] + x[None, 1:] * q[:, 1:]
        )
    return action


def _euclidean_action(path, omega_k, eps_tilde):
    """Literal free Euclidean action, ``path`` of shape ``(n_env, n_beta+1)``."""
    if not path.shape[0]:
        return 0.0
    omega_sq = np.asarray(omega_k)[:, None] ** 2
    return 0.5 * eps_tilde * np.sum(
        (np.diff(path, axis=1) / eps_tilde) ** 2
        + 0.5 * omega_sq * (path[:, :-1] ** 2 + path[:, 1:] ** 2)
    )


def evaluate_action_direct(x, x_f, x_tilde_f, derived, model, lattice,
                           contour):
    """Evaluate ``S_eff`` by literal summation over the contour.

    Used to validate :func:`assemble`: no matrix is formed, the paths
    are rebuilt from ``X`` and the boundary values and the lattice
    actions are summed slice by slice.

    Parameters
    ----------
    x : array_like
        Integration variables, length ``contour.d``.
    x_f, x_tilde_f : float
        Fixed system end points.
    derived : DerivedParams
    model : ModelParams
    lattice : LatticeParams
    contour : ContourIndex

    Returns
    -------
    complex
    """
    x = np.asarray(x)
    if x.shape != (contour.d,):
        raise DimensionMismatchError("X", contour.d, x.size)
    n_t, n_beta, n_env = contour.n_t, contour.n_beta, contour.n_env
    boundary = {X_FINAL: x_f, X_TILDE_FINAL: x_tilde_f}

    def value(mu):
        return boundary[mu] if mu < 0 else x[mu]

    def path(segment, length, k=None):
        return np.array([
            value(contour.index(segment, n, k)) for n in range(length)
        ])

    x_forward = path(Segment.FORWARD_SYSTEM, n_t + 1)
    x_backward = path(Segment.BACKWARD_SYSTEM, n_t + 1)
    q_forward = np.array(
        [path(Segment.FORWARD_ENV, n_t + 1, k) for k in range(n_env)]
    ).reshape(n_env, n_t + 1)
    q_backward = np.array(
        [path(Segment.BACKWARD_ENV, n_t + 1, k) for k in range(n_env)]
    ).reshape(n_env, n_t + 1)
    q_euclid = np.array(
        [path(Segment.EUCLIDEAN_ENV, n_beta + 1, k) for k in range(n_env)]
    ).reshape(n_env, n_beta + 1)
    args = (derived.omega_b, derived.omega_k, derived.coupling_c, lattice.eps)
    s_forward = _real_time_action(x_forward, q_forward, *args)
    s_backward = _real_time_action(x_backward, q_backward, *args)
    s_thermal = _euclidean_action(q_euclid, derived.omega_k, lattice.eps_tilde)
    packet = (x_forward[0] ** 2 + x_backward[0] ** 2) / (4.0 * model.sigma_sq)
    return -1j * (s_forward - s_backward) + s_thermal + packet


def dump_matrix(form, stream):
    """Write ``M`` as ``row col re im`` lines sorted by ``(row, col)``.

    Parameters
    ----------
    form : QuadraticForm
    stream : file-like
        Text stream to write to.
    """
    coo = form.m.tocoo()
    order = np.lexsort((coo.col, coo.row))
    for i in order:
        stream.write("{} {} {!r} {!r}\n".format(
            int(coo.row[i]), int(coo.col[i]),
            float(coo.data[i].real), float(coo.data[i].imag)
        ))
