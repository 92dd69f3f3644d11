"""Direct solvers for the complex symmetric saddle-point systems.

A :class:`Factorization` wraps a SuperLU factorization of ``M``. It is
never shared between workers: every sweep point builds and factorizes
its own matrix.
"""

import logging
import warnings

import numpy as np
import scipy.linalg
import scipy.sparse.linalg as spla

from clsaddle.errors import (
    DenseSizeError, DimensionMismatchError, SingularMatrixError
)


logger = logging.getLogger(__name__)

#: Pivots below ``PIVOT_TOLERANCE * max|M|`` are treated as zero.
PIVOT_TOLERANCE = 1e-14

#: Largest dimension :func:`solve_dense_oracle` accepts.
DENSE_LIMIT = 2000


class Factorization:

    """Factorization of ``M`` valid for repeated solves.

    Attributes
    ----------
    d : int
        Dimension.
    condition : float or None
        1-norm condition estimate, ``None`` unless requested.
    """

    def __init__(self, lu, d, condition=None):
        self._lu = lu
        self.d = d
        self.condition = condition

    def __repr__(self):
        return "Factorization(d={}, condition={})".format(
            self.d, self.condition
        )

    def solve(self, rhs):
        """Alias of :func:`solve` for this factorization."""
        return solve(self, rhs)


def _check_structure(m, max_abs):
    if max_abs == 0:
        raise SingularMatrixError(0, 0.0)
    nonzero = abs(m) > 0
    for axis in (1, 0):
        counts = np.asarray(nonzero.sum(axis=axis)).ravel()
        empty = np.flatnonzero(counts == 0)
        if empty.size:
            raise SingularMatrixError(int(empty[0]), 0.0)


def _condition_estimate(m, lu):
    inverse = spla.LinearOperator(
        m.shape, dtype=complex,
        matvec=lu.solve,
        rmatvec=lambda x: lu.solve(x, trans="H"),
    )
    return float(spla.onenormest(inverse) * spla.norm(m, 1))


def factorize(form, estimate_condition=False):
    """Factorize the matrix of a quadratic form.

    Parameters
    ----------
    form : QuadraticForm
    estimate_condition : bool, optional
        Also compute a 1-norm condition estimate (default=False).

    Returns
    -------
    Factorization

    Raises
    ------
    SingularMatrixError
        When ``M`` has an empty row or column, SuperLU reports exact
        singularity, or a pivot is below ``1e-14 * max|M|``. The error
        names the variable index of the offending pivot when known.
    """
    m = form.m.tocsc()
    max_abs = float(abs(m).max()) if m.nnz else 0.0
    _check_structure(m, max_abs)
    try:
        lu = spla.splu(m)
    except RuntimeError as exc:
        logger.debug("SuperLU failed: %s", exc)
        raise SingularMatrixError() from exc
    pivots = lu.U.diagonal()
    small = np.flatnonzero(np.abs(pivots) < PIVOT_TOLERANCE * max_abs)
    if small.size:
        step = int(small[0])
        # column ``step`` of L U is original column i with perm_c[i] == step
        variable = int(np.flatnonzero(lu.perm_c == step)[0])
        raise SingularMatrixError(variable, complex(pivots[step]))
    condition = _condition_estimate(m, lu) if estimate_condition else None
    logger.debug(
        "Factorized D=%d: nnz(L)=%d, nnz(U)=%d", m.shape[0], lu.L.nnz,
        lu.U.nnz
    )
    return Factorization(lu, m.shape[0], condition)


def solve(factorization, rhs):
    """Solve ``M X = rhs``.

    Parameters
    ----------
    factorization : Factorization
    rhs : array_like
        Right-hand side of length ``d``, real or complex.

    Returns
    -------
    numpy.ndarray
        Complex solution.
    """
    rhs = np.asarray(rhs, dtype=complex)
    if rhs.shape != (factorization.d,):
        raise DimensionMismatchError("rhs", factorization.d, rhs.size)
    return factorization._lu.solve(rhs)


def saddle_point(form, factorization, x_f, x_tilde_f):
    """Return the complex saddle point ``X_bar = M^-1 C``."""
    return solve(factorization, form.saddle_source(x_f, x_tilde_f))


def solve_dense_oracle(form, rhs, limit=DENSE_LIMIT):
    """Solve ``M X = rhs`` by dense LU with partial pivoting.

    Test oracle for :func:`solve`.

    Raises
    ------
    DenseSizeError
        When ``d > limit``.
    SingularMatrixError
        When a pivot is below ``1e-14 * max|M|``.
    """
    if form.d > limit:
        raise DenseSizeError(form.d, limit)
    rhs = np.asarray(rhs, dtype=complex)
    if rhs.shape != (form.d,):
        raise DimensionMismatchError("rhs", form.d, rhs.size)
    dense = form.m.toarray()
    max_abs = float(np.abs(dense).max()) if dense.size else 0.0
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(dense)
    pivots = np.diagonal(lu)
    small = np.flatnonzero(np.abs(pivots) <= PIVOT_TOLERANCE * max_abs)
    if small.size:
        step = int(small[0])
        raise SingularMatrixError(step, complex(pivots[step]))
    return scipy.linalg.lu_solve((lu, piv), rhs)
