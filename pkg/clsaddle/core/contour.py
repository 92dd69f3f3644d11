"""Flat indexing of the integration variables on the time contour.

The contour has a forward and a backward real-time branch for the
system (``x`` and ``x~``) and for every environment oscillator (``q``
and ``q~``), plus one Euclidean leg per oscillator that encodes its
thermal initial state. Boundary identifications:

* ``q~_{N_t} == q_{N_t}`` (trace over the environment),
* Euclidean slice ``N_beta`` is ``q_0`` and slice ``0`` is ``q~_0``
  (thermal closure).

The system end points ``x_{N_t} = x_F`` and ``x~_{N_t} = x~_F`` are
fixed boundary values, represented by the markers :data:`X_FINAL` and
:data:`X_TILDE_FINAL` instead of flat indices.

Layout: forward system slices, backward system slices, then one block
of ``2 * n_t + n_beta`` nodes per oscillator (forward slices
``0..n_t``, backward slices ``0..n_t-1``, Euclidean interior slices
``1..n_beta-1``). Nothing outside this module depends on the layout.
"""

import dataclasses
import enum
from typing import NamedTuple, Optional

from clsaddle.errors import ParameterDomainError


X_FINAL = -1
X_TILDE_FINAL = -2


class Segment(enum.Enum):

    FORWARD_SYSTEM = "forward-system"
    BACKWARD_SYSTEM = "backward-system"
    FORWARD_ENV = "forward-env"
    BACKWARD_ENV = "backward-env"
    EUCLIDEAN_ENV = "euclidean-env"

    @property
    def is_system(self):
        return self in (Segment.FORWARD_SYSTEM, Segment.BACKWARD_SYSTEM)


class Link(NamedTuple):

    """Nearest-neighbor link of the contour.

    ``left`` and ``right`` are flat indices or boundary markers.
    ``oscillator`` is ``None`` on system segments.
    """

    segment: Segment
    oscillator: Optional[int]
    left: int
    right: int


class Coupling(NamedTuple):

    """System-environment pair of the trapezoidal coupling term.

    ``weight`` is 1/2 at the two ends of a branch and 1 inside, in
    units of ``c * eps``.
    """

    segment: Segment
    oscillator: int
    system: int
    env: int
    weight: float


@dataclasses.dataclass(frozen=True)
class ContourIndex:

    """Bijection between contour nodes and flat indices ``0..d-1``.

    Attributes
    ----------
    n_t : int
        Number of real-time steps.
    n_beta : int
        Number of Euclidean steps.
    n_env : int
        Number of environment oscillators.
    """

    n_t: int
    n_beta: int
    n_env: int

    def __post_init__(self):
        if self.n_t < 1:
            raise ParameterDomainError("n_t", self.n_t, "n_t >= 1")
        if self.n_beta < 1:
            raise ParameterDomainError("n_beta", self.n_beta, "n_beta >= 1")
        if self.n_env < 0:
            raise ParameterDomainError("n_env", self.n_env, "n_env >= 0")

    @property
    def block_size(self):
        """
        Number of variables per environment oscillator.

        :type: int
        """
        return 2 * self.n_t + self.n_beta

    @property
    def d(self):
        """
        Total number of integration variables.

        :type: int
        """
        return 2 * self.n_t * (1 + self.n_env) + self.n_beta * self.n_env

    def _block(self, oscillator):
        if oscillator is None or not 0 <= oscillator < self.n_env:
            raise IndexError("No oscillator {}".format(oscillator))
        return 2 * self.n_t + oscillator * self.block_size

    def index(self, segment, slice, oscillator=None):
        """Return the flat index of a contour node.

        Parameters
        ----------
        segment : Segment
            Segment the node lies on.
        slice : int
            Time slice, ``0..n_t`` on real-time segments and
            ``0..n_beta`` on the Euclidean leg.
        oscillator : int, optional
            Oscillator id ``0..n_env-1``, required on environment
            segments.

        Returns
        -------
        int
            Flat index, or :data:`X_FINAL` / :data:`X_TILDE_FINAL` for
            the fixed system end points.
        """
        segment = Segment(segment)
        limit = self.n_beta if segment is Segment.EUCLIDEAN_ENV else self.n_t
        if not 0 <= slice <= limit:
            raise IndexError(
                "Slice {} out of range for {}".format(slice, segment.value)
            )
        if segment is Segment.FORWARD_SYSTEM:
            return X_FINAL if slice == self.n_t else slice
        if segment is Segment.BACKWARD_SYSTEM:
            return X_TILDE_FINAL if slice == self.n_t else self.n_t + slice
        base = self._block(oscillator)
        if segment is Segment.FORWARD_ENV:
            return base + slice
        if segment is Segment.BACKWARD_ENV:
            if slice == self.n_t:
                return base + self.n_t
            return base + self.n_t + 1 + slice
        # Euclidean leg
        if slice == 0:
            return self.index(Segment.BACKWARD_ENV, 0, oscillator)
        if slice == self.n_beta:
            return base
        return base + 2 * self.n_t + slice

    def node(self, mu):
        """Return ``(segment, oscillator, slice)`` of a flat index.

        Identified nodes are reported on the forward segment (for
        ``q_0`` and ``q_{N_t}``) or the backward segment (for ``q~_0``).
        """
        if not 0 <= mu < self.d:
            raise IndexError("No variable {}".format(mu))
        if mu < self.n_t:
            return Segment.FORWARD_SYSTEM, None, mu
        if mu < 2 * self.n_t:
            return Segment.BACKWARD_SYSTEM, None, mu - self.n_t
        oscillator, offset = divmod(mu - 2 * self.n_t, self.block_size)
        if offset <= self.n_t:
            return Segment.FORWARD_ENV, oscillator, offset
        if offset <= 2 * self.n_t:
            return Segment.BACKWARD_ENV, oscillator, offset - self.n_t - 1
        return Segment.EUCLIDEAN_ENV, oscillator, offset - 2 * self.n_t

    def links(self):
        """Return every link of the contour, see :func:`enumerate_segments`."""
        links = []
        for segment in (Segment.FORWARD_SYSTEM, Segment.BACKWARD_SYSTEM):
            for n in range(self.n_t):
                links.append(Link(
                    segment, None,
                    self.index(segment, n), self.index(segment, n + 1)
                ))
        for k in range(self.n_env):
            for segment in (Segment.FORWARD_ENV, Segment.BACKWARD_ENV):
                for n in range(self.n_t):
                    links.append(Link(
                        segment, k,
                        self.index(segment, n, k),
                        self.index(segment, n + 1, k)
                    ))
            for j in range(self.n_beta):
                links.append(Link(
                    Segment.EUCLIDEAN_ENV, k,
                    self.index(Segment.EUCLIDEAN_ENV, j, k),
                    self.index(Segment.EUCLIDEAN_ENV, j + 1, k)
                ))
        return links

    def couplings(self):
        """Return the system-environment pairs of the coupling term.

        Pairs slice ``n`` of a system branch with slice ``n`` of the
        matching environment branch, for ``n = 0..n_t`` and every
        oscillator.
        """
        branches = (
            (Segment.FORWARD_SYSTEM, Segment.FORWARD_ENV),
            (Segment.BACKWARD_SYSTEM, Segment.BACKWARD_ENV),
        )
        pairs = []
        for system_segment, env_segment in branches:
            for k in range(self.n_env):
                for n in range(self.n_t + 1):
                    weight = 0.5 if n in (0, self.n_t) else 1.0
                    pairs.append(Coupling(
                        system_segment, k,
                        self.index(system_segment, n),
                        self.index(env_segment, n, k),
                        weight
                    ))
        return pairs


def build_contour(n_t, n_beta, n_env):
    """Return the :class:`ContourIndex` of a lattice.

    Raises
    ------
    ParameterDomainError
        When ``n_t < 1``, ``n_beta < 1`` or ``n_env < 0``.
    """
    return ContourIndex(n_t=int(n_t), n_beta=int(n_beta), n_env=int(n_env))


def enumerate_segments(contour):
    """Return every nearest-neighbor link of a contour.

    There are ``2 * n_t`` system links and ``2 * n_t + n_beta`` links
    per oscillator, including the links ending on the identified nodes
    ``q_{N_t}`` and on the Euclidean end points.

    Parameters
    ----------
    contour : ContourIndex

    Returns
    -------
    list of Link
    """
    return contour.links()
