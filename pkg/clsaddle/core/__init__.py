from .params import (
    DerivedParams, LatticeParams, ModelParams, bare_frequency,
    coupling_from_gamma, default_eps_tilde, environment_frequencies,
    euclidean_steps
)
from .contour import (
    X_FINAL, X_TILDE_FINAL, ContourIndex, Coupling, Link, Segment,
    build_contour, enumerate_segments
)
from .assembly import (
    QuadraticForm, assemble, dump_matrix, evaluate_action_direct
)
from .solver import (
    Factorization, factorize, saddle_point, solve, solve_dense_oracle
)
from .observables import (
    DecoherenceObservables, DensityGrid, GridSpec, JKEstimates, check_widths,
    compute_jk, density_grid, gamma_tilde, gammas, jk_estimates,
    master_equation_reference, observe, reduced_action
)
from .oracle import (
    CovarianceState, evolve, frequency_matrix, generator_matrix,
    initial_covariance, oracle_widths, symplectic_propagator,
    widths_from_covariance
)


__all__ = [
    # core.params
    "DerivedParams",
    "LatticeParams",
    "ModelParams",
    "bare_frequency",
    "coupling_from_gamma",
    "default_eps_tilde",
    "environment_frequencies",
    "euclidean_steps",
    # core.contour
    "X_FINAL",
    "X_TILDE_FINAL",
    "ContourIndex",
    "Coupling",
    "Link",
    "Segment",
    "build_contour",
    "enumerate_segments",
    # core.assembly
    "QuadraticForm",
    "assemble",
    "dump_matrix",
    "evaluate_action_direct",
    # core.solver
    "Factorization",
    "factorize",
    "saddle_point",
    "solve",
    "solve_dense_oracle",
    # core.observables
    "DecoherenceObservables",
    "DensityGrid",
    "GridSpec",
    "JKEstimates",
    "check_widths",
    "compute_jk",
    "density_grid",
    "gamma_tilde",
    "gammas",
    "jk_estimates",
    "master_equation_reference",
    "observe",
    "reduced_action",
    # core.oracle
    "CovarianceState",
    "evolve",
    "frequency_matrix",
    "generator_matrix",
    "initial_covariance",
    "oracle_widths",
    "symplectic_propagator",
    "widths_from_covariance",
]
