"""Ising model on Cayley trees.

Boundary-condition families (alternating, translation invariant, two
periodic), fixed-point solvers for their compatibility systems, closed-form
free energies including the even/odd accumulation pairs, and exact
finite-volume partition-function oracles that cross-validate every closed
form.
"""

from .boundary import (
    ALT_ROOT_LABELS,
    AltParams,
    BoundaryAssignment,
    Label,
    build_alternating,
    build_periodic,
    build_translation_invariant,
    compatibility_residual,
    label_counts,
)
from .free_energy import (
    FreeEnergyResult,
    alt_weights,
    alternating_family,
    alternating_free_energy,
    free_boundary_family,
    label_recurrence_roots,
    log_partition_level_sum,
    periodic_free_energy,
    residual_entropy_estimate,
    site_average,
    ti_free_energy,
    ti_positive_family,
    zero_label_fraction,
)
from .model import (
    ModelParams,
    edge_log_norm,
    f_theta,
    f_theta_prime,
    log_cosh,
    site_free_energy,
    site_log_weight,
)
from .oracle import (
    ConvergenceRow,
    FiniteVolumeReport,
    convergence_study,
    log_partition_enumerate,
    log_partition_recursive,
    marginal_consistency_check,
)
from .solver import (
    Solution,
    SolutionSet,
    b_of_h,
    closed_form_k2q1,
    solve_alternating,
    solve_alternating_scaled,
    solve_periodic,
    solve_ti,
    solve_ti_scaled,
    spinodal_b_antiferro,
    spinodal_b_ferro,
    theta_c,
)
from .tree import (
    Rooting,
    TreeSpec,
    VertexId,
    ball_size,
    children,
    iterate_level,
    parent,
    parity_counts,
    sphere_size,
)

__version__ = "0.1.0"
