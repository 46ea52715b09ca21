"""Exact contingency metamatrices of finite Coxeter groups, with
total-positivity certification."""

from .coxeter import (
    CoxeterSystem,
    DescentProfile,
    GroupElement,
    UnsupportedSystem,
    apply_generator,
    build_system,
    descent_profile,
    enumerate_bfs,
    enumerate_tower,
    identity_element,
    longest_element,
)
from .engine import (
    Metamatrix,
    NTable,
    accumulate_ntable,
    dihedral_ntable,
    double_coset_count,
    metamatrix_bruteforce,
    metamatrix_from_ntable,
    minimal_reps_count,
)
from .exactlinear import (
    Matrix,
    bareiss_det,
    conjugate_by_inverse_pascal,
    gen_binom,
    invert_lower_triangular,
    pascal_matrix,
    vandermonde_half_nodes,
    verify_alternating_identity,
    verify_root_identity,
)
from .tp import (
    TPCertificate,
    all_minors_positive,
    fekete_check,
    gauss_decomposition_typeb,
)
from .typeb import (
    MarginCondition,
    SignedMatrix,
    enumerate_scm,
    gscm_count,
    gscm_piece_count,
    L_matrix,
    margin_to_subset,
    metamatrix_typeb,
    scm_count,
    subset_to_margin,
    verify_scm_gscm_transform,
)

__version__ = "0.1.0"
