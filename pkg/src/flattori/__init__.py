"""Exact classification of projectively flat vector bundles and flat matrix
bundles on tori, and the isomorphism decision for rational noncommutative
torus algebras."""

from .autofactor import (
    FactorOfAutomorphy,
    GenPermPhaseMatrix,
    check_cocycle,
    clutching_omega,
    clutching_twist,
    det_cocycle,
    factor_from,
    mumford_c1,
    rieffel_N,
)
from .bundles import (
    MatrixBundleClass,
    VectorBundleClass,
    X_bundle,
    classify_projflat,
    direct_sum_power,
    endo,
    iso_matrix,
    iso_vector,
    line_twist_exists,
    omega,
    tensor_line,
    tw_to_omega,
    twist,
)
from .cohomology import (
    REVERSED,
    STANDARD,
    AltFormModQ,
    AltFormZ,
    Orientation2,
    RootOfUnity,
    beta_reduce,
    fundamental_pairing,
    mu_q_image,
    pullback,
    wedge,
)
from .exact_linalg import (
    IntMatrix,
    RatMatrix,
    SkewRatForm,
    SymplecticNF,
    lattice_kernel_mod,
    lift_unimodular_mod,
    smith_normal_form,
    symplectic_normal_form,
    unimodular_sample,
)
from .nctorus import (
    IsoDecision,
    IsoStatus,
    NCTorusParams,
    NormalFormResult,
    bundle_of,
    c1_of_E_theta,
    iso_decide,
    iso_via_bundles,
    normal_form,
    q_theta,
)
from .projrep import (
    Bicharacter,
    BilinearCocycle,
    ProjectiveRep,
    bicharacter_of,
    clock_shift,
    cohomologous,
    commutant_dim,
    heisenberg_rep,
    intertwiner,
    radical,
)

__all__ = [name for name in dir() if not name.startswith("_")]
