"""Arithmetical structures on cycle graphs and the spectra of their
generalized Laplacians diag(d) - A.

A pair of positive integer vectors (d, r) is an arithmetical structure when
(diag(d) - A) r = 0 and gcd(r) = 1. The package enumerates all of them on
cycles (and paths, by exhaustive search), computes spectral radii with a
self-contained Jacobi eigensolver, and machine-checks the extremal facts:
the ordinary Laplacian minimizes the spectral radius and the orbit of
(1, n+2, 2, ..., 2) maximizes it.
"""

from . import backend
from .enumeration import (
    MAX_ENUM_N,
    MAX_PATH_N,
    MAX_SCAN_N,
    CapExceeded,
    OrbitCount,
    StructureCatalog,
    brute_force_cycle,
    count_orbits,
    enumerate_cycle,
    enumerate_path,
    expected_cycle_count,
    extend_catalog,
    has_isolated_unit_entry,
    iter_cycle_catalogs,
)
from .spectra import (
    EQUALITY_TOL,
    JACOBI_REL_TOL,
    MAX_SWEEPS,
    STRICT_MARGIN,
    EigenPair,
    NoConvergence,
    Spectrum,
    ZeroVector,
    adjacency_matrix,
    build_l,
    build_l_from_d,
    eigenvalues,
    laplacian_mu1_exact,
    laplacian_spectrum_exact,
    rayleigh_quotient,
    spectral_radius,
    spectral_radius_batch,
    top_eigenpair,
)
from .structures import (
    ArithmeticalStructure,
    GraphFamily,
    KernelSolution,
    NonIntegralQuotient,
    d_from_r,
    laplacian_d,
    laplacian_structure,
    r_from_d,
    structure_from_d,
    validate,
)
from .theorems import (
    CHECKS,
    EXHAUSTIVE_CAP,
    TOLERANCES,
    CatalogMissing,
    CheckOutcome,
    VerificationReport,
    check_313,
    check_d_bound,
    check_discard,
    check_dstar,
    check_eigvec_bounds,
    check_families,
    check_lemma_m,
    check_max,
    check_min,
    check_nonlap_gt4,
    check_unit_vertex,
    d313,
    dk_family_d,
    max_family_d,
    run_check,
)
from .transforms import (
    DihedralElement,
    SizeTooSmall,
    SmoothAtNonUnit,
    apply_symmetry,
    canonical_key,
    dihedral_elements,
    orbit,
    smooth,
    subdivide,
)

__version__ = "0.1.0"

__all__ = [
    "ArithmeticalStructure",
    "CHECKS",
    "CapExceeded",
    "CatalogMissing",
    "CheckOutcome",
    "DihedralElement",
    "EQUALITY_TOL",
    "EXHAUSTIVE_CAP",
    "EigenPair",
    "GraphFamily",
    "JACOBI_REL_TOL",
    "KernelSolution",
    "MAX_ENUM_N",
    "MAX_PATH_N",
    "MAX_SCAN_N",
    "MAX_SWEEPS",
    "NoConvergence",
    "NonIntegralQuotient",
    "OrbitCount",
    "STRICT_MARGIN",
    "SizeTooSmall",
    "SmoothAtNonUnit",
    "Spectrum",
    "StructureCatalog",
    "TOLERANCES",
    "VerificationReport",
    "ZeroVector",
    "adjacency_matrix",
    "apply_symmetry",
    "backend",
    "brute_force_cycle",
    "build_l",
    "build_l_from_d",
    "canonical_key",
    "check_313",
    "check_d_bound",
    "check_discard",
    "check_dstar",
    "check_eigvec_bounds",
    "check_families",
    "check_lemma_m",
    "check_max",
    "check_min",
    "check_nonlap_gt4",
    "check_unit_vertex",
    "count_orbits",
    "d313",
    "d_from_r",
    "dihedral_elements",
    "dk_family_d",
    "eigenvalues",
    "enumerate_cycle",
    "enumerate_path",
    "expected_cycle_count",
    "extend_catalog",
    "has_isolated_unit_entry",
    "iter_cycle_catalogs",
    "laplacian_d",
    "laplacian_mu1_exact",
    "laplacian_spectrum_exact",
    "laplacian_structure",
    "max_family_d",
    "orbit",
    "r_from_d",
    "rayleigh_quotient",
    "run_check",
    "smooth",
    "spectral_radius",
    "spectral_radius_batch",
    "structure_from_d",
    "subdivide",
    "top_eigenpair",
    "validate",
]
