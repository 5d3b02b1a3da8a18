"""Scattering theory for weighted matrix Jacobi systems with finitely supported perturbations."""
from .errors import *  # noqa: F401,F403
from .lattice import (
    CoefficientProfile,
    ReducedProfile,
    SpectralPoint,
    Tail,
    ValidationReport,
    lambda_bounds,
    lambda_of_z,
    load_profile,
    make_spectral_grid,
    reduce_profile,
    save_profile,
    validate_class_A,
)
from .factorize import Partition, compose_scattering, factorization_check, fragment, point_defect_closed_form
from .oracle import oracle_scattering
from .scattering import ScatteringData, SMatrix, assemble_smatrix, extract_scattering, identity_suite
from .transition import build_transition, determinant_suite

__version__ = "0.1.0"
