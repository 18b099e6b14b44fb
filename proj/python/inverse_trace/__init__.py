"""Sharp inverse trace constants for deflated polynomials on simplices."""

from ._core import (
    DomainError,
    InputError,
    NumericError,
    ParameterError,
    PolyCoeffs,
    Simplex,
    Face,
    assemble_face_mass,
    block_eigenvalue_closed_form,
    collapsed_face_index,
    deflate,
    dim_polynomial_space,
    duffy_map,
    enumerate_modes,
    eval,
    expand,
    extremal_polynomial,
    face,
    gauss_jacobi_rule,
    inverse_duffy_map,
    jacobi_eval,
    jacobi_norm_sq,
    l2_norm_sq,
    pkd_eval,
    pkd_eval_batch,
    project,
    random_ratio_scan,
    reference_constant,
    reference_simplex,
    sharp_constant,
    simplex_rule,
    spectral_radius_numeric,
    verify_inequality,
    wh_constant,
)

__all__ = [name for name in dir() if not name.startswith("_")]
