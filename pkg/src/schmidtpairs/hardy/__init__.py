"""Finite models of Hardy-space and Fourier examples."""

from .circle import (
    ShiftSymmetricReport,
    TrigTruncation,
    exact_distance,
    symmetric_frame,
    symmetric_subspace_shift,
    toeplitz_compression,
)
from .fourier import CenteredGrid, HalfLineReport, chi_unit_norm_quadrature, fourier_halfline, hermite_functions, prolate_compression
from .kernels import (
    BlaschkeData,
    RationalSymbolReport,
    SzegoKernelSet,
    TruncatedShiftReport,
    blaschke_truncation,
    gram_schmidt_pair,
    inner,
    model_space_frame,
    rational_symbol_singulars,
    truncated_shift_singulars,
    truncation_size,
    two_zero_gram_matrix,
)

__all__ = [
    "BlaschkeData",
    "CenteredGrid",
    "HalfLineReport",
    "RationalSymbolReport",
    "ShiftSymmetricReport",
    "SzegoKernelSet",
    "TrigTruncation",
    "TruncatedShiftReport",
    "blaschke_truncation",
    "chi_unit_norm_quadrature",
    "exact_distance",
    "fourier_halfline",
    "gram_schmidt_pair",
    "hermite_functions",
    "inner",
    "model_space_frame",
    "prolate_compression",
    "rational_symbol_singulars",
    "symmetric_frame",
    "symmetric_subspace_shift",
    "toeplitz_compression",
    "truncated_shift_singulars",
    "truncation_size",
    "two_zero_gram_matrix",
]
