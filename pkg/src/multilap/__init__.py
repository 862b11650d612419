"""Boundary operators, Laplacians and combinatorial spectrum formulas for
finite multicomplexes, with the truncated-Dirichlet-convolution application."""

from .monomials import (
    Monomial,
    basis_key,
    compare_basis_order,
    divides,
    parity_vector,
    square_decompose,
    total_degree,
)
from .complexes import (
    Multicomplex,
    NotDivisorClosedError,
    ParseError,
    complement_ideal_generators,
    is_strongly_stable,
    load_multicomplex,
    natural_order,
    parse_multicomplex,
    random_multicomplex,
    random_shifted_multicomplex,
    reverse_order,
)
from .chain import (
    BoundaryMatrix,
    boundary_matrix,
    boundary_square_is_zero,
    dual_boundary_matrix,
)
from .spectra import (
    LaplacianMatrix,
    Spectrum,
    betti_numbers,
    constituent_spectrum_sum,
    jacobi_eigenvalues,
    laplacian_down,
    laplacian_total,
    laplacian_up,
    spectrum_down,
    spectrum_total,
    spectrum_up,
    symmetric_eigenvalues,
    verify_spectrum_relations,
)
from .formula import (
    NotShiftedError,
    conjugate_partition,
    constituent_up_spectrum,
    predicted_up_spectrum,
    simplicial_up_spectrum,
)
from .dirichlet import (
    ArithmeticalFunction,
    DirichletTruncation,
    build_truncation,
    prime_exponents,
    primes_upto,
    s_vector,
    t_vector,
    truncated_convolve,
    u2_matrix,
    y2_matrix,
)

__version__ = "0.1.0"
