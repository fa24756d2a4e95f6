"""Dense linear algebra kernel."""

from .hadamard import as_matrix, as_vector, hadamard_left, hadamard_right
from .jacobi import EigenDecomposition, jacobi_eigs
from .norms import operator_norm, row_norm_bounds

__all__ = [
    "as_matrix",
    "as_vector",
    "hadamard_left",
    "hadamard_right",
    "EigenDecomposition",
    "jacobi_eigs",
    "operator_norm",
    "row_norm_bounds",
]
