import numpy as np
from numpy.typing import ArrayLike, NDArray

from quasiherm.errors import DimensionMismatch

ComplexArray = NDArray[np.complex128]


def as_matrix(a: ArrayLike) -> ComplexArray:
    matrix = np.asarray(a, dtype=np.complex128)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {matrix.shape}")
    return matrix


def as_vector(v: ArrayLike, dim: int | None = None) -> ComplexArray:
    vector = np.asarray(v, dtype=np.complex128).reshape(-1)
    if dim is not None and vector.shape[0] != dim:
        raise DimensionMismatch(f"vector of length {vector.shape[0]} against dim {dim}")
    return vector


def same_dim(*matrices: ComplexArray) -> int:
    dims = {m.shape[0] for m in matrices}
    if len(dims) != 1:
        raise DimensionMismatch(f"operands have dimensions {sorted(dims)}")
    return dims.pop()


def dagger(a: ComplexArray) -> ComplexArray:
    return a.conj().T


def norm(a: ArrayLike) -> float:
    """Norma de Frobenius usada em todos os residuos."""
    return float(np.linalg.norm(a))


def relative_residual(lhs: ComplexArray, rhs: ComplexArray, *scales: ComplexArray) -> float:
    """‖lhs − rhs‖ / Π‖escala‖; escala nula vira residuo absoluto."""
    denominator = 1.0
    for scale in scales:
        denominator *= norm(scale)
    absolute = norm(lhs - rhs)
    if denominator == 0.0:
        return absolute
    return absolute / denominator


def chain_product(matrices: list[ComplexArray], dim: int) -> ComplexArray:
    product = np.eye(dim, dtype=np.complex128)
    for matrix in matrices:
        product = product @ matrix
    return product
