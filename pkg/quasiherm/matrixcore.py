import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from quasiherm.errors import DefectiveMatrix, NotHermitian, SingularMatrix
from quasiherm.log.logger import get_logger
from quasiherm.types.quasiherm_types import SpectralData
from quasiherm.util.util import ComplexArray, as_matrix, dagger

logger = get_logger()

BIORTHOGONAL_THRESHOLD = 1e-12
PIVOT_THRESHOLD = 1e-14
# condicionamento dos autovetores acima do qual exp usa scaling-and-squaring
EXP_CONDITION_LIMIT = 1e6


def hermitian_defect(a: ArrayLike) -> float:
    """max |(A − A†)_ij|"""
    matrix = as_matrix(a)
    return float(np.max(np.abs(matrix - dagger(matrix))))


def _fix_phase(vector: ComplexArray) -> ComplexArray:
    pivot = vector[np.argmax(np.abs(vector))]
    return vector * (abs(pivot) / pivot)


def eig(a: ArrayLike) -> SpectralData:
    """Autovalores com bases direita/esquerda biortonormais, ⟨L_m|R_n⟩ = δ_mn.

    Ordenacao por (Re, Im); vetores direitos com norma 1 e maior componente
    real positiva. Levanta DefectiveMatrix num ponto excepcional.
    """
    matrix = as_matrix(a)
    if not np.all(np.isfinite(matrix)):
        raise ValueError("matrix has NaN or Inf entries")
    values, left, right = scipy.linalg.eig(matrix, left=True, right=True)
    order = np.lexsort((values.imag, values.real))
    values, left, right = values[order], left[:, order], right[:, order]

    right = right / np.linalg.norm(right, axis=0)
    left = left / np.linalg.norm(left, axis=0)
    overlaps = np.abs(np.einsum("ij,ij->j", left.conj(), right))
    worst = float(np.min(overlaps))
    if worst < BIORTHOGONAL_THRESHOLD:
        logger.debug(f"eig: smallest left/right overlap {worst:.3e}")
        raise DefectiveMatrix(
            f"left/right overlap {worst:.3e} below {BIORTHOGONAL_THRESHOLD}: "
            "matrix is not diagonalizable (exceptional point)"
        )
    right = np.column_stack([_fix_phase(right[:, n]) for n in range(right.shape[1])])
    try:
        # as linhas de R⁻¹ sao os ⟨L_n|, biortogonais mesmo em blocos degenerados
        left = dagger(scipy.linalg.inv(right))
    except (np.linalg.LinAlgError, ValueError) as exc:
        raise DefectiveMatrix(f"right eigenvectors are linearly dependent: {exc}") from exc
    condition = float(np.linalg.cond(right))
    if not np.isfinite(condition) or condition * np.finfo(float).eps > 1.0:
        raise DefectiveMatrix(f"eigenvector basis condition {condition:.3e}")
    return SpectralData(
        eigenvalues=values,
        right_vectors=right,
        left_vectors=left,
        condition_estimate=condition,
    )


def is_positive_definite(a: ArrayLike, tol: float = 1e-12) -> tuple[bool, float]:
    matrix = as_matrix(a)
    defect = hermitian_defect(matrix)
    if defect > tol:
        raise NotHermitian(f"hermitian defect {defect:.3e} exceeds tol {tol:.1e}")
    smallest = float(scipy.linalg.eigvalsh((matrix + dagger(matrix)) / 2)[0])
    return smallest > tol, smallest


def mat_exp(a: ArrayLike) -> ComplexArray:
    matrix = as_matrix(a)
    try:
        spectral = eig(matrix)
    except DefectiveMatrix:
        spectral = None
    if spectral is None or spectral.condition_estimate > EXP_CONDITION_LIMIT:
        logger.debug("mat_exp: falling back to scaling-and-squaring")
        return scipy.linalg.expm(matrix)
    return (spectral.right_vectors * np.exp(spectral.eigenvalues)) @ dagger(
        spectral.left_vectors
    )


def inverse(a: ArrayLike) -> ComplexArray:
    """Inversa por eliminacao com pivoteamento parcial (LU)."""
    matrix = as_matrix(a)
    scale = float(np.linalg.norm(matrix))
    lu, piv = scipy.linalg.lu_factor(matrix, check_finite=True)
    smallest_pivot = float(np.min(np.abs(np.diag(lu))))
    if scale == 0.0 or smallest_pivot < PIVOT_THRESHOLD * scale:
        raise SingularMatrix(
            f"pivot {smallest_pivot:.3e} below "
            f"{PIVOT_THRESHOLD:.0e}·‖A‖ = {PIVOT_THRESHOLD * scale:.3e}"
        )
    return scipy.linalg.lu_solve((lu, piv), np.eye(matrix.shape[0], dtype=np.complex128))


def real_spectrum_defect(a: ArrayLike) -> float:
    """max_n |Im λ_n| / ‖A‖; zero para a matriz nula."""
    matrix = as_matrix(a)
    scale = float(np.linalg.norm(matrix))
    if scale == 0.0:
        return 0.0
    return float(np.max(np.abs(scipy.linalg.eigvals(matrix).imag))) / scale
