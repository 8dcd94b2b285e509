"""Solucoes da equacao de Dieudonne H†Θ = ΘH e o produto interno fisico."""

import warnings
from typing import Sequence

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from quasiherm.errors import (
    ComplexSpectrum,
    DefectiveMatrix,
    DegenerateSpectrum,
    DimensionMismatch,
    NonPositiveWeight,
    SpectralPathUnavailable,
    ZeroState,
)
from quasiherm.log.logger import get_logger
from quasiherm.matrixcore import eig
from quasiherm.types.quasiherm_types import MetricFamily, SpectralData
from quasiherm.util.util import (
    ComplexArray,
    as_matrix,
    as_vector,
    dagger,
    norm,
    relative_residual,
    same_dim,
)

logger = get_logger()

NULL_SPACE_TOL = 1e-10


def hermitian_basis(dim: int) -> list[ComplexArray]:
    """Base ortonormal (Frobenius) das matrizes Hermitianas, dim² elementos reais."""
    basis = []
    for i in range(dim):
        e = np.zeros((dim, dim), dtype=np.complex128)
        e[i, i] = 1.0
        basis.append(e)
    for i in range(dim):
        for j in range(i + 1, dim):
            sym = np.zeros((dim, dim), dtype=np.complex128)
            sym[i, j] = sym[j, i] = 1 / np.sqrt(2)
            asym = np.zeros((dim, dim), dtype=np.complex128)
            asym[i, j] = 1j / np.sqrt(2)
            asym[j, i] = -1j / np.sqrt(2)
            basis += [sym, asym]
    return basis


def hermitian_coordinates(a: ComplexArray, basis: Sequence[ComplexArray]) -> np.ndarray:
    return np.array([np.real(np.vdot(e, a)) for e in basis])


def dieudonne_operator(h: ComplexArray, basis: Sequence[ComplexArray]) -> np.ndarray:
    """Matriz real (2·dim²)×dim² de Θ ↦ H†Θ − ΘH nas coordenadas Hermitianas."""
    columns = []
    for e in basis:
        image = dagger(h) @ e - e @ h
        columns.append(np.concatenate([image.real.reshape(-1), image.imag.reshape(-1)]))
    return np.column_stack(columns)


def oracle_basis(h: ComplexArray, tol: float = NULL_SPACE_TOL) -> list[ComplexArray]:
    dim = h.shape[0]
    basis = hermitian_basis(dim)
    operator = dieudonne_operator(h, basis)
    singular_values = scipy.linalg.svdvals(operator)
    logger.debug(f"dieudonne singular values: {np.array2string(singular_values, precision=3)}")
    kernel = scipy.linalg.null_space(operator, rcond=tol)
    solutions = []
    for column in kernel.T:
        theta = sum(c * e for c, e in zip(column, basis))
        solutions.append((theta + dagger(theta)) / 2)
    return solutions


def spectral_basis(spectral: SpectralData) -> list[ComplexArray]:
    left = spectral.left_vectors
    return [np.outer(left[:, n], left[:, n].conj()) for n in range(spectral.dim)]


def span_agreement(first: Sequence[ComplexArray], second: Sequence[ComplexArray]) -> float:
    """Residuo de projecao mutua entre dois subespacos reais de matrizes Hermitianas."""
    if len(first) != len(second):
        return float("inf")
    if not first:
        return 0.0
    basis = hermitian_basis(first[0].shape[0])
    a = np.column_stack([hermitian_coordinates(m, basis) for m in first])
    b = np.column_stack([hermitian_coordinates(m, basis) for m in second])
    a, b = a / np.linalg.norm(a, axis=0), b / np.linalg.norm(b, axis=0)
    qa, qb = scipy.linalg.orth(a), scipy.linalg.orth(b)
    if qa.shape[1] != qb.shape[1]:
        return float("inf")
    return float(max(np.linalg.norm(b - qa @ (qa.T @ b)), np.linalg.norm(a - qb @ (qb.T @ a))))


def _min_gap(values: np.ndarray) -> float:
    if values.size < 2:
        return float("inf")
    real = np.sort(values.real)
    return float(np.min(np.diff(real)))


def solve_metric_space(h: ArrayLike, tol: float = NULL_SPACE_TOL) -> MetricFamily:
    matrix = as_matrix(h)
    dim = matrix.shape[0]
    scale = norm(matrix)
    eigenvalues = scipy.linalg.eigvals(matrix)
    max_imag = float(np.max(np.abs(eigenvalues.imag)))
    if max_imag > tol * scale:
        raise ComplexSpectrum(
            f"max |Im λ| = {max_imag:.3e} exceeds {tol:.1e}·‖H‖; no positive metric exists"
        )
    logger.info(f"Solving the Dieudonne equation for dim={dim}")
    oracle = oracle_basis(matrix, tol)

    spectral: SpectralData | None = None
    spectral_solutions: list[ComplexArray] | None = None
    agreement: float | None = None
    degenerate = _min_gap(eigenvalues) < tol * scale
    if degenerate:
        warnings.warn(
            f"eigenvalue gap below {tol:.1e}·‖H‖, returning the null-space basis only",
            DegenerateSpectrum,
            stacklevel=2,
        )
        logger.warning("Degenerate spectrum: spectral path skipped")
    else:
        try:
            spectral = eig(matrix)
        except DefectiveMatrix as exc:
            logger.warning(f"Spectral path unavailable: {exc}")
        else:
            spectral_solutions = spectral_basis(spectral)
            agreement = span_agreement(oracle, spectral_solutions)
            logger.info(
                f"Metric space rank {len(oracle)}, oracle/spectral agreement {agreement:.3e}"
            )
    return MetricFamily(
        dim=dim,
        basis=tuple(oracle),
        kappa_default=tuple(1.0 for _ in range(len(oracle))),
        spectral=spectral,
        spectral_basis=None if spectral_solutions is None else tuple(spectral_solutions),
        degenerate=degenerate,
        agreement=agreement,
    )


def metric_from_weights(family: MetricFamily, kappa: Sequence[float]) -> ComplexArray:
    """Θ = Σ_n κ_n |L_n⟩⟨L_n|; positivo definido para pesos positivos."""
    if not family.has_spectral_path:
        raise SpectralPathUnavailable(
            "family has no biorthogonal eigenbasis (degenerate or defective)"
        )
    weights = np.asarray(kappa, dtype=np.float64).reshape(-1)
    if weights.shape[0] != len(family.spectral_basis):
        raise DimensionMismatch(
            f"{weights.shape[0]} weights for {len(family.spectral_basis)} basis elements"
        )
    if np.any(weights <= 0) or not np.all(np.isfinite(weights)):
        raise NonPositiveWeight(f"weights must be positive, got {weights.tolist()}")
    theta = sum(k * b for k, b in zip(weights, family.spectral_basis))
    return (theta + dagger(theta)) / 2


def default_metric(family: MetricFamily) -> ComplexArray:
    return metric_from_weights(family, family.kappa_default)


def check_quasi_hermitian(observable: ArrayLike, theta: ArrayLike) -> float:
    lam, metric = as_matrix(observable), as_matrix(theta)
    same_dim(lam, metric)
    return relative_residual(dagger(lam) @ metric, metric @ lam, lam, metric)


def physical_inner_product(psi_a: ArrayLike, psi_b: ArrayLike, theta: ArrayLike) -> complex:
    metric = as_matrix(theta)
    a = as_vector(psi_a, metric.shape[0])
    b = as_vector(psi_b, metric.shape[0])
    return complex(np.vdot(a, metric @ b))


def physical_norm(psi: ArrayLike, theta: ArrayLike) -> float:
    return float(np.sqrt(physical_inner_product(psi, psi, theta).real))


def theta_orthonormalize(vectors: ArrayLike, theta: ArrayLike) -> ComplexArray:
    """Gram-Schmidt das colunas de `vectors` no produto interno ⟨·|Θ|·⟩."""
    metric = as_matrix(theta)
    columns = np.asarray(vectors, dtype=np.complex128)
    if columns.ndim != 2 or columns.shape[0] != metric.shape[0]:
        raise DimensionMismatch(f"vectors of shape {columns.shape} against dim {metric.shape[0]}")
    result = []
    for column in columns.T:
        v = column.copy()
        for u in result:
            v = v - physical_inner_product(u, v, metric) * u
        length = physical_norm(v, metric)
        if length <= np.finfo(float).eps * max(norm(column), 1.0):
            raise ZeroState("vectors are linearly dependent in the physical inner product")
        result.append(v / length)
    return np.column_stack(result)
