import asyncio
from typing import Callable, Optional, Sequence

import numpy as np
import scipy.linalg
from numpy.typing import ArrayLike

from quasiherm.dieudonne import default_metric, solve_metric_space
from quasiherm.errors import (
    BadDimension,
    BadRange,
    DefectiveMatrix,
    QuasiHermError,
    ZeroParameter,
)
from quasiherm.log.logger import get_logger
from quasiherm.matrixcore import eig, is_positive_definite
from quasiherm.types.quasiherm_types import SweepResult
from quasiherm.util.util import ComplexArray, as_matrix, dagger, norm

logger = get_logger()

BISECTION_RESOLUTION = 1e-6
REALITY_TOL = 1e-9
Family = Callable[[float], ArrayLike]


def toy_2x2(g: float) -> ComplexArray:
    """[[0, 1], [g², 0]], autovalores ±g e metrica de referencia diag(g², 1)."""
    if g == 0:
        raise ZeroParameter("g must be nonzero")
    return np.array([[0.0, 1.0], [g * g, 0.0]], dtype=np.complex128)


def _require_dim(d: int) -> None:
    if d < 2:
        raise BadDimension(f"dimension must be at least 2, got {d}")


def pt_chain(d: int, gamma: float) -> ComplexArray:
    """Cadeia tridiagonal com saltos unitarios e ganho/perda ±iγ nas pontas."""
    _require_dim(d)
    hopping = np.ones(d - 1)
    matrix = np.diag(hopping, 1) + np.diag(hopping, -1)
    matrix = matrix.astype(np.complex128)
    matrix[0, 0] = 1j * gamma
    matrix[-1, -1] = -1j * gamma
    return matrix


def parity(d: int) -> ComplexArray:
    _require_dim(d)
    return np.fliplr(np.eye(d)).astype(np.complex128)


def rng_for(seed: int) -> np.random.Generator:
    """PCG64; mesma semente, mesmas matrizes."""
    return np.random.default_rng(seed)


def _complex_gaussian(d: int, rng: np.random.Generator) -> ComplexArray:
    return (rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))) / np.sqrt(2)


def random_unitary(d: int, rng: np.random.Generator) -> ComplexArray:
    q, r = scipy.linalg.qr(_complex_gaussian(d, rng))
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def random_hermitian(d: int, rng: np.random.Generator) -> ComplexArray:
    g = _complex_gaussian(d, rng)
    return (g + dagger(g)) / 2


def random_hermitian_parameter(d: int, rng: np.random.Generator) -> ComplexArray:
    """M = V D V† com D em ±[0.5, 2]: Hermitiana, invertivel e possivelmente indefinida."""
    _require_dim(d)
    v = random_unitary(d, rng)
    magnitudes = rng.uniform(0.5, 2.0, size=d)
    signs = rng.choice([-1.0, 1.0], size=d)
    m = (v * (signs * magnitudes)) @ dagger(v)
    return (m + dagger(m)) / 2


def random_weights(d: int, rng: np.random.Generator) -> np.ndarray:
    return rng.uniform(0.5, 2.0, size=d)


def random_qh(
    d: int, seed: int, non_hermiticity: float = 0.5
) -> tuple[ComplexArray, ComplexArray]:
    """H = Ω⁻¹ h Ω com h Hermitiana e testemunha Θ = Ω†Ω.

    Ω = I + s·G/‖G‖₂ com s = `non_hermiticity` < 1, sempre invertivel; s = 0
    devolve H Hermitiana e Θ = I.
    """
    _require_dim(d)
    if not 0.0 <= non_hermiticity < 1.0:
        raise BadRange(f"non_hermiticity must lie in [0, 1), got {non_hermiticity}")
    rng = rng_for(seed)
    h = random_hermitian(d, rng)
    g = _complex_gaussian(d, rng)
    omega = np.eye(d, dtype=np.complex128) + non_hermiticity * g / np.linalg.norm(g, 2)
    hamiltonian = np.linalg.solve(omega, h @ omega)
    witness = dagger(omega) @ omega
    return hamiltonian, (witness + dagger(witness)) / 2


def spectral_reality(h: ArrayLike, tol: float = REALITY_TOL) -> tuple[bool, float]:
    matrix = as_matrix(h)
    spectral = eig(matrix)
    max_imag = float(np.max(np.abs(spectral.eigenvalues.imag)))
    return max_imag <= tol * norm(matrix), max_imag


def _flags(family: Family, value: float, tol: float) -> tuple[bool, bool]:
    matrix = as_matrix(family(value))
    try:
        real, _ = spectral_reality(matrix, tol)
    except DefectiveMatrix:
        logger.debug(f"parameter {value}: defective (exceptional point)")
        return False, False
    if not real:
        return False, False
    try:
        theta = default_metric(solve_metric_space(matrix))
        positive, _ = is_positive_definite(theta, 1e-12 * max(1.0, norm(theta)))
    except QuasiHermError as exc:
        logger.debug(f"parameter {value}: no default metric ({exc})")
        positive = False
    return real, positive


def _is_real(family: Family, value: float, tol: float) -> bool:
    try:
        return spectral_reality(family(value), tol)[0]
    except DefectiveMatrix:
        return False


def _bisect(family: Family, lo: float, hi: float, tol: float) -> float:
    """Refina a transicao real -> complexo entre `lo` (real) e `hi` (complexo)."""
    while hi - lo > BISECTION_RESOLUTION:
        mid = (lo + hi) / 2
        if _is_real(family, mid, tol):
            lo = mid
        else:
            hi = mid
        logger.debug(f"bisection bracket [{lo:.9f}, {hi:.9f}]")
    return (lo + hi) / 2


def _critical(
    family: Family, values: np.ndarray, reality: list[bool], tol: float
) -> Optional[float]:
    if not reality[0]:
        return None
    for i in range(1, len(values)):
        if not reality[i]:
            return _bisect(family, float(values[i - 1]), float(values[i]), tol)
    return None


def _grid(lo: float, hi: float, samples: int) -> np.ndarray:
    if not lo < hi:
        raise BadRange(f"need lo < hi, got [{lo}, {hi}]")
    if samples < 2:
        raise BadRange(f"need at least 2 samples, got {samples}")
    return np.linspace(lo, hi, samples)


def _sweep_result(
    values: np.ndarray, flags: Sequence[tuple[bool, bool]], critical: Optional[float]
) -> SweepResult:
    if critical is not None:
        logger.info(f"Reality breaks down at {critical:.6f}")
    return SweepResult(
        parameter_values=tuple(float(v) for v in values),
        reality_flags=tuple(f[0] for f in flags),
        positivity_flags=tuple(f[1] for f in flags),
        critical_estimate=critical,
    )


def sweep_exceptional(
    family: Family, lo: float, hi: float, samples: int, tol: float = REALITY_TOL
) -> SweepResult:
    values = _grid(lo, hi, samples)
    logger.info(f"Sweeping {samples} points over [{lo}, {hi}]")
    flags = [_flags(family, float(v), tol) for v in values]
    critical = _critical(family, values, [f[0] for f in flags], tol)
    return _sweep_result(values, flags, critical)


async def sweep_exceptional_async(
    family: Family, lo: float, hi: float, samples: int, tol: float = REALITY_TOL
) -> SweepResult:
    """Varredura com os pontos da grade calculados em threads e juntados em ordem."""
    values = _grid(lo, hi, samples)
    logger.info(f"Sweeping {samples} points over [{lo}, {hi}]")
    flags = await asyncio.gather(
        *(asyncio.to_thread(_flags, family, float(v), tol) for v in values)
    )
    reality = [f[0] for f in flags]
    critical = await asyncio.to_thread(_critical, family, values, reality, tol)
    return _sweep_result(values, flags, critical)
