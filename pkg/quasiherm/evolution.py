"""Evolucao pelo par dual de equacoes de Schrodinger.

|ψ(t)⟩ evolui com H e |ψ(t)⟩⟩ = Θ|ψ(t)⟩ evolui com H†; a norma ⟨ψ|Θ|ψ⟩ e
conservada quando H†Θ = ΘH.
"""

import asyncio
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike

from quasiherm.dieudonne import check_quasi_hermitian, physical_inner_product
from quasiherm.errors import QuasiHermiticityViolation, ZeroState
from quasiherm.log.logger import get_logger
from quasiherm.matrixcore import mat_exp
from quasiherm.types.quasiherm_types import TrajectoryRecord
from quasiherm.util.util import ComplexArray, as_matrix, as_vector, dagger, norm

logger = get_logger()

QUASI_HERMITIAN_TOL = 1e-10


def propagator(h: ArrayLike, t: float) -> ComplexArray:
    """exp(−i H t)"""
    return mat_exp(-1j * t * as_matrix(h))


def propagate(h: ArrayLike, psi0: ArrayLike, t: float) -> ComplexArray:
    hamiltonian = as_matrix(h)
    state = as_vector(psi0, hamiltonian.shape[0])
    return propagator(hamiltonian, t) @ state


def _require_quasi_hermitian(hamiltonian: ComplexArray, metric: ComplexArray) -> None:
    residual = check_quasi_hermitian(hamiltonian, metric)
    if residual > QUASI_HERMITIAN_TOL:
        raise QuasiHermiticityViolation(
            f"H†Θ − ΘH residual {residual:.3e} exceeds {QUASI_HERMITIAN_TOL:.0e}"
        )


def propagate_dual(h: ArrayLike, theta: ArrayLike, psi0: ArrayLike, t: float) -> ComplexArray:
    """exp(−i H† t) Θ ψ0, a evolucao dos kets multiplicados pela metrica."""
    hamiltonian, metric = as_matrix(h), as_matrix(theta)
    _require_quasi_hermitian(hamiltonian, metric)
    state = as_vector(psi0, hamiltonian.shape[0])
    return propagator(dagger(hamiltonian), t) @ (metric @ state)


def _sample(
    hamiltonian: ComplexArray,
    metric: ComplexArray,
    state: ComplexArray,
    t: float,
    check: bool = True,
) -> tuple[ComplexArray, ComplexArray, float]:
    psi = propagator(hamiltonian, t) @ state
    dual = propagator(dagger(hamiltonian), t) @ (metric @ state)
    if not check:
        return psi, dual, physical_inner_product(psi, psi, metric).real
    consistency = norm(dual - metric @ psi) / max(norm(metric) * norm(psi), np.finfo(float).tiny)
    if consistency > 1e-9:
        logger.warning(f"t={t}: dual ket drifts from Θψ by {consistency:.3e}")
    return psi, dual, physical_inner_product(psi, psi, metric).real


def norm_trajectory(
    h: ArrayLike,
    theta: ArrayLike,
    psi0: ArrayLike,
    times: Sequence[float],
    check: bool = True,
) -> TrajectoryRecord:
    """Amostra ψ(t), Θψ(t) e ⟨ψ(t)|Θ|ψ(t)⟩.

    Com `check=False` a quase-Hermiticidade nao e exigida, o que permite medir
    a deriva da norma com uma metrica errada.
    """
    hamiltonian, metric = as_matrix(h), as_matrix(theta)
    if check:
        _require_quasi_hermitian(hamiltonian, metric)
    state = as_vector(psi0, hamiltonian.shape[0])
    if norm(state) == 0.0:
        raise ZeroState("initial state is the zero vector")
    samples = [_sample(hamiltonian, metric, state, float(t), check) for t in times]
    record = TrajectoryRecord(
        times=tuple(float(t) for t in times),
        states=tuple(s[0] for s in samples),
        dual_states=tuple(s[1] for s in samples),
        norms=tuple(float(s[2]) for s in samples),
    )
    logger.info(f"Trajectory over {len(record.times)} samples, norm drift {record.drift:.3e}")
    return record


async def norm_trajectory_async(
    h: ArrayLike, theta: ArrayLike, psi0: ArrayLike, times: Sequence[float]
) -> TrajectoryRecord:
    """Mesma trajetoria, com as amostras calculadas em threads e juntadas em ordem."""
    hamiltonian, metric = as_matrix(h), as_matrix(theta)
    _require_quasi_hermitian(hamiltonian, metric)
    state = as_vector(psi0, hamiltonian.shape[0])
    if norm(state) == 0.0:
        raise ZeroState("initial state is the zero vector")
    samples = await asyncio.gather(
        *(asyncio.to_thread(_sample, hamiltonian, metric, state, float(t)) for t in times)
    )
    return TrajectoryRecord(
        times=tuple(float(t) for t in times),
        states=tuple(s[0] for s in samples),
        dual_states=tuple(s[1] for s in samples),
        norms=tuple(float(s[2]) for s in samples),
    )


def expectation(observable: ArrayLike, theta: ArrayLike, psi: ArrayLike) -> complex:
    """⟨ψ|Θ Λ|ψ⟩ / ⟨ψ|Θ|ψ⟩, real se Λ for quase-Hermitiano em relacao a Θ."""
    lam, metric = as_matrix(observable), as_matrix(theta)
    state = as_vector(psi, metric.shape[0])
    weight = physical_inner_product(state, state, metric)
    if norm(state) == 0.0 or weight.real <= 0.0:
        raise ZeroState("state has zero physical norm")
    value = complex(np.vdot(state, metric @ lam @ state)) / weight.real
    if abs(value.imag) > 1e-10 * max(abs(value), 1.0):
        logger.warning(
            f"expectation has imaginary part {value.imag:.3e}: Λ is not quasi-Hermitian"
        )
    return value
