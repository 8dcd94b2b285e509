"""Simetrias PT e PCT e pseudo-Hermiticidade em relacao a P.

T e a conjugacao complexa entrada a entrada na base computacional; toda relacao
antilinear vira uma identidade matricial com uma conjugacao explicita.
"""

import numpy as np
from numpy.typing import ArrayLike

from quasiherm.log.logger import get_logger
from quasiherm.matrixcore import hermitian_defect
from quasiherm.util.util import (
    ComplexArray,
    as_matrix,
    as_vector,
    dagger,
    relative_residual,
    same_dim,
)

logger = get_logger()


def apply_pt(p: ArrayLike, psi: ArrayLike) -> ComplexArray:
    """PT ψ = P · conj(ψ)."""
    parity = as_matrix(p)
    return parity @ as_vector(psi, parity.shape[0]).conj()


def check_pt_symmetry(h: ArrayLike, p: ArrayLike) -> float:
    """‖H P − P conj(H)‖ / (‖H‖ ‖P‖), ou seja [H, PT] = 0."""
    hamiltonian, parity = as_matrix(h), as_matrix(p)
    same_dim(hamiltonian, parity)
    defect = hermitian_defect(parity)
    if defect > 1e-12:
        logger.warning(f"parity has hermitian defect {defect:.3e}")
    return relative_residual(hamiltonian @ parity, parity @ hamiltonian.conj(), hamiltonian, parity)


def check_pct_symmetry(h: ArrayLike, p: ArrayLike, c: ArrayLike) -> float:
    """‖H† P C − P C H‖ / (‖H‖ ‖P C‖).

    Com P C = Θ_2 e a propria quase-Hermiticidade de H.
    """
    hamiltonian, parity, charge = as_matrix(h), as_matrix(p), as_matrix(c)
    same_dim(hamiltonian, parity, charge)
    pc = parity @ charge
    return relative_residual(dagger(hamiltonian) @ pc, pc @ hamiltonian, hamiltonian, pc)


def check_pseudo_hermiticity(h: ArrayLike, p: ArrayLike) -> float:
    """‖H† P − P H‖ / (‖H‖ ‖P‖).

    Nao e exigida pelo formalismo com N = 2: a paridade pode nao entrelacar H
    e a teoria continua consistente.
    """
    hamiltonian, parity = as_matrix(h), as_matrix(p)
    same_dim(hamiltonian, parity)
    return relative_residual(
        dagger(hamiltonian) @ parity, parity @ hamiltonian, hamiltonian, parity
    )


def check_involution(p: ArrayLike) -> float:
    """‖P² − I‖ / ‖P‖²; so informativo."""
    parity = as_matrix(p)
    identity = np.eye(parity.shape[0], dtype=np.complex128)
    return relative_residual(parity @ parity, identity, parity, parity)

