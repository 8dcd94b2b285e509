"""Cadeias de observaveis para a metrica fatorada Θ_N = Z_N … Z_1.

Os parametros sao passados do mais interno para o mais externo (M_1 primeiro,
Z_N por ultimo) e Λ_k = M_k⁻¹ Θ_N. Exemplo com N = 4::

    params = (X_4, Y_4, Z_4)
    Λ_0 = I
    Λ_1 = X_4⁻¹ Θ_4      Z_1 = Λ_1
    Λ_2 = Y_4⁻¹ Θ_4      Z_2 = Λ_2 Λ_1⁻¹ = Y_4⁻¹ X_4
    Λ_3 = Z_4⁻¹ Θ_4      Z_3 = Λ_3 Λ_2⁻¹ = Z_4⁻¹ Y_4
    Λ_4 = Θ_4            Z_4 = Λ_4 Λ_3⁻¹ = Z_4
    Λ_5 = H

Os produtos Z_4 Z_3 Z_2 = X_4 e Z_4 Z_3 = Y_4 devolvem os parametros.
"""

from string import ascii_uppercase
from typing import Sequence

import numpy as np
from numpy.typing import ArrayLike

from quasiherm.dieudonne import check_quasi_hermitian
from quasiherm.errors import (
    NotHermitian,
    NotHermitianParameter,
    QuasiHermiticityViolation,
    SingularMatrix,
    SingularParameter,
    WrongN,
)
from quasiherm.log.logger import get_logger
from quasiherm.matrixcore import hermitian_defect, inverse, is_positive_definite
from quasiherm.types.quasiherm_types import ObservableChain, VerificationReport
from quasiherm.util.util import (
    ComplexArray,
    as_matrix,
    chain_product,
    dagger,
    relative_residual,
    same_dim,
)

logger = get_logger()

HERMITIAN_TOL = 1e-12
QUASI_HERMITIAN_TOL = 1e-10
# rotulos (separacao, escada por k, topo) do trio N = 2 e do quarteto N = 3
NAMED_TAGS: dict[int, tuple[str, dict[int, str], str]] = {
    2: ("able3", {1: "able2"}, "able1"),
    3: ("bable4", {1: "bable3", 2: "bable2"}, "bable1"),
}


def parameter_labels(n: int) -> list[str]:
    """Nomes dos parametros na ordem das colunas: N=3 -> ["Y_3", "Z_3"]."""
    labels = []
    for k in range(1, n):
        offset = n - 1 - k
        if offset < len(ascii_uppercase):
            labels.append(f"{ascii_uppercase[-1 - offset]}_{n}")
        else:
            labels.append(f"M_{k}^({n})")
    return labels


def table_column(n: int) -> list[str]:
    column = ["Λ_0 = I"]
    for k, label in enumerate(parameter_labels(n), start=1):
        column.append(f"Λ_{k} = {label}^-1 Θ_{n}")
    column.append(f"Λ_{n} = Θ_{n}")
    column.append(f"Λ_{n + 1} = H")
    return column


def ladder_tag(n: int, k: int) -> str:
    """Rotulo da equacao Z_k†(Z_N…Z_{k+1}) = (Z_N…Z_{k+1})Z_k."""
    if n in NAMED_TAGS:
        return NAMED_TAGS[n][1][k]
    if k == n - 1:
        return "deble3b"
    if k == n - 2:
        return "deble3"
    if k == 1:
        return "deble4"
    if k == 2:
        return "deble4b"
    return f"deble4.{k}"


def separation_tag(n: int) -> str:
    return NAMED_TAGS[n][0] if n in NAMED_TAGS else "deblesep"


def top_tag(n: int) -> str:
    return NAMED_TAGS[n][2] if n in NAMED_TAGS else "deble1"


def lemma1_observable(m: ArrayLike, theta: ArrayLike) -> ComplexArray:
    """Λ = M Θ com M = M† e sempre quase-Hermitiano."""
    parameter, metric = as_matrix(m), as_matrix(theta)
    same_dim(parameter, metric)
    defect = hermitian_defect(parameter)
    if defect > HERMITIAN_TOL:
        raise NotHermitianParameter(f"M has hermitian defect {defect:.3e}")
    observable = parameter @ metric
    residual = check_quasi_hermitian(observable, metric)
    logger.debug(f"lemma1 observable residual {residual:.3e}")
    return observable


def _require_metric(metric: ComplexArray) -> None:
    tol = HERMITIAN_TOL * max(1.0, float(np.linalg.norm(metric)))
    try:
        positive, smallest = is_positive_definite(metric, tol)
    except NotHermitian as exc:
        raise QuasiHermiticityViolation(f"Θ is not Hermitian: {exc}") from exc
    if not positive:
        raise QuasiHermiticityViolation(f"Θ is not positive definite (λ_min = {smallest:.3e})")


def build_chain(
    h: ArrayLike, theta: ArrayLike, params: Sequence[ArrayLike] = ()
) -> ObservableChain:
    hamiltonian, metric = as_matrix(h), as_matrix(theta)
    parameters = [as_matrix(p) for p in params]
    dim = same_dim(hamiltonian, metric, *parameters)
    n = len(parameters) + 1
    logger.info(f"Building chain N={n} dim={dim}")

    residual = check_quasi_hermitian(hamiltonian, metric)
    if residual > QUASI_HERMITIAN_TOL:
        raise QuasiHermiticityViolation(f"H†Θ − ΘH residual {residual:.3e}")
    _require_metric(metric)

    inverses = []
    for label, parameter in zip(parameter_labels(n), parameters):
        defect = hermitian_defect(parameter)
        if defect > HERMITIAN_TOL:
            raise NotHermitianParameter(f"{label} has hermitian defect {defect:.3e}")
        try:
            inverses.append(inverse(parameter))
        except SingularMatrix as exc:
            raise SingularParameter(f"{label} is not invertible: {exc}") from exc

    identity = np.eye(dim, dtype=np.complex128)
    observables = [identity] + [m_inv @ metric for m_inv in inverses] + [metric, hamiltonian]
    factors = []
    for k in range(1, n + 1):
        try:
            factors.append(observables[k] @ inverse(observables[k - 1]))
        except SingularMatrix as exc:
            raise SingularParameter(f"Λ_{k - 1} is singular: {exc}") from exc
    chain = ObservableChain(
        N=n,
        dim=dim,
        H=hamiltonian,
        theta=metric,
        params=tuple(parameters),
        observables=tuple(observables),
        factors=tuple(factors),
    )
    recomposed = relative_residual(chain.suffix_product(0), metric, metric)
    logger.info(f"Chain N={n} recomposes Θ with residual {recomposed:.3e}")
    return chain


def chain_from_factors(h: ArrayLike, factors: Sequence[ArrayLike]) -> ObservableChain:
    """Cadeia montada a partir de Z_1 … Z_N sem validacao (quem julga e verify_chain)."""
    hamiltonian = as_matrix(h)
    zs = [as_matrix(z) for z in factors]
    if not zs:
        raise WrongN("at least one factor is needed")
    dim = same_dim(hamiltonian, *zs)
    n = len(zs)
    lambdas = [chain_product(list(reversed(zs[:k])), dim) for k in range(0, n + 1)]
    theta = lambdas[n]
    params = [chain_product(list(reversed(zs[k:])), dim) for k in range(1, n)]
    return ObservableChain(
        N=n,
        dim=dim,
        H=hamiltonian,
        theta=theta,
        params=tuple(params),
        observables=tuple(lambdas + [hamiltonian]),
        factors=tuple(zs),
    )


def suffix_label(n: int, k: int) -> str:
    """Nome de Z_N…Z_{k+1}: A_N para o produto inteiro, senao o parametro que ele devolve."""
    if k == 0:
        return f"A_{n}"
    return parameter_labels(n)[k - 1]


def verify_chain(chain: ObservableChain, tol: float = 1e-9) -> VerificationReport:
    n, theta = chain.N, chain.theta
    residuals: list[tuple[str, float]] = [
        (separation_tag(n), check_quasi_hermitian(chain.H, theta)),
    ]
    for k in range(n - 1, 0, -1):
        z_k = chain.factor(k)
        suffix = chain.suffix_product(k)
        residuals.append(
            (ladder_tag(n, k), relative_residual(dagger(z_k) @ suffix, suffix @ z_k, z_k, suffix))
        )
    z_top = chain.factor(n)
    residuals.append((top_tag(n), relative_residual(dagger(z_top), z_top, z_top)))
    # com N = 2 a cascata e Y_2 = A_2 = Θ_2, ja coberta pelo trio
    cascade = range(n - 2, -1, -1) if n >= 3 else range(0)
    for k in cascade:
        suffix = chain.suffix_product(k)
        residuals.append(
            (f"hermitian:{suffix_label(n, k)}", relative_residual(dagger(suffix), suffix, suffix))
        )
    report = VerificationReport.from_residuals(residuals, tol)
    logger.info(
        f"verify_chain N={n}: max residual {report.max_residual:.3e}, pass={report.overall_pass}"
    )
    return report


def verify_theorem1(chain: ObservableChain, tol: float = 1e-9) -> VerificationReport:
    n, dim, theta = chain.N, chain.dim, chain.theta
    residuals: list[tuple[str, float]] = []
    for k, observable in enumerate(chain.observables):
        residuals.append((f"treat:Λ_{k}", check_quasi_hermitian(observable, theta)))
    for k in range(1, n + 1):
        product = chain_product([chain.factor(j) for j in range(k, 0, -1)], dim)
        observable = chain.observables[k]
        residuals.append(
            (f"product:Λ_{k}", relative_residual(observable, product, observable))
        )
    for k in range(0, n):
        lam, lam_next = chain.observables[k], chain.observables[k + 1]
        m_k = chain.suffix_product(k)
        residuals.append(
            (f"proof:Λ_{k}†M_{k}", relative_residual(dagger(lam) @ m_k, theta, lam, m_k))
        )
        residuals.append(
            (
                f"proof-step:{k}",
                relative_residual(
                    dagger(lam) @ m_k @ lam_next, dagger(lam_next) @ theta, lam, m_k, lam_next
                ),
            )
        )
    report = VerificationReport.from_residuals(residuals, tol)
    logger.info(
        f"verify_theorem1 N={n}: max residual {report.max_residual:.3e}, pass={report.overall_pass}"
    )
    return report


def n2_named_operators(chain: ObservableChain) -> tuple[ComplexArray, ComplexArray]:
    """(P, C) com C = P⁻¹ Θ_2."""
    if chain.N != 2:
        raise WrongN(f"parity/charge are defined at N = 2, chain has N = {chain.N}")
    parity = chain.factor(2)
    return parity, inverse(parity) @ chain.theta


def n3_named_operators(chain: ObservableChain) -> tuple[ComplexArray, ComplexArray]:
    """(Q, R): quase-paridade Q = Z_3⁻¹ Y_3 e carga renormalizada R = Y_3⁻¹ Θ_3."""
    if chain.N != 3:
        raise WrongN(
            f"quasiparity/renormalized charge are defined at N = 3, chain has N = {chain.N}"
        )
    z3 = chain.factor(3)
    y3 = z3 @ chain.factor(2)
    quasiparity = inverse(z3) @ y3
    charge = inverse(y3) @ chain.theta
    logger.debug(
        f"Q−Z_2 {relative_residual(quasiparity, chain.factor(2), chain.factor(2)):.3e}, "
        f"R−Z_1 {relative_residual(charge, chain.factor(1), chain.factor(1)):.3e}"
    )
    return quasiparity, charge


def observability(chain: ObservableChain) -> dict[str, float]:
    """Residuo quase-Hermitiano de cada fator e de cada produto Z_N…Z_{k+1}."""
    table = {}
    for k in range(1, chain.N + 1):
        table[f"Z_{k}"] = check_quasi_hermitian(chain.factor(k), chain.theta)
    for k in range(chain.N - 2, 0, -1):
        table[suffix_label(chain.N, k)] = check_quasi_hermitian(
            chain.suffix_product(k), chain.theta
        )
    return table


def textbook_report(
    h: ArrayLike, observables: Sequence[ArrayLike] = (), tol: float = 1e-9
) -> VerificationReport:
    """Caso N = 0: Θ_0 = I e todo observavel precisa ser Hermitiano."""
    residuals = []
    for k, observable in enumerate([h, *observables]):
        matrix = as_matrix(observable)
        name = "H" if k == 0 else f"Λ_{k}"
        residuals.append((f"hermitian:{name}", relative_residual(dagger(matrix), matrix, matrix)))
    return VerificationReport.from_residuals(residuals, tol)
