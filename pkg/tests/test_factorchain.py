from dataclasses import replace

import numpy as np
import pytest

from quasiherm.dieudonne import check_quasi_hermitian
from quasiherm.errors import (
    DimensionMismatch,
    NotHermitianParameter,
    QuasiHermiticityViolation,
    SingularParameter,
    WrongN,
)
from quasiherm.factorchain import (
    build_chain,
    chain_from_factors,
    ladder_tag,
    lemma1_observable,
    n2_named_operators,
    n3_named_operators,
    observability,
    parameter_labels,
    table_column,
    textbook_report,
    verify_chain,
    verify_theorem1,
)
from quasiherm.matrixcore import real_spectrum_defect
from quasiherm.models import random_hermitian, random_hermitian_parameter, random_qh, rng_for


def random_chain(n, dim, seed):
    h, theta = random_qh(dim, seed)
    rng = rng_for(seed + 1000)
    params = [random_hermitian_parameter(dim, rng) for _ in range(n - 1)]
    return build_chain(h, theta, params)


@pytest.fixture
def toy_chain(toy_h, toy_theta, parity2):
    return build_chain(toy_h, toy_theta, [parity2])


def test_lemma1_identity_gives_metric(toy_theta):
    assert np.allclose(lemma1_observable(np.eye(2), toy_theta), toy_theta)


def test_lemma1_recovers_toy_hamiltonian(toy_h, toy_theta, parity2):
    assert np.allclose(lemma1_observable(parity2, toy_theta), toy_h)


def test_lemma1_rejects_non_hermitian(toy_theta):
    m = np.array([[1.0, 1e-3], [0.0, 1.0]])
    with pytest.raises(NotHermitianParameter):
        lemma1_observable(m, toy_theta)


@pytest.mark.parametrize("seed", range(100))
def test_lemma1_and_contrapositive(seed):
    dim = 2 + seed % 5
    _, theta = random_qh(dim, seed)
    rng = rng_for(seed)
    m = random_hermitian(dim, rng)
    assert check_quasi_hermitian(lemma1_observable(m, theta), theta) <= 1e-10
    skew = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    broken = m + 0.5 * (skew - skew.conj().T)
    assert check_quasi_hermitian(broken @ theta, theta) >= 1e-4


def test_build_chain_n1(toy_h, toy_theta):
    chain = build_chain(toy_h, toy_theta)
    assert chain.N == 1
    assert len(chain.observables) == 3
    assert np.allclose(chain.observables[0], np.eye(2))
    assert np.allclose(chain.factor(1), toy_theta)
    assert np.allclose(chain.observables[2], toy_h)


def test_build_chain_toy_n2(toy_chain, toy_h, toy_theta, parity2):
    assert np.linalg.norm(toy_chain.observables[1] - toy_h) <= 1e-12
    assert np.linalg.norm(toy_chain.factor(1) - toy_h) <= 1e-12
    assert np.linalg.norm(toy_chain.factor(2) - parity2) <= 1e-12
    assert np.allclose(toy_chain.observables[2], toy_theta)


def test_build_chain_collapsed_n3(toy_h, toy_theta):
    chain = build_chain(toy_h, toy_theta, [np.eye(2), np.eye(2)])
    assert np.allclose(chain.observables[1], toy_theta)
    assert np.allclose(chain.observables[2], toy_theta)
    assert np.allclose(chain.factor(1), toy_theta)
    assert np.allclose(chain.factor(2), np.eye(2))
    assert np.allclose(chain.factor(3), np.eye(2))


def test_build_chain_needs_quasi_hermitian_pair(toy_h):
    with pytest.raises(QuasiHermiticityViolation):
        build_chain(toy_h, np.eye(2))


def test_build_chain_needs_positive_metric():
    with pytest.raises(QuasiHermiticityViolation):
        build_chain(np.diag([1.0, 2.0]), np.diag([1.0, -1.0]))


def test_build_chain_rejects_bad_params(toy_h, toy_theta):
    with pytest.raises(NotHermitianParameter):
        build_chain(toy_h, toy_theta, [[[1, 1], [0, 1]]])
    with pytest.raises(SingularParameter):
        build_chain(toy_h, toy_theta, [[[1, 1], [1, 1]]])
    with pytest.raises(DimensionMismatch):
        build_chain(toy_h, toy_theta, [np.eye(3)])


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("dim", [2, 4, 8])
def test_factors_recompose_metric(n, dim):
    chain = random_chain(n, dim, seed=n * 10 + dim)
    theta = chain.theta
    assert np.linalg.norm(chain.suffix_product(0) - theta) <= 1e-9 * np.linalg.norm(theta)
    for k, param in enumerate(chain.params, start=1):
        assert np.linalg.norm(chain.suffix_product(k) - param) <= 1e-9 * np.linalg.norm(param)


def test_verify_chain_toy_triplet(toy_chain):
    report = verify_chain(toy_chain)
    assert report.names() == ["able3", "able2", "able1"]
    assert report.overall_pass


def test_verify_chain_n3_names(toy_h, toy_theta):
    report = verify_chain(build_chain(toy_h, toy_theta, [np.eye(2), np.eye(2)]))
    assert report.names() == [
        "bable4",
        "bable2",
        "bable3",
        "bable1",
        "hermitian:Y_3",
        "hermitian:A_3",
    ]
    assert report.overall_pass


def test_verify_chain_generic_names():
    report = verify_chain(random_chain(5, 3, seed=7))
    assert report.names()[:6] == ["deblesep", "deble3b", "deble3", "deble4b", "deble4", "deble1"]
    assert report.names()[6:] == [
        "hermitian:Y_5",
        "hermitian:X_5",
        "hermitian:W_5",
        "hermitian:A_5",
    ]


@pytest.mark.parametrize("n", range(1, 6))
@pytest.mark.parametrize("dim", [2, 3, 5, 8])
def test_verify_chain_passes_on_built_chains(n, dim):
    report = verify_chain(random_chain(n, dim, seed=100 + n * dim))
    assert report.overall_pass, report.failing()
    assert report.max_residual <= 1e-9


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_non_hermitian_top_factor_fails(n):
    chain = random_chain(n, 3, seed=n)
    top = chain.factor(n) + np.array([[0, 1, 0], [0, 0, 0], [0, 0, 0]])
    corrupted = replace(chain, factors=chain.factors[:-1] + (top,))
    expected = {2: "able1", 3: "bable1"}.get(n, "deble1")
    assert expected in verify_chain(corrupted).failing()


@pytest.mark.parametrize("n", [3, 4, 5])
def test_corrupted_first_factor(n):
    chain = random_chain(n, 4, seed=30 + n)
    noise = rng_for(n).standard_normal((4, 4))
    corrupted = replace(chain, factors=(chain.factor(1) + 0.1 * noise,) + chain.factors[1:])
    failing = verify_chain(corrupted).failing()
    assert set(failing) == {ladder_tag(n, 1), f"hermitian:A_{n}"}


def test_corrupted_n1_factor(toy_h, toy_theta):
    chain = build_chain(toy_h, toy_theta)
    corrupted = replace(chain, factors=(np.array([[4, 1], [0, 1]], dtype=np.complex128),))
    assert verify_chain(corrupted).failing() == ["deble1"]


def test_theorem1_toy(toy_chain):
    report = verify_theorem1(toy_chain)
    assert report["treat:Λ_0"].residual == 0.0
    assert report["treat:Λ_1"].passed
    assert len(report.relations) == 4 * 2 + 2
    assert report.overall_pass


@pytest.mark.parametrize("seed", range(12))
def test_theorem1_random(seed):
    n = 1 + seed % 5
    dim = 2 + seed % 5
    report = verify_theorem1(random_chain(n, dim, seed))
    assert report.max_residual <= 1e-8, report.failing()


def test_theorem1_n5_dim6():
    assert verify_theorem1(random_chain(5, 6, seed=2024)).max_residual <= 1e-8


@pytest.mark.parametrize("n", range(1, 6))
def test_observables_have_real_spectra(n):
    chain = random_chain(n, 5, seed=n + 50)
    for observable in chain.observables:
        assert real_spectrum_defect(observable) <= 1e-8


def test_n2_named_operators(toy_chain, toy_h, parity2):
    p, c = n2_named_operators(toy_chain)
    assert np.allclose(p, parity2)
    assert np.allclose(c, toy_h)


def test_n3_named_operators_identity(toy_h, toy_theta):
    q, r = n3_named_operators(build_chain(toy_h, toy_theta, [np.eye(2), np.eye(2)]))
    assert np.allclose(q, np.eye(2))
    assert np.allclose(r, toy_theta)


def test_n3_named_operators_parity(toy_h, toy_theta, parity2):
    q, r = n3_named_operators(build_chain(toy_h, toy_theta, [np.eye(2), parity2]))
    assert np.allclose(q, parity2)
    assert np.allclose(r, np.diag([4.0, 1.0]))


def test_named_operators_wrong_n(toy_chain, toy_h, toy_theta):
    with pytest.raises(WrongN):
        n3_named_operators(toy_chain)
    with pytest.raises(WrongN):
        n2_named_operators(build_chain(toy_h, toy_theta))


@pytest.mark.parametrize(
    "n, labels",
    [
        (1, []),
        (2, ["Z_2"]),
        (3, ["Y_3", "Z_3"]),
        (4, ["X_4", "Y_4", "Z_4"]),
        (5, ["W_5", "X_5", "Y_5", "Z_5"]),
    ],
)
def test_parameter_labels(n, labels):
    assert parameter_labels(n) == labels


def test_parameter_labels_past_alphabet():
    assert parameter_labels(28)[0] == "M_1^(28)"


def test_table_column():
    assert table_column(2) == ["Λ_0 = I", "Λ_1 = Z_2^-1 Θ_2", "Λ_2 = Θ_2", "Λ_3 = H"]


@pytest.mark.parametrize(
    "n, k, tag",
    [
        (4, 3, "deble3b"),
        (4, 2, "deble3"),
        (4, 1, "deble4"),
        (6, 3, "deble4.3"),
        (6, 2, "deble4b"),
    ],
)
def test_ladder_tag(n, k, tag):
    assert ladder_tag(n, k) == tag


def test_chain_from_factors_matches_build_chain():
    chain = random_chain(4, 3, seed=11)
    rebuilt = chain_from_factors(chain.H, chain.factors)
    for original, observable in zip(chain.observables, rebuilt.observables):
        assert np.allclose(original, observable)
    for original, param in zip(chain.params, rebuilt.params):
        assert np.allclose(original, param)
    assert verify_chain(rebuilt).overall_pass


def test_chain_from_factors_needs_factors(toy_h):
    with pytest.raises(WrongN):
        chain_from_factors(toy_h, [])


def test_observability(toy_h, toy_theta):
    table = observability(build_chain(toy_h, toy_theta, [np.eye(2), np.eye(2)]))
    assert set(table) == {"Z_1", "Z_2", "Z_3", "Y_3"}
    assert all(value <= 1e-12 for value in table.values())


def test_observability_random_chain():
    table = observability(random_chain(4, 3, seed=5))
    assert table["Z_1"] <= 1e-9
    assert set(table) == {"Z_1", "Z_2", "Z_3", "Z_4", "Y_4", "X_4"}


def test_textbook_report(toy_h):
    assert textbook_report(np.diag([1.0, 2.0]), [np.eye(2)]).overall_pass
    report = textbook_report(toy_h)
    assert report.names() == ["hermitian:H"]
    assert report.failing() == ["hermitian:H"]
