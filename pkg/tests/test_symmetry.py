import numpy as np
import pytest

from quasiherm.factorchain import build_chain
from quasiherm.models import (
    parity,
    pt_chain,
    random_hermitian,
    random_hermitian_parameter,
    random_qh,
    rng_for,
)
from quasiherm.symmetry import (
    apply_pt,
    check_involution,
    check_pct_symmetry,
    check_pseudo_hermiticity,
    check_pt_symmetry,
)


def test_apply_pt(parity2):
    psi = np.array([1j, 2.0])
    assert np.allclose(apply_pt(parity2, psi), [2.0, -1j])
    assert np.allclose(apply_pt(parity2, apply_pt(parity2, psi)), psi)


def test_pt_real_matrix_identity_parity(rng):
    h = rng.standard_normal((3, 3))
    assert check_pt_symmetry(h, np.eye(3)) == 0.0


def test_pt_canonical_2x2(parity2):
    assert check_pt_symmetry(pt_chain(2, 0.5), parity2) <= 1e-15


def test_pt_broken():
    assert check_pt_symmetry(np.diag([1j, -2j]), np.eye(2)) > 0.1


@pytest.mark.parametrize("d", range(2, 13))
def test_pt_chain_is_pt_symmetric(d):
    assert check_pt_symmetry(pt_chain(d, 0.3), parity(d)) <= 1e-14


def test_pct_toy(toy_h, parity2):
    assert check_pct_symmetry(toy_h, parity2, toy_h) == 0.0


def test_pct_hermitian_reduces_to_hermiticity():
    h = np.diag([1.0, 3.0])
    assert check_pct_symmetry(h, np.eye(2), np.eye(2)) == 0.0


def test_pct_toy_without_charge(toy_h, parity2):
    # H†P = PH = diag(4, 1), so the parity alone already intertwines the toy
    assert check_pct_symmetry(toy_h, parity2, np.eye(2)) <= 1e-15
    assert check_pct_symmetry(toy_h, parity2, np.diag([1.0, -1.0])) > 0.1


def test_pct_follows_chain_factors(toy_h, toy_theta, parity2):
    chain = build_chain(toy_h, toy_theta, [parity2])
    assert check_pct_symmetry(chain.H, chain.factor(2), chain.factor(1)) <= 1e-9


def test_pct_on_random_n2_chains():
    for seed in range(5):
        h, theta = random_qh(4, seed)
        chain = build_chain(h, theta, [random_hermitian_parameter(4, rng_for(seed))])
        assert check_pct_symmetry(chain.H, chain.factor(2), chain.factor(1)) <= 1e-9


def test_pseudo_hermiticity(parity2, toy_h):
    assert check_pseudo_hermiticity(np.diag([1.0, 2.0]), np.eye(2)) == 0.0
    assert check_pseudo_hermiticity(pt_chain(2, 0.5), parity2) <= 1e-15
    assert check_pseudo_hermiticity(toy_h, np.eye(2)) == pytest.approx(3 / np.sqrt(17))


@pytest.mark.parametrize("dim", range(2, 7))
def test_pt_and_pct_forms_agree(rng, dim):
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    h = g + g.T
    a = random_hermitian(dim, rng)
    assert abs(check_pct_symmetry(h, a, np.eye(dim)) - check_pt_symmetry(h, a.conj())) <= 1e-12


def test_involution():
    assert check_involution(parity(3)) <= 1e-15
    assert check_involution(np.diag([2.0, 1.0])) == pytest.approx(0.6)
