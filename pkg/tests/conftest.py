import numpy as np
import pytest


@pytest.fixture
def toy_h():
    return np.array([[0, 1], [4, 0]], dtype=np.complex128)


@pytest.fixture
def toy_theta():
    return np.diag([4.0, 1.0]).astype(np.complex128)


@pytest.fixture
def parity2():
    return np.array([[0, 1], [1, 0]], dtype=np.complex128)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def rk4(h, psi0, t, step=1e-3):
    """Integra i dψ/dt = Hψ com Runge-Kutta de passo fixo."""
    h = np.asarray(h, dtype=np.complex128)
    psi = np.asarray(psi0, dtype=np.complex128)
    steps = int(round(t / step))
    dt = t / steps

    def f(state):
        return -1j * (h @ state)

    for _ in range(steps):
        k1 = f(psi)
        k2 = f(psi + dt / 2 * k1)
        k3 = f(psi + dt / 2 * k2)
        k4 = f(psi + dt * k3)
        psi = psi + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
    return psi


@pytest.fixture
def rk4_oracle():
    return rk4
