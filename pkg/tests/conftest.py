import math

import numpy as np
import pytest

ACCEPTANCE_RESULTS = {}


def tms_oracle(r, mu=1.0):
    """Two-mode squeezed thermal CM built as a symplectic congruence of mu * I."""
    c, s = math.cosh(r), math.sinh(r)
    Z = np.diag([1.0, -1.0])
    S = np.block([[c * np.eye(2), s * Z], [s * Z, c * np.eye(2)]])
    return S @ (mu * np.eye(4)) @ S.T


def williamson_oracle(V):
    """Symplectic eigenvalues from the Hermitian matrix i V^1/2 Ω V^1/2."""
    m = V.shape[0] // 2
    w, U = np.linalg.eigh(V)
    root = U @ np.diag(np.sqrt(w)) @ U.T
    om = np.kron(np.eye(m), [[0.0, 1.0], [-1.0, 0.0]])
    ev = np.linalg.eigvalsh(1j * root @ om @ root)
    return np.sort(ev[ev > 0])[::-1]


def random_physical_cm(rng, m, rmax=0.5, nu_max=2.0):
    from gqnet.networks import random_symplectic

    nu = rng.uniform(1.0, nu_max, m)
    D = np.diag(np.repeat(nu, 2))
    S = random_symplectic(m, rmax, rng)
    V = S @ D @ S.T
    return 0.5 * (V + V.T), np.sort(nu)[::-1]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS, key=lambda k: int(k.split()[0])):
        ok, detail = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {key}: {detail}")
