import itertools

import numpy as np
import pytest

from paulipart.pauli import PauliOperator, PauliSet

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def P(text: str, q: int = 2) -> PauliOperator:
    from paulipart.io import parse_pauli

    return parse_pauli(text, q)


def all_operators(q: int, n: int, include_identity: bool = True) -> list[PauliOperator]:
    start = 0 if include_identity else 1
    return [PauliOperator.from_index(q, n, i) for i in range(start, q ** (2 * n))]


def dense(p: PauliOperator) -> np.ndarray:
    """Shift/clock matrix written out directly, independent of paulipart.simulate."""
    q = p.q
    w = np.exp(2j * np.pi / q)
    X = np.zeros((q, q), dtype=complex)
    for k in range(q):
        X[(k + 1) % q, k] = 1
    Z = np.diag([w**k for k in range(q)])
    out = np.eye(1)
    for a, b in zip(p.x, p.z):
        out = np.kron(out, np.linalg.matrix_power(X, a) @ np.linalg.matrix_power(Z, b))
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
