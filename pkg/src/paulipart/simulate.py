"""Dense-matrix oracle for small instances.

Builds explicit shift/clock matrices and gate unitaries so that the
symplectic rules in :mod:`paulipart.clifford` can be checked independently.
Qudit 0 is the leftmost tensor factor. All comparisons ignore global phase.
"""

from __future__ import annotations

from functools import reduce

import numpy as np

from .clifford import CliffordCircuit, CliffordGate, F, R, Sum, conjugate
from .pauli import PauliOperator, PauliSet, check_prime

DEFAULT_CAP = 256
ATOL = 1e-9


class DimensionTooLargeError(ValueError):
    pass


def _check_cap(q: int, n: int, cap: int) -> None:
    if q**n > cap:
        raise DimensionTooLargeError(f"dense dimension {q}^{n} = {q**n} exceeds cap {cap}")


def omega(q: int) -> complex:
    return np.exp(2j * np.pi / q)


def shift(q: int) -> np.ndarray:
    """X_q: |k> -> |k+1 mod q>."""
    return np.roll(np.eye(q, dtype=complex), 1, axis=0)


def clock(q: int) -> np.ndarray:
    """Z_q = diag(1, w, w^2, ...)."""
    return np.diag(omega(q) ** np.arange(q))


def kron_all(mats) -> np.ndarray:
    return reduce(np.kron, mats, np.eye(1, dtype=complex))


def pauli_matrix(p: PauliOperator, cap: int = DEFAULT_CAP) -> np.ndarray:
    _check_cap(p.q, p.n, cap)
    X, Z = shift(p.q), clock(p.q)
    factors = [np.linalg.matrix_power(X, a) @ np.linalg.matrix_power(Z, b) for a, b in zip(p.x, p.z)]
    return kron_all(factors)


def _single_qudit_gate(gate: CliffordGate, q: int) -> np.ndarray:
    w = omega(q)
    if isinstance(gate, F):
        j = np.arange(q)
        return w ** np.outer(j, j) / np.sqrt(q)
    if q == 2:
        phase = np.diag([1, 1j])
    else:
        j = np.arange(q)
        phase = np.diag(w ** (j * (j - 1) // 2))
    return np.linalg.matrix_power(phase, gate.k % q if q > 2 else gate.k % 4)


def gate_matrix(gate: CliffordGate, q: int, n: int, cap: int = DEFAULT_CAP) -> np.ndarray:
    q = check_prime(q)
    _check_cap(q, n, cap)
    for t in gate.qudits():
        if not 0 <= t < n:
            raise IndexError(f"{gate} acts outside qudits 0..{n - 1}")
    if isinstance(gate, Sum):
        dim = q**n
        u = np.zeros((dim, dim), dtype=complex)
        digits = np.array(np.unravel_index(np.arange(dim), (q,) * n))
        out = digits.copy()
        out[gate.target] = (digits[gate.target] + digits[gate.control]) % q
        u[np.ravel_multi_index(tuple(out), (q,) * n), np.arange(dim)] = 1
        return u
    local = _single_qudit_gate(gate, q)
    eye = np.eye(q, dtype=complex)
    return kron_all([local if i == gate.target else eye for i in range(n)])


def circuit_matrix(c: CliffordCircuit, cap: int = DEFAULT_CAP) -> np.ndarray:
    """Unitary U with U P U^dagger equal to conjugation by the circuit."""
    _check_cap(c.q, c.n, cap)
    u = np.eye(c.q**c.n, dtype=complex)
    for g in c.gates:
        u = gate_matrix(g, c.q, c.n, cap) @ u
    return u


def is_unitary(u: np.ndarray, atol: float = ATOL) -> bool:
    return np.allclose(u @ u.conj().T, np.eye(u.shape[0]), atol=atol)


def equal_up_to_phase(a: np.ndarray, b: np.ndarray, atol: float = ATOL) -> bool:
    if a.shape != b.shape:
        return False
    idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(b[idx]) < atol:
        return bool(np.allclose(a, 0, atol=atol))
    ratio = a[idx] / b[idx]
    if abs(abs(ratio) - 1) > atol:
        return False
    return bool(np.allclose(a, ratio * b, rtol=0, atol=atol))


def verify_conjugation(gate: CliffordGate, p: PauliOperator, cap: int = DEFAULT_CAP) -> bool:
    u = gate_matrix(gate, p.q, p.n, cap)
    lhs = u @ pauli_matrix(p, cap) @ u.conj().T
    return equal_up_to_phase(lhs, pauli_matrix(conjugate(gate, p), cap))


def is_diagonal_matrix(m: np.ndarray, atol: float = ATOL) -> bool:
    off = m - np.diag(np.diag(m))
    return bool(np.all(np.abs(off) < atol))


def verify_diagonal(c: CliffordCircuit, s: PauliSet, cap: int = DEFAULT_CAP) -> bool:
    if len(s) and (s.q != c.q or s.n != c.n):
        raise ValueError(f"circuit is over q={c.q}, n={c.n}; set over q={s.q}, n={s.n}")
    u = circuit_matrix(c, cap)
    ud = u.conj().T
    return all(is_diagonal_matrix(u @ pauli_matrix(p, cap) @ ud) for p in s)


def matrices_commute(a: np.ndarray, b: np.ndarray, atol: float = ATOL) -> bool:
    return bool(np.allclose(a @ b, b @ a, atol=atol))
