"""Generalized Pauli operators over a prime qudit dimension, in symplectic form.

An operator of length ``n`` is stored as two exponent vectors ``x`` and ``z``
over Z_q, so that the operator is the tensor product of ``X^x[i] Z^z[i]``.
Phases are never tracked: products and conjugations return the phase-free
representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

import numpy as np


class DimensionMismatchError(ValueError):
    """Raised when two operators disagree on q or on length."""


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


def check_prime(q: int) -> int:
    """Return ``q`` unchanged if it is a prime, raise ``ValueError`` otherwise."""
    if isinstance(q, bool) or int(q) != q:
        raise ValueError(f"qudit dimension must be an integer, got {q!r}")
    q = int(q)
    if not is_prime(q):
        raise ValueError(f"qudit dimension must be prime, got {q}")
    return q


def inverse_mod(a: int, q: int) -> int:
    a %= q
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse modulo {q}")
    return pow(a, -1, q)


@dataclass(frozen=True)
class PauliOperator:
    """A phase-free length-n Pauli operator over Z_q."""

    q: int
    x: tuple[int, ...]
    z: tuple[int, ...]

    def __post_init__(self):
        check_prime(self.q)
        x = tuple(int(v) for v in self.x)
        z = tuple(int(v) for v in self.z)
        if len(x) != len(z):
            raise ValueError(f"x and z have different lengths ({len(x)} != {len(z)})")
        if len(x) < 1:
            raise ValueError("a Pauli operator needs at least one qudit")
        for v in x + z:
            if not 0 <= v < self.q:
                raise ValueError(f"exponent {v} outside 0..{self.q - 1}")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "z", z)

    @classmethod
    def from_exponents(cls, q: int, x: Iterable[int], z: Iterable[int]) -> PauliOperator:
        """Build an operator, reducing the exponents mod q first."""
        return cls(q, tuple(int(v) % q for v in x), tuple(int(v) % q for v in z))

    @classmethod
    def identity(cls, q: int, n: int) -> PauliOperator:
        return cls(q, (0,) * n, (0,) * n)

    @classmethod
    def from_index(cls, q: int, n: int, index: int) -> PauliOperator:
        """Decode ``index`` in ``0 .. q**(2n) - 1`` as base-q digits of (x || z)."""
        digits = []
        for _ in range(2 * n):
            index, r = divmod(index, q)
            digits.append(r)
        if index:
            raise ValueError("index out of range")
        return cls(q, tuple(digits[:n]), tuple(digits[n:]))

    @property
    def n(self) -> int:
        return len(self.x)

    @property
    def is_identity(self) -> bool:
        return not any(self.x) and not any(self.z)

    @property
    def is_diagonal(self) -> bool:
        return not any(self.x)

    def symplectic(self) -> tuple[int, ...]:
        return self.x + self.z

    def padded(self, n: int) -> PauliOperator:
        """Right-pad with identity qudits up to length ``n``."""
        if n < self.n:
            raise ValueError(f"cannot pad length {self.n} operator down to {n}")
        pad = (0,) * (n - self.n)
        return PauliOperator(self.q, self.x + pad, self.z + pad)

    def __mul__(self, other: PauliOperator) -> PauliOperator:
        return product(self, other)

    def __str__(self) -> str:
        from .io import format_pauli

        return format_pauli(self)


def _check_compatible(a: PauliOperator, b: PauliOperator) -> None:
    if a.q != b.q:
        raise DimensionMismatchError(f"qudit dimensions differ ({a.q} != {b.q})")
    if a.n != b.n:
        raise DimensionMismatchError(f"operator lengths differ ({a.n} != {b.n})")


def symplectic_inner_product(a: PauliOperator, b: PauliOperator) -> int:
    """Sum of ``a.x[i] b.z[i] - a.z[i] b.x[i]`` reduced mod q.

    Zero exactly when the two operators commute as matrices (up to phase).
    """
    _check_compatible(a, b)
    total = sum(ax * bz - az * bx for ax, az, bx, bz in zip(a.x, a.z, b.x, b.z))
    return total % a.q


def commutes(a: PauliOperator, b: PauliOperator) -> bool:
    return symplectic_inner_product(a, b) == 0


def quditwise_commutes(a: PauliOperator, b: PauliOperator) -> bool:
    """True when the operators commute on every tensor factor separately."""
    _check_compatible(a, b)
    q = a.q
    return all((ax * bz - az * bx) % q == 0 for ax, az, bx, bz in zip(a.x, a.z, b.x, b.z))


def product(a: PauliOperator, b: PauliOperator) -> PauliOperator:
    """Phase-free product: exponents add componentwise mod q."""
    _check_compatible(a, b)
    q = a.q
    return PauliOperator(
        q,
        tuple((u + v) % q for u, v in zip(a.x, b.x)),
        tuple((u + v) % q for u, v in zip(a.z, b.z)),
    )


def rank_mod_q(rows: Sequence[Sequence[int]], q: int) -> int:
    """Rank of an integer matrix over the prime field Z_q (Gaussian elimination)."""
    m = [[int(v) % q for v in row] for row in rows]
    if not m:
        return 0
    ncols = len(m[0])
    rank = 0
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(m)) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][col], -1, q)
        m[rank] = [(v * inv) % q for v in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                f = m[r][col]
                m[r] = [(v - f * w) % q for v, w in zip(m[r], m[rank])]
        rank += 1
        if rank == len(m):
            break
    return rank


class PauliSet:
    """Ordered collection of operators sharing q and length.

    Shorter operators are right-padded with identity qudits so that every
    member has the common maximum length. Duplicates are kept.
    """

    def __init__(self, operators: Iterable[PauliOperator], q: int | None = None, n: int | None = None):
        ops = list(operators)
        if q is None:
            if not ops:
                raise ValueError("q is required for an empty PauliSet")
            q = ops[0].q
        self.q = check_prime(q)
        for op in ops:
            if op.q != self.q:
                raise DimensionMismatchError(f"operator over q={op.q} in a set over q={self.q}")
        longest = max((op.n for op in ops), default=0)
        if n is None:
            n = longest
        elif n < longest:
            raise DimensionMismatchError(f"operator of length {longest} in a set of length {n}")
        self.n = n
        self.operators: tuple[PauliOperator, ...] = tuple(op if op.n == n else op.padded(n) for op in ops)

    def __len__(self) -> int:
        return len(self.operators)

    def __iter__(self) -> Iterator[PauliOperator]:
        return iter(self.operators)

    def __getitem__(self, i: int) -> PauliOperator:
        return self.operators[i]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PauliSet):
            return NotImplemented
        return (self.q, self.n, self.operators) == (other.q, other.n, other.operators)

    def __hash__(self) -> int:
        return hash((self.q, self.n, self.operators))

    def __repr__(self) -> str:
        return f"PauliSet(q={self.q}, n={self.n}, [{', '.join(str(p) for p in self.operators)}])"

    @cached_property
    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """(X, Z) exponent matrices of shape (len, n), dtype int64, read-only."""
        shape = (len(self.operators), self.n)
        xs = np.array([op.x for op in self.operators], dtype=np.int64).reshape(shape)
        zs = np.array([op.z for op in self.operators], dtype=np.int64).reshape(shape)
        xs.setflags(write=False)
        zs.setflags(write=False)
        return xs, zs

    def pairs_commute(self) -> bool:
        xs, zs = self.arrays
        return not np.any((xs @ zs.T - zs @ xs.T) % self.q)

    def first_noncommuting_pair(self) -> tuple[int, int] | None:
        xs, zs = self.arrays
        sip = (xs @ zs.T - zs @ xs.T) % self.q
        bad = np.argwhere(np.triu(sip, 1))
        if len(bad) == 0:
            return None
        return int(bad[0][0]), int(bad[0][1])


def is_linearly_independent(s: PauliSet) -> bool:
    """Whether the symplectic vectors (x || z) are independent over Z_q."""
    if len(s) == 0:
        return True
    if len(s) > 2 * s.n:
        return False
    return rank_mod_q([op.symplectic() for op in s], s.q) == len(s)
