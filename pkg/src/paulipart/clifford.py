"""Clifford gates F, R^k and SUM acting on phase-free Pauli operators, and
synthesis of circuits that simultaneously diagonalize commuting sets.

Conjugation rules in symplectic coordinates (all mod q):

* ``F(t)``:       (x_t, z_t) -> (-z_t, x_t)
* ``R(t, k)``:    (x_t, z_t) -> (x_t, z_t + k x_t)
* ``SUM(c, t)``:  x_t -> x_t + x_c,  z_c -> z_c - z_t
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Union

import numpy as np

from .pauli import PauliOperator, PauliSet, check_prime, inverse_mod


class NonCommutingError(ValueError):
    def __init__(self, i: int, j: int, a: PauliOperator, b: PauliOperator):
        self.pair = (i, j)
        super().__init__(f"operators {i} ({a}) and {j} ({b}) do not commute")


@dataclass(frozen=True)
class F:
    target: int

    def qudits(self) -> tuple[int, ...]:
        return (self.target,)

    def __str__(self) -> str:
        return f"F {self.target}"


@dataclass(frozen=True)
class R:
    target: int
    k: int = 1

    def qudits(self) -> tuple[int, ...]:
        return (self.target,)

    def __str__(self) -> str:
        return f"R {self.target} {self.k}"


@dataclass(frozen=True)
class Sum:
    control: int
    target: int

    def __post_init__(self):
        if self.control == self.target:
            raise ValueError("SUM control and target must differ")

    def qudits(self) -> tuple[int, ...]:
        return (self.control, self.target)

    def __str__(self) -> str:
        return f"SUM {self.control} {self.target}"


CliffordGate = Union[F, R, Sum]


def _check_gate(gate: CliffordGate, q: int, n: int) -> None:
    for t in gate.qudits():
        if not 0 <= t < n:
            raise IndexError(f"{gate} acts outside qudits 0..{n - 1}")
    if isinstance(gate, R) and gate.k % q == 0:
        raise ValueError(f"R exponent {gate.k} is zero mod {q}")


def _apply(gate: CliffordGate, xs: np.ndarray, zs: np.ndarray, q: int) -> None:
    """In-place conjugation of exponent arrays; the last axis indexes qudits."""
    if isinstance(gate, F):
        t = gate.target
        xt = xs[..., t].copy()
        xs[..., t] = (-zs[..., t]) % q
        zs[..., t] = xt
    elif isinstance(gate, R):
        t = gate.target
        zs[..., t] = (zs[..., t] + gate.k * xs[..., t]) % q
    elif isinstance(gate, Sum):
        c, t = gate.control, gate.target
        xs[..., t] = (xs[..., t] + xs[..., c]) % q
        zs[..., c] = (zs[..., c] - zs[..., t]) % q
    else:
        raise TypeError(f"not a Clifford gate: {gate!r}")


def conjugate(gate: CliffordGate, p: PauliOperator) -> PauliOperator:
    _check_gate(gate, p.q, p.n)
    xs, zs = np.array(p.x), np.array(p.z)
    _apply(gate, xs, zs, p.q)
    return PauliOperator(p.q, tuple(xs.tolist()), tuple(zs.tolist()))


def inverse_gates(gate: CliffordGate, q: int) -> list[CliffordGate]:
    """Gate sequence undoing ``gate`` under conjugation."""
    if isinstance(gate, F):
        return [gate] * 3
    if isinstance(gate, R):
        return [R(gate.target, (-gate.k) % q)]
    return [gate] * (q - 1)


@dataclass
class CliffordCircuit:
    """Gates applied in list order when conjugating a Pauli operator."""

    q: int
    n: int
    gates: list[CliffordGate] = field(default_factory=list)

    def __post_init__(self):
        self.q = check_prime(self.q)
        for g in self.gates:
            _check_gate(g, self.q, self.n)

    def append(self, gate: CliffordGate) -> None:
        _check_gate(gate, self.q, self.n)
        self.gates.append(gate)

    def extend(self, gates: Iterable[CliffordGate]) -> None:
        for g in gates:
            self.append(g)

    def __len__(self) -> int:
        return len(self.gates)

    def inverse(self) -> CliffordCircuit:
        gates = []
        for g in reversed(self.gates):
            gates.extend(inverse_gates(g, self.q))
        return CliffordCircuit(self.q, self.n, gates)

    def count(self, kind: type) -> int:
        return sum(isinstance(g, kind) for g in self.gates)

    def to_text(self) -> str:
        lines = [f"q {self.q}", f"n {self.n}"] + [str(g) for g in self.gates]
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> CliffordCircuit:
        from .io import ParseError

        q = n = None
        gates: list[CliffordGate] = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head, *args = line.split()
            try:
                vals = [int(a) for a in args]
            except ValueError:
                raise ParseError(f"non-integer argument in {line!r}", lineno) from None
            arity = {"q": 1, "n": 1, "F": 1, "R": 2, "SUM": 2}
            if head.upper() not in arity and head not in arity:
                raise ParseError(f"unknown circuit line {line!r}", lineno)
            key = head if head in ("q", "n") else head.upper()
            if len(vals) != arity[key]:
                raise ParseError(f"{key} takes {arity[key]} argument(s)", lineno)
            try:
                if key == "q":
                    q = check_prime(vals[0])
                elif key == "n":
                    n = vals[0]
                elif key == "F":
                    gates.append(F(vals[0]))
                elif key == "R":
                    gates.append(R(vals[0], vals[1]))
                else:
                    gates.append(Sum(vals[0], vals[1]))
            except ValueError as exc:
                raise ParseError(str(exc), lineno) from None
        if q is None or n is None:
            raise ParseError("circuit text needs 'q <q>' and 'n <n>' header lines", 0)
        try:
            return cls(q, n, gates)
        except (ValueError, IndexError) as exc:
            raise ParseError(str(exc), 0) from None


def conjugate_circuit(c: CliffordCircuit, p: PauliOperator) -> PauliOperator:
    if p.q != c.q or p.n != c.n:
        raise ValueError(f"circuit is over q={c.q}, n={c.n}; operator over q={p.q}, n={p.n}")
    xs, zs = np.array(p.x), np.array(p.z)
    for g in c.gates:
        _apply(g, xs, zs, c.q)
    return PauliOperator(p.q, tuple(xs.tolist()), tuple(zs.tolist()))


def conjugate_set(c: CliffordCircuit, s: PauliSet) -> PauliSet:
    if s.q != c.q or s.n != c.n:
        raise ValueError(f"circuit is over q={c.q}, n={c.n}; set over q={s.q}, n={s.n}")
    xs, zs = (a.copy() for a in s.arrays)
    for g in c.gates:
        _apply(g, xs, zs, c.q)
    return PauliSet(
        [PauliOperator(s.q, tuple(x), tuple(z)) for x, z in zip(xs.tolist(), zs.tolist())],
        q=s.q,
        n=s.n,
    )


def is_diagonalized(s: PauliSet) -> bool:
    return all(op.is_diagonal for op in s)


class _Builder:
    """Accumulates gates while tracking their effect on the working set."""

    def __init__(self, q: int, n: int, xs: np.ndarray, zs: np.ndarray):
        self.q = q
        self.circuit = CliffordCircuit(q, n)
        self.xs, self.zs = xs, zs

    def emit(self, gate: CliffordGate, times: int = 1) -> None:
        for _ in range(times):
            self.circuit.append(gate)
            _apply(gate, self.xs, self.zs, self.q)

    def clear_z_component(self, row: int, w: int, j: int) -> None:
        """Cancel z_j of a row that is Z^a on qudit w, using SUM(j -> w).

        Each SUM(j, w) subtracts a from z_j; it also adds x_j to x_w, so the
        caller must ensure x_j == 0 on that row.
        """
        a = int(self.zs[row, w])
        b = int(self.zs[row, j])
        if b:
            self.emit(Sum(j, w), times=(b * inverse_mod(a, self.q)) % self.q)

    def local_to_z(self, row: int, t: int) -> None:
        """Single-qudit gate mapping X^a Z^b (a != 0) on qudit t to Z^a."""
        a, b = int(self.xs[row, t]), int(self.zs[row, t])
        k = (inverse_mod(a, self.q) * (self.q - b)) % self.q
        if k:
            self.emit(R(t, k))
        self.emit(F(t))


def diagonalize(s: PauliSet) -> CliffordCircuit:
    """Clifford circuit mapping every operator of a commuting set to Z-type.

    Qudits are processed left to right. At each working qudit ``w`` the first
    operator with X-support on qudits ``>= w`` is driven to ``Z^a`` on ``w``
    and identity on the remaining qudits; commutation with it then forces
    every other operator to have no X-component on ``w``.

    Raises :class:`NonCommutingError` naming an offending pair.
    """
    bad = s.first_noncommuting_pair()
    if bad is not None:
        i, j = bad
        raise NonCommutingError(i, j, s[i], s[j])
    q, n = s.q, s.n
    xs, zs = (a.copy() for a in s.arrays)
    b = _Builder(q, n, xs, zs)
    for w in range(n):
        rows = np.flatnonzero(xs[:, w:].any(axis=1))
        if len(rows) == 0:
            break
        p = int(rows[0])
        rest = range(w + 1, n)
        # move a nonzero X onto the working qudit
        if xs[p, w] == 0:
            j = next(j for j in rest if xs[p, j])
            b.emit(Sum(j, w))
        # base case on the working qudit: X^a Z^b -> Z^a
        b.local_to_z(p, w)
        # strip Z from the tail; mixed X^c Z^d qudits are first made X-only
        # locally, since SUM(j -> w) would copy their X onto the working qudit
        for j in rest:
            if zs[p, j] and xs[p, j]:
                k = (-int(zs[p, j]) * inverse_mod(int(xs[p, j]), q)) % q
                b.emit(R(j, k))
            elif zs[p, j]:
                b.clear_z_component(p, w, j)
        # tail is X-only; rotate it to Z-only
        for j in rest:
            if xs[p, j]:
                b.emit(F(j))
        for j in rest:
            b.clear_z_component(p, w, j)
        assert not xs[p].any() and not zs[p, w + 1 :].any(), "pivot not reduced to Z^a on working qudit"
    return b.circuit


def diagonalize_single_qudit(s: PauliSet) -> CliffordCircuit:
    """Per-qudit diagonalization using only F and R gates.

    Requires quditwise commutation: on each qudit the first operator with a
    nonzero X-exponent fixes the local basis change, and every other operator
    is a power of it there.
    """
    q, n = s.q, s.n
    xs, zs = (a.copy() for a in s.arrays)
    b = _Builder(q, n, xs, zs)
    for t in range(n):
        rows = np.flatnonzero(xs[:, t])
        if len(rows) == 0:
            continue
        b.local_to_z(int(rows[0]), t)
        if xs[:, t].any():
            i = int(np.flatnonzero(xs[:, t])[0])
            raise NonCommutingError(int(rows[0]), i, s[int(rows[0])], s[i])
    return b.circuit
