"""Hamiltonian files, Pauli string forms and measurement plans.

Hamiltonian text format::

    # comment
    q 3            (optional, default 2)
    n 2            (optional; when given, every term must have this length)
    0.25 X1Z2.X0Z1
    -1.0+0.5i X0Z1.X1Z0

For q = 2 the letter form ``XXIZ`` is also accepted. Without an ``n`` header,
shorter terms are right-padded with identity qudits.
"""

from __future__ import annotations

import cmath
import json
import re
from dataclasses import dataclass, field
from typing import Sequence

from .clifford import CliffordCircuit, Sum, conjugate_circuit, diagonalize, diagonalize_single_qudit
from .coloring import Ordering, greedy_color
from .graph import GateSet, build_graph
from .pauli import PauliOperator, PauliSet, check_prime, commutes, quditwise_commutes


class ParseError(ValueError):
    def __init__(self, message: str, lineno: int = 0, source: str | None = None):
        self.lineno = lineno
        self.source = source
        self.message = message
        super().__init__(self._render())

    def _render(self) -> str:
        where = self.source or "<input>"
        if self.lineno:
            where = f"{where}:{self.lineno}"
        return f"{where}: {self.message}"

    def with_source(self, source: str) -> ParseError:
        return ParseError(self.message, self.lineno, source)


_TOKEN = re.compile(r"X(\d+)Z(\d+)")
_LETTERS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}


def parse_pauli(text: str, q: int = 2) -> PauliOperator:
    """Parse ``XIZY`` (q = 2 only) or ``X1Z0.X0Z2`` token form."""
    text = text.strip()
    if not text:
        raise ValueError("empty Pauli string")
    if text[0] == "X" and len(text) > 1 and text[1].isdigit():
        xs, zs = [], []
        for tok in text.split("."):
            m = _TOKEN.fullmatch(tok)
            if not m:
                raise ValueError(f"malformed qudit token {tok!r}; expected X<a>Z<b>")
            a, b = int(m.group(1)), int(m.group(2))
            if a >= q or b >= q:
                raise ValueError(f"exponent in {tok!r} outside 0..{q - 1}")
            xs.append(a)
            zs.append(b)
        return PauliOperator(q, tuple(xs), tuple(zs))
    if q != 2:
        raise ValueError(f"letter Pauli strings need q = 2; use X<a>Z<b> tokens for q = {q}")
    bad = set(text) - set(_LETTERS)
    if bad:
        raise ValueError(f"invalid character(s) {''.join(sorted(bad))!r} in Pauli string")
    return PauliOperator(2, tuple(_LETTERS[c][0] for c in text), tuple(_LETTERS[c][1] for c in text))


def format_pauli(p: PauliOperator) -> str:
    if p.q == 2:
        inv = {v: k for k, v in _LETTERS.items()}
        return "".join(inv[(a, b)] for a, b in zip(p.x, p.z))
    return ".".join(f"X{a}Z{b}" for a, b in zip(p.x, p.z))


def parse_coefficient(text: str) -> complex | float:
    if not any(c.isdigit() for c in text) and text.lower().lstrip("+-") not in ("inf", "nan", "infinity"):
        raise ValueError(f"malformed coefficient {text!r}")
    try:
        value: complex | float = float(text)
    except ValueError:
        if "j" in text or not text.endswith("i"):
            raise ValueError(f"malformed coefficient {text!r}") from None
        try:
            value = complex(text[:-1] + "j")
        except ValueError:
            raise ValueError(f"malformed coefficient {text!r}") from None
        if value.imag == 0:
            value = value.real
    if not cmath.isfinite(value):
        raise ValueError(f"coefficient {text!r} is not finite")
    return value


def format_coefficient(c: complex | float) -> str:
    if isinstance(c, complex):
        return f"{c.real!r}{c.imag:+}i"
    return repr(float(c))


@dataclass(frozen=True)
class HamiltonianTerm:
    coefficient: complex | float
    operator: PauliOperator


def parse_hamiltonian(text: str, source: str | None = None) -> list[HamiltonianTerm]:
    """One term per non-comment line, in file order."""
    q = 2
    n = None
    seen_body = False
    raw_terms: list[tuple[int, complex | float, PauliOperator]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] in ("q", "n"):
            if seen_body:
                raise ParseError(f"header line {parts[0]!r} after the first term", lineno, source)
            if len(parts) != 2 or not parts[1].isdigit():
                raise ParseError(f"malformed header {line!r}", lineno, source)
            if parts[0] == "q":
                try:
                    q = check_prime(int(parts[1]))
                except ValueError as exc:
                    raise ParseError(str(exc), lineno, source) from None
            else:
                n = int(parts[1])
                if n < 1:
                    raise ParseError("length header must be at least 1", lineno, source)
            continue
        seen_body = True
        if len(parts) != 2:
            raise ParseError(f"expected '<coefficient> <pauli>', got {line!r}", lineno, source)
        try:
            coeff = parse_coefficient(parts[0])
            op = parse_pauli(parts[1], q)
        except ValueError as exc:
            raise ParseError(str(exc), lineno, source) from None
        if n is not None and op.n != n:
            raise ParseError(f"term has length {op.n}, header says {n}", lineno, source)
        raw_terms.append((lineno, coeff, op))
    width = n if n is not None else max((op.n for _, _, op in raw_terms), default=0)
    return [HamiltonianTerm(c, op if op.n == width else op.padded(width)) for _, c, op in raw_terms]


def format_hamiltonian(terms: Sequence[HamiltonianTerm]) -> str:
    if not terms:
        return "q 2\n"
    q = terms[0].operator.q
    lines = [f"q {q}", f"n {terms[0].operator.n}"]
    lines += [f"{format_coefficient(t.coefficient)} {format_pauli(t.operator)}" for t in terms]
    return "\n".join(lines) + "\n"


@dataclass
class MeasurementPart:
    indices: list[int]
    operators: list[PauliOperator]
    circuit: CliffordCircuit
    z_operators: list[PauliOperator]


@dataclass
class MeasurementPlan:
    q: int
    n: int
    gate_set: GateSet
    ordering: str
    parts: list[MeasurementPart] = field(default_factory=list)
    num_terms: int = 0

    @property
    def num_parts(self) -> int:
        return len(self.parts)

    def validate(self) -> list[str]:
        """Problems found in the plan; an empty list means it is valid."""
        problems = []
        seen: list[int] = []
        predicate = commutes if self.gate_set is GateSet.FULL_CLIFFORD else quditwise_commutes
        for k, part in enumerate(self.parts):
            seen.extend(part.indices)
            if not (len(part.indices) == len(part.operators) == len(part.z_operators)):
                problems.append(f"part {k}: indices/operators/z_operators lengths differ")
                continue
            ops = part.operators
            for i in range(len(ops)):
                for j in range(i + 1, len(ops)):
                    if not predicate(ops[i], ops[j]):
                        problems.append(f"part {k}: terms {part.indices[i]} and {part.indices[j]} conflict")
            for idx, op, zop in zip(part.indices, ops, part.z_operators):
                if not zop.is_diagonal:
                    problems.append(f"part {k}: image of term {idx} has X-support")
                if conjugate_circuit(part.circuit, op) != zop:
                    problems.append(f"part {k}: circuit does not map term {idx} to its listed image")
            if self.gate_set is GateSet.SINGLE_QUDIT_CLIFFORD and part.circuit.count(Sum):
                problems.append(f"part {k}: SUM gate in a single-qudit plan")
        if len(seen) != len(set(seen)):
            problems.append("parts overlap")
        if sorted(seen) != list(range(self.num_terms)):
            problems.append("parts do not cover every term exactly once")
        return problems

    def is_valid(self) -> bool:
        return not self.validate()

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "n": self.n,
            "gate_set": self.gate_set.value,
            "ordering": self.ordering,
            "parts": [
                {
                    "indices": p.indices,
                    "operators": [format_pauli(o) for o in p.operators],
                    "circuit": [str(g) for g in p.circuit.gates],
                    "z_operators": [format_pauli(o) for o in p.z_operators],
                }
                for p in self.parts
            ],
            "stats": {"num_terms": self.num_terms, "num_parts": self.num_parts},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    @classmethod
    def from_dict(cls, doc: dict) -> MeasurementPlan:
        q, n = int(doc["q"]), int(doc["n"])
        parts = []
        for p in doc["parts"]:
            header = f"q {q}\nn {n}\n"
            parts.append(
                MeasurementPart(
                    indices=[int(i) for i in p["indices"]],
                    operators=[parse_pauli(s, q) for s in p["operators"]],
                    circuit=CliffordCircuit.from_text(header + "\n".join(p["circuit"])),
                    z_operators=[parse_pauli(s, q) for s in p["z_operators"]],
                )
            )
        return cls(
            q=q,
            n=n,
            gate_set=GateSet.parse(doc["gate_set"]),
            ordering=doc.get("ordering", "natural"),
            parts=parts,
            num_terms=int(doc["stats"]["num_terms"]),
        )

    def summary_csv(self) -> str:
        rows = ["part,size,gates,sum_gates"]
        for k, p in enumerate(self.parts):
            rows.append(f"{k},{len(p.indices)},{len(p.circuit)},{p.circuit.count(Sum)}")
        return "\n".join(rows) + "\n"


def deduplicate(terms: Sequence[HamiltonianTerm]) -> tuple[list[PauliOperator], list[int]]:
    """Unique operators in first-seen order, and each term's unique index."""
    index: dict[PauliOperator, int] = {}
    unique: list[PauliOperator] = []
    mapping = []
    for t in terms:
        if t.operator not in index:
            index[t.operator] = len(unique)
            unique.append(t.operator)
        mapping.append(index[t.operator])
    return unique, mapping


def make_plan(
    terms: Sequence[HamiltonianTerm],
    mode: GateSet | str = GateSet.FULL_CLIFFORD,
    order: Ordering | None = None,
) -> MeasurementPlan:
    """Color the non-diagonalizable graph of the distinct operators and attach
    a diagonalizing circuit to every color class."""
    mode = GateSet.parse(mode)
    order = order or Ordering.natural()
    if not terms:
        return MeasurementPlan(q=2, n=0, gate_set=mode, ordering=str(order))
    qs = {t.operator.q for t in terms}
    if len(qs) != 1:
        raise ValueError(f"terms mix qudit dimensions {sorted(qs)}")
    unique, mapping = deduplicate(terms)
    uset = PauliSet(unique)
    coloring = greedy_color(build_graph(uset, mode), order)
    members: list[list[int]] = [[] for _ in range(coloring.num_colors)]
    for term_index, u in enumerate(mapping):
        members[coloring.colors[u]].append(term_index)
    synth = diagonalize if mode is GateSet.FULL_CLIFFORD else diagonalize_single_qudit
    parts = []
    for idx in members:
        ops = [uset[mapping[i]] for i in idx]
        part_set = PauliSet(ops, q=uset.q, n=uset.n)
        circuit = synth(part_set)
        parts.append(MeasurementPart(idx, ops, circuit, [conjugate_circuit(circuit, o) for o in ops]))
    return MeasurementPlan(uset.q, uset.n, mode, str(order), parts, num_terms=len(terms))


def random_hamiltonian(q: int, n: int, num_terms: int, rng) -> list[HamiltonianTerm]:
    """Synthetic fixture: uniform operators (identity and repeats allowed),
    real Gaussian coefficients."""
    terms = []
    for _ in range(num_terms):
        digits = rng.integers(0, q, size=2 * n).tolist()
        op = PauliOperator(q, tuple(digits[:n]), tuple(digits[n:]))
        terms.append(HamiltonianTerm(round(float(rng.normal()), 6), op))
    return terms
