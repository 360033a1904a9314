"""Non-diagonalizable graphs and the Pauli-set <-> graph reductions."""

from __future__ import annotations

import enum
from typing import Iterable, Mapping, TextIO

import numpy as np

from .pauli import PauliOperator, PauliSet, check_prime


class GateSet(enum.Enum):
    """Which gates may be applied before a computational-basis measurement."""

    FULL_CLIFFORD = "clifford"
    SINGLE_QUDIT_CLIFFORD = "single-qudit"

    @classmethod
    def parse(cls, value: str | GateSet) -> GateSet:
        if isinstance(value, GateSet):
            return value
        aliases = {"c": cls.FULL_CLIFFORD, "full": cls.FULL_CLIFFORD, "sqc": cls.SINGLE_QUDIT_CLIFFORD}
        try:
            return aliases.get(value.lower()) or cls(value.lower())
        except ValueError:
            raise ValueError(f"unknown gate set {value!r}; expected 'clifford' or 'single-qudit'") from None


class CommutationGraph:
    """Simple undirected graph stored as a symmetric boolean adjacency matrix.

    Edges join operators that can NOT be measured together under the chosen
    gate set. ``labels`` optionally maps vertex index to its operator.
    """

    def __init__(self, adjacency: np.ndarray, labels: Mapping[int, PauliOperator] | None = None):
        adj = np.array(adjacency, dtype=bool)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if np.any(np.diag(adj)):
            raise ValueError("graph has a loop")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency matrix is not symmetric")
        adj.setflags(write=False)
        self.adjacency = adj
        self.labels = dict(labels) if labels else None

    @classmethod
    def from_edges(cls, vertex_count: int, edges: Iterable[tuple[int, int]], labels=None) -> CommutationGraph:
        adj = np.zeros((vertex_count, vertex_count), dtype=bool)
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge ({u}, {v}) outside 0..{vertex_count - 1}")
            adj[u, v] = adj[v, u] = True
        return cls(adj, labels)

    @property
    def vertex_count(self) -> int:
        return self.adjacency.shape[0]

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        us, vs = np.nonzero(np.triu(self.adjacency, 1))
        return frozenset(zip(us.tolist(), vs.tolist()))

    @property
    def edge_count(self) -> int:
        return int(np.count_nonzero(self.adjacency)) // 2

    def neighbors(self, v: int) -> np.ndarray:
        return np.flatnonzero(self.adjacency[v])

    def degrees(self) -> np.ndarray:
        return self.adjacency.sum(axis=1)

    def max_degree(self) -> int:
        return int(self.degrees().max(initial=0))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CommutationGraph):
            return NotImplemented
        return np.array_equal(self.adjacency, other.adjacency)

    def __repr__(self) -> str:
        return f"CommutationGraph(vertices={self.vertex_count}, edges={self.edge_count})"


def conflict_matrix(s: PauliSet, mode: GateSet | str) -> np.ndarray:
    """Boolean matrix marking pairs that are not jointly diagonalizable."""
    mode = GateSet.parse(mode)
    xs, zs = s.arrays
    q = s.q
    if mode is GateSet.FULL_CLIFFORD:
        conflict = ((xs @ zs.T - zs @ xs.T) % q) != 0
    else:
        per_qudit = (xs[:, None, :] * zs[None, :, :] - zs[:, None, :] * xs[None, :, :]) % q
        conflict = per_qudit.any(axis=2)
    np.fill_diagonal(conflict, False)
    return conflict


def build_graph(s: PauliSet, mode: GateSet | str) -> CommutationGraph:
    """One vertex per operator (input order), edges between conflicting pairs."""
    return CommutationGraph(conflict_matrix(s, mode), labels=dict(enumerate(s.operators)))


def pauli_set_from_graph(g: CommutationGraph, q: int) -> PauliSet:
    """Encode a graph as Pauli operators whose commutation pattern is the graph.

    Operator ``i`` is ``X`` on qudit ``i`` with Z-exponents taken from row ``i``
    of the strictly lower triangular adjacency matrix; ``P_u`` and ``P_v``
    fail to commute exactly when ``uv`` is an edge.
    """
    q = check_prime(q)
    n = g.vertex_count
    lower = np.tril(g.adjacency, -1).astype(int)
    ops = []
    for i in range(n):
        x = [0] * n
        x[i] = 1
        ops.append(PauliOperator(q, tuple(x), tuple(lower[i].tolist())))
    return PauliSet(ops, q=q, n=n)


def graph_roundtrip_check(g: CommutationGraph, q: int) -> bool:
    if g.vertex_count == 0:
        return True
    back = build_graph(pauli_set_from_graph(g, q), GateSet.FULL_CLIFFORD)
    return back.edges == g.edges


# DIMACS "edge" format: 1-based vertices, header "p edge <n> <m>".


def write_dimacs(g: CommutationGraph, out: TextIO, comment: str | None = None) -> None:
    if comment:
        for line in comment.splitlines():
            out.write(f"c {line}\n")
    edges = sorted(g.edges)
    out.write(f"p edge {g.vertex_count} {len(edges)}\n")
    for u, v in edges:
        out.write(f"e {u + 1} {v + 1}\n")


def dimacs_string(g: CommutationGraph, comment: str | None = None) -> str:
    import io

    buf = io.StringIO()
    write_dimacs(g, buf, comment)
    return buf.getvalue()


def parse_dimacs(text: str) -> CommutationGraph:
    from .io import ParseError

    n = None
    declared_edges = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if len(parts) != 4 or parts[1] not in ("edge", "col"):
                raise ParseError(f"malformed problem line {line!r}", lineno)
            try:
                n, declared_edges = int(parts[2]), int(parts[3])
            except ValueError:
                raise ParseError(f"malformed problem line {line!r}", lineno) from None
        elif parts[0] == "e":
            if n is None:
                raise ParseError("edge line before 'p edge' header", lineno)
            if len(parts) != 3:
                raise ParseError(f"malformed edge line {line!r}", lineno)
            try:
                u, v = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(f"malformed edge line {line!r}", lineno) from None
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"vertex out of range 1..{n}", lineno)
            if u == v:
                raise ParseError(f"loop at vertex {u}", lineno)
            edges.append((u - 1, v - 1))
        else:
            raise ParseError(f"unrecognized line {line!r}", lineno)
    if n is None:
        raise ParseError("missing 'p edge' header", 0)
    g = CommutationGraph.from_edges(n, edges)
    if declared_edges is not None and g.edge_count != declared_edges and len(edges) != declared_edges:
        raise ParseError(f"header declares {declared_edges} edges, found {len(edges)}", 0)
    return g


# Small named graphs used in tests and examples.


def complete_graph(n: int) -> CommutationGraph:
    return CommutationGraph(~np.eye(n, dtype=bool))


def cycle_graph(n: int) -> CommutationGraph:
    return CommutationGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def petersen_graph() -> CommutationGraph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return CommutationGraph.from_edges(10, outer + spokes + inner)
