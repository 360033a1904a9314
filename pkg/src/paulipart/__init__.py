"""Partition generalized Pauli operators into jointly measurable parts and
synthesize Clifford circuits that diagonalize each part."""

__version__ = "0.1.0"

from .clifford import (
    CliffordCircuit,
    F,
    NonCommutingError,
    R,
    Sum,
    conjugate,
    conjugate_circuit,
    conjugate_set,
    diagonalize,
    diagonalize_single_qudit,
    is_diagonalized,
)
from .coloring import Coloring, Ordering, best_of_orderings, exact_chromatic, greedy_color
from .graph import CommutationGraph, GateSet, build_graph, graph_roundtrip_check, pauli_set_from_graph
from .io import HamiltonianTerm, MeasurementPlan, make_plan, parse_hamiltonian, parse_pauli
from .pauli import (
    PauliOperator,
    PauliSet,
    commutes,
    is_linearly_independent,
    product,
    quditwise_commutes,
    symplectic_inner_product,
)
