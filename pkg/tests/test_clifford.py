import warnings

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import P, all_operators
from paulipart.clifford import (
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
    inverse_gates,
    is_diagonalized,
)
from paulipart.io import ParseError
from paulipart.pauli import PauliOperator, PauliSet, quditwise_commutes, symplectic_inner_product
from paulipart.simulate import verify_diagonal
from paulipart.stats import random_commuting_set


def X(q, a=1):
    return PauliOperator(q, (a,), (0,))


def Z(q, b=1):
    return PauliOperator(q, (0,), (b,))


class TestConjugationRules:
    @pytest.mark.parametrize("q", [2, 3, 5, 7])
    def test_generator_table(self, q):
        # F: X -> Z, Z -> X^-1
        assert conjugate(F(0), X(q)) == Z(q)
        assert conjugate(F(0), Z(q)) == X(q, q - 1)
        # R: X -> XZ, Z -> Z
        assert conjugate(R(0, 1), X(q)) == PauliOperator(q, (1,), (1,))
        assert conjugate(R(0, 1), Z(q)) == Z(q)
        # SUM: IX -> IX, XI -> XX, IZ -> Z^-1 Z, ZI -> ZI
        assert conjugate(Sum(0, 1), PauliOperator(q, (0, 1), (0, 0))) == PauliOperator(q, (0, 1), (0, 0))
        assert conjugate(Sum(0, 1), PauliOperator(q, (1, 0), (0, 0))) == PauliOperator(q, (1, 1), (0, 0))
        assert conjugate(Sum(0, 1), PauliOperator(q, (0, 0), (0, 1))) == PauliOperator(q, (0, 0), (q - 1, 1))
        assert conjugate(Sum(0, 1), PauliOperator(q, (0, 0), (1, 0))) == PauliOperator(q, (0, 0), (1, 0))

    def test_qubit_examples(self):
        assert conjugate(F(0), P("X")) == P("Z")
        assert conjugate(R(0, 1), P("Z")) == P("Z")
        assert conjugate(Sum(0, 1), P("XI")) == P("XX")

    def test_index_out_of_range(self):
        with pytest.raises(IndexError):
            conjugate(F(2), P("XX"))
        with pytest.raises(IndexError):
            conjugate(Sum(0, 3), P("XX"))

    def test_bad_gates(self):
        with pytest.raises(ValueError):
            Sum(1, 1)
        with pytest.raises(ValueError):
            conjugate(R(0, 3), X(3))

    @pytest.mark.parametrize("q", [2, 3, 5])
    def test_inverses_restore(self, q):
        for gate in (F(0), R(0, 1), R(1, q - 1), Sum(0, 1), Sum(1, 0)):
            for p in all_operators(q, 2):
                c = CliffordCircuit(q, 2, [gate] + inverse_gates(gate, q))
                assert conjugate_circuit(c, p) == p


class TestCircuit:
    def test_empty_circuit(self):
        p = P("XYZ")
        assert conjugate_circuit(CliffordCircuit(2, 3), p) == p

    def test_f_fourth_power_identity(self):
        c = CliffordCircuit(2, 1, [F(0)] * 4)
        for p in all_operators(2, 1):
            assert conjugate_circuit(c, p) == p

    def test_f_order_four_odd_q(self):
        c2 = CliffordCircuit(3, 1, [F(0)] * 2)
        assert conjugate_circuit(c2, X(3)) == X(3, 2)
        assert conjugate_circuit(CliffordCircuit(3, 1, [F(0)] * 4), X(3)) == X(3)

    def test_sum_self_inverse_qubits(self):
        c = CliffordCircuit(2, 2, [Sum(0, 1), Sum(0, 1)])
        assert conjugate_circuit(c, P("XI")) == P("XI")

    def test_inverse_circuit(self, rng):
        gates = [F(0), R(1, 2), Sum(0, 2), Sum(2, 1), F(2)]
        c = CliffordCircuit(3, 3, gates)
        for p in all_operators(3, 3)[::37]:
            assert conjugate_circuit(c.inverse(), conjugate_circuit(c, p)) == p

    def test_text_roundtrip(self):
        c = CliffordCircuit(5, 3, [F(0), R(1, 4), Sum(2, 0)])
        text = c.to_text()
        assert text == "q 5\nn 3\nF 0\nR 1 4\nSUM 2 0\n"
        back = CliffordCircuit.from_text(text)
        assert back.gates == c.gates and (back.q, back.n) == (5, 3)

    @pytest.mark.parametrize(
        "text",
        ["F 0\n", "q 4\nn 1\n", "q 2\nn 1\nH 0\n", "q 2\nn 1\nF 3\n", "q 2\nn 2\nSUM 0\n", "q 2\nn 1\nF x\n"],
    )
    def test_text_errors(self, text):
        with pytest.raises(ParseError):
            CliffordCircuit.from_text(text)


gate_strategy = st.one_of(
    st.builds(F, st.integers(0, 2)),
    st.builds(R, st.integers(0, 2), st.integers(1, 4)),
    st.tuples(st.integers(0, 2), st.integers(0, 2)).filter(lambda t: t[0] != t[1]).map(lambda t: Sum(*t)),
)


@settings(max_examples=150, deadline=None)
@given(st.lists(gate_strategy, max_size=12), st.integers(0, 5**6 - 1), st.integers(0, 5**6 - 1))
def test_conjugation_preserves_symplectic_product(gates, i, j):
    q = 5
    c = CliffordCircuit(q, 3, gates)
    a, b = PauliOperator.from_index(q, 3, i), PauliOperator.from_index(q, 3, j)
    assert symplectic_inner_product(conjugate_circuit(c, a), conjugate_circuit(c, b)) == symplectic_inner_product(a, b)


class TestDiagonalize:
    def test_single_x(self):
        c = diagonalize(PauliSet([P("X")]))
        assert c.gates == [F(0)]
        assert conjugate_set(c, PauliSet([P("X")]))[0] == P("Z")

    def test_already_diagonal(self):
        s = PauliSet([P("ZZ"), P("IZ")])
        c = diagonalize(s)
        assert len(c) == 0
        assert is_diagonalized(conjugate_set(c, s))

    def test_xx_zz(self):
        s = PauliSet([P("XX"), P("ZZ")])
        c = diagonalize(s)
        assert is_diagonalized(conjugate_set(c, s))
        assert verify_diagonal(c, s)

    def test_mixed_tail_pivot(self):
        # pivot XY: a SUM from the Y qudit into the working qudit would
        # reintroduce X there, so the tail is fixed locally first
        for s in (PauliSet([P("XY")]), PauliSet([P("XY"), P("YX")]), PauliSet([P("IXY"), P("ZZZ")])):
            c = diagonalize(s)
            assert is_diagonalized(conjugate_set(c, s)), s
            assert verify_diagonal(c, s)

    def test_identity_and_duplicates(self):
        s = PauliSet([P("II"), P("XX"), P("XX"), P("YY")])
        assert is_diagonalized(conjugate_set(diagonalize(s), s))

    def test_empty_set(self):
        c = diagonalize(PauliSet([], q=3, n=2))
        assert len(c) == 0

    def test_non_commuting_names_pair(self):
        with pytest.raises(NonCommutingError) as exc:
            diagonalize(PauliSet([P("ZI"), P("XZ"), P("ZZ")]))
        assert exc.value.pair == (0, 1)

    @pytest.mark.parametrize("q", [2, 3, 5])
    def test_random_commuting_sets(self, q, rng):
        for _ in range(40):
            n = int(rng.integers(1, 5))
            size = int(rng.integers(1, 9))
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RuntimeWarning)
                s = random_commuting_set(q, n, size, rng)
            c = diagonalize(s)
            assert is_diagonalized(conjugate_set(c, s))
            assert len(c) <= 10 * n * n * (len(s) + 1)
            assert c.q == q and c.n == n

    def test_deterministic(self, rng):
        s = random_commuting_set(3, 4, 6, rng)
        assert diagonalize(s).gates == diagonalize(s).gates

    def test_stabilizer_group(self):
        gens = [P("XXX"), P("ZZI"), P("IZZ")]
        elems = {PauliOperator.identity(2, 3)}
        for g in gens:
            elems |= {e * g for e in elems}
        s = PauliSet([e for e in elems if not e.is_identity], q=2, n=3)
        assert len(s) == 7
        c = diagonalize(s)
        assert verify_diagonal(c, s)


class TestSingleQudit:
    def test_no_sum_gates(self, rng):
        # every member is, qudit by qudit, a power of one local Pauli
        for q in (2, 3, 5):
            for _ in range(20):
                n = int(rng.integers(1, 4))
                local = rng.integers(0, q, size=(n, 2))
                powers = rng.integers(0, q, size=(int(rng.integers(1, 7)), n))
                s = PauliSet(
                    [PauliOperator.from_exponents(q, row * local[:, 0], row * local[:, 1]) for row in powers]
                )
                assert all(quditwise_commutes(a, b) for a in s for b in s)
                c = diagonalize_single_qudit(s)
                assert c.count(Sum) == 0
                assert is_diagonalized(conjugate_set(c, s))

    def test_rejects_non_quditwise(self):
        with pytest.raises(NonCommutingError):
            diagonalize_single_qudit(PauliSet([P("XX"), P("ZZ")]))

