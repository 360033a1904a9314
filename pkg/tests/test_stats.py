import itertools
import math
import warnings
from fractions import Fraction

import numpy as np
import pytest

from conftest import P, all_operators
from paulipart.coloring import Ordering
from paulipart.pauli import PauliOperator, PauliSet, commutes, quditwise_commutes
from paulipart.stats import (
    ExperimentConfig,
    default_set_size,
    expected_chromatic,
    linear_independence_probability,
    pair_commute_probability,
    quditwise_commute_probability,
    random_commuting_set,
    random_graph,
    random_pauli_set,
    ratio_experiment,
)


def pair_counts(q, m):
    """For each non-identity P: (#commuting Q not in {I,P}, #Q != I, #Q not in {I,P})."""
    ops = all_operators(q, m, include_identity=False)
    out = set()
    for p in ops:
        good = sum(1 for r in ops if r != p and commutes(p, r))
        out.add((good, len(ops), len(ops) - 1))
    return out


def rank_gf(vectors, q):
    """Independent elimination used only as an oracle here."""
    rows = [list(v) for v in vectors]
    r = 0
    for col in range(len(rows[0]) if rows else 0):
        piv = next((i for i in range(r, len(rows)) if rows[i][col] % q), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][col], q - 2, q)
        rows[r] = [v * inv % q for v in rows[r]]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][col]
                rows[i] = [(a - f * b) % q for a, b in zip(rows[i], rows[r])]
        r += 1
    return r


class TestPairProbability:
    def test_values(self):
        assert pair_commute_probability(2, 1) == 0
        assert pair_commute_probability(2, 2) == Fraction(6, 15)

    @pytest.mark.parametrize("q,m", [(2, 1), (2, 2), (3, 1), (3, 2)])
    def test_enumeration(self, q, m):
        counts = pair_counts(q, m)
        assert len(counts) == 1  # same for every P
        good, nonid, others = counts.pop()
        assert Fraction(good, nonid) == pair_commute_probability(q, m)
        assert Fraction(good, others) == pair_commute_probability(q, m, distinct=True)

    def test_conventions_differ(self):
        assert pair_commute_probability(2, 2, distinct=True) == Fraction(6, 14)

    def test_bad_length(self):
        with pytest.raises(ValueError):
            pair_commute_probability(2, 0)


class TestQuditwiseProbability:
    def test_values(self):
        assert quditwise_commute_probability(2, 1) == Fraction(10, 16)
        assert quditwise_commute_probability(2, 2) == Fraction(25, 64)
        assert quditwise_commute_probability(3, 1) == Fraction(33, 81)

    @pytest.mark.parametrize("q,m", [(2, 1), (2, 2), (3, 1), (5, 1)])
    def test_enumeration_ordered_pairs(self, q, m):
        ops = all_operators(q, m)
        pairs = list(itertools.product(ops, repeat=2))
        both = sum(quditwise_commutes(a, b) for a, b in pairs)
        distinct = sum(quditwise_commutes(a, b) for a, b in pairs if a != b)
        assert Fraction(both, len(pairs)) == quditwise_commute_probability(q, m)
        assert Fraction(distinct, len(pairs)) == quditwise_commute_probability(q, m, subtract_identity=True)

    @pytest.mark.parametrize("q", [2, 3, 5, 7])
    @pytest.mark.parametrize("m", [2, 3, 6])
    def test_not_above_pair_probability(self, q, m):
        assert quditwise_commute_probability(q, m) <= pair_commute_probability(q, m)

    def test_length_one_counts_different_populations(self):
        # over ordered pairs of all operators the two notions agree at m = 1;
        # the closed forms differ only because one excludes I and P
        assert quditwise_commute_probability(2, 1) > pair_commute_probability(2, 1)
        ops = all_operators(3, 1)
        pairs = list(itertools.product(ops, repeat=2))
        assert sum(commutes(a, b) for a, b in pairs) == sum(quditwise_commutes(a, b) for a, b in pairs)


class TestLinearIndependence:
    def test_empty(self):
        assert linear_independence_probability(5, 3, 0) == 1.0

    def test_small_exact_by_enumeration(self):
        # all 16^3 ordered triples of vectors in F_2^4
        vecs = list(itertools.product(range(2), repeat=4))
        indep = sum(rank_gf(t, 2) == 3 for t in itertools.product(vecs, repeat=3))
        assert linear_independence_probability(2, 2, 3) == pytest.approx(indep / 16**3, abs=1e-15)
        assert indep / 16**3 == pytest.approx(15 / 16 * 7 / 8 * 3 / 4)

    def test_limit_q2(self):
        assert linear_independence_probability(2, 10, 20) == pytest.approx(0.288788, abs=1e-4)

    def test_too_many(self):
        assert linear_independence_probability(2, 2, 5) == 0.0

    def test_monotone_in_q(self):
        vals = [linear_independence_probability(q, 5, 10) for q in (2, 3, 5, 7)]
        assert vals == sorted(vals)


class TestExpectedChromatic:
    def test_values(self):
        assert expected_chromatic(1024, 0.5) == pytest.approx(51.2)
        assert expected_chromatic(2, 0.5) == 1.0
        assert expected_chromatic(100, 0.0) == 0.0

    @pytest.mark.parametrize("n", [2, 16, 100, 4096])
    def test_half(self, n):
        assert expected_chromatic(n, 0.5) == n / (2 * math.log2(n))


class TestRandomPauliSet:
    def test_all_single_qubit(self):
        assert set(random_pauli_set(2, 1, 3, seed=1)) == {P("X"), P("Y"), P("Z")}

    def test_determinism(self):
        assert random_pauli_set(3, 4, 30, seed=9) == random_pauli_set(3, 4, 30, seed=9)
        assert random_pauli_set(3, 4, 30, seed=9) != random_pauli_set(3, 4, 30, seed=10)

    def test_distinct_non_identity(self):
        s = random_pauli_set(2, 3, 63, seed=0)
        assert len(set(s)) == 63 and not any(p.is_identity for p in s)

    def test_too_large(self):
        with pytest.raises(ValueError):
            random_pauli_set(2, 1, 4, seed=0)

    def test_huge_population(self):
        s = random_pauli_set(2, 40, 10, seed=0)
        assert len(set(s)) == 10 and s.n == 40

    def test_commute_rate(self):
        rng = np.random.default_rng(0)
        hits = total = 0
        iu = np.triu_indices(50, 1)
        for _ in range(10_000):
            xs, zs = random_pauli_set(2, 4, 50, rng).arrays
            hits += int((((xs @ zs.T - zs @ xs.T) % 2) == 0)[iu].sum())
            total += len(iu[0])
        rate = hits / total
        sigma = math.sqrt(rate * (1 - rate) / total)
        # distinct pairs: the partner is drawn from the 2^8 - 2 operators other than I and P
        assert abs(rate - float(pair_commute_probability(2, 4, distinct=True))) < 3 * sigma
        assert abs(rate - float(pair_commute_probability(2, 4))) > 3 * sigma


class TestRandomCommutingSet:
    def test_single(self):
        s = random_commuting_set(2, 1, 1, seed=0)
        assert len(s) == 1

    def test_pairs_commute(self, rng):
        for q in (2, 3, 5):
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", RuntimeWarning)
                s = random_commuting_set(q, 3, 8, rng)
            assert s.pairs_commute()

    def test_full_stabilizer_group(self):
        s = random_commuting_set(2, 3, 7, seed=4, max_attempts=100_000)
        assert len(s) == 7 and s.pairs_commute()

    def test_budget_warning(self):
        with pytest.warns(RuntimeWarning):
            s = random_commuting_set(2, 1, 2, seed=0)
        assert len(s) == 1


class TestRatioExperiment:
    def test_length_one(self):
        r = ratio_experiment(ExperimentConfig(lengths=[1], samples_per_length=5, seed=3))
        rec = r.records[0]
        assert rec.ratio == 1.0 and rec.parts_sqc == rec.parts_c

    def test_reproducible_and_thread_independent(self):
        a = ratio_experiment(ExperimentConfig(lengths=[1, 2, 3], seed=5))
        b = ratio_experiment(ExperimentConfig(lengths=[1, 2, 3], seed=5, threads=4))
        assert a == b
        assert a.to_csv() == b.to_csv()

    def test_length_two(self):
        ratios = [ratio_experiment(ExperimentConfig(lengths=[2], seed=s)).records[0].ratio for s in range(5)]
        assert all(abs(r - 1.5) <= 0.5 for r in ratios)

    def test_trend(self):
        slopes = [ratio_experiment(ExperimentConfig(lengths=[2, 4, 6, 8], seed=s)).slope() for s in range(5)]
        assert all(s > 0 for s in slopes)

    def test_csv(self):
        r = ratio_experiment(ExperimentConfig(lengths=[1], seed=0))
        assert r.to_csv().splitlines() == ["length,mean_sqc,mean_c,ratio", "1,3.0,3.0,1.0"]

    def test_default_sizes(self):
        assert default_set_size(2, 1) == 3
        assert default_set_size(2, 2) == 15
        assert default_set_size(2, 3) == 24
        assert default_set_size(2, 40) == 200

    def test_config_validation(self):
        with pytest.raises(ValueError):
            ExperimentConfig(lengths=[0])
        with pytest.raises(ValueError):
            ExperimentConfig(samples_per_length=0)
        with pytest.raises(ValueError):
            ExperimentConfig(q=4)


def test_random_graph_density():
    g = random_graph(300, 0.3, seed=1)
    density = g.edge_count / (300 * 299 / 2)
    assert abs(density - 0.3) < 0.01
