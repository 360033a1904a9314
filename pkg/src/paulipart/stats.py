"""Closed-form commutation probabilities, random instance generators and the
gate-set ratio experiment."""

from __future__ import annotations

import csv
import io
import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .coloring import Ordering, greedy_color
from .graph import CommutationGraph, GateSet, build_graph
from .pauli import PauliOperator, PauliSet, check_prime, commutes


def pair_commute_probability(q: int, m: int, distinct: bool = False) -> Fraction:
    """(q^(2m-1) - 2) / (q^(2m) - 1).

    Counts, for a fixed non-identity P, the partners Q outside {I, P} that
    commute with P, over all non-identity Q (P included in the denominator).
    With ``distinct=True`` the denominator also excludes P, giving the exact
    rate for two distinct uniformly drawn non-identity operators.
    """
    q = check_prime(q)
    if m < 1:
        raise ValueError("length must be at least 1")
    total = q ** (2 * m) - (2 if distinct else 1)
    return Fraction(q ** (2 * m - 1) - 2, total)


def quditwise_commute_probability(q: int, m: int, subtract_identity: bool = False) -> Fraction:
    """Probability that two uniform length-m operators commute on every qudit.

    The per-qudit factor is (q^3 + q^2 - q) / q^4. ``subtract_identity``
    gives the variant ((q^3+q^2-q)^m - q^(2m)) / q^(4m), which drops the
    q^(2m) ordered pairs with both operators equal.
    """
    q = check_prime(q)
    if m < 1:
        raise ValueError("length must be at least 1")
    good = (q**3 + q**2 - q) ** m
    if subtract_identity:
        good -= q ** (2 * m)
    return Fraction(good, q ** (4 * m))


def linear_independence_probability(q: int, m: int, s: int) -> float:
    """prod_{i<s} (1 - q^(i-2m)): chance that s uniform vectors of F_q^(2m) are independent."""
    if s < 0:
        raise ValueError("set size must be non-negative")
    if s > 2 * m:
        return 0.0
    return math.prod(1.0 - float(q) ** (i - 2 * m) for i in range(s))


def expected_chromatic(n: int, p: float) -> float:
    """Leading-order chromatic number of G(n, p): (1/2) log2(1/(1-p)) n / log2 n."""
    if n < 2:
        raise ValueError("need at least 2 vertices")
    if not 0 <= p < 1:
        raise ValueError("edge probability must lie in [0, 1)")
    return 0.5 * math.log2(1.0 / (1.0 - p)) * n / math.log2(n)


def _rng(seed) -> np.random.Generator:
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_pauli_set(q: int, m: int, size: int, seed=None) -> PauliSet:
    """``size`` distinct non-identity operators of length ``m``, uniformly drawn."""
    q = check_prime(q)
    if size < 1:
        raise ValueError("size must be at least 1")
    population = q ** (2 * m) - 1
    if size > population:
        raise ValueError(f"only {population} non-identity operators of length {m} over q={q}")
    rng = _rng(seed)
    if population < 2**62:
        picks = (rng.choice(population, size=size, replace=False) + 1).tolist()
        ops = [PauliOperator.from_index(q, m, int(i)) for i in picks]
    else:
        seen: set[PauliOperator] = set()
        ops = []
        while len(ops) < size:
            digits = rng.integers(0, q, size=2 * m).tolist()
            op = PauliOperator(q, tuple(digits[:m]), tuple(digits[m:]))
            if not op.is_identity and op not in seen:
                seen.add(op)
                ops.append(op)
    return PauliSet(ops, q=q, n=m)


def random_commuting_set(q: int, n: int, size: int, seed=None, max_attempts: int | None = None) -> PauliSet:
    """Distinct pairwise-commuting non-identity operators, grown by rejection.

    Warns (``RuntimeWarning``) and returns what it has when the attempt
    budget runs out before ``size`` operators were kept.
    """
    q = check_prime(q)
    if size < 1:
        raise ValueError("size must be at least 1")
    rng = _rng(seed)
    budget = max_attempts if max_attempts is not None else 200 * size
    kept: list[PauliOperator] = []
    seen: set[PauliOperator] = set()
    attempts = 0
    while len(kept) < size and attempts < budget:
        attempts += 1
        digits = rng.integers(0, q, size=2 * n).tolist()
        op = PauliOperator(q, tuple(digits[:n]), tuple(digits[n:]))
        if op.is_identity or op in seen:
            continue
        if all(commutes(op, k) for k in kept):
            kept.append(op)
            seen.add(op)
    if len(kept) < size:
        warnings.warn(
            f"random_commuting_set: kept {len(kept)} of {size} operators after {attempts} attempts",
            RuntimeWarning,
            stacklevel=2,
        )
    return PauliSet(kept, q=q, n=n)


def random_graph(n: int, p: float, seed=None) -> CommutationGraph:
    """Erdos-Renyi G(n, p)."""
    rng = _rng(seed)
    upper = np.triu(rng.random((n, n), dtype=np.float32) < p, 1)
    return CommutationGraph(upper | upper.T)


def default_set_size(q: int, m: int) -> int:
    return min(8 * m, 200, q ** (2 * m) - 1)


@dataclass
class ExperimentConfig:
    q: int = 2
    lengths: Sequence[int] = tuple(range(1, 9))
    samples_per_length: int = 5
    seed: int = 0
    set_size_rule: Callable[[int, int], int] = default_set_size
    ordering: Ordering = field(default_factory=Ordering.natural)
    threads: int = 1

    def __post_init__(self):
        self.q = check_prime(self.q)
        if not self.lengths or min(self.lengths) < 1:
            raise ValueError("lengths must be >= 1")
        if self.samples_per_length < 1:
            raise ValueError("samples_per_length must be >= 1")


@dataclass(frozen=True)
class RatioRecord:
    length: int
    set_size: int
    mean_sqc: float
    mean_c: float
    ratio: float
    parts_sqc: tuple[int, ...] = ()
    parts_c: tuple[int, ...] = ()


@dataclass
class RatioReport:
    q: int
    records: list[RatioRecord]

    def lengths(self) -> list[int]:
        return [r.length for r in self.records]

    def ratios(self) -> list[float]:
        return [r.ratio for r in self.records]

    def slope(self) -> float:
        """Least-squares slope of ratio against length."""
        if len(self.records) < 2:
            return 0.0
        return float(np.polyfit(self.lengths(), self.ratios(), 1)[0])

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["length", "mean_sqc", "mean_c", "ratio"])
        for r in self.records:
            w.writerow([r.length, repr(r.mean_sqc), repr(r.mean_c), repr(r.ratio)])
        return buf.getvalue()


def _sample_parts(q: int, m: int, size: int, seed: tuple[int, ...], ordering: Ordering) -> tuple[int, int]:
    s = random_pauli_set(q, m, size, np.random.default_rng(seed))
    sqc = greedy_color(build_graph(s, GateSet.SINGLE_QUDIT_CLIFFORD), ordering).num_colors
    c = greedy_color(build_graph(s, GateSet.FULL_CLIFFORD), ordering).num_colors
    return sqc, c


def ratio_experiment(cfg: ExperimentConfig) -> RatioReport:
    """Mean greedy part counts under both gate sets for each operator length.

    Sample ``i`` at length ``m`` is seeded with ``(cfg.seed, m, i)`` so the
    report does not depend on thread scheduling.
    """
    jobs = []
    for m in cfg.lengths:
        size = cfg.set_size_rule(cfg.q, m)
        for i in range(cfg.samples_per_length):
            jobs.append((m, size, (cfg.seed, m, i)))

    def run(job):
        m, size, seed = job
        return _sample_parts(cfg.q, m, size, seed, cfg.ordering)

    if cfg.threads > 1:
        with ThreadPoolExecutor(cfg.threads) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(j) for j in jobs]

    records = []
    k = cfg.samples_per_length
    for block, m in enumerate(cfg.lengths):
        chunk = results[block * k : (block + 1) * k]
        sqc = tuple(r[0] for r in chunk)
        c = tuple(r[1] for r in chunk)
        mean_sqc, mean_c = sum(sqc) / k, sum(c) / k
        records.append(
            RatioRecord(
                length=m,
                set_size=jobs[block * k][1],
                mean_sqc=mean_sqc,
                mean_c=mean_c,
                ratio=mean_sqc / mean_c,
                parts_sqc=sqc,
                parts_c=c,
            )
        )
    return RatioReport(cfg.q, records)
