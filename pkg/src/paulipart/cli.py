"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 input error, 3 verification failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from . import __version__
from .clifford import CliffordCircuit, NonCommutingError, conjugate_set, diagonalize, is_diagonalized
from .coloring import Ordering
from .graph import GateSet, build_graph, dimacs_string, graph_roundtrip_check, parse_dimacs, pauli_set_from_graph
from .io import HamiltonianTerm, ParseError, deduplicate, format_hamiltonian, make_plan, parse_hamiltonian
from .pauli import PauliSet, check_prime
from .simulate import DEFAULT_CAP, verify_diagonal
from .stats import ExperimentConfig, ratio_experiment

log = logging.getLogger("paulipart")

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class VerificationError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read_text(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _write(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)
        log.info("wrote %s", out)


def _load_terms(path: str) -> list[HamiltonianTerm]:
    try:
        return parse_hamiltonian(_read_text(path), source=path)
    except ParseError as exc:
        raise InputError(str(exc)) from None


def _ordering(args) -> Ordering:
    return Ordering(args.order, args.seed)


def _parse_lengths(text: str) -> list[int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
            if lo < 1 or hi < lo:
                raise ValueError
            return list(range(lo, hi + 1))
        values = [int(v) for v in text.split(",")]
        if min(values) < 1:
            raise ValueError
        return values
    except ValueError:
        raise UsageError(f"bad --lengths {text!r}; use a..b or a comma list of positive integers") from None


def cmd_partition(args) -> int:
    terms = _load_terms(args.input)
    plan = make_plan(terms, GateSet.parse(args.gate_set), _ordering(args))
    problems = plan.validate()
    if args.verify:
        if plan.q**plan.n <= DEFAULT_CAP:
            for k, part in enumerate(plan.parts):
                if not verify_diagonal(part.circuit, PauliSet(part.operators, q=plan.q, n=plan.n)):
                    problems.append(f"part {k}: dense check found off-diagonal entries")
        else:
            log.warning("dense check skipped: dimension %d^%d exceeds %d", plan.q, plan.n, DEFAULT_CAP)
    _write(plan.to_json(), args.out)
    if args.csv_out:
        _write(plan.summary_csv(), args.csv_out)
    log.info("%d terms -> %d parts (%s)", plan.num_terms, plan.num_parts, plan.gate_set.value)
    if problems:
        raise VerificationError("; ".join(problems))
    return EXIT_OK


def cmd_graph(args) -> int:
    terms = _load_terms(args.input)
    unique, _ = deduplicate(terms)
    g = build_graph(PauliSet(unique), GateSet.parse(args.gate_set))
    comment = f"non-diagonalizable graph, gate set {GateSet.parse(args.gate_set).value}, {len(unique)} distinct operators"
    _write(dimacs_string(g, comment), args.dimacs_out)
    return EXIT_OK


def cmd_diagonalize(args) -> int:
    terms = _load_terms(args.input)
    s = PauliSet([t.operator for t in terms]) if terms else PauliSet([], q=2, n=1)
    try:
        circuit = diagonalize(s)
    except NonCommutingError as exc:
        raise InputError(f"{args.input}: {exc}") from None
    _write(circuit.to_text(), args.out)
    return EXIT_OK


def cmd_ratio_bench(args) -> int:
    cfg = ExperimentConfig(
        q=args.q,
        lengths=_parse_lengths(args.lengths),
        samples_per_length=args.samples,
        seed=args.seed,
        ordering=Ordering(args.order, args.seed),
        threads=args.threads,
    )
    report = ratio_experiment(cfg)
    _write(report.to_csv(), args.csv_out)
    figure = args.figure
    if figure is None and args.csv_out not in (None, "-") and not args.no_figure:
        figure = str(Path(args.csv_out).with_suffix(".png"))
    if figure and not args.no_figure:
        from .plotting import plot_ratio_report

        plot_ratio_report(report, figure)
        log.info("wrote %s", figure)
    return EXIT_OK


def cmd_reduce(args) -> int:
    try:
        g = parse_dimacs(_read_text(args.dimacs))
    except ParseError as exc:
        raise InputError(str(exc.with_source(args.dimacs))) from None
    s = pauli_set_from_graph(g, args.q)
    _write(format_hamiltonian([HamiltonianTerm(1.0, p) for p in s]), args.out)
    if args.roundtrip:
        if not graph_roundtrip_check(g, args.q):
            raise VerificationError("round trip changed the edge set")
        log.info("round trip ok: %d vertices, %d edges", g.vertex_count, g.edge_count)
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        circuit = CliffordCircuit.from_text(_read_text(args.circuit))
    except ParseError as exc:
        raise InputError(str(exc.with_source(args.circuit))) from None
    terms = _load_terms(args.input)
    s = PauliSet([t.operator for t in terms], q=circuit.q, n=circuit.n) if terms else PauliSet([], q=circuit.q, n=circuit.n)
    if s.q != circuit.q or s.n != circuit.n:
        raise InputError(f"circuit is over q={circuit.q}, n={circuit.n}; input over q={s.q}, n={s.n}")
    tableau_ok = is_diagonalized(conjugate_set(circuit, s))
    lines = [f"tableau: {'ok' if tableau_ok else 'FAIL'}"]
    dense_ok = True
    if s.q**s.n <= DEFAULT_CAP:
        dense_ok = verify_diagonal(circuit, s)
        lines.append(f"dense: {'ok' if dense_ok else 'FAIL'}")
    else:
        lines.append("dense: skipped (dimension over cap)")
    sys.stdout.write("\n".join(lines) + "\n")
    if not (tableau_ok and dense_ok):
        raise VerificationError("circuit does not diagonalize the input")
    return EXIT_OK


def _prime(text: str) -> int:
    try:
        return check_prime(int(text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _seed(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"seed must be an integer, got {text!r}") from None
    if not 0 <= v < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return v


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        v = 0
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="paulipart", description="Partition Pauli operators into jointly measurable parts.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def command(name, help):
        return sub.add_parser(name, help=help, parents=[common])

    def gate_set(sp):
        sp.add_argument("--gate-set", choices=[g.value for g in GateSet], default=GateSet.FULL_CLIFFORD.value)

    sp = command("partition", help="emit a measurement plan (JSON)")
    sp.add_argument("--input", required=True)
    gate_set(sp)
    sp.add_argument("--order", choices=Ordering.KINDS, default="natural")
    sp.add_argument("--seed", type=_seed, default=0)
    sp.add_argument("--verify", action="store_true", help="also run the dense-matrix check when q^n <= 256")
    sp.add_argument("--out")
    sp.add_argument("--csv-out", help="per-part summary CSV")
    sp.set_defaults(func=cmd_partition)

    sp = command("graph", help="export the non-diagonalizable graph as DIMACS")
    sp.add_argument("--input", required=True)
    gate_set(sp)
    sp.add_argument("--dimacs-out")
    sp.set_defaults(func=cmd_graph)

    sp = command("diagonalize", help="circuit diagonalizing a commuting set")
    sp.add_argument("--input", required=True)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_diagonalize)

    sp = command("ratio-bench", help="greedy part-count ratio between gate sets")
    sp.add_argument("--q", type=_prime, default=2)
    sp.add_argument("--lengths", default="1..8", help="a..b or comma list")
    sp.add_argument("--samples", type=_positive, default=5)
    sp.add_argument("--seed", type=_seed, default=0)
    sp.add_argument("--order", choices=Ordering.KINDS, default="natural")
    sp.add_argument("--threads", type=_positive, default=1)
    sp.add_argument("--csv-out")
    sp.add_argument("--figure", help="figure path (default: next to --csv-out, .png)")
    sp.add_argument("--no-figure", action="store_true")
    sp.set_defaults(func=cmd_ratio_bench)

    sp = command("reduce", help="Pauli set whose commutation graph is the given graph")
    sp.add_argument("--dimacs", required=True)
    sp.add_argument("--q", type=_prime, default=2)
    sp.add_argument("--roundtrip", action="store_true")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_reduce)

    sp = command("verify", help="check that a circuit diagonalizes a set")
    sp.add_argument("--circuit", required=True)
    sp.add_argument("--input", required=True)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"paulipart: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InputError as exc:
        print(f"paulipart: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except VerificationError as exc:
        print(f"paulipart: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY


if __name__ == "__main__":
    sys.exit(main())
