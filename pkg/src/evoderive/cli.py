"""Command-line entry point: ``evoderive {analyze,verify,gen,batch}``.

Exit codes: 0 success, 1 usage error, 2 input error, 3 property failure.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

from .algebra import EvolutionAlgebra, is_derivation_conditions, is_derivation_leibniz
from .field import FieldSpec, Matrix
from .graph import GraphFormatError, format_graph, is_connected, parse_graph, twin_partition
from .report import build_report
from .solver import SizeCapError, configured_max_n
from .suite import DEFAULT_CHARS, BatchConfig, ConnectivityError, generate_graph, run_batch
from .theory import check_theorem_characterization

EXIT_OK, EXIT_USAGE, EXIT_INPUT, EXIT_PROPERTY = 0, 1, 2, 3


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _field(p: int) -> FieldSpec:
    try:
        return FieldSpec(p)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def parse_matrix(text: str, fld: FieldSpec, n: Optional[int] = None) -> Matrix:
    """n lines of n whitespace-separated integers (``a/b`` also accepted)."""
    rows: List[List[Fraction]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        try:
            rows.append([Fraction(tok) for tok in s.split()])
        except ValueError:
            raise InputError(f"matrix line {lineno}: expected numbers, got {s!r}") from None
    if not rows:
        raise InputError("empty matrix file")
    size = len(rows)
    if any(len(r) != size for r in rows):
        raise InputError(f"matrix must be square; got {size} rows of lengths {sorted({len(r) for r in rows})}")
    if n is not None and size != n:
        raise InputError(f"matrix is {size}x{size} but the graph has {n} vertices")
    try:
        return Matrix(fld, rows)
    except ZeroDivisionError as exc:
        raise InputError(str(exc)) from None


def cmd_analyze(args) -> int:
    g = parse_graph(_read(args.graph))
    fld = _field(args.char)
    report = build_report(g, fld, args.max_n)
    print(report.to_json() if args.json else report.render_text())
    return EXIT_OK


def cmd_verify(args) -> int:
    g = parse_graph(_read(args.graph))
    fld = _field(args.char)
    d = parse_matrix(_read(args.matrix), fld, g.n)
    alg = EvolutionAlgebra.of_graph(g, fld)
    leibniz = is_derivation_leibniz(alg, d)
    conditions = is_derivation_conditions(alg, d)
    verdicts = [("leibniz", leibniz), ("conditions", conditions)]
    if is_connected(g):
        verdicts.append(("theorem_characterization", check_theorem_characterization(alg, d, twin_partition(g))))
    else:
        print("theorem_characterization: not-applicable (disconnected graph)")
    for name, v in verdicts:
        print(f"{name}: {'yes' if v else 'no'}")
    agree = len({v for _, v in verdicts}) == 1
    print(f"derivation: {'yes' if leibniz else 'no'}")
    if not agree:
        print("DISAGREEMENT between checks", file=sys.stderr)
        return EXIT_PROPERTY
    return EXIT_OK


def cmd_gen(args) -> int:
    cap = configured_max_n()
    if args.n > cap:
        raise InputError(f"--n {args.n} exceeds the vertex cap {cap}")
    try:
        g = generate_graph(args.n, args.edge_prob, args.seed, args.connected)
    except (ValueError, ConnectivityError) as exc:
        raise InputError(str(exc)) from None
    text = format_graph(g)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _chars(text: str) -> List[int]:
    try:
        chars = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    for c in chars:
        try:
            FieldSpec(c)
        except ValueError as exc:
            raise argparse.ArgumentTypeError(str(exc)) from None
    return chars


def cmd_batch(args) -> int:
    cfg = BatchConfig(
        trials=args.trials,
        max_n=args.max_n,
        chars=tuple(args.chars),
        seed=args.seed,
        matrices=args.matrices,
        perms=args.perms,
    )
    summary = run_batch(cfg, jobs=args.jobs)
    print(summary.render())
    return EXIT_OK if summary.ok else EXIT_PROPERTY


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="evoderive", description="Derivations of evolution algebras of graphs.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("analyze", help="compute the derivation space and run every structural check")
    p.add_argument("graph", help="graph file ('-' for stdin)")
    p.add_argument("--char", type=int, required=True, help="field characteristic: 0 or a prime")
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.add_argument("--max-n", type=_positive, default=None, help="vertex cap (default 32 or $EVODERIVE_MAX_N)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("verify", help="decide whether a matrix is a derivation")
    p.add_argument("graph")
    p.add_argument("matrix", help="n lines of n integers")
    p.add_argument("--char", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="print a seeded random graph")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--edge-prob", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--connected", action="store_true", help="resample until connected")
    p.add_argument("-o", "--output", help="write to a file instead of stdout")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("batch", help="run the randomized property suite")
    p.add_argument("--trials", type=_nonneg, default=200)
    p.add_argument("--max-n", type=_positive, default=8, help="largest random graph")
    p.add_argument("--chars", type=_chars, default=list(DEFAULT_CHARS), help="e.g. 0,2,3,5,7")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--matrices", type=_nonneg, default=100, help="random matrices per graph and characteristic")
    p.add_argument("--perms", type=_nonneg, default=5, help="random relabelings per graph")
    p.add_argument("--jobs", type=_positive, default=1)
    p.set_defaults(func=cmd_batch)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, GraphFormatError, SizeCapError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
