"""Seeded random graphs and the batch property suite.

Each trial draws its own ``random.Random`` from ``(seed, trial index)``, so a
summary does not depend on how trials are scheduled.
"""

from __future__ import annotations

import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import EvolutionAlgebra, is_derivation_conditions, is_derivation_leibniz
from .field import FieldSpec, Matrix
from .graph import Graph, format_graph, is_connected, relabel, twin_partition
from .solver import DerivationSpace, conjugate, derivation_space, membership
from .theory import (
    check_block_structure,
    check_corollary_sums,
    check_no_diagonal_derivation,
    check_offdiag_skew,
    check_prop_conditions,
    check_theorem_characterization,
    check_twin_size_lemma,
    check_twin_sum,
    predict,
)

DEFAULT_CHARS = (0, 2, 3, 5, 7)
MAX_CONNECT_TRIES = 1000


class ConnectivityError(RuntimeError):
    """No connected sample was found within the retry budget."""


def random_graph(rng: random.Random, n: int, edge_prob: float) -> Graph:
    edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if rng.random() < edge_prob]
    return Graph(n, frozenset(edges))


def generate_graph(n: int, edge_prob: float = 0.5, seed: int = 0, connected: bool = False,
                   max_tries: int = MAX_CONNECT_TRIES) -> Graph:
    if n < 1:
        raise ValueError(f"n must be at least 1, got {n}")
    if not 0.0 <= edge_prob <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {edge_prob}")
    rng = random.Random(seed)
    for _ in range(max_tries):
        g = random_graph(rng, n, edge_prob)
        if not connected or is_connected(g):
            return g
    raise ConnectivityError(f"no connected graph on {n} vertices after {max_tries} samples (p={edge_prob})")


def random_permutation(rng: random.Random, n: int) -> List[int]:
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    return perm


def blow_up(base: Graph, sizes: Sequence[int]) -> Graph:
    """Replace base vertex ``v`` by ``sizes[v-1]`` pairwise twin copies."""
    start = [0]
    for s in sizes:
        start.append(start[-1] + s)
    edges = []
    for u, v in base.edges:
        for a in range(start[u - 1] + 1, start[u] + 1):
            for b in range(start[v - 1] + 1, start[v] + 1):
                edges.append((a, b))
    return Graph.from_edges(start[-1], edges)


def random_connected_graph(rng: random.Random, max_n: int) -> Graph:
    """Connected test graph; half the draws are twin blow-ups so large twin classes occur."""
    for _ in range(MAX_CONNECT_TRIES):
        if rng.random() < 0.5 or max_n < 3:
            n = rng.randint(1, max_n)
            g = random_graph(rng, n, rng.uniform(0.25, 0.85))
        else:
            k = rng.randint(2, min(4, max_n - 1))
            base = random_graph(rng, k, rng.uniform(0.4, 0.9))
            sizes = [1] * k
            for _ in range(rng.randint(1, max_n - k)):
                sizes[rng.randrange(k)] += 1
            g = relabel(blow_up(base, sizes), random_permutation(rng, sum(sizes)))
        if is_connected(g):
            return g
    raise ConnectivityError("could not sample a connected graph")


def random_matrix(rng: random.Random, fld: FieldSpec, n: int) -> Matrix:
    p = fld.characteristic
    if p:
        return Matrix(fld, [[rng.randrange(p) for _ in range(n)] for _ in range(n)])
    return Matrix(fld, [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)])


def random_nonzero(rng: random.Random, fld: FieldSpec):
    p = fld.characteristic
    if p:
        return rng.randrange(1, p)
    return rng.choice([-3, -2, -1, 1, 2, 3])


def random_element(rng: random.Random, ds: DerivationSpace) -> Matrix:
    fld = ds.field
    p = fld.characteristic
    coeffs = [rng.randrange(p) if p else rng.randint(-3, 3) for _ in ds.basis]
    return ds.combination(coeffs)


def sample_matrices(rng: random.Random, ds: DerivationSpace, count: int) -> List[Matrix]:
    """Mix of uniform matrices, random derivations and single-entry perturbations of derivations."""
    fld, n = ds.field, ds.algebra.n
    out = [Matrix.zeros(fld, n)]
    while len(out) < count:
        kind = len(out) % 4
        if kind == 0 or ds.dimension == 0 and kind == 1:
            out.append(random_matrix(rng, fld, n))
        elif kind == 1:
            out.append(random_element(rng, ds))
        else:
            base = random_element(rng, ds) if ds.dimension else Matrix.zeros(fld, n)
            i, j = rng.randrange(n), rng.randrange(n)
            out.append(base + Matrix.unit(fld, n, i, j).scale(random_nonzero(rng, fld)))
    return out


def format_matrix(d: Matrix) -> str:
    return "\n".join(" ".join(d.field.format(x) for x in d.row(i)) for i in range(d.rows)) + "\n"


@dataclass
class Counterexample:
    check: str
    graph: str
    char: int
    matrix: Optional[str]
    detail: str

    def render(self) -> str:
        lines = [f"counterexample: {self.check} (char {self.char}): {self.detail}", "--- graph file ---", self.graph.rstrip()]
        if self.matrix is not None:
            lines += ["--- matrix file ---", self.matrix.rstrip()]
            lines.append(f"rerun: evoderive verify GRAPH MATRIX --char {self.char}")
        else:
            lines.append(f"rerun: evoderive analyze GRAPH --char {self.char}")
        return "\n".join(lines)


@dataclass
class TrialResult:
    index: int
    n: int
    evaluated: Counter = field(default_factory=Counter)
    failures: List[Counterexample] = field(default_factory=list)


CHECKS = (
    "oracle_equivalence",
    "prediction_soundness",
    "basis_structure",
    "char0_le_charp",
    "relabel_invariance",
    "commutator_closure",
    "twin_diagonal",
    "twin_size_lemma",
    "no_diagonal_derivation",
    "twin_free_char2",
)


@dataclass(frozen=True)
class BatchConfig:
    trials: int
    max_n: int = 8
    chars: Tuple[int, ...] = DEFAULT_CHARS
    seed: int = 0
    matrices: int = 100
    perms: int = 5


def run_trial(index: int, cfg: BatchConfig) -> TrialResult:
    rng = random.Random(f"{cfg.seed}:{index}")
    g = random_connected_graph(rng, cfg.max_n)
    tp = twin_partition(g)
    gtext = format_graph(g)
    res = TrialResult(index, g.n)
    perms = [random_permutation(rng, g.n) for _ in range(cfg.perms)]

    def check(name: str, ok: bool, p: int, detail: str, d: Optional[Matrix] = None) -> bool:
        res.evaluated[name] += 1
        if not ok:
            res.failures.append(Counterexample(name, gtext, p, None if d is None else format_matrix(d), detail))
        return ok

    dims: Dict[int, int] = {}
    for p in cfg.chars:
        fld = FieldSpec(p)
        alg = EvolutionAlgebra.of_graph(g, fld)
        ds = derivation_space(alg, cfg.max_n)
        dims[p] = ds.dimension

        for d in list(ds.basis) + sample_matrices(rng, ds, cfg.matrices):
            verdicts = (
                is_derivation_leibniz(alg, d),
                is_derivation_conditions(alg, d),
                check_prop_conditions(alg, d, tp),
                check_theorem_characterization(alg, d, tp),
                membership(ds, d),
            )
            check("oracle_equivalence", len(set(verdicts)) == 1, p,
                  f"leibniz/conditions/proposition/theorem/membership = {verdicts}", d)

        pred = predict(g, fld, tp)
        if pred.is_exact:
            ok = pred.dimension == ds.dimension
            for b in pred.basis or ():
                ok = ok and is_derivation_leibniz(alg, b) and membership(ds, b)
            check("prediction_soundness", ok, p,
                  f"{pred.kind.value} predicts dim {pred.dimension}, solver found {ds.dimension}")

        for b in ds.basis:
            check("basis_structure",
                  check_block_structure(b, tp) and check_twin_sum(alg, b, tp) and check_offdiag_skew(b, tp),
                  p, "basis element violates block/twin-sum/skew structure", b)
            if p not in (0, 2):
                check("twin_diagonal", check_corollary_sums(alg, b, tp), p,
                      "odd-characteristic corollary fails on a basis element", b)

        head = ds.basis[:6]
        for x in range(len(head)):
            for y in range(x + 1, len(head)):
                c = head[x] @ head[y] - head[y] @ head[x]
                check("commutator_closure", is_derivation_leibniz(alg, c) and membership(ds, c), p,
                      f"commutator of basis elements {x + 1} and {y + 1} is not a derivation", c)

        if p not in (2, 3):
            check("twin_size_lemma", check_twin_size_lemma(ds, tp), p, "off-diagonal entry in a small twin class")
            if g.m:
                check("no_diagonal_derivation", check_no_diagonal_derivation(ds), p,
                      "nonzero diagonal derivation found")
        if p == 2 and g.n >= 2 and tp.is_twin_free():
            check("twin_free_char2", ds.dimension == 0, p, f"twin-free graph has dim {ds.dimension} over GF(2)")

        for perm in perms:
            other = derivation_space(EvolutionAlgebra.of_graph(relabel(g, perm), fld), cfg.max_n)
            inverse = [0] * g.n
            for i, t in enumerate(perm, 1):
                inverse[t - 1] = i
            ok = other.dimension == ds.dimension
            ok = ok and all(membership(other, conjugate(b, perm)) for b in ds.basis)
            ok = ok and all(membership(ds, conjugate(b, inverse)) for b in other.basis)
            check("relabel_invariance", ok, p,
                  f"relabeling by {perm} changes the space (dim {ds.dimension} -> {other.dimension})")

    if 0 in dims:
        for p, dim in dims.items():
            if p:
                check("char0_le_charp", dims[0] <= dim, p, f"dim over Q is {dims[0]} but over GF({p}) is {dim}")
    return res


@dataclass
class BatchSummary:
    config: BatchConfig
    trials: int = 0
    graphs_by_n: Counter = field(default_factory=Counter)
    evaluated: Counter = field(default_factory=Counter)
    failed: Counter = field(default_factory=Counter)
    first_failure: Optional[Counterexample] = None

    @property
    def ok(self) -> bool:
        return self.first_failure is None

    def add(self, r: TrialResult) -> None:
        self.trials += 1
        self.graphs_by_n[r.n] += 1
        self.evaluated.update(r.evaluated)
        for f in r.failures:
            self.failed[f.check] += 1
        if r.failures and self.first_failure is None:
            self.first_failure = r.failures[0]

    def render(self) -> str:
        cfg = self.config
        lines = [
            f"trials: {self.trials} (max n {cfg.max_n}, chars {','.join(map(str, cfg.chars))}, seed {cfg.seed})",
            "graphs by n: " + " ".join(f"{n}:{c}" for n, c in sorted(self.graphs_by_n.items())),
        ]
        for name in CHECKS:
            ev, bad = self.evaluated[name], self.failed[name]
            status = "PASS" if bad == 0 else "FAIL"
            lines.append(f"{status} {name}: {ev - bad}/{ev}")
        lines.append("result: " + ("all checks passed" if self.ok else "FAILURES"))
        if self.first_failure is not None:
            lines.append(self.first_failure.render())
        return "\n".join(lines)


def _run_indexed(args) -> TrialResult:
    return run_trial(*args)


def run_batch(cfg: BatchConfig, jobs: int = 1) -> BatchSummary:
    for p in cfg.chars:
        FieldSpec(p)
    summary = BatchSummary(cfg)
    work: Iterable[Tuple[int, BatchConfig]] = ((i, cfg) for i in range(cfg.trials))
    if jobs > 1 and cfg.trials > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_indexed, work, chunksize=4))
    else:
        results = [run_trial(i, cfg) for i in range(cfg.trials)]
    for r in sorted(results, key=lambda r: r.index):
        summary.add(r)
    return summary
