"""Structure results for derivations of graph evolution algebras, as executable checks.

Validators take a candidate matrix and test a structural statement about it.
Predictors forecast the derivation space from the graph alone.  Vertices are
1-based in every public signature; matrices are indexed 0-based.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from enum import Enum
from typing import Dict, List, Optional, Tuple

from .algebra import EvolutionAlgebra, is_derivation_conditions, is_derivation_leibniz
from .field import FieldSpec, Matrix, nullspace, rank
from .graph import Graph, TwinPartition, bfs_distances, degree, has_odd_cycle, is_connected, neighbors
from .solver import DerivationSpace, membership


class PreconditionError(ValueError):
    """A theorem was invoked outside its hypotheses (characteristic, connectivity)."""


def _zero(field: FieldSpec, x) -> bool:
    p = field.characteristic
    return (x % p == 0) if p else x == 0


def _nbhd(g: Graph, v: int):
    return neighbors(g, v)


def check_prop_conditions(alg: EvolutionAlgebra, d: Matrix, tp: TwinPartition) -> bool:
    """Neighbourhood form of the derivation conditions.

    (i) ``d_ij = -d_ji`` when ``i != j`` share a neighbour;
    (ii) ``d_ij = d_ji = 0`` when ``N(i)`` is not contained in ``N(j)``;
    (iii) ``sum_{k in N(i)} d_kj`` is ``2 d_ii`` if ``j in N(i)`` and 0 otherwise.
    """
    g, f = alg.graph, alg.field
    n = g.n
    if d.shape != (n, n) or d.field != f:
        raise ValueError("matrix does not match algebra")
    dd = d._data
    adj = [()] + [_nbhd(g, v) for v in g.vertices]
    for i in g.vertices:
        Ni = adj[i]
        for j in g.vertices:
            if i == j:
                continue
            Nj = adj[j]
            dij, dji = dd[i - 1][j - 1], dd[j - 1][i - 1]
            if Ni & Nj and not _zero(f, dij + dji):
                return False
            if (dij or dji) and Ni - Nj:
                return False
    for i in g.vertices:
        Ni = adj[i]
        dii = dd[i - 1][i - 1]
        for j in g.vertices:
            s = sum(dd[k - 1][j - 1] for k in Ni)
            target = 2 * dii if j in Ni else 0
            if not _zero(f, s - target):
                return False
    return True


def check_block_structure(d: Matrix, tp: TwinPartition) -> bool:
    """``d_ij = 0`` whenever ``i`` and ``j`` are not twins."""
    n = d.rows
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if d[i - 1, j - 1] and not tp.are_twins(i, j):
                return False
    return True


def _class_neighbourhood(g: Graph, cls) -> frozenset:
    # twins share neighbours, so any member's neighbourhood is N(T)
    return _nbhd(g, cls[0])


def check_twin_sum(alg: EvolutionAlgebra, d: Matrix, tp: TwinPartition) -> bool:
    """Column sums inside each twin class equal ``2 d_tt`` for every neighbour ``t`` of the class."""
    g, f = alg.graph, alg.field
    for cls in tp.classes:
        nb = _class_neighbourhood(g, cls)
        for j in cls:
            s = sum((d[k - 1, j - 1] for k in cls), f.zero)
            for t in nb:
                if not _zero(f, s - 2 * d[t - 1, t - 1]):
                    return False
    return True


def check_offdiag_skew(d: Matrix, tp: TwinPartition) -> bool:
    """Off-diagonal part of each diagonal twin block is skew-symmetric."""
    f = d.field
    for cls in tp.classes:
        for a in cls:
            for b in cls:
                if a < b and not _zero(f, d[a - 1, b - 1] + d[b - 1, a - 1]):
                    return False
    return True


def check_theorem_characterization(alg: EvolutionAlgebra, d: Matrix, tp: TwinPartition) -> bool:
    """Block form, twin column sums and blockwise skewness together.

    For connected graphs this is equivalent to ``d`` being a derivation.
    """
    return check_block_structure(d, tp) and check_twin_sum(alg, d, tp) and check_offdiag_skew(d, tp)


def _require_char(field: FieldSpec, forbidden, what: str) -> None:
    if field.characteristic in forbidden:
        raise PreconditionError(f"{what} does not apply in characteristic {field.characteristic}")


def check_corollary_sums(alg: EvolutionAlgebra, d: Matrix, tp: TwinPartition) -> bool:
    """Consequences for a derivation ``d`` in odd characteristic ``p``.

    (i) twins have equal diagonal entries; (ii) if ``p | deg(i)`` the diagonal
    entries over ``N(i)`` sum to zero; (iii) otherwise that sum is
    ``2 deg(i) d_ii``; (iv) twin-class column sums equal ``2 d_ii`` for ``i`` in
    the class neighbourhood.
    """
    f = alg.field
    _require_char(f, (0, 2), "the odd-characteristic corollary")
    g = alg.graph
    p = f.characteristic
    for cls in tp.classes:
        first = d[cls[0] - 1, cls[0] - 1]
        if any(d[v - 1, v - 1] != first for v in cls):
            return False
    for i in g.vertices:
        diag_sum = sum((d[k - 1, k - 1] for k in _nbhd(g, i)), f.zero)
        deg = degree(g, i)
        if deg % p == 0:
            if not _zero(f, diag_sum):
                return False
        elif not _zero(f, 2 * deg * d[i - 1, i - 1] - diag_sum):
            return False
    return check_twin_sum(alg, d, tp)


def check_twin_size_lemma(ds: DerivationSpace, tp: TwinPartition) -> bool:
    """Every nonzero off-diagonal entry ``d_kl`` of the space has ``|T(l)| >= 3``.

    Checking the basis suffices: an entry is nonzero somewhere in the span iff
    it is nonzero in some basis element.
    """
    _require_char(ds.field, (2,), "the twin-size lemma")
    n = ds.algebra.n
    for b in ds.basis:
        for k in range(n):
            for l in range(n):
                if k != l and b[k, l] and len(tp.twin_class(l + 1)) < 3:
                    return False
    return True


def check_no_diagonal_derivation(ds: DerivationSpace) -> bool:
    """The only diagonal matrix in the space is zero.

    Solves for coefficients ``c`` with all off-diagonal entries of
    ``sum c_b B_b`` vanishing; since the basis is independent, only ``c = 0``
    may survive.
    """
    f = ds.field
    _require_char(f, (3,), "the no-diagonal-derivation corollary")
    g = ds.algebra.graph
    if g.m == 0:
        raise PreconditionError("the no-diagonal-derivation corollary needs a graph with an edge")
    if ds.dimension == 0:
        return True
    n = g.n
    offdiag = [(i, j) for i in range(n) for j in range(n) if i != j]
    proj = Matrix._trusted(f, tuple(tuple(b[i, j] for b in ds.basis) for i, j in offdiag))
    return not nullspace(proj)


def build_f_map(g: Graph, field: FieldSpec) -> Matrix:
    """Diagonal map with entry 1 at even BFS distance from vertex 1 and 2 at odd distance."""
    if field.characteristic != 3:
        raise PreconditionError(f"the parity map is defined in characteristic 3, not {field.characteristic}")
    if not is_connected(g):
        raise PreconditionError("the parity map needs a connected graph")
    if has_odd_cycle(g):
        raise PreconditionError("the parity map needs a graph without odd cycles")
    dist = bfs_distances(g, 1)
    return Matrix.diag(field, [2 if dist[v] % 2 else 1 for v in g.vertices])


def adjacency_nonsingular(g: Graph, field: FieldSpec) -> bool:
    return rank(Matrix(field, g.adjacency())) == g.n


class PredictionKind(str, Enum):
    EXACT_ZERO = "exact_zero"
    EXACT_DIM_WITH_BASIS = "exact_dim_with_basis"
    # reserved for inequality-only conclusions; no current rule emits it
    DIM_BOUND = "dim_bound"
    NO_PREDICTION = "no_prediction"


@dataclass(frozen=True)
class Prediction:
    kind: PredictionKind
    dimension: Optional[int]
    justification: str
    basis: Optional[Tuple[Matrix, ...]] = dc_field(default=None, compare=False)

    @property
    def is_exact(self) -> bool:
        return self.kind in (PredictionKind.EXACT_ZERO, PredictionKind.EXACT_DIM_WITH_BASIS)


def small_cases(g: Graph, field: FieldSpec) -> Tuple[Matrix, ...]:
    """Closed-form basis of the derivation space for connected graphs on one or two vertices."""
    if g.n == 1:
        return (Matrix.identity(field, 1),)
    if g.n == 2 and g.m == 1:
        return (Matrix.diag(field, [1, 2]),) if field.characteristic == 3 else ()
    raise PreconditionError("closed forms exist only for K1 and P2")


def _zero_prediction(why: str) -> Prediction:
    return Prediction(PredictionKind.EXACT_ZERO, 0, why)


def predict(g: Graph, field: FieldSpec, tp: TwinPartition) -> Prediction:
    """Forecast the derivation space from graph structure; first matching rule wins.

    (a) one vertex: every linear map; (b) two vertices; (c) nonsingular
    adjacency over the field; (d) ``p`` not 2 or 3 and twin classes of size at
    most 2; (e) ``p = 2`` and twin-free.
    """
    if not is_connected(g):
        raise PreconditionError("predictions are only made for connected graphs")
    p = field.characteristic
    if g.n <= 2:
        basis = small_cases(g, field)
        if not basis:
            return _zero_prediction("two vertices, char != 3: d11 = 2 d22 and d22 = 2 d11 force d = 0")
        why = ("single vertex: all linear maps are derivations" if g.n == 1
               else "two vertices, char 3: spanned by diag(1, 2)")
        return Prediction(PredictionKind.EXACT_DIM_WITH_BASIS, 1, why, basis)
    if adjacency_nonsingular(g, field):
        if p != 3:
            return _zero_prediction("nonsingular adjacency, char != 3: no nonzero derivations")
        if has_odd_cycle(g):
            return _zero_prediction("nonsingular adjacency, char 3, odd cycle present")
        return Prediction(
            PredictionKind.EXACT_DIM_WITH_BASIS, 1, "nonsingular adjacency, char 3, bipartite: spanned by the parity map",
            (build_f_map(g, field),),
        )
    if p not in (2, 3) and max(tp.sizes) <= 2:
        return _zero_prediction("char not 2 or 3 and all twin classes have size <= 2")
    if p == 2 and tp.is_twin_free():
        return _zero_prediction("char 2 and twin-free")
    return Prediction(PredictionKind.NO_PREDICTION, None, "no structural rule applies")


def diagonal_parity_holds(g: Graph, d: Matrix) -> bool:
    """For nonsingular adjacency: ``d_kk`` equals ``2 d_ii`` at odd distance and ``d_ii`` at even.

    Checked against vertex 1 along shortest paths and along every edge, which
    together cover paths of every length.
    """
    f = d.field
    dist = bfs_distances(g, 1)
    d11 = d[0, 0]
    for v in g.vertices:
        if v not in dist:
            continue
        target = 2 * d11 if dist[v] % 2 else d11
        if not _zero(f, d[v - 1, v - 1] - target):
            return False
    for i, j in g.edges:
        if not _zero(f, d[i - 1, i - 1] - 2 * d[j - 1, j - 1]):
            return False
    return True


CHECK_NAMES = (
    "leibniz",
    "conditions",
    "prop_conditions",
    "block_structure",
    "twin_sum",
    "offdiag_skew",
    "theorem_characterization",
    "corollary_sums",
    "twin_size_lemma",
    "no_diagonal_derivation",
    "diagonal_parity",
    "prediction",
)

PASS, FAIL, NA = "pass", "fail", "not-applicable"


def run_checks(ds: DerivationSpace, tp: TwinPartition, prediction: Optional[Prediction]) -> Dict[str, str]:
    """Evaluate every named check on a computed space; each name appears exactly once."""
    alg = ds.algebra
    g = alg.graph
    connected = is_connected(g)
    basis: List[Matrix] = list(ds.basis)

    def every(pred) -> str:
        return PASS if all(pred(b) for b in basis) else FAIL

    out: Dict[str, str] = {}
    out["leibniz"] = every(lambda b: is_derivation_leibniz(alg, b))
    out["conditions"] = every(lambda b: is_derivation_conditions(alg, b))
    out["prop_conditions"] = every(lambda b: check_prop_conditions(alg, b, tp))
    if connected:
        out["block_structure"] = every(lambda b: check_block_structure(b, tp))
        out["twin_sum"] = every(lambda b: check_twin_sum(alg, b, tp))
        out["offdiag_skew"] = every(lambda b: check_offdiag_skew(b, tp))
        out["theorem_characterization"] = every(lambda b: check_theorem_characterization(alg, b, tp))
    else:
        for name in ("block_structure", "twin_sum", "offdiag_skew", "theorem_characterization"):
            out[name] = NA

    def guarded(fn) -> str:
        try:
            return PASS if fn() else FAIL
        except PreconditionError:
            return NA

    if connected:
        out["corollary_sums"] = guarded(lambda: all(check_corollary_sums(alg, b, tp) for b in basis))
        out["twin_size_lemma"] = guarded(lambda: check_twin_size_lemma(ds, tp))
        out["no_diagonal_derivation"] = guarded(lambda: check_no_diagonal_derivation(ds))
        if adjacency_nonsingular(g, alg.field):
            out["diagonal_parity"] = every(lambda b: diagonal_parity_holds(g, b))
        else:
            out["diagonal_parity"] = NA
    else:
        for name in ("corollary_sums", "twin_size_lemma", "no_diagonal_derivation", "diagonal_parity"):
            out[name] = NA

    if prediction is None or not prediction.is_exact:
        out["prediction"] = NA
    else:
        ok = prediction.dimension == ds.dimension
        if ok and prediction.basis is not None:
            ok = all(is_derivation_leibniz(alg, b) and membership(ds, b) for b in prediction.basis)
        out["prediction"] = PASS if ok else FAIL
    assert tuple(out) == CHECK_NAMES
    return out
