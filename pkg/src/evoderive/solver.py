"""Derivation spaces as exact nullspaces of the coordinate conditions.

Unknown ``d_ij`` (1-based) sits in column ``n*(i-1) + (j-1)`` (0-based), i.e.
row-major order ``d_11, d_12, ..., d_nn``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, List, Optional, Sequence, Tuple

from .algebra import EvolutionAlgebra
from .field import Echelon, Matrix, SparseRow, echelon_of, nullspace_rows
from .graph import Graph, relabel

DEFAULT_MAX_N = 32
MAX_N_ENV = "EVODERIVE_MAX_N"


class SizeCapError(ValueError):
    """Raised when a graph exceeds the configured vertex cap."""


def configured_max_n(override: Optional[int] = None) -> int:
    if override is not None:
        return override
    env = os.environ.get(MAX_N_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"{MAX_N_ENV} must be an integer, got {env!r}") from None
    return DEFAULT_MAX_N


def system_rows(alg: EvolutionAlgebra) -> Iterator[SparseRow]:
    """Sparse rows of the homogeneous system, in ``build_system`` order.

    First one row per ``(i, j, k)`` with ``i != j``:
    ``w_jk d_ij + w_ik d_ji = 0``.  Then one row per ``(i, j)``:
    ``sum_k w_ik d_kj - 2 w_ij d_ii = 0``.  Rows may be empty.
    """
    n = alg.n
    f = alg.field
    w = alg.structure
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            for k in range(n):
                row: SparseRow = {}
                if w[j, k]:
                    row[n * i + j] = w[j, k]
                if w[i, k]:
                    row[n * j + i] = w[i, k]
                yield row
    for i in range(n):
        for j in range(n):
            row = {}
            for k in range(n):
                if w[i, k]:
                    row[n * k + j] = w[i, k]
            if w[i, j]:
                c = f.sub(row.get(n * i + i, f.zero), f.mul(f(2), w[i, j]))
                if c:
                    row[n * i + i] = c
                else:
                    row.pop(n * i + i, None)
            yield row


def build_system(alg: EvolutionAlgebra) -> Matrix:
    """Dense coefficient matrix with ``n*n*(n-1) + n*n`` rows and ``n*n`` columns."""
    ncols = alg.n * alg.n
    z = alg.field.zero
    dense = []
    for row in system_rows(alg):
        r = [z] * ncols
        for c, v in row.items():
            r[c] = v
        dense.append(tuple(r))
    return Matrix._trusted(alg.field, tuple(dense))


def unflatten(alg: EvolutionAlgebra, vec: Sequence) -> Matrix:
    return Matrix.from_flat(alg.field, alg.n, alg.n, vec)


@dataclass(frozen=True)
class DerivationSpace:
    algebra: EvolutionAlgebra
    basis: Tuple[Matrix, ...]

    @property
    def dimension(self) -> int:
        return len(self.basis)

    @property
    def field(self):
        return self.algebra.field

    @cached_property
    def _echelon(self) -> Echelon:
        rows = ({c: x for c, x in enumerate(b.flat()) if x} for b in self.basis)
        return echelon_of(rows, self.field, self.algebra.n * self.algebra.n)

    def combination(self, coeffs: Sequence) -> Matrix:
        """The element ``sum c_b * B_b`` of the space."""
        if len(coeffs) != self.dimension:
            raise ValueError(f"need {self.dimension} coefficients, got {len(coeffs)}")
        f = self.field
        p = f.characteristic
        n = self.algebra.n
        acc = [f.zero] * (n * n)
        for c, b in zip(coeffs, self.basis):
            c = f(c)
            if not c:
                continue
            for idx, x in enumerate(b.flat()):
                if x:
                    acc[idx] += c * x
        if p:
            acc = [x % p for x in acc]
        return Matrix._trusted(f, tuple(tuple(acc[r * n:(r + 1) * n]) for r in range(n)))


def derivation_space(alg: EvolutionAlgebra, max_n: Optional[int] = None) -> DerivationSpace:
    """Exact canonical basis of all derivations of ``alg``.

    Basis matrices, flattened row-major, form the reduced row echelon basis of
    the solution space.
    """
    cap = configured_max_n(max_n)
    if alg.n > cap:
        raise SizeCapError(f"graph has {alg.n} vertices, cap is {cap} (set {MAX_N_ENV} or --max-n)")
    vectors = nullspace_rows(system_rows(alg), alg.field, alg.n * alg.n)
    return DerivationSpace(alg, tuple(unflatten(alg, v) for v in vectors))


def membership(ds: DerivationSpace, d: Matrix) -> bool:
    alg = ds.algebra
    if d.field != alg.field or d.shape != (alg.n, alg.n):
        raise ValueError(f"expected a {alg.n}x{alg.n} matrix over {alg.field}")
    return ds._echelon.contains({c: x for c, x in enumerate(d.flat()) if x})


def conjugate(d: Matrix, perm: Sequence[int]) -> Matrix:
    """Transport ``d`` along the vertex relabeling ``i -> perm[i-1]``.

    The result ``d'`` satisfies ``d'[perm(i), perm(j)] = d[i, j]``; it is a
    derivation of ``relabel(g, perm)`` iff ``d`` is one of ``g``.
    """
    n = d.rows
    out: List[list] = [[None] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[perm[i] - 1][perm[j] - 1] = d[i, j]
    return Matrix._trusted(d.field, tuple(tuple(r) for r in out))


def relabeled_space(ds: DerivationSpace, perm: Sequence[int], max_n: Optional[int] = None) -> DerivationSpace:
    g: Graph = relabel(ds.algebra.graph, perm)
    return derivation_space(EvolutionAlgebra.of_graph(g, ds.field), max_n)
