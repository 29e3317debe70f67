"""The evolution algebra of a graph over a prime field.

Basis elements ``e_1..e_n`` multiply as ``e_i e_j = 0`` for ``i != j`` and
``e_i e_i = sum_k w_ik e_k`` with ``w`` the adjacency matrix.  A linear map
``d`` acts by ``d(e_i) = sum_k d_ik e_k``, i.e. row ``i`` of ``d`` holds the
image of ``e_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Tuple

from .field import FieldSpec, Matrix, Scalar
from .graph import Graph


@dataclass(frozen=True)
class AlgebraElement:
    field: FieldSpec
    coeffs: Tuple[Scalar, ...]

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        _check_compatible(self, other)
        p = self.field.characteristic
        if p:
            return AlgebraElement(self.field, tuple((a + b) % p for a, b in zip(self.coeffs, other.coeffs)))
        return AlgebraElement(self.field, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        _check_compatible(self, other)
        sub = self.field.sub
        return AlgebraElement(self.field, tuple(sub(a, b) for a, b in zip(self.coeffs, other.coeffs)))

    def __len__(self) -> int:
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)


def _check_compatible(u: AlgebraElement, v: AlgebraElement) -> None:
    if u.field is not v.field and u.field != v.field:
        raise ValueError(f"field mismatch: {u.field} vs {v.field}")
    if len(u.coeffs) != len(v.coeffs):
        raise ValueError(f"dimension mismatch: {len(u.coeffs)} vs {len(v.coeffs)}")


@dataclass(frozen=True)
class EvolutionAlgebra:
    graph: Graph
    field: FieldSpec
    structure: Matrix

    def __post_init__(self) -> None:
        s = self.structure
        if s.field != self.field or s.shape != (self.graph.n, self.graph.n):
            raise ValueError("structure matrix does not match graph and field")

    @classmethod
    def of_graph(cls, g: Graph, field: FieldSpec) -> "EvolutionAlgebra":
        return cls(g, field, Matrix(field, g.adjacency()))

    @property
    def n(self) -> int:
        return self.graph.n

    def element(self, coeffs: Sequence) -> AlgebraElement:
        if len(coeffs) != self.n:
            raise ValueError(f"expected {self.n} coordinates, got {len(coeffs)}")
        return AlgebraElement(self.field, tuple(self.field(c) for c in coeffs))

    def basis_element(self, i: int) -> AlgebraElement:
        """``e_i`` for a 1-based vertex ``i``."""
        if not 1 <= i <= self.n:
            raise ValueError(f"basis index {i} out of range 1..{self.n}")
        f = self.field
        return AlgebraElement(f, tuple(f.one if k == i - 1 else f.zero for k in range(self.n)))

    def zero(self) -> AlgebraElement:
        return AlgebraElement(self.field, (self.field.zero,) * self.n)

    @cached_property
    def natural_basis(self) -> Tuple[AlgebraElement, ...]:
        return tuple(self.basis_element(i) for i in range(1, self.n + 1))

    @cached_property
    def basis_products(self) -> Tuple[Tuple[AlgebraElement, ...], ...]:
        """``basis_products[i][j] = e_{i+1} e_{j+1}``, computed with ``multiply``."""
        b = self.natural_basis
        return tuple(tuple(multiply(self, ei, ej) for ej in b) for ei in b)


def _check_element(alg: EvolutionAlgebra, u: AlgebraElement) -> None:
    if u.field is not alg.field and u.field != alg.field:
        raise ValueError(f"element over {u.field}, algebra over {alg.field}")
    if len(u.coeffs) != alg.n:
        raise ValueError(f"element has {len(u.coeffs)} coordinates, algebra has dimension {alg.n}")


def multiply(alg: EvolutionAlgebra, u: AlgebraElement, v: AlgebraElement) -> AlgebraElement:
    """Bilinear product: ``(sum u_i e_i)(sum v_j e_j) = sum_i u_i v_i e_i^2``."""
    _check_element(alg, u)
    _check_element(alg, v)
    f = alg.field
    p = f.characteristic
    rows = alg.structure._data
    out = [f.zero] * alg.n
    for i, (a, b) in enumerate(zip(u.coeffs, v.coeffs)):
        if not a or not b:
            continue
        c = a * b
        for k, w in enumerate(rows[i]):
            if w:
                out[k] += c * w
    if p:
        out = [x % p for x in out]
    return AlgebraElement(f, tuple(out))


def apply_linear(d: Matrix, u: AlgebraElement) -> AlgebraElement:
    """Coordinates of ``d(u)`` where row ``i`` of ``d`` is ``d(e_i)``."""
    if d.field is not u.field and d.field != u.field:
        raise ValueError(f"matrix over {d.field}, element over {u.field}")
    if not d.is_square() or d.rows != len(u.coeffs):
        raise ValueError(f"matrix of shape {d.shape} cannot act on a {len(u.coeffs)}-vector")
    f = d.field
    p = f.characteristic
    rows = d._data
    out = [f.zero] * d.cols
    for i, a in enumerate(u.coeffs):
        if not a:
            continue
        for k, x in enumerate(rows[i]):
            if x:
                out[k] += a * x
    if p:
        out = [x % p for x in out]
    return AlgebraElement(f, tuple(out))


def _check_operator(alg: EvolutionAlgebra, d: Matrix) -> None:
    if d.field != alg.field:
        raise ValueError(f"matrix over {d.field}, algebra over {alg.field}")
    if d.shape != (alg.n, alg.n):
        raise ValueError(f"expected a {alg.n}x{alg.n} matrix, got {d.shape}")


def leibniz_defect(alg: EvolutionAlgebra, d: Matrix):
    """First ordered basis pair ``(i, j)`` (1-based) violating the Leibniz rule, or None."""
    _check_operator(alg, d)
    basis = alg.natural_basis
    products = alg.basis_products
    images = [apply_linear(d, e) for e in basis]
    for i, ei in enumerate(basis):
        for j, ej in enumerate(basis):
            lhs = apply_linear(d, products[i][j])
            rhs = multiply(alg, images[i], ej) + multiply(alg, ei, images[j])
            if lhs != rhs:
                return (i + 1, j + 1)
    return None


def is_derivation_leibniz(alg: EvolutionAlgebra, d: Matrix) -> bool:
    """Check ``d(e_i e_j) = d(e_i) e_j + e_i d(e_j)`` for every ordered basis pair.

    By bilinearity this is the full Leibniz rule.  Only ``multiply`` and
    ``apply_linear`` are used, so it serves as an oracle for the coordinate
    conditions below.
    """
    return leibniz_defect(alg, d) is None


def is_derivation_conditions(alg: EvolutionAlgebra, d: Matrix) -> bool:
    """Check the coordinate conditions on the entries of ``d``.

    * ``w_jk d_ij + w_ik d_ji = 0`` for all ``i != j`` and all ``k``;
    * ``sum_k w_ik d_kj = 2 w_ij d_ii`` for all ``i, j``.
    """
    _check_operator(alg, d)
    n = alg.n
    p = alg.field.characteristic
    w = alg.structure._data
    dd = d._data
    # terms with w = 0 vanish, so only the support of each structure row is visited
    support = [[k for k in range(n) if w[i][k]] for i in range(n)]

    def zero(x) -> bool:
        return (x % p == 0) if p else x == 0

    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            dij, dji = dd[i][j], dd[j][i]
            for k in set(support[i]).union(support[j]):
                if not zero(w[j][k] * dij + w[i][k] * dji):
                    return False
    for i in range(n):
        for j in range(n):
            s = sum(w[i][k] * dd[k][j] for k in support[i])
            if not zero(s - 2 * w[i][j] * dd[i][i]):
                return False
    return True
