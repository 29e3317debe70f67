"""Exact scalars and dense matrices over Q and GF(p).

Scalars are plain values in canonical form: ``gmpy2.mpq`` (always reduced,
positive denominator) for characteristic 0, ``int`` in ``[0, p)`` for
characteristic ``p``.  All elimination goes through one sparse row-reduction
kernel so that ``rank``, ``nullspace`` and span membership agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from gmpy2 import mpq

Scalar = Union[int, mpq]
_RATIONAL_TYPES = (Fraction, mpq)
SparseRow = Dict[int, Scalar]

# Miller-Rabin with these bases is exact below this bound.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_MR_LIMIT = 3317044064679887385961981


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    if n >= _MR_LIMIT:
        raise ValueError(f"primality of {n} cannot be decided deterministically")
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """The prime field of a given characteristic: Q for 0, GF(p) otherwise."""

    characteristic: int

    def __post_init__(self) -> None:
        c = self.characteristic
        if isinstance(c, bool) or not isinstance(c, int):
            raise TypeError(f"characteristic must be an int, got {c!r}")
        if c != 0 and not is_prime(c):
            raise ValueError(f"characteristic must be 0 or a prime, got {c}")

    @property
    def p(self) -> int:
        return self.characteristic

    def __str__(self) -> str:
        return "Q" if self.characteristic == 0 else f"GF({self.characteristic})"

    @property
    def zero(self) -> Scalar:
        return mpq(0) if self.characteristic == 0 else 0

    @property
    def one(self) -> Scalar:
        return mpq(1) if self.characteristic == 0 else 1

    def __call__(self, value: Union[int, Fraction, str]) -> Scalar:
        """Canonical image of an integer, fraction or ``"a/b"`` string."""
        p = self.characteristic
        if isinstance(value, str):
            value = Fraction(value)
        if isinstance(value, bool):
            raise TypeError(f"cannot map {value!r} into {self}")
        if p == 0:
            if not isinstance(value, (int,) + _RATIONAL_TYPES):
                raise TypeError(f"cannot map {value!r} into {self}")
            return mpq(value)
        if isinstance(value, _RATIONAL_TYPES):
            num, den = int(value.numerator), int(value.denominator)
            if den % p == 0:
                raise ZeroDivisionError(f"{value} has no image in GF({p})")
            return num * pow(den, -1, p) % p
        if not isinstance(value, int):
            raise TypeError(f"cannot map {value!r} into {self}")
        return int(value) % p

    def add(self, a: Scalar, b: Scalar) -> Scalar:
        return (a + b) % self.characteristic if self.characteristic else a + b

    def sub(self, a: Scalar, b: Scalar) -> Scalar:
        return (a - b) % self.characteristic if self.characteristic else a - b

    def mul(self, a: Scalar, b: Scalar) -> Scalar:
        return (a * b) % self.characteristic if self.characteristic else a * b

    def neg(self, a: Scalar) -> Scalar:
        return -a % self.characteristic if self.characteristic else -a

    def inv(self, a: Scalar) -> Scalar:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        p = self.characteristic
        return pow(a, -1, p) if p else 1 / a

    def div(self, a: Scalar, b: Scalar) -> Scalar:
        return self.mul(a, self.inv(b))

    def contains(self, a: object) -> bool:
        """True if ``a`` is already a canonical element of this field."""
        if self.characteristic == 0:
            return isinstance(a, mpq)
        return type(a) is int and 0 <= a < self.characteristic

    def to_json(self, a: Scalar) -> Union[int, str]:
        """Lossless JSON form: an int when integral, else ``"num/den"``."""
        if isinstance(a, _RATIONAL_TYPES):
            num, den = int(a.numerator), int(a.denominator)
            return num if den == 1 else f"{num}/{den}"
        return a

    def from_json(self, a: Union[int, str]) -> Scalar:
        return self(a)

    def format(self, a: Scalar) -> str:
        return str(self.to_json(a))


def scalar_from_int(k: int, spec: FieldSpec) -> Scalar:
    return spec(k)


class Matrix:
    """Immutable dense matrix over a single ``FieldSpec``.

    Indexing is 0-based: ``m[i, j]``.
    """

    __slots__ = ("field", "rows", "cols", "_data")

    def __init__(self, field: FieldSpec, data: Iterable[Iterable[Union[int, Fraction, str]]]):
        rows = tuple(tuple(field(x) for x in row) for row in data)
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix rows")
        self.field = field
        self.rows = len(rows)
        self.cols = width
        self._data = rows

    @classmethod
    def _trusted(cls, field: FieldSpec, rows: Tuple[Tuple[Scalar, ...], ...]) -> "Matrix":
        # rows must already be canonical field elements
        m = cls.__new__(cls)
        m.field = field
        m.rows = len(rows)
        m.cols = len(rows[0])
        m._data = rows
        return m

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: Optional[int] = None) -> "Matrix":
        cols = rows if cols is None else cols
        z = field.zero
        return cls._trusted(field, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "Matrix":
        return cls.diag(field, [1] * n)

    @classmethod
    def diag(cls, field: FieldSpec, values: Sequence[Union[int, Fraction]]) -> "Matrix":
        n = len(values)
        return cls(field, [[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_flat(cls, field: FieldSpec, rows: int, cols: int, flat: Sequence[Scalar]) -> "Matrix":
        if len(flat) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(flat)}")
        return cls(field, [flat[r * cols:(r + 1) * cols] for r in range(rows)])

    @classmethod
    def unit(cls, field: FieldSpec, n: int, i: int, j: int) -> "Matrix":
        """The n x n matrix with a single 1 at 0-based position (i, j)."""
        return cls(field, [[1 if (r, c) == (i, j) else 0 for c in range(n)] for r in range(n)])

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij: Tuple[int, int]) -> Scalar:
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> Tuple[Scalar, ...]:
        return self._data[i]

    def column(self, j: int) -> Tuple[Scalar, ...]:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> List[List[Scalar]]:
        return [list(r) for r in self._data]

    def flat(self) -> Tuple[Scalar, ...]:
        return tuple(x for r in self._data for x in r)

    def is_zero(self) -> bool:
        return all(x == 0 for r in self._data for x in r)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.field == other.field and self._data == other._data

    def __hash__(self) -> int:
        return hash((self.field, self._data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self._data)
        return f"Matrix[{self.field}]({body})"

    def _check_same(self, other: "Matrix") -> None:
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")

    def _map2(self, other: "Matrix", op) -> "Matrix":
        self._check_same(other)
        return Matrix._trusted(
            self.field,
            tuple(tuple(op(a, b) for a, b in zip(ra, rb)) for ra, rb in zip(self._data, other._data)),
        )

    def __add__(self, other: "Matrix") -> "Matrix":
        return self._map2(other, self.field.add)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self._map2(other, self.field.sub)

    def __neg__(self) -> "Matrix":
        neg = self.field.neg
        return Matrix._trusted(self.field, tuple(tuple(neg(a) for a in r) for r in self._data))

    def scale(self, c: Union[int, Fraction]) -> "Matrix":
        f = self.field
        c = f(c)
        return Matrix._trusted(f, tuple(tuple(f.mul(c, a) for a in r) for r in self._data))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        f = self.field
        p = f.characteristic
        cols = other.column
        out = []
        for r in self._data:
            new = []
            for j in range(other.cols):
                s = sum((a * b for a, b in zip(r, cols(j)) if a and b), f.zero)
                new.append(s % p if p else s)
            out.append(tuple(new))
        return Matrix._trusted(f, tuple(out))

    def transpose(self) -> "Matrix":
        return Matrix._trusted(self.field, tuple(zip(*self._data)))

    def sparse_rows(self) -> List[SparseRow]:
        return [{j: x for j, x in enumerate(r) if x} for r in self._data]


class Echelon:
    """Incrementally maintained reduced row echelon form over a field.

    Rows are sparse dicts.  Each stored row has a leading 1 in its pivot
    column and zeros in every other pivot column.
    """

    def __init__(self, field: FieldSpec, ncols: int):
        self.field = field
        self.ncols = ncols
        self.pivots: Dict[int, SparseRow] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: SparseRow) -> SparseRow:
        """Reduce ``row`` against the stored pivots; returns a new dict."""
        p = self.field.characteristic
        row = {c: v for c, v in row.items() if v}
        hits = [c for c in row if c in self.pivots]
        for c in hits:
            coef = row.get(c)
            if not coef:
                continue
            for cc, vv in self.pivots[c].items():
                x = row.get(cc, 0) - coef * vv
                if p:
                    x %= p
                if x:
                    row[cc] = x
                else:
                    row.pop(cc, None)
        return row

    def add(self, row: SparseRow) -> bool:
        """Insert a row; returns True if it raised the rank."""
        row = self.reduce(row)
        if not row:
            return False
        f = self.field
        p = f.characteristic
        lead = min(row)
        inv = f.inv(row[lead])
        if p:
            row = {c: v * inv % p for c, v in row.items()}
        else:
            row = {c: v * inv for c, v in row.items()}
        for prow in self.pivots.values():
            coef = prow.get(lead)
            if not coef:
                continue
            for cc, vv in row.items():
                x = prow.get(cc, 0) - coef * vv
                if p:
                    x %= p
                if x:
                    prow[cc] = x
                else:
                    prow.pop(cc, None)
        self.pivots[lead] = row
        return True

    def contains(self, row: SparseRow) -> bool:
        return not self.reduce(row)

    def basis(self) -> List[Tuple[Scalar, ...]]:
        """Dense rows of the RREF, ordered by pivot column."""
        z = self.field.zero
        out = []
        for c in sorted(self.pivots):
            dense = [z] * self.ncols
            for cc, v in self.pivots[c].items():
                dense[cc] = v
            out.append(tuple(dense))
        return out

    def kernel(self) -> List[Tuple[Scalar, ...]]:
        """Solutions of ``R x = 0``, one per free column, before canonicalisation."""
        f = self.field
        free = [c for c in range(self.ncols) if c not in self.pivots]
        out = []
        for fc in free:
            x = [f.zero] * self.ncols
            x[fc] = f.one
            for pc, prow in self.pivots.items():
                v = prow.get(fc)
                if v:
                    x[pc] = f.neg(v)
            out.append(tuple(x))
        return out


def echelon_of(rows: Iterable[SparseRow], field: FieldSpec, ncols: int) -> Echelon:
    ech = Echelon(field, ncols)
    seen = set()
    for r in rows:
        key = frozenset((c, v) for c, v in r.items() if v)
        if not key or key in seen:
            continue
        seen.add(key)
        ech.add(r)
        if ech.rank == ncols:
            break
    return ech


def canonical_basis(vectors: Iterable[Sequence[Scalar]], field: FieldSpec, ncols: int) -> List[Tuple[Scalar, ...]]:
    """RREF basis of the span of ``vectors``."""
    return echelon_of(({j: x for j, x in enumerate(v) if x} for v in vectors), field, ncols).basis()


def nullspace_rows(rows: Iterable[SparseRow], field: FieldSpec, ncols: int) -> List[Tuple[Scalar, ...]]:
    """Canonical (RREF) basis of the kernel of the system given by sparse rows."""
    ech = echelon_of(rows, field, ncols)
    kernel = ech.kernel()
    basis = canonical_basis(kernel, field, ncols)
    if ech.rank + len(basis) != ncols:
        raise AssertionError("rank-nullity violated")
    return basis


def nullspace(m: Matrix) -> List[Tuple[Scalar, ...]]:
    """Basis of ``{x : m x = 0}`` in reduced row echelon form.

    The basis is the unique RREF basis of the kernel, so it does not depend on
    row order.  Its size is ``m.cols - rank(m)``.
    """
    return nullspace_rows(m.sparse_rows(), m.field, m.cols)


def rank(m: Matrix) -> int:
    return echelon_of(m.sparse_rows(), m.field, m.cols).rank


def rref(m: Matrix) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form (zero rows dropped) and pivot columns."""
    ech = echelon_of(m.sparse_rows(), m.field, m.cols)
    rows = ech.basis()
    if not rows:
        return Matrix.zeros(m.field, 1, m.cols), []
    return Matrix._trusted(m.field, tuple(rows)), sorted(ech.pivots)


def mat_vec(m: Matrix, x: Sequence[Scalar]) -> Tuple[Scalar, ...]:
    if len(x) != m.cols:
        raise ValueError(f"vector length {len(x)} != {m.cols} columns")
    p = m.field.characteristic
    out = []
    for r in m._data:
        s = sum((a * b for a, b in zip(r, x) if a and b), m.field.zero)
        out.append(s % p if p else s)
    return tuple(out)


def in_span(vectors: Sequence[Sequence[Scalar]], v: Sequence[Scalar], field: FieldSpec) -> bool:
    ncols = len(v)
    ech = echelon_of(({j: x for j, x in enumerate(u) if x} for u in vectors), field, ncols)
    return ech.contains({j: x for j, x in enumerate(v) if x})
