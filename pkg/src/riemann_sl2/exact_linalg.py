"""Exact rational linear algebra: dense matrices, kernels and subspaces.

Scalars are :class:`fractions.Fraction`, which is always stored reduced
with a positive denominator.  Subspaces are kept in reduced row-echelon
form so that two bases span the same space iff they compare equal.

Elimination runs on sparse row dictionaries internally.  The constraint
systems assembled elsewhere in the package have two or three nonzeros per
row, so this keeps desk-scale problems (a few thousand rows) fast.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction

Scalar = Fraction
Vector = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


class DimensionMismatch(ValueError):
    """Two objects that must share an ambient dimension do not."""


def as_scalar(value: int | str | Fraction) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


@dataclass(frozen=True)
class DenseMatrix:
    rows: int
    cols: int
    entries: tuple[Vector, ...]

    def __post_init__(self) -> None:
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix shape must be non-negative")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError(f"entries do not form a {self.rows}x{self.cols} table")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int | str | Fraction]], cols: int | None = None) -> DenseMatrix:
        table = tuple(tuple(as_scalar(x) for x in row) for row in rows)
        if cols is None:
            if not table:
                raise ValueError("cols must be given for a matrix with no rows")
            cols = len(table[0])
        return cls(len(table), cols, table)

    @classmethod
    def from_sparse_rows(cls, rows: Sequence[Mapping[int, Fraction]], cols: int) -> DenseMatrix:
        table = []
        for row in rows:
            dense = [ZERO] * cols
            for c, v in row.items():
                dense[c] = as_scalar(v)
            table.append(tuple(dense))
        return cls(len(table), cols, tuple(table))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Fraction]], rows: int) -> DenseMatrix:
        table = tuple(tuple(col[r] for col in columns) for r in range(rows))
        return cls(rows, len(columns), table)

    @classmethod
    def identity(cls, size: int) -> DenseMatrix:
        return cls(size, size, tuple(tuple(ONE if i == j else ZERO for j in range(size)) for i in range(size)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> DenseMatrix:
        return cls(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    def __getitem__(self, index: tuple[int, int]) -> Fraction:
        r, c = index
        return self.entries[r][c]

    def apply(self, vector: Sequence[Fraction]) -> Vector:
        if len(vector) != self.cols:
            raise DimensionMismatch(f"vector of length {len(vector)} for {self.cols} columns")
        return tuple(sum((a * b for a, b in zip(row, vector) if a and b), ZERO) for row in self.entries)

    def __matmul__(self, other: DenseMatrix) -> DenseMatrix:
        if self.cols != other.rows:
            raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        columns = [other.column(c) for c in range(other.cols)]
        return DenseMatrix.from_columns([self.apply(col) for col in columns], self.rows)

    def __sub__(self, other: DenseMatrix) -> DenseMatrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch")
        return DenseMatrix(
            self.rows,
            self.cols,
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.entries, other.entries)),
        )

    def scale(self, factor: int | Fraction) -> DenseMatrix:
        factor = as_scalar(factor)
        return DenseMatrix(self.rows, self.cols, tuple(tuple(factor * a for a in r) for r in self.entries))

    def column(self, c: int) -> Vector:
        return tuple(row[c] for row in self.entries)

    def stack(self, *others: DenseMatrix) -> DenseMatrix:
        """Vertical concatenation; the joint kernel of the blocks is the kernel of the result."""
        entries = list(self.entries)
        for other in others:
            if other.cols != self.cols:
                raise DimensionMismatch("stacked blocks need equal column counts")
            entries.extend(other.entries)
        return DenseMatrix(len(entries), self.cols, tuple(entries))

    def sparse_rows(self) -> list[dict[int, Fraction]]:
        return [{c: v for c, v in enumerate(row) if v} for row in self.entries]


def _rref_sparse(rows: Iterable[Mapping[int, Fraction]]) -> dict[int, dict[int, Fraction]]:
    """Incremental Gauss-Jordan; returns pivot column -> fully reduced row."""
    basis: dict[int, dict[int, Fraction]] = {}
    for raw in rows:
        row = {c: v for c, v in raw.items() if v}
        # Pivot rows never contain another pivot column, so one pass suffices.
        for p in [c for c in row if c in basis]:
            factor = row.get(p)
            if not factor:
                continue
            for c, v in basis[p].items():
                nv = row.get(c, ZERO) - factor * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        if not row:
            continue
        pivot = min(row)
        inv = 1 / row[pivot]
        row = {c: v * inv for c, v in row.items()}
        for other in basis.values():
            factor = other.get(pivot)
            if not factor:
                continue
            for c, v in row.items():
                nv = other.get(c, ZERO) - factor * v
                if nv:
                    other[c] = nv
                else:
                    other.pop(c, None)
        basis[pivot] = row
    return basis


def _dense(row: Mapping[int, Fraction], size: int) -> Vector:
    out = [ZERO] * size
    for c, v in row.items():
        out[c] = v
    return tuple(out)


@dataclass(frozen=True)
class SubspaceBasis:
    """A linear subspace of Q^ambient_dim in reduced row-echelon form.

    Build instances with :meth:`span`; the constructor trusts its input.
    """

    ambient_dim: int
    vectors: tuple[Vector, ...]

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence[int | str | Fraction]]) -> SubspaceBasis:
        rows = []
        for v in vectors:
            if len(v) != ambient_dim:
                raise DimensionMismatch(f"vector of length {len(v)} in ambient dimension {ambient_dim}")
            rows.append({c: as_scalar(x) for c, x in enumerate(v) if x})
        return cls._from_sparse(ambient_dim, rows)

    @classmethod
    def _from_sparse(cls, ambient_dim: int, rows: Iterable[Mapping[int, Fraction]]) -> SubspaceBasis:
        reduced = _rref_sparse(rows)
        return cls(ambient_dim, tuple(_dense(reduced[p], ambient_dim) for p in sorted(reduced)))

    @classmethod
    def full(cls, ambient_dim: int) -> SubspaceBasis:
        return cls(ambient_dim, DenseMatrix.identity(ambient_dim).entries)

    @classmethod
    def zero(cls, ambient_dim: int) -> SubspaceBasis:
        return cls(ambient_dim, ())

    @property
    def dim(self) -> int:
        return len(self.vectors)

    def __len__(self) -> int:
        return len(self.vectors)

    def __iter__(self):
        return iter(self.vectors)

    def canonical(self) -> SubspaceBasis:
        return SubspaceBasis.span(self.ambient_dim, self.vectors)

    def contains(self, vector: Sequence[Fraction]) -> bool:
        """Membership test: reduce against the pivots and check for zero."""
        if len(vector) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(vector)} in ambient dimension {self.ambient_dim}")
        residual = list(vector)
        for row in self.vectors:
            pivot = next(c for c, v in enumerate(row) if v)
            factor = residual[pivot]
            if factor:
                residual = [r - factor * v for r, v in zip(residual, row)]
        return not any(residual)


def rank(m: DenseMatrix) -> int:
    return len(_rref_sparse(m.sparse_rows()))


def rref(m: DenseMatrix) -> tuple[DenseMatrix, tuple[int, ...]]:
    """Reduced row-echelon form (zero rows dropped) and its pivot columns."""
    reduced = _rref_sparse(m.sparse_rows())
    pivots = tuple(sorted(reduced))
    return DenseMatrix(len(pivots), m.cols, tuple(_dense(reduced[p], m.cols) for p in pivots)), pivots


def _nullspace_sparse(rows: Iterable[Mapping[int, Fraction]], cols: int) -> SubspaceBasis:
    reduced = _rref_sparse(rows)
    free = [c for c in range(cols) if c not in reduced]
    kernel = []
    for f in free:
        vec = {f: ONE}
        for p, row in reduced.items():
            v = row.get(f)
            if v:
                vec[p] = -v
        kernel.append(vec)
    return SubspaceBasis._from_sparse(cols, kernel)


def nullspace(m: DenseMatrix) -> SubspaceBasis:
    """Canonical basis of ``{x : m x = 0}``.

    >>> nullspace(DenseMatrix.from_rows([[1, 1], [1, 1]])).vectors
    ((Fraction(1, 1), Fraction(-1, 1)),)
    """
    return _nullspace_sparse(m.sparse_rows(), m.cols)


def _check_same_ambient(a: SubspaceBasis, b: SubspaceBasis) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}")


def annihilator(a: SubspaceBasis) -> SubspaceBasis:
    """Vectors orthogonal to ``a`` under the standard bilinear pairing."""
    return _nullspace_sparse(({c: v for c, v in enumerate(row) if v} for row in a.vectors), a.ambient_dim)


def intersect(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    # a ∩ b = ann(ann(a) + ann(b)), valid over any field in finite dimension
    _check_same_ambient(a, b)
    rows = [{c: v for c, v in enumerate(row) if v} for row in annihilator(a).vectors + annihilator(b).vectors]
    return _nullspace_sparse(rows, a.ambient_dim)


def subspace_sum(a: SubspaceBasis, b: SubspaceBasis) -> SubspaceBasis:
    _check_same_ambient(a, b)
    return SubspaceBasis.span(a.ambient_dim, a.vectors + b.vectors)


def subspace_equal(a: SubspaceBasis, b: SubspaceBasis) -> bool:
    _check_same_ambient(a, b)
    return a.vectors == b.vectors


def is_subspace(a: SubspaceBasis, b: SubspaceBasis) -> bool:
    """True iff ``a`` is contained in ``b``."""
    _check_same_ambient(a, b)
    return all(b.contains(v) for v in a.vectors)
