"""Forms with the algebraic curvature symmetries.

A form lies in the curvature space when it is antisymmetric in each index
pair (property 1) and its cyclic sum over the first three slots vanishes
(the first Bianchi identity, property 2).  Pair symmetry
``f(i,j,k,l) = f(k,l,i,j)`` is a consequence and is never imposed.
"""

from __future__ import annotations

from collections.abc import Sequence
from fractions import Fraction
from functools import lru_cache

from .exact_linalg import DenseMatrix, SubspaceBasis, as_scalar, intersect, nullspace
from .multilinear import Quad, TetraForm, check_dimension, quad_index, quadruples


def property1_witness(f: TetraForm) -> Quad | None:
    """First quadruple breaking antisymmetry in (i, j) or (k, l), or None."""
    for i, j, k, l in quadruples(f.n):
        v = f[i, j, k, l]
        if v != -f[j, i, k, l] or v != -f[i, j, l, k]:
            return (i, j, k, l)
    return None


def bianchi_witness(f: TetraForm) -> Quad | None:
    for i, j, k, l in quadruples(f.n):
        if f[i, j, k, l] + f[j, k, i, l] + f[k, i, j, l]:
            return (i, j, k, l)
    return None


def pair_symmetry_witness(f: TetraForm) -> Quad | None:
    for i, j, k, l in quadruples(f.n):
        if f[i, j, k, l] != f[k, l, i, j]:
            return (i, j, k, l)
    return None


def check_property1(f: TetraForm) -> bool:
    return property1_witness(f) is None


def check_bianchi(f: TetraForm) -> bool:
    return bianchi_witness(f) is None


def pair_swap(f: TetraForm) -> TetraForm:
    return TetraForm.from_function(f.n, lambda i, j, k, l: f[k, l, i, j])


def _relation_rows(n: int, terms) -> list[dict[int, Fraction]]:
    rows = []
    for q in quadruples(n):
        row: dict[int, Fraction] = {}
        for coef, idx in terms(*q):
            c = quad_index(idx, n)
            row[c] = row.get(c, 0) + coef
        row = {c: Fraction(v) for c, v in row.items() if v}
        if row:
            rows.append(row)
    return rows


def property1_rows(n: int) -> list[dict[int, Fraction]]:
    return _relation_rows(
        n, lambda i, j, k, l: [(1, (i, j, k, l)), (1, (j, i, k, l))]
    ) + _relation_rows(n, lambda i, j, k, l: [(1, (i, j, k, l)), (1, (i, j, l, k))])


def bianchi_rows(n: int) -> list[dict[int, Fraction]]:
    return _relation_rows(n, lambda i, j, k, l: [(1, (i, j, k, l)), (1, (j, k, i, l)), (1, (k, i, j, l))])


def constraint_matrix(n: int) -> DenseMatrix:
    """Every instance of properties 1 and 2 as a row over the n**4 coefficients.

    Redundant rows are kept; pair symmetry is deliberately absent.
    """
    check_dimension(n)
    return DenseMatrix.from_sparse_rows(property1_rows(n) + bianchi_rows(n), n**4)


@lru_cache(maxsize=None)
def property1_space(n: int) -> SubspaceBasis:
    check_dimension(n)
    return nullspace(DenseMatrix.from_sparse_rows(property1_rows(n), n**4))


@lru_cache(maxsize=None)
def bianchi_space(n: int) -> SubspaceBasis:
    check_dimension(n)
    return nullspace(DenseMatrix.from_sparse_rows(bianchi_rows(n), n**4))


@lru_cache(maxsize=None)
def curvature_space(n: int) -> SubspaceBasis:
    return nullspace(constraint_matrix(n))


def curvature_space_basis(n: int) -> tuple[TetraForm, ...]:
    return tuple(TetraForm(n, v) for v in curvature_space(n).vectors)


def expected_dimension(n: int) -> int:
    return n * n * (n * n - 1) // 12


def in_curvature_space(f: TetraForm) -> bool:
    return curvature_space(f.n).contains(f.coeffs)


def elementary_property1_forms(n: int) -> tuple[TetraForm, ...]:
    """Spanning set of the property-1 forms: (e*_i ^ e*_j) (x) (e*_k ^ e*_l), i<j, k<l."""
    check_dimension(n)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return tuple(product_form(n, a, b) for a in pairs for b in pairs)


def product_form(n: int, first: tuple[int, int], second: tuple[int, int]) -> TetraForm:
    """The form (e*_a ^ e*_b)(x, y) * (e*_c ^ e*_d)(z, w)."""
    a, b = first
    c, d = second

    def pair(x: int, y: int, p: int, q: int) -> int:
        return (x == p and y == q) - (x == q and y == p)

    return TetraForm.from_function(n, lambda i, j, k, l: pair(i, j, a, b) * pair(k, l, c, d))


def constant_curvature_form(h: Sequence[Sequence[int | str | Fraction]]) -> TetraForm:
    """``f(i,j,k,l) = h(i,k) h(j,l) - h(i,l) h(j,k)`` for a symmetric ``h``."""
    n = len(h)
    table = [[as_scalar(x) for x in row] for row in h]
    if any(len(row) != n for row in table):
        raise ValueError("h must be square")
    for i in range(n):
        for j in range(i + 1, n):
            if table[i][j] != table[j][i]:
                raise ValueError(f"h is not symmetric at ({i}, {j})")
    return TetraForm.from_function(
        n, lambda i, j, k, l: table[i][k] * table[j][l] - table[i][l] * table[j][k]
    )


def property1_and_bianchi_space(n: int) -> SubspaceBasis:
    """Same space as :func:`curvature_space`, assembled by intersecting the two kernels."""
    return intersect(property1_space(n), bianchi_space(n))
