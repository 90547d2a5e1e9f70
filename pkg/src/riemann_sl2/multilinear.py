"""Tetralinear forms on V and the fourth exterior power of W = U (x) V*.

Basis conventions for W (dimension 2n): index ``p < n`` is u1 (x) e*_p and
index ``n + p`` is u2 (x) e*_p.  All u1-legs therefore sort before all
u2-legs, and the bidegree of a wedge monomial is a prefix count.

Both element types are dense: a TetraForm holds n**4 coefficients in
lexicographic (i, j, k, l) order, an ExteriorElement holds C(2n, 4)
coefficients in lexicographic order of strictly increasing 4-tuples.
"""

from __future__ import annotations

import itertools
from collections.abc import Callable, Iterable, Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .exact_linalg import ZERO, Vector, as_scalar

Quad = tuple[int, int, int, int]


def check_dimension(n: int) -> None:
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"dimension of V must be a positive integer, got {n!r}")


@lru_cache(maxsize=None)
def quadruples(n: int) -> tuple[Quad, ...]:
    return tuple(itertools.product(range(n), repeat=4))


def quad_index(q: Quad, n: int) -> int:
    i, j, k, l = q
    return ((i * n + j) * n + k) * n + l


@dataclass(frozen=True)
class TetraForm:
    """A tetralinear form on an n-dimensional space, stored by its values on basis quadruples."""

    n: int
    coeffs: Vector

    def __post_init__(self) -> None:
        check_dimension(self.n)
        if len(self.coeffs) != self.n**4:
            raise ValueError(f"a form on dimension {self.n} needs {self.n ** 4} coefficients, got {len(self.coeffs)}")

    @classmethod
    def zero(cls, n: int) -> TetraForm:
        return cls(n, (ZERO,) * n**4)

    @classmethod
    def from_entries(cls, n: int, entries: Mapping[Quad, int | str | Fraction]) -> TetraForm:
        coeffs = [ZERO] * n**4
        for q, v in entries.items():
            if len(q) != 4 or any(not 0 <= x < n for x in q):
                raise IndexError(f"quadruple {q} out of range for n={n}")
            coeffs[quad_index(q, n)] = as_scalar(v)
        return cls(n, tuple(coeffs))

    @classmethod
    def from_function(cls, n: int, fn: Callable[[int, int, int, int], int | Fraction]) -> TetraForm:
        return cls(n, tuple(as_scalar(fn(*q)) for q in quadruples(n)))

    def __getitem__(self, q: Quad) -> Fraction:
        return self.coeffs[quad_index(q, self.n)]

    def items(self) -> Iterator[tuple[Quad, Fraction]]:
        """Nonzero (quadruple, value) pairs in lexicographic order."""
        for q, v in zip(quadruples(self.n), self.coeffs):
            if v:
                yield q, v

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: TetraForm) -> TetraForm:
        _same_n(self.n, other.n)
        return TetraForm(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: TetraForm) -> TetraForm:
        _same_n(self.n, other.n)
        return TetraForm(self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> TetraForm:
        return TetraForm(self.n, tuple(-a for a in self.coeffs))

    def __mul__(self, factor: int | Fraction) -> TetraForm:
        factor = as_scalar(factor)
        return TetraForm(self.n, tuple(factor * a for a in self.coeffs))

    __rmul__ = __mul__


def _same_n(a: int, b: int) -> None:
    if a != b:
        raise ValueError(f"dimension mismatch: {a} vs {b}")


def wedge_sort(legs: Iterable[int]) -> tuple[tuple[int, ...], int]:
    """Sort wedge legs, returning the sorted tuple and the permutation sign.

    A repeated leg gives sign 0 (the legs are returned sorted regardless).

    >>> wedge_sort((1, 0, 2, 3))
    ((0, 1, 2, 3), -1)
    """
    legs = list(legs)
    if len(set(legs)) != len(legs):
        return tuple(sorted(legs)), 0
    sign = 1
    # insertion sort, counting transpositions
    for a in range(1, len(legs)):
        b = a
        while b > 0 and legs[b - 1] > legs[b]:
            legs[b - 1], legs[b] = legs[b], legs[b - 1]
            sign = -sign
            b -= 1
    return tuple(legs), sign


@lru_cache(maxsize=None)
def monomials(n: int) -> tuple[Quad, ...]:
    """Canonical wedge monomials of the fourth exterior power, lexicographic."""
    return tuple(itertools.combinations(range(2 * n), 4))


@lru_cache(maxsize=None)
def monomial_positions(n: int) -> dict[Quad, int]:
    return {w: pos for pos, w in enumerate(monomials(n))}


def exterior_dim(n: int) -> int:
    return comb(2 * n, 4)


def bidegree(w: Iterable[int], n: int) -> int:
    """Number of legs in the u1-block, i.e. legs with index below n."""
    legs = tuple(w)
    if len(legs) != 4 or any(not 0 <= p < 2 * n for p in legs):
        raise ValueError(f"legs {legs} are not a valid wedge index for n={n}")
    return sum(1 for p in legs if p < n)


@dataclass(frozen=True)
class ExteriorElement:
    n: int
    coeffs: Vector

    def __post_init__(self) -> None:
        check_dimension(self.n)
        if len(self.coeffs) != exterior_dim(self.n):
            raise ValueError(f"expected {exterior_dim(self.n)} coefficients, got {len(self.coeffs)}")

    @classmethod
    def zero(cls, n: int) -> ExteriorElement:
        return cls(n, (ZERO,) * exterior_dim(n))

    @classmethod
    def from_terms(cls, n: int, terms: Mapping[Iterable[int], int | str | Fraction]) -> ExteriorElement:
        """Build from arbitrary (possibly unsorted) leg tuples; signs follow wedge_sort."""
        coeffs = [ZERO] * exterior_dim(n)
        positions = monomial_positions(n)
        for legs, v in terms.items():
            legs = tuple(legs)
            bidegree(legs, n)
            w, sign = wedge_sort(legs)
            if sign:
                coeffs[positions[w]] += sign * as_scalar(v)
        return cls(n, tuple(coeffs))

    @classmethod
    def monomial(cls, n: int, legs: Iterable[int]) -> ExteriorElement:
        return cls.from_terms(n, {tuple(legs): 1})

    def __getitem__(self, legs: Quad) -> Fraction:
        w, sign = wedge_sort(legs)
        if not sign:
            return ZERO
        return sign * self.coeffs[monomial_positions(self.n)[w]]

    def items(self) -> Iterator[tuple[Quad, Fraction]]:
        for w, v in zip(monomials(self.n), self.coeffs):
            if v:
                yield w, v

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: ExteriorElement) -> ExteriorElement:
        _same_n(self.n, other.n)
        return ExteriorElement(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: ExteriorElement) -> ExteriorElement:
        _same_n(self.n, other.n)
        return ExteriorElement(self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> ExteriorElement:
        return ExteriorElement(self.n, tuple(-a for a in self.coeffs))

    def __mul__(self, factor: int | Fraction) -> ExteriorElement:
        factor = as_scalar(factor)
        return ExteriorElement(self.n, tuple(factor * a for a in self.coeffs))

    __rmul__ = __mul__


def bidegree_component(x: ExteriorElement, i: int) -> ExteriorElement:
    """Projection onto the summand with ``i`` legs in the u1-block."""
    if not 0 <= i <= 4:
        raise ValueError(f"bidegree must lie in 0..4, got {i}")
    return ExteriorElement(
        x.n,
        tuple(v if bidegree(w, x.n) == i else ZERO for w, v in zip(monomials(x.n), x.coeffs)),
    )


def bidegree_counts(n: int) -> tuple[int, ...]:
    """Number of monomials of each bidegree 0..4."""
    counts = [0] * 5
    for w in monomials(n):
        counts[bidegree(w, n)] += 1
    return tuple(counts)
