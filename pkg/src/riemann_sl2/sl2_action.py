"""SL(2) and sl(2) acting on the fourth exterior power of U (x) V*.

Matrix convention: ``SL2Element(a, b, c, d)`` sends u1 to a*u1 + c*u2 and
u2 to b*u1 + d*u2, i.e. the columns of [[a, b], [c, d]] are the images of
u1 and u2.  With this convention composition is ordinary matrix product and
the unipotent family u2 -> u2 + t*u1 is the upper-triangular [[1, t], [0, 1]],
whose derivative at t = 0 is the raising operator ``e``.

The group acts on the U-factor of each leg and is extended multiplicatively;
the Lie algebra acts by derivations.  Invariant subspaces are kernels of the
Lie-algebra operators, computed exactly.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exact_linalg import (
    ZERO,
    DenseMatrix,
    SubspaceBasis,
    as_scalar,
    intersect,
    nullspace,
    rref,
    subspace_equal,
)
from .multilinear import (
    ExteriorElement,
    bidegree,
    check_dimension,
    exterior_dim,
    monomial_positions,
    monomials,
    wedge_sort,
)


@dataclass(frozen=True)
class SL2Element:
    a: Fraction
    b: Fraction
    c: Fraction
    d: Fraction

    def __init__(self, a, b, c, d) -> None:
        object.__setattr__(self, "a", as_scalar(a))
        object.__setattr__(self, "b", as_scalar(b))
        object.__setattr__(self, "c", as_scalar(c))
        object.__setattr__(self, "d", as_scalar(d))
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError(f"determinant must be 1, got {self.a * self.d - self.b * self.c}")

    @classmethod
    def from_matrix(cls, m) -> SL2Element:
        (a, b), (c, d) = m
        return cls(a, b, c, d)

    @classmethod
    def identity(cls) -> SL2Element:
        return cls(1, 0, 0, 1)

    @classmethod
    def diagonal(cls, mu) -> SL2Element:
        mu = as_scalar(mu)
        return cls(mu, 0, 0, 1 / mu)

    @classmethod
    def upper(cls, t) -> SL2Element:
        """u1 -> u1, u2 -> u2 + t*u1."""
        return cls(1, t, 0, 1)

    @classmethod
    def lower(cls, t) -> SL2Element:
        return cls(1, 0, t, 1)

    @classmethod
    def rotation(cls) -> SL2Element:
        """u1 -> u2, u2 -> -u1."""
        return cls(0, -1, 1, 0)

    def __matmul__(self, other: SL2Element) -> SL2Element:
        return SL2Element(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def inverse(self) -> SL2Element:
        return SL2Element(self.d, -self.b, -self.c, self.a)

    def matrix(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        return ((self.a, self.b), (self.c, self.d))


@dataclass(frozen=True)
class SL2LieElement:
    """x_e*e + x_f*f + x_h*h with e: u2 -> u1, f: u1 -> u2, h = diag(1, -1)."""

    x_e: Fraction = ZERO
    x_f: Fraction = ZERO
    x_h: Fraction = ZERO

    def matrix(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        # same column convention as SL2Element
        e, f, h = as_scalar(self.x_e), as_scalar(self.x_f), as_scalar(self.x_h)
        return ((h, e), (f, -h))

    def bracket(self, other: SL2LieElement) -> SL2LieElement:
        (a, b), (c, _) = _commutator(self.matrix(), other.matrix())
        return SL2LieElement(x_e=b, x_f=c, x_h=a)


E = SL2LieElement(x_e=Fraction(1))
F = SL2LieElement(x_f=Fraction(1))
H = SL2LieElement(x_h=Fraction(1))


def _mat_mul(m, k):
    return tuple(tuple(sum(m[r][t] * k[t][c] for t in range(2)) for c in range(2)) for r in range(2))


def _commutator(m, k):
    mk, km = _mat_mul(m, k), _mat_mul(k, m)
    return tuple(tuple(mk[r][c] - km[r][c] for c in range(2)) for r in range(2))


def _leg_image(matrix, leg: int, n: int) -> list[tuple[int, Fraction]]:
    """Image of one W basis vector under a 2x2 map acting on the U factor."""
    block, v = divmod(leg, n)
    # column ``block`` of the matrix holds the image of u_{block+1}
    out = []
    for target in (0, 1):
        coef = matrix[target][block]
        if coef:
            out.append((target * n + v, coef))
    return out


def _accumulate(n: int, terms) -> ExteriorElement:
    positions = monomial_positions(n)
    coeffs = [ZERO] * exterior_dim(n)
    for legs, coef in terms:
        w, sign = wedge_sort(legs)
        if sign:
            coeffs[positions[w]] += sign * coef
    return ExteriorElement(n, tuple(coeffs))


def group_act(g: SL2Element, x: ExteriorElement) -> ExteriorElement:
    n = x.n
    m = g.matrix()

    def terms():
        for w, coef in x.items():
            images = [_leg_image(m, leg, n) for leg in w]
            for choice in itertools.product(*images):
                prod = coef
                for _, c in choice:
                    prod *= c
                yield tuple(leg for leg, _ in choice), prod

    return _accumulate(n, terms())


def lie_act(X: SL2LieElement, x: ExteriorElement) -> ExteriorElement:
    """Derivation action: sum over legs of X applied to that leg alone."""
    n = x.n
    m = X.matrix()

    def terms():
        for w, coef in x.items():
            for slot, leg in enumerate(w):
                for new_leg, c in _leg_image(m, leg, n):
                    legs = list(w)
                    legs[slot] = new_leg
                    yield tuple(legs), coef * c

    return _accumulate(n, terms())


def weight_of(w, n: int) -> int:
    """Torus weight 2*bidegree - 4, the h-eigenvalue of the monomial."""
    return 2 * bidegree(w, n) - 4


@lru_cache(maxsize=None)
def lie_operator(X: SL2LieElement, n: int) -> DenseMatrix:
    """Matrix of ``lie_act(X, .)`` on the monomial basis (column p = image of monomial p)."""
    check_dimension(n)
    columns = [lie_act(X, ExteriorElement.monomial(n, w)).coeffs for w in monomials(n)]
    return DenseMatrix.from_columns(columns, exterior_dim(n))


def group_operator(g: SL2Element, n: int) -> DenseMatrix:
    check_dimension(n)
    columns = [group_act(g, ExteriorElement.monomial(n, w)).coeffs for w in monomials(n)]
    return DenseMatrix.from_columns(columns, exterior_dim(n))


@lru_cache(maxsize=None)
def weight_zero_space(n: int) -> SubspaceBasis:
    return nullspace(lie_operator(H, n))


@lru_cache(maxsize=None)
def sb2_invariants(n: int) -> SubspaceBasis:
    """Weight-0 vectors killed by ``e``: invariants of the triangular subgroup."""
    return nullspace(lie_operator(H, n).stack(lie_operator(E, n)))


@lru_cache(maxsize=None)
def sl2_invariants(n: int) -> SubspaceBasis:
    """Joint kernel of e, f and h, computed as an intersection of three separate kernels."""
    kernels = [nullspace(lie_operator(X, n)) for X in (E, F, H)]
    return intersect(intersect(kernels[0], kernels[1]), kernels[2])


def sl2_invariant_elements(n: int) -> tuple[ExteriorElement, ...]:
    return tuple(ExteriorElement(n, v) for v in sl2_invariants(n).vectors)


def verify_lemma(n: int) -> bool:
    return subspace_equal(sb2_invariants(n), sl2_invariants(n))


def bidegree_two_space(n: int) -> SubspaceBasis:
    check_dimension(n)
    vectors = []
    for pos, w in enumerate(monomials(n)):
        if bidegree(w, n) == 2:
            vec = [ZERO] * exterior_dim(n)
            vec[pos] = Fraction(1)
            vectors.append(vec)
    return SubspaceBasis.span(exterior_dim(n), vectors)


def verify_weight_zero_is_bidegree_two(n: int) -> bool:
    return subspace_equal(weight_zero_space(n), bidegree_two_space(n))


def lambda_coefficients(g_of_t, x: ExteriorElement, degree: int = 4) -> list[ExteriorElement]:
    """Coefficients of the polynomial ``t -> group_act(g_of_t(t), x)``.

    Matrix entries of a one-parameter family that are affine in ``t`` give a
    polynomial of degree at most 4 in ``t`` (one factor per leg), recovered
    exactly by Lagrange interpolation at ``degree + 1`` integer nodes.
    """
    nodes = [Fraction(t) for t in range(degree + 1)]
    values = [group_act(g_of_t(t), x).coeffs for t in nodes]
    size = len(x.coeffs)
    # Solve the Vandermonde system column by column.
    vandermonde = [[t**p for p in range(degree + 1)] for t in nodes]
    inverse = _invert(vandermonde)
    out = []
    for p in range(degree + 1):
        out.append(
            ExteriorElement(
                x.n,
                tuple(sum((inverse[p][r] * values[r][s] for r in range(degree + 1)), ZERO) for s in range(size)),
            )
        )
    return out


def _invert(m: list[list[Fraction]]) -> list[list[Fraction]]:
    size = len(m)
    augmented = DenseMatrix.from_rows([list(row) + [int(i == j) for j in range(size)] for i, row in enumerate(m)])
    reduced, _ = rref(augmented)
    return [list(row[size:]) for row in reduced.entries]
