"""The identification of curvature forms with SL(2)-invariant 4-vectors.

A form f antisymmetric in both index pairs is sent to

    sum over i<j, k<l of f(i,j,k,l) * (u1 e*_i) ^ (u1 e*_j) ^ (u2 e*_k) ^ (u2 e*_l)

with no normalizing factor, so both round trips are literally the identity.
The verification helpers compare the two sides as exact subspaces.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .curvature import (
    check_bianchi,
    check_property1,
    curvature_space,
    curvature_space_basis,
    elementary_property1_forms,
    pair_swap,
    property1_and_bianchi_space,
    property1_space,
    property1_witness,
)
from .exact_linalg import ZERO, DenseMatrix, SubspaceBasis, nullspace, subspace_equal
from .multilinear import (
    ExteriorElement,
    TetraForm,
    bidegree,
    check_dimension,
    exterior_dim,
    monomial_positions,
    monomials,
)
from .sl2_action import (
    E,
    F,
    SL2Element,
    group_act,
    lie_act,
    lie_operator,
    sl2_invariants,
    weight_zero_space,
)


class ContractViolation(ValueError):
    """An input lies outside the domain on which the identification is defined."""


def _pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def to_exterior(f: TetraForm) -> ExteriorElement:
    witness = property1_witness(f)
    if witness is not None:
        raise ContractViolation(f"form is not antisymmetric in its index pairs at {witness}")
    n = f.n
    positions = monomial_positions(n)
    coeffs = [ZERO] * exterior_dim(n)
    for i, j in _pairs(n):
        for k, l in _pairs(n):
            coeffs[positions[i, j, n + k, n + l]] = f[i, j, k, l]
    return ExteriorElement(n, tuple(coeffs))


def from_exterior(x: ExteriorElement, strict: bool = False) -> TetraForm:
    """Inverse of :func:`to_exterior` on bidegree-2 elements.

    With ``strict`` the element must additionally be SL(2)-invariant.
    """
    n = x.n
    for w, v in x.items():
        if bidegree(w, n) != 2:
            raise ContractViolation(f"coefficient {v} on monomial {w} of bidegree {bidegree(w, n)}, expected 2")
    if strict and not sl2_invariants(n).contains(x.coeffs):
        raise ContractViolation("element is not SL(2)-invariant")
    entries: dict[tuple[int, int, int, int], Fraction] = {}
    for w, v in x.items():
        i, j, k, l = w[0], w[1], w[2] - n, w[3] - n
        entries[i, j, k, l] = v
        entries[j, i, k, l] = -v
        entries[i, j, l, k] = -v
        entries[j, i, l, k] = v
    return TetraForm.from_entries(n, entries)


@dataclass
class Check:
    name: str
    passed: bool
    witness: str | None = None

    def as_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed}
        if self.witness is not None:
            out["witness"] = self.witness
        return out


@dataclass
class IsomorphismReport:
    n: int
    dim_curvature: int
    dim_invariants: int
    checks: list[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "dim_curvature": self.dim_curvature,
            "dim_invariants": self.dim_invariants,
            "passed": self.passed,
            "checks": [c.as_dict() for c in self.checks],
        }


def _terms(x: ExteriorElement) -> str:
    return ", ".join(f"{w}:{v}" for w, v in x.items()) or "0"


def verify_isomorphism(n: int) -> IsomorphismReport:
    check_dimension(n)
    forms = curvature_space_basis(n)
    invariants = sl2_invariants(n)
    report = IsomorphismReport(n, len(forms), invariants.dim)

    bad = next((idx for idx, f in enumerate(forms) if not invariants.contains(to_exterior(f).coeffs)), None)
    report.checks.append(
        Check("forms_map_to_invariants", bad is None, None if bad is None else f"curvature basis form #{bad}")
    )

    witness = None
    for idx, v in enumerate(invariants.vectors):
        g = from_exterior(ExteriorElement(n, v))
        if not (check_property1(g) and check_bianchi(g)):
            witness = f"invariant basis vector #{idx}"
            break
    report.checks.append(Check("invariants_map_to_forms", witness is None, witness))

    witness = None
    for idx, f in enumerate(forms):
        if from_exterior(to_exterior(f)) != f:
            witness = f"form round trip fails on curvature basis form #{idx}"
            break
    if witness is None:
        for idx, v in enumerate(invariants.vectors):
            x = ExteriorElement(n, v)
            if to_exterior(from_exterior(x)) != x:
                witness = f"exterior round trip fails on invariant #{idx}: {_terms(x)}"
                break
    report.checks.append(Check("round_trips", witness is None, witness))

    same = report.dim_curvature == report.dim_invariants
    report.checks.append(
        Check("dimensions_agree", same, None if same else f"{report.dim_curvature} != {report.dim_invariants}")
    )
    return report


def forms_to_exterior_space(space: SubspaceBasis, n: int) -> SubspaceBasis:
    return SubspaceBasis.span(exterior_dim(n), [to_exterior(TetraForm(n, v)).coeffs for v in space.vectors])


def exterior_to_forms_space(space: SubspaceBasis, n: int) -> SubspaceBasis:
    return SubspaceBasis.span(n**4, [from_exterior(ExteriorElement(n, v)).coeffs for v in space.vectors])


def verify_property1_is_weight_zero(n: int) -> bool:
    """The image of the property-1 forms is exactly the torus-invariant part."""
    return subspace_equal(forms_to_exterior_space(property1_space(n), n), weight_zero_space(n))


def e_kernel_in_bidegree_two(n: int) -> SubspaceBasis:
    """Kernel of ``e`` restricted to the bidegree-2 summand, in exterior coordinates."""
    check_dimension(n)
    cols = [pos for pos, w in enumerate(monomials(n)) if bidegree(w, n) == 2]
    op = lie_operator(E, n)
    restricted = DenseMatrix(op.rows, len(cols), tuple(tuple(row[c] for c in cols) for row in op.entries))
    local = nullspace(restricted)
    vectors = []
    for v in local.vectors:
        full = [ZERO] * exterior_dim(n)
        for c, value in zip(cols, v):
            full[c] = value
        vectors.append(full)
    return SubspaceBasis.span(exterior_dim(n), vectors)


def verify_bianchi_equals_ekernel(n: int) -> bool:
    """Within bidegree 2, killed by ``e`` <=> the corresponding form satisfies Bianchi."""
    pulled_back = exterior_to_forms_space(e_kernel_in_bidegree_two(n), n)
    return subspace_equal(pulled_back, property1_and_bianchi_space(n))


def _primed_factor(g: SL2Element, block: int, v: int, n: int) -> list[Fraction]:
    """Coordinates in W of g(u_{block+1}) (x) e*_v."""
    vec = [ZERO] * (2 * n)
    image = g.matrix()
    vec[v] = image[0][block]
    vec[n + v] = image[1][block]
    return vec


def _wedge_of_vectors(vectors: list[list[Fraction]], n: int) -> ExteriorElement:
    """w1 ^ w2 ^ w3 ^ w4 via 4x4 minors: coefficient on (p<q<r<s) is a determinant."""
    coeffs = []
    for w in monomials(n):
        minor = [[vec[p] for p in w] for vec in vectors]
        coeffs.append(_det(minor))
    return ExteriorElement(n, tuple(coeffs))


def _det(m: list[list[Fraction]]) -> Fraction:
    total = ZERO
    for perm in itertools.permutations(range(len(m))):
        prod = Fraction(1)
        for r, c in enumerate(perm):
            prod *= m[r][c]
            if not prod:
                break
        if prod:
            inversions = sum(1 for a, b in itertools.combinations(perm, 2) if a > b)
            total += -prod if inversions % 2 else prod
    return total


def primed_to_exterior(f: TetraForm, g: SL2Element) -> ExteriorElement:
    """The identification rebuilt on the basis u1' = g(u1), u2' = g(u2).

    Computed from determinants of coordinate vectors, independently of
    :func:`group_act`.
    """
    if not check_property1(f):
        raise ContractViolation(f"form is not antisymmetric in its index pairs at {property1_witness(f)}")
    n = f.n
    out = ExteriorElement.zero(n)
    for i, j in _pairs(n):
        for k, l in _pairs(n):
            coef = f[i, j, k, l]
            if coef:
                legs = [
                    _primed_factor(g, 0, i, n),
                    _primed_factor(g, 0, j, n),
                    _primed_factor(g, 1, k, n),
                    _primed_factor(g, 1, l, n),
                ]
                out = out + _wedge_of_vectors(legs, n) * coef
    return out


def verify_basis_independence(n: int, g: SL2Element) -> bool:
    """Primed identification equals ``g`` applied to the unprimed one, and on
    curvature forms both identifications coincide."""
    for f in curvature_space_basis(n):
        x = to_exterior(f)
        primed = primed_to_exterior(f, g)
        if primed != group_act(g, x) or primed != x:
            return False
    return True


def verify_pair_symmetry_mechanism(n: int) -> bool:
    rot = SL2Element.rotation()
    for f in elementary_property1_forms(n):
        if group_act(rot, to_exterior(f)) != to_exterior(pair_swap(f)):
            return False
    for f in curvature_space_basis(n):
        x = to_exterior(f)
        if group_act(rot, x) != x or pair_swap(f) != f:
            return False
    return True


def verify_form_level_invariance(n: int, g: SL2Element) -> bool:
    """from_exterior(g . to_exterior(f)) == f for every curvature basis form."""
    return all(from_exterior(group_act(g, to_exterior(f))) == f for f in curvature_space_basis(n))


def verify_e_kernel_forms_are_f_killed(n: int) -> bool:
    """The upgrade step: torus- and e-invariant elements are already f-invariant."""
    image = forms_to_exterior_space(curvature_space(n), n)
    return all(lie_act(F, ExteriorElement(n, v)).is_zero() for v in image.vectors)
