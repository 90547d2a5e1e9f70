from fractions import Fraction
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from riemann_sl2.curvature import (
    check_bianchi,
    constant_curvature_form,
    curvature_space,
    curvature_space_basis,
    elementary_property1_forms,
    pair_swap,
    product_form,
    property1_space,
)
from riemann_sl2.exact_linalg import subspace_equal
from riemann_sl2.isomorphism import (
    ContractViolation,
    e_kernel_in_bidegree_two,
    exterior_to_forms_space,
    forms_to_exterior_space,
    from_exterior,
    primed_to_exterior,
    to_exterior,
    verify_basis_independence,
    verify_bianchi_equals_ekernel,
    verify_e_kernel_forms_are_f_killed,
    verify_form_level_invariance,
    verify_isomorphism,
    verify_pair_symmetry_mechanism,
    verify_property1_is_weight_zero,
)
from riemann_sl2.multilinear import ExteriorElement, TetraForm
from riemann_sl2.sl2_action import E, SL2Element, group_act, lie_act, sl2_invariant_elements, sl2_invariants

G = TetraForm.from_entries(2, {(0, 1, 0, 1): 1, (1, 0, 0, 1): -1, (0, 1, 1, 0): -1, (1, 0, 1, 0): 1})
F = product_form(3, (0, 1), (0, 2))
ROT = SL2Element.rotation()
GROUP_SAMPLES = [
    SL2Element.identity(),
    SL2Element.upper(1),
    SL2Element.lower(1),
    SL2Element.rotation(),
    SL2Element.diagonal(2),
    SL2Element.upper(Fraction(-2, 3)) @ SL2Element.lower(5),
]


def test_to_exterior_of_G():
    assert to_exterior(G) == ExteriorElement.monomial(2, (0, 1, 2, 3))


def test_to_exterior_zero_and_linear():
    assert to_exterior(TetraForm.zero(3)).is_zero()
    assert to_exterior(F * 2) == to_exterior(F) * 2


def test_to_exterior_rejects_non_antisymmetric():
    with pytest.raises(ContractViolation):
        to_exterior(TetraForm.from_entries(2, {(0, 0, 0, 1): 1}))


def test_from_exterior_examples():
    assert from_exterior(ExteriorElement.monomial(2, (0, 1, 2, 3))) == G
    assert from_exterior(ExteriorElement.zero(3)) == TetraForm.zero(3)


def test_from_exterior_names_offending_monomial():
    with pytest.raises(ContractViolation, match=r"\(0, 1, 2, 3\)"):
        from_exterior(ExteriorElement.monomial(3, (0, 1, 2, 3)))


def test_from_exterior_strict_mode():
    x = to_exterior(F)
    assert from_exterior(x) == F
    with pytest.raises(ContractViolation):
        from_exterior(x, strict=True)
    y = sl2_invariant_elements(3)[0]
    assert to_exterior(from_exterior(y, strict=True)) == y


@pytest.mark.parametrize("n", range(1, 5))
def test_round_trips(n):
    for f in curvature_space_basis(n):
        assert from_exterior(to_exterior(f)) == f
    for x in sl2_invariant_elements(n):
        assert to_exterior(from_exterior(x)) == x


@pytest.mark.parametrize("n", range(2, 5))
def test_property1_forms_biject_onto_bidegree_two(n):
    image = forms_to_exterior_space(property1_space(n), n)
    assert image.dim == comb(n, 2) ** 2 == property1_space(n).dim
    assert verify_property1_is_weight_zero(n)


@pytest.mark.parametrize("n, dim", [(1, 0), (2, 1), (3, 6), (4, 20)])
def test_verify_isomorphism(n, dim):
    report = verify_isomorphism(n)
    assert report.passed
    assert report.dim_curvature == report.dim_invariants == dim
    assert [c.name for c in report.checks] == [
        "forms_map_to_invariants",
        "invariants_map_to_forms",
        "round_trips",
        "dimensions_agree",
    ]


@pytest.mark.parametrize("n", range(1, 5))
def test_bianchi_equals_e_kernel(n):
    assert verify_bianchi_equals_ekernel(n)


def test_e_kernel_dimensions():
    assert e_kernel_in_bidegree_two(2).dim == 1
    assert e_kernel_in_bidegree_two(3).dim == 6


def test_negative_control_fails_both_ways():
    assert not check_bianchi(F)
    assert not lie_act(E, to_exterior(F)).is_zero()


@pytest.mark.parametrize("n", range(1, 5))
def test_e_killed_forms_are_f_killed(n):
    assert verify_e_kernel_forms_are_f_killed(n)


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("g", GROUP_SAMPLES)
def test_basis_independence(n, g):
    assert verify_basis_independence(n, g)


@pytest.mark.parametrize("g", GROUP_SAMPLES)
def test_primed_identification_is_g_transform_on_all_property1_forms(g):
    # off the invariants the two identifications differ, but by exactly g
    for f in elementary_property1_forms(3):
        assert primed_to_exterior(f, g) == group_act(g, to_exterior(f))


def test_basis_change_moves_non_curvature_forms():
    assert primed_to_exterior(F, SL2Element.upper(1)) != to_exterior(F)


def test_rotation_swaps_pairs_on_F():
    assert group_act(ROT, to_exterior(F)) == to_exterior(product_form(3, (0, 2), (0, 1)))


@pytest.mark.parametrize("n", range(1, 5))
def test_pair_symmetry_mechanism(n):
    assert verify_pair_symmetry_mechanism(n)


def test_pair_symmetry_n2():
    top = to_exterior(G)
    assert group_act(ROT, top) == top and pair_swap(G) == G


@pytest.mark.parametrize("n", [2, 3, 4])
@pytest.mark.parametrize("g", GROUP_SAMPLES)
def test_form_level_invariance(n, g):
    assert verify_form_level_invariance(n, g)


@given(st.fractions(min_value=-5, max_value=5, max_denominator=7).filter(bool))
def test_rescaling_does_not_change_outcomes(c):
    f = constant_curvature_form([[1, 2, 0], [2, -1, 1], [0, 1, 3]]) * c
    x = to_exterior(f)
    assert sl2_invariants(3).contains(x.coeffs)
    assert from_exterior(x) == f
    assert group_act(ROT, x) == x
    assert lie_act(E, to_exterior(F * c)) == lie_act(E, to_exterior(F)) * c


def test_e_kernel_pullback_is_curvature_space():
    assert subspace_equal(exterior_to_forms_space(e_kernel_in_bidegree_two(3), 3), curvature_space(3))
