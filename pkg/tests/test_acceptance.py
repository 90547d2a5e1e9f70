"""Exit criteria.  Every comparison is exact; there is no tolerance to tune.

A PASS/FAIL line per criterion is printed in the terminal summary (see conftest.py).
"""

import io
import itertools
import json
import random
from fractions import Fraction
from math import comb

import pytest

from riemann_sl2.cli import (
    dumps_documents,
    exterior_from_document,
    exterior_to_document,
    form_from_document,
    form_to_document,
    main,
)
from riemann_sl2.curvature import (
    check_bianchi,
    check_property1,
    constant_curvature_form,
    constraint_matrix,
    curvature_space_basis,
    elementary_property1_forms,
    in_curvature_space,
    pair_swap,
)
from riemann_sl2.exact_linalg import nullspace, subspace_equal
from riemann_sl2.isomorphism import (
    from_exterior,
    to_exterior,
    verify_basis_independence,
    verify_bianchi_equals_ekernel,
)
from riemann_sl2.multilinear import ExteriorElement, bidegree_counts, exterior_dim
from riemann_sl2.sl2_action import (
    E,
    F,
    H,
    SL2Element,
    bidegree_two_space,
    group_act,
    lie_operator,
    sb2_invariants,
    sl2_invariant_elements,
    sl2_invariants,
    weight_zero_space,
)

rng = random.Random(20261015)


def random_rational():
    return Fraction(rng.randint(-4, 4), rng.randint(1, 3))


def random_sl2():
    g = SL2Element.identity()
    for _ in range(3):
        g = g @ SL2Element.upper(random_rational()) @ SL2Element.lower(random_rational())
        mu = random_rational() or Fraction(1)
        g = g @ SL2Element.diagonal(mu)
    return g


def random_exterior(n):
    return ExteriorElement(n, tuple(Fraction(rng.randint(-3, 3)) for _ in range(exterior_dim(n))))


def test_criterion_1_dimension_agreement():
    expected = (0, 1, 6, 20, 50)
    for n in range(1, 6):
        by_constraints = nullspace(constraint_matrix(n)).dim
        by_lie_kernels = sl2_invariants(n).dim
        assert by_constraints == by_lie_kernels == expected[n - 1], n


def test_criterion_2_lemma():
    for n in range(1, 6):
        assert subspace_equal(sb2_invariants(n), sl2_invariants(n)), n


def test_criterion_3_proof_step_chain():
    for n in range(1, 5):
        assert subspace_equal(weight_zero_space(n), bidegree_two_space(n)), n
        assert weight_zero_space(n).dim == comb(n, 2) ** 2, n
        assert verify_bianchi_equals_ekernel(n), n


def test_criterion_4_round_trips():
    for n in range(1, 5):
        for f in curvature_space_basis(n):
            assert from_exterior(to_exterior(f)) == f
        for x in sl2_invariant_elements(n):
            assert to_exterior(from_exterior(x)) == x


def test_criterion_5_pair_symmetry_mechanism():
    rot = SL2Element.rotation()
    for n in range(1, 5):
        for f in elementary_property1_forms(n):
            assert group_act(rot, to_exterior(f)) == to_exterior(pair_swap(f))
    for n, count in ((3, 6), (4, 20)):
        basis = curvature_space_basis(n)
        assert len(basis) == count
        assert all(pair_swap(f) == f for f in basis)


def test_criterion_6_basis_independence():
    for g in (
        SL2Element.identity(),
        SL2Element(1, 1, 0, 1),
        SL2Element(1, 0, 1, 1),
        SL2Element(0, -1, 1, 0),
        SL2Element(2, 0, 0, Fraction(1, 2)),
    ):
        assert verify_basis_independence(3, g), g


def test_criterion_7_structural_suites():
    for n in range(1, 7):
        assert sum(bidegree_counts(n)) == comb(2 * n, 4)

    for n in range(1, 5):
        e, f, h = (lie_operator(X, n) for X in (E, F, H))
        assert h @ e - e @ h == e.scale(2)
        assert h @ f - f @ h == f.scale(-2)
        assert e @ f - f @ e == h

    for n in (2, 3, 4):
        for _ in range(5):
            g1, g2, x = random_sl2(), random_sl2(), random_exterior(n)
            assert group_act(g1, group_act(g2, x)) == group_act(g1 @ g2, x)
            assert group_act(g1.inverse(), group_act(g1, x)) == x

    for n in (2, 3, 4):
        for _ in range(10):
            h = [[0] * n for _ in range(n)]
            for i, j in itertools.combinations_with_replacement(range(n), 2):
                h[i][j] = h[j][i] = rng.randint(-2, 2)
            form = constant_curvature_form(h)
            assert check_property1(form) and check_bianchi(form)
            assert in_curvature_space(form)


def _run(*argv):
    out, err = io.StringIO(), io.StringIO()
    return main(list(argv), out=out, err=err), out.getvalue(), err.getvalue()


def test_criterion_8_cli_contract(tmp_path):
    code, _, _ = _run("verify", "--n", "3", "--suite", "all")
    assert code == 0

    _run("basis", "--n", "2", "--which", "curvature", "--out", str(tmp_path))
    path = tmp_path / "curvature_n2.json"
    original = path.read_text()
    docs = json.loads(original)
    docs[0]["entries"][-1][4] = "-" + docs[0]["entries"][-1][4]  # flip one sign of the G pattern
    corrupted = tmp_path / "corrupted.json"
    corrupted.write_text(json.dumps(docs))
    code, out, _ = _run("check", str(corrupted))
    report = json.loads(out)["documents"][0]
    assert code == 1
    assert not report["property2"]["passed"] and len(report["property2"]["witness"]) == 4

    code, _, _ = _run("check", str(path))
    assert code == 0
    for which, n in (("curvature", 3), ("invariants", 4)):
        first = tmp_path / "a"
        second = tmp_path / "b"
        _run("basis", "--n", str(n), "--which", which, "--out", str(first))
        _run("basis", "--n", str(n), "--which", which, "--out", str(second))
        name = f"{which}_n{n}.json"
        assert (first / name).read_bytes() == (second / name).read_bytes()
    assert dumps_documents([form_to_document(form_from_document(d)) for d in json.loads(original)]) == original
    invariants = (first / "invariants_n4.json").read_text()
    assert dumps_documents([exterior_to_document(exterior_from_document(d)) for d in json.loads(invariants)]) == invariants
