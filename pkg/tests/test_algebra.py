from fractions import Fraction

import pytest

from hopfpartial.algebra import (
    HopfAlgebraData,
    Subalgebra,
    SubalgebraError,
    dual_hopf,
    iterated_comult,
    tensor_hopf,
    v_iadd,
    validate_hopf,
)
from hopfpartial.constructors import canonical_group_pairing, group_algebra, truncated_torus
from hopfpartial.groups import FiniteGroup
from hopfpartial.linalg import Subspace
from hopfpartial.scalars import Cyclo

ONE = Cyclo.one()


def test_group_algebras_validate():
    for name in ("z2", "klein4", "s3", "q8"):
        H = group_algebra(FiniteGroup.preset(name))
        rep = validate_hopf(H, name)
        assert rep.passed, rep.summary_lines()


def test_corrupted_antipode_reports_witness():
    # S = id on a group with an element of order 3 violates the antipode axiom
    H = group_algebra(FiniteGroup.cyclic(3))
    H.antipode = {i: {i: ONE} for i in range(3)}
    rep = validate_hopf(H)
    check = rep["antipode.axiom"]
    assert not check.passed
    assert check.witness is not None
    assert all(rep[name].passed for name in
               ("algebra.associativity", "coalgebra.coassociativity"))


def test_dual_of_kz2_has_orthogonal_idempotents():
    H = group_algebra(FiniteGroup.cyclic(2))
    D = dual_hopf(H)
    assert validate_hopf(D).passed
    # p_g p_h = delta_{g,h} p_g
    for g in range(2):
        for h in range(2):
            expected = {g: ONE} if g == h else {}
            assert D.algebra.mul_basis(g, h) == expected


def test_dual_of_ks3_validates():
    D = dual_hopf(group_algebra(FiniteGroup.symmetric(3)))
    rep = validate_hopf(D)
    assert rep.passed
    assert not D.is_grouplike_basis()


def test_dual_klein_comultiplication():
    G = FiniteGroup.klein_four()
    D = dual_hopf(group_algebra(G))
    assert validate_hopf(D).passed
    # Delta p_g = sum_s p_s (x) p_{s^-1 g}
    for g in range(4):
        terms = {(s, G.table[G.inv[s]][g]) for s in range(4)}
        got = {(j, k) for j, k, c in D.coalgebra.comult[g]}
        assert got == terms


def test_double_dual_is_canonically_the_original():
    H = group_algebra(FiniteGroup.klein_four())
    DD = dual_hopf(dual_hopf(H))
    assert DD.algebra.mult == H.algebra.mult
    assert DD.algebra.unit == H.algebra.unit
    assert DD.coalgebra.comult == H.coalgebra.comult
    assert DD.antipode == H.antipode


def test_tensor_hopf_dimensions_and_validity():
    h2 = group_algebra(FiniteGroup.cyclic(2))
    t = tensor_hopf(h2, h2)
    assert t.dim == 4
    assert validate_hopf(t).passed
    t4 = tensor_hopf(t, t)
    assert t4.dim == 16
    assert validate_hopf(t4).passed


def test_tensor_with_trivial_hopf_is_identity():
    H = group_algebra(FiniteGroup.cyclic(3))
    triv = group_algebra(FiniteGroup.trivial())
    T = tensor_hopf(H, triv)
    assert T.dim == H.dim
    assert T.algebra.mult == H.algebra.mult
    assert T.coalgebra.comult == H.coalgebra.comult


def test_iterated_comult_small_legs():
    H = dual_hopf(group_algebra(FiniteGroup.symmetric(3)))
    one_leg = iterated_comult(H, 1)
    for i in range(H.dim):
        assert one_leg.apply_basis(i) == {i: ONE}
    two = iterated_comult(H, 2)
    for i in range(H.dim):
        expect = {}
        for j, k, c in H.coalgebra.comult[i]:
            v_iadd(expect, {j * H.dim + k: c})
        assert two.apply_basis(i) == expect


def test_iterated_comult_legs4_against_alternative_association():
    H = dual_hopf(group_algebra(FiniteGroup.symmetric(3)))
    four = iterated_comult(H, 4)
    d = H.dim
    for i in range(H.dim):
        # alternative association: (id (x) id (x) Delta) o (id (x) Delta) o Delta
        acc = {}
        for j, k, c in H.coalgebra.comult[i]:
            for k1, k2, c2 in H.coalgebra.comult[k]:
                for k21, k22, c3 in H.coalgebra.comult[k2]:
                    key = ((j * d + k1) * d + k21) * d + k22
                    v_iadd(acc, {key: c * c2 * c3})
        assert four.apply_basis(i) == acc


def test_validate_catches_broken_coassociativity():
    H = group_algebra(FiniteGroup.cyclic(2))
    H.coalgebra.comult = {0: ((0, 0, ONE),), 1: ((1, 0, ONE),)}
    rep = validate_hopf(H)
    assert not rep.passed
    assert not rep["coalgebra.counit"].passed


def test_subalgebra_construction_and_errors():
    A = group_algebra(FiniteGroup.klein_four()).algebra
    # span{1, u_a} is a unital subalgebra
    sub = Subalgebra(A, [{0: ONE}, {1: ONE}], {0: ONE})
    assert sub.algebra.dim == 2
    assert sub.coords({1: ONE}) == {1: ONE}
    # span{u_a + u_b} is not closed under multiplication
    with pytest.raises(SubalgebraError):
        Subalgebra(A, [{0: ONE}, {1: ONE, 2: ONE}], {0: ONE})


def test_hopf_json_roundtrip():
    H = group_algebra(FiniteGroup.klein_four())
    back = HopfAlgebraData.from_json(H.to_json())
    assert back.algebra.mult == H.algebra.mult
    assert back.coalgebra.comult == H.coalgebra.comult
    assert back.antipode == H.antipode
    assert validate_hopf(back).passed


def test_canonical_pairing_group_and_dual():
    # <u_g, p_s> = delta(g,s) passes all pairing laws
    canonical_group_pairing(FiniteGroup.klein_four())
    canonical_group_pairing(FiniteGroup.symmetric(3))


def test_torus_is_group_algebra_of_cyclic_power():
    t = truncated_torus(2, 1)
    z2 = group_algebra(FiniteGroup.cyclic(2))
    assert t.algebra.mult == z2.algebra.mult
    assert t.coalgebra.comult == z2.coalgebra.comult
    assert t.antipode == z2.antipode
