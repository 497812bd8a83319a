import pytest

from hopfpartial.groups import FiniteGroup, GroupCocycleTable, GroupError, GroupSubset
from hopfpartial.scalars import Cyclo

ONE = Cyclo.one()
NEG = Cyclo.zeta(2)


def test_preset_groups_satisfy_axioms():
    for name, order in (("z2", 2), ("klein4", 4), ("s3", 6), ("q8", 8), ("s4", 24)):
        g = FiniteGroup.preset(name)
        assert g.order == order
        e = g.identity
        for i in range(order):
            assert g.table[i][g.inv[i]] == e
            assert g.table[g.inv[i]][i] == e


def test_bad_table_rejected():
    with pytest.raises(GroupError):
        FiniteGroup(("e", "a"), ((0, 1), (1, 1)))  # not a group


def test_regular_permutations_are_left_action():
    g = FiniteGroup.klein_four()
    perms = g.regular_permutations()
    for a in range(4):
        for b in range(4):
            ab = g.table[a][b]
            composed = tuple(perms[a][perms[b][i]] for i in range(4))
            assert composed == perms[ab]


def test_quaternion_structure():
    q8 = FiniteGroup.quaternion()
    i = q8.index_of("i")
    j = q8.index_of("j")
    k = q8.index_of("k")
    minus_one = q8.index_of("-1")
    assert q8.table[i][i] == minus_one
    assert q8.table[i][j] == k
    assert q8.table[j][i] == q8.index_of("-k")


def test_subset_subgroup_detection():
    g = FiniteGroup.klein_four()
    assert GroupSubset.from_labels(g, ["e", "a"]).is_subgroup
    x = GroupSubset.from_labels(g, ["e", "a", "b"])
    assert not x.is_subgroup
    with pytest.raises(GroupError):
        GroupSubset(g, [])


def test_klein_cocycle_paper_values():
    g = FiniteGroup.klein_four()
    gam = GroupCocycleTable.klein_cocycle(g)
    idx = {lbl: g.index_of(lbl) for lbl in ("e", "a", "b", "ab")}
    for pair in (("a", "a"), ("a", "ab"), ("b", "a"), ("b", "b"), ("ab", "b"), ("ab", "ab")):
        assert gam(idx[pair[0]], idx[pair[1]]) == NEG
    for pair in (("a", "b"), ("b", "ab"), ("ab", "a")):
        assert gam(idx[pair[0]], idx[pair[1]]) == ONE
    assert gam.is_normalized()
    assert gam.is_cocycle()


def test_klein_cocycle_law_all_64_triples_and_not_coboundary():
    gam = GroupCocycleTable.klein_cocycle()
    assert gam.cocycle_witness() is None  # all 64 triples
    found, phi = gam.is_coboundary()
    assert not found and phi is None


def test_klein_cocycle_from_quaternion_covering_group():
    # gamma(g,s) = phi(g)phi(s)phi(gs)^{-1} pushed through Z(Q8) = {1,-1}
    g = FiniteGroup.klein_four()
    q8 = FiniteGroup.quaternion()
    # coset representatives of Q8 over its center, matching e,a,b,ab
    reps = [q8.index_of("1"), q8.index_of("i"), q8.index_of("j"), q8.index_of("k")]
    minus_one = q8.index_of("-1")
    to_klein = {}
    for x in range(q8.order):
        for c, r in enumerate(reps):
            if x == r or x == q8.table[minus_one][r]:
                to_klein[x] = c
    gam = GroupCocycleTable.klein_cocycle(g)
    for a in range(4):
        for b in range(4):
            prod = q8.table[reps[a]][reps[b]]
            ab = g.table[a][b]
            sign = ONE if prod == reps[ab] else NEG
            assert to_klein[prod] == ab
            assert gam(a, b) == sign


def test_coboundary_search_finds_constructed_coboundary():
    g = FiniteGroup.klein_four()
    # phi with values in mu_8, phi(e) = 1
    phi = [Cyclo.one(), Cyclo.zeta(8, 2), Cyclo.zeta(8, 4), Cyclo.zeta(8, 6)]
    gam = GroupCocycleTable.coboundary(g, phi)
    assert gam.is_cocycle()
    found, exponents = gam.is_coboundary()
    assert found
    # the reported phi really is a primitive for gamma
    phi2 = [Cyclo.zeta(8, e) for e in exponents]
    gam2 = GroupCocycleTable.coboundary(g, phi2)
    assert all(gam(i, j) == gam2(i, j) for i in range(4) for j in range(4))


def test_trivial_cocycle_is_coboundary():
    g = FiniteGroup.cyclic(2)
    gam = GroupCocycleTable.trivial(g)
    found, _ = gam.is_coboundary()
    assert found


def test_cocycle_json_roundtrip():
    gam = GroupCocycleTable.klein_cocycle()
    back = GroupCocycleTable.from_json(gam.to_json())
    assert all(back(i, j) == gam(i, j) for i in range(4) for j in range(4))
