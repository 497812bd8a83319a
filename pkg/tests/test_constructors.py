import pytest

from hopfpartial.algebra import tensor_hopf, validate_hopf
from hopfpartial.constructors import (
    ConstructorError,
    NotCocommutativeError,
    NotComoduleCoalgebraError,
    NotModuleAlgebraError,
    PairingLawViolation,
    cosemidirect_product,
    group_algebra,
    hopf_pairing,
    index_exponent,
    smash_product,
    torus_permutation_action,
    torus_permutation_coaction,
    truncated_torus,
)
from hopfpartial.algebra import dual_hopf
from hopfpartial.groups import FiniteGroup
from hopfpartial.scalars import Cyclo

ONE = Cyclo.one()


def test_group_algebra_dimensions():
    assert group_algebra(FiniteGroup.trivial()).dim == 1
    assert group_algebra(FiniteGroup.cyclic(2)).dim == 2
    H = group_algebra(FiniteGroup.klein_four())
    assert H.dim == 4 and validate_hopf(H).passed


def test_torus_dimensions_and_validity():
    assert truncated_torus(1, 3).dim == 1
    assert truncated_torus(2, 4).dim == 16
    H = truncated_torus(3, 2)
    assert H.dim == 9
    assert validate_hopf(H).passed


def test_smash_with_trivial_action_is_tensor_product():
    L = truncated_torus(2, 2)
    triv = FiniteGroup.trivial()
    act = torus_permutation_action(triv, [(0, 1)], L)
    H = smash_product(L, act)
    assert H.dim == L.dim
    assert H.algebra.mult == L.algebra.mult

    # swap action on two factors vs honest tensor comparison at the Hopf level
    Z2 = FiniteGroup.cyclic(2)
    identity_perms = [(0, 1), (0, 1)]  # both group elements act trivially
    act2 = torus_permutation_action(Z2, identity_perms, L)
    H2 = smash_product(L, act2)
    T = tensor_hopf(L, group_algebra(Z2))
    # same structure constants after matching the basis order (l, g)
    assert H2.algebra.mult == T.algebra.mult
    assert H2.coalgebra.comult == T.coalgebra.comult


def test_smash_swap_action_dim8_validates(jobs):
    Z2 = FiniteGroup.cyclic(2)
    L = truncated_torus(2, 2)
    act = torus_permutation_action(Z2, Z2.regular_permutations(), L)
    H = smash_product(L, act)  # constructor validates
    assert H.dim == 8
    assert H.is_grouplike_basis()


def test_smash_klein_dim64_validates():
    G = FiniteGroup.klein_four()
    L = truncated_torus(2, 4)
    act = torus_permutation_action(G, G.regular_permutations(), L)
    H = smash_product(L, act)
    assert H.dim == 64


def test_smash_rejects_noncocommutative():
    L = dual_hopf(group_algebra(FiniteGroup.symmetric(3)))
    Z2 = FiniteGroup.cyclic(2)
    act_table = {(g, l): {l: ONE} for g in range(2) for l in range(L.dim)}
    from hopfpartial.constructors import ModuleAlgebraAction

    act = ModuleAlgebraAction(group_algebra(Z2), L, act_table)
    with pytest.raises(NotCocommutativeError):
        smash_product(L, act)


def test_smash_rejects_non_module_algebra():
    Z2 = FiniteGroup.cyclic(2)
    L = truncated_torus(2, 2)
    act = torus_permutation_action(Z2, Z2.regular_permutations(), L)
    act.action[(1, 0)] = {1: ONE}  # no longer unital
    with pytest.raises(NotModuleAlgebraError):
        smash_product(L, act)


def test_cosemidirect_trivial_group_is_L():
    L = truncated_torus(2, 2)
    triv = FiniteGroup.trivial()
    comp = torus_permutation_coaction(triv, [(0, 1)], L)
    H = cosemidirect_product(L, triv, comp)
    assert H.dim == L.dim
    assert H.algebra.mult == L.algebra.mult


def test_cosemidirect_dim8_and_dim64_validate():
    Z2 = FiniteGroup.cyclic(2)
    L = truncated_torus(2, 2)
    comp = torus_permutation_coaction(Z2, Z2.regular_permutations(), L)
    H = cosemidirect_product(L, Z2, comp)
    assert H.dim == 8

    G = FiniteGroup.klein_four()
    L4 = truncated_torus(2, 4)
    comp4 = torus_permutation_coaction(G, G.regular_permutations(), L4)
    H64 = cosemidirect_product(L4, G, comp4)
    assert H64.dim == 64


def test_cosemidirect_rejects_broken_coaction():
    Z2 = FiniteGroup.cyclic(2)
    L = truncated_torus(2, 2)
    comp = torus_permutation_coaction(Z2, Z2.regular_permutations(), L)
    comp[1][0] = {1: ONE}  # delta_g(1) != 1 breaks the coalgebra-map law
    with pytest.raises(NotComoduleCoalgebraError):
        cosemidirect_product(L, Z2, comp)


def test_pairing_kc2_with_itself():
    # <chi_j, t^k> = (-1)^{jk}
    H = truncated_torus(2, 1, gen_symbol="x")
    K = truncated_torus(2, 1, gen_symbol="t")
    table = {(j, k): Cyclo.zeta(2, j * k) for j in range(2) for k in range(2)}
    hopf_pairing(H, K, table)


def test_pairing_kcm_with_itself_m4():
    m = 4
    H = truncated_torus(m, 1, gen_symbol="x")
    K = truncated_torus(m, 1, gen_symbol="t")
    table = {(j, k): Cyclo.zeta(m, j * k) for j in range(m) for k in range(m)}
    hopf_pairing(H, K, table)


def test_pairing_violation_raises_with_witness():
    m = 2
    H = truncated_torus(m, 1, gen_symbol="x")
    K = truncated_torus(m, 1, gen_symbol="t")
    table = {(j, k): Cyclo.zeta(m, j * k) for j in range(m) for k in range(m)}
    table[(1, 1)] = Cyclo.rational(2)
    with pytest.raises(PairingLawViolation):
        hopf_pairing(H, K, table)


def test_smash_cosemidirect_pairing_klein(smoke):
    # the smoke fixture already verified the delta-factor pairing at m=2, n=2;
    # here the scenario pairing table is spot-checked against the formula
    p = smoke.objects["pairing"]
    G = smoke.objects["group"]
    m, n = smoke.objects["m"], smoke.objects["n"]
    nG = G.order
    for (i1, i2), val in list(p.table.items())[:64]:
        l1, g = divmod(i1, nG)
        l2, s = divmod(i2, nG)
        assert g == s
        j = index_exponent(l1, m, n)
        k = index_exponent(l2, m, n)
        assert val == Cyclo.zeta(m, sum(a * b for a, b in zip(j, k)))


def test_constructor_validation_catches_corruption():
    Z2 = FiniteGroup.cyclic(2)
    L = truncated_torus(2, 2)
    act = torus_permutation_action(Z2, Z2.regular_permutations(), L)
    # corrupt the antipode of L, then the smash antipode axiom must fail
    L.antipode[1] = {0: ONE}
    with pytest.raises(ConstructorError):
        smash_product(L, act)
