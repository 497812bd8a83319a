import pytest

from hopfpartial.algebra import StructuredAlgebra
from hopfpartial.constructors import (
    group_algebra,
    hopf_pairing,
    index_exponent,
    smash_product,
    torus_permutation_action,
    torus_permutation_coaction,
    truncated_torus,
    cosemidirect_product,
)
from hopfpartial.groups import FiniteGroup, GroupCocycleTable, GroupSubset
from hopfpartial.partial_actions import (
    GlobalTwistedAction,
    NotCentralIdempotentError,
    PartialActionError,
    TwistedPartialAction,
    classify_cocycle,
    cocycle_twist_smash,
    group_dictionary_inverse,
    induce_partial,
    pairing_action,
    restrict_coaction,
    verify_symmetric,
    verify_twisted_partial,
)
from hopfpartial.scalars import Cyclo

ONE = Cyclo.one()


def _functions_global(G, gamma=None):
    n = G.order
    B = StructuredAlgebra(n, {(i, i): {i: ONE} for i in range(n)},
                          {i: ONE for i in range(n)},
                          tuple(f"d_{x}" for x in G.labels))
    H = group_algebra(G)
    action = {(g, b): {G.table[g][b]: ONE} for g in range(n) for b in range(n)}
    if gamma is None:
        cocycle = {(g, h): {b: ONE for b in range(n)} for g in range(n) for h in range(n)}
    else:
        cocycle = {(g, h): {b: gamma(g, h) for b in range(n)}
                   for g in range(n) for h in range(n)}
    return GlobalTwistedAction(H, B, action, cocycle), B, H


def test_global_viewed_as_partial_passes_def21():
    G = FiniteGroup.cyclic(2)
    glob, B, H = _functions_global(G)
    tpa = TwistedPartialAction(H, B, glob.action, glob.cocycle, name="global")
    rep = verify_twisted_partial(tpa)
    assert rep.passed
    # h . 1 = eps(h) 1 in the global case
    for g in range(G.order):
        assert tpa.one_image(g) == B.unit


def test_klein_m1_pipeline_normalized_cocycle():
    # m = 1 truncation: H = k(klein4), A = span{p_e, p_a, p_b}; the full
    # Klein-four cocycle logic at dimension 4
    G = FiniteGroup.klein_four()
    perms = G.regular_permutations()
    L = truncated_torus(1, 4, gen_symbol="t")
    Lx = truncated_torus(1, 4, gen_symbol="x")
    act = torus_permutation_action(G, perms, Lx)
    H1 = smash_product(Lx, act)
    comp = torus_permutation_coaction(G, perms, L)
    H2 = cosemidirect_product(L, G, comp)
    table = {(g, g): ONE for g in range(G.order)}
    pairing = hopf_pairing(H1, H2, table)
    X = GroupSubset.from_labels(G, ["e", "a", "b"])
    e_x = {s: ONE for s in X.members}
    sub, rho = restrict_coaction(H2, e_x)
    assert sub.algebra.dim == 3
    tpa0 = pairing_action(pairing, sub.algebra, rho)
    gamma = GroupCocycleTable.klein_cocycle(G)
    tpa = cocycle_twist_smash(tpa0, gamma)
    assert verify_twisted_partial(tpa).passed
    cls = classify_cocycle(tpa)
    assert cls.kind == "NormalizedCocycle"
    assert verify_symmetric(tpa).passed
    assert tpa.omega_prime is not None


def test_non_cocycle_gamma_classifies_general():
    G = FiniteGroup.klein_four()
    perms = G.regular_permutations()
    L = truncated_torus(1, 4)
    Lx = truncated_torus(1, 4, gen_symbol="x")
    act = torus_permutation_action(G, perms, Lx)
    H1 = smash_product(Lx, act)
    comp = torus_permutation_coaction(G, perms, L)
    H2 = cosemidirect_product(L, G, comp)
    pairing = hopf_pairing(H1, H2, {(g, g): ONE for g in range(4)})
    X = GroupSubset.from_labels(G, ["e", "a", "b"])
    sub, rho = restrict_coaction(H2, {s: ONE for s in X.members})
    tpa0 = pairing_action(pairing, sub.algebra, rho)
    gamma = GroupCocycleTable.klein_cocycle(G)
    a = G.index_of("a")
    b = G.index_of("b")
    gamma.values[(a, b)] = gamma.values[(a, b)] * Cyclo.rational(2)  # breaks the law
    assert not gamma.is_cocycle()
    tpa = cocycle_twist_smash(tpa0, gamma)
    cls = classify_cocycle(tpa)
    assert cls.kind == "General"
    assert not cls.normalized and cls.cocycle_witness is not None
    # Def 2.1 still holds: any scalar table twist keeps (1)-(4) here
    assert verify_twisted_partial(tpa).passed


def test_corrupted_omega_spill_breaks_eq4(smoke):
    from hopfpartial.scenarios import _spill_omega

    base = smoke.objects["tpa"]
    mutated = TwistedPartialAction(
        base.hopf, base.carrier, base.action,
        {k: dict(v) for k, v in base.omega.items()})
    where = _spill_omega(mutated, 0)
    assert where is not None
    rep = verify_twisted_partial(mutated)
    assert not rep["tpa.eq4_cocycle_absorption"].passed
    assert rep["tpa.eq4_cocycle_absorption"].witness is not None


def test_induce_partial_full_idempotent_recovers_global():
    G = FiniteGroup.klein_four()
    gamma = GroupCocycleTable.klein_cocycle(G)
    glob, B, H = _functions_global(G, gamma)
    tpa, sub = induce_partial(glob, dict(B.unit), verify=True)
    assert tpa.carrier.dim == B.dim
    for g in range(G.order):
        assert tpa.one_image(g) == tpa.carrier.unit
    # omega = 1_A u(h,k) for idem = 1
    for g in range(G.order):
        for h in range(G.order):
            assert tpa.omega[(g, h)] == {b: gamma(g, h) for b in range(B.dim)}


def test_induce_partial_trivial_u_gives_trivial_omega():
    G = FiniteGroup.klein_four()
    glob, B, H = _functions_global(G)
    idem = {G.index_of("e"): ONE, G.index_of("a"): ONE}
    tpa, sub = induce_partial(glob, idem, verify=True)
    cls = classify_cocycle(tpa)
    assert cls.trivial


def test_induce_partial_rejects_noncentral_or_nonidempotent():
    G = FiniteGroup.klein_four()
    glob, B, H = _functions_global(G)
    with pytest.raises(NotCentralIdempotentError):
        induce_partial(glob, {0: Cyclo.rational(2)}, verify=True)


def test_pairing_action_with_full_coaction_is_global():
    # coaction = Delta on A = H2 itself, canonical pairing: global action
    G = FiniteGroup.klein_four()
    from hopfpartial.constructors import canonical_group_pairing

    pairing = canonical_group_pairing(G)
    H2 = pairing.h2
    sub, rho = restrict_coaction(H2, dict(H2.algebra.unit))
    assert sub.algebra.dim == H2.dim
    tpa = pairing_action(pairing, sub.algebra, rho)
    for g in range(G.order):
        assert tpa.one_image(g) == v_eps_scaled(pairing.h1, g, sub.algebra)


def v_eps_scaled(H1, g, A):
    from hopfpartial.algebra import v_scale

    eps = H1.coalgebra.counit.get(g, Cyclo.zero())
    return v_scale(A.unit, eps)


def test_singleton_subset_closed_form(smoke):
    # X = {a}: action supported only on the identity component of H, with
    # coefficient zeta^(sum k_i j_{s0^-1(i)}) on the fixed s = s0
    tpa = smoke.objects["tpa"]
    G = smoke.objects["group"]
    sub = smoke.objects["sub"]
    m, n = smoke.objects["m"], smoke.objects["n"]
    nG = G.order
    s0 = G.index_of("g")
    perm = G.regular_permutations()[G.inv[s0]]
    for h in range(tpa.hopf.dim):
        l1, g = divmod(h, nG)
        j = index_exponent(l1, m, n)
        for a in range(tpa.carrier.dim):
            flat = sub.space.pivots[a]
            l2, s = divmod(flat, nG)
            assert s == s0
            k = index_exponent(l2, m, n)
            got = tpa.action.get((h, a), {})
            if g != G.identity:
                assert got == {}
            else:
                expo = sum(k[i] * j[perm[i]] for i in range(n)) % m
                assert got == {a: Cyclo.zeta(m, expo)}


def test_restrict_coaction_full_unit_gives_delta():
    H = group_algebra(FiniteGroup.klein_four())
    sub, rho = restrict_coaction(H, dict(H.algebra.unit))
    assert sub.algebra.dim == H.dim
    for a in range(H.dim):
        # Delta u_g = u_g (x) u_g
        assert rho[a] == ((a, sub.space.pivots[a], ONE),)


def test_restrict_coaction_rejects_noncentral():
    H = group_algebra(FiniteGroup.klein_four())
    with pytest.raises(NotCentralIdempotentError):
        restrict_coaction(H, {0: ONE, 1: ONE})  # 1 + u_a is not idempotent


def test_verify_symmetric_detects_noncentral_e():
    # pseudo-action on the upper triangular algebra: g . a = x11(a) e11;
    # e(g) = e11 is a non-central idempotent, so f1/f2 centrality fails
    basis = ("e11", "e22", "e12")
    mult = {
        (0, 0): {0: ONE}, (1, 1): {1: ONE},
        (0, 2): {2: ONE}, (2, 1): {2: ONE},
    }
    A = StructuredAlgebra(3, mult, {0: ONE, 1: ONE}, basis)
    H = group_algebra(FiniteGroup.cyclic(2))
    action = {
        (0, 0): {0: ONE}, (0, 1): {1: ONE}, (0, 2): {2: ONE},
        (1, 0): {0: ONE},
    }
    omega = {(g, h): dict(A.unit) if g == 0 and h == 0 else {0: ONE}
             for g in range(2) for h in range(2)}
    tpa = TwistedPartialAction(H, A, action, omega, name="noncentral")
    rep = verify_symmetric(tpa, solve=False)
    assert not rep["symm.f1_central"].passed
    assert rep["symm.f1_central"].witness is not None


def test_group_dictionary_round_trip(groupdict):
    assert groupdict.passed
    rep = groupdict.report
    assert rep["dict.round_trip"].passed
    assert rep["dict.round_trip_tpa_tables"].passed
    assert rep["dict.inner_automorphism"].passed


def test_group_dictionary_rejects_noninvertible_w(groupdict):
    tpa = groupdict.objects["tpa"]
    bad = TwistedPartialAction(tpa.hopf, tpa.carrier, tpa.action,
                               {k: dict(v) for k, v in tpa.omega.items()})
    bad.omega[(1, 1)] = {0: ONE}  # not invertible in 1_g A
    with pytest.raises(PartialActionError):
        group_dictionary_inverse(bad)


def test_tpa_json_roundtrip(smoke):
    tpa = smoke.objects["tpa"]
    back = TwistedPartialAction.from_json(tpa.to_json())
    assert back.action == tpa.action
    assert back.omega == tpa.omega
    assert verify_twisted_partial(back).passed
