"""Named end-to-end constructions exercising every pipeline.

Each scenario builds its full object graph, runs the complete verification
stack, and returns a deterministic report plus scalar facts for golden files.
Single-entry mutations can be injected to demonstrate that the verifiers
actually detect violations; the catalog records the expected failure
signature of each one.
"""

from __future__ import annotations

from dataclasses import dataclass, field, asdict

from .algebra import StructuredAlgebra, v_iadd, validate_hopf
from .cleft import (
    CleftError,
    build_cleft_maps,
    cleft_isomorphism,
    normalize_gamma_prime,
    reconstruct_action,
    round_trip_compare,
    verify_partially_cleft,
)
from .constructors import (
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
from .crossed import (
    build_crossed_product,
    coinvariants,
    coinvariants_equal_sharp_a,
    comodule_structure,
    global_corner_embedding,
    verify_associativity,
    verify_closure,
)
from .gauge import (
    GaugeError,
    GaugePair,
    build_gauge_target,
    extract_gauge,
    gauge_isomorphism,
    verify_gauge,
)
from .groups import FiniteGroup, GroupCocycleTable, GroupSubset
from .partial_actions import (
    GlobalTwistedAction,
    GroupTwistedPartialAction,
    PartialActionError,
    classify_cocycle,
    cocycle_twist_smash,
    group_dictionary_forward,
    group_dictionary_inverse,
    induce_partial,
    inner_automorphism_witness,
    pairing_action,
    restrict_coaction,
    verify_symmetric,
    verify_twisted_partial,
)
from .reports import Report
from .scalars import Cyclo

ONE = Cyclo.one()

SCENARIO_NAMES = ("klein4", "smoke-z2", "induced-functions", "group-dictionary")


class ScenarioError(ValueError):
    pass


@dataclass
class ScenarioConfig:
    name: str
    group: str = "klein4"
    m: int = 2
    n: int = 4
    subset: tuple = ("e", "a", "b")
    cocycle: str = "klein"
    seed: int = 0
    sample_count: int = 10_000
    field_order: int = 2
    jobs: int = 1

    def to_json(self):
        d = asdict(self)
        d["subset"] = list(self.subset)
        return d


def default_config(name, jobs=1, seed=0, sample_count=10_000):
    if name == "klein4":
        cfg = ScenarioConfig("klein4", group="klein4", m=2, n=4,
                             subset=("e", "a", "b"), cocycle="klein")
    elif name == "smoke-z2":
        cfg = ScenarioConfig("smoke-z2", group="z2", m=2, n=2,
                             subset=("g",), cocycle="trivial")
    elif name == "induced-functions":
        cfg = ScenarioConfig("induced-functions", group="klein4", m=1, n=1,
                             subset=("e", "a"), cocycle="klein")
    elif name == "group-dictionary":
        cfg = ScenarioConfig("group-dictionary", group="z2", m=1, n=1,
                             subset=("e",), cocycle="trivial")
    else:
        raise ScenarioError(f"unknown scenario {name!r}")
    cfg.jobs = jobs
    cfg.seed = seed
    cfg.sample_count = sample_count
    return cfg


@dataclass
class Mutation:
    target: str
    op: str
    index: int

    @staticmethod
    def parse(spec):
        parts = spec.split(":")
        if len(parts) != 3:
            raise ScenarioError(f"mutation spec must be target:op:index, got {spec!r}")
        try:
            idx = int(parts[2])
        except ValueError:
            raise ScenarioError(f"mutation index must be an integer, got {parts[2]!r}")
        return Mutation(parts[0], parts[1], idx)

    def __str__(self):
        return f"{self.target}:{self.op}:{self.index}"


@dataclass
class ScenarioResult:
    name: str
    config: ScenarioConfig
    report: Report
    facts: dict = field(default_factory=dict)
    objects: dict = field(default_factory=dict)

    @property
    def passed(self):
        return self.report.passed

    def envelope(self, version):
        return {
            "tool": {"name": "hopf-partial", "version": version},
            "scenario": self.name,
            "config": self.config.to_json(),
            "passed": self.report.passed,
            "facts": self.facts,
            "checks": [c.to_json() for c in self.report.checks],
        }


# ---------------------------------------------------------------------------
# mutation helpers
# ---------------------------------------------------------------------------

def _neg_vec(vec):
    return {k: -v for k, v in vec.items()}


def _mutate_table(table, mut):
    """Negate or zero the mut.index-th stored entry of a (h,k)->vec table."""
    keys = sorted(table.keys())
    if not keys:
        raise ScenarioError("mutation target table is empty")
    key = keys[mut.index % len(keys)]
    if mut.op == "negate":
        table[key] = _neg_vec(table[key])
    elif mut.op == "zero":
        del table[key]
    else:
        raise ScenarioError(f"unknown mutation op {mut.op!r} for table target")
    return key


def _spill_omega(tpa, index):
    """Add a unit of mass at a coordinate that eq (4)'s absorption kills.

    Scans (h,l) pairs in canonical order for a coordinate c with
    e_c (hl . 1) != e_c; the index-th such candidate receives the mass, so the
    mutated cocycle leaves the ideal and the absorption law must fail there.
    """
    H, A = tpa.hopf, tpa.carrier
    seen = 0
    for h in range(H.dim):
        for l in range(H.dim):
            f2val = tpa.one_image_vec(H.algebra.mul_basis(h, l))
            for c in range(A.dim):
                if A.mul_basis_vec(c, f2val) != {c: ONE}:
                    if seen == index:
                        vec = dict(tpa.omega.get((h, l), {}))
                        vec[c] = vec.get(c, Cyclo.zero()) + ONE
                        tpa.omega[(h, l)] = {k: v for k, v in vec.items()
                                             if not v.is_zero()}
                        return (h, l, c)
                    seen += 1
    raise ScenarioError("no spill candidate: every coordinate is absorbed")


def _maybe(mut, target):
    return mut is not None and mut.target == target


# ---------------------------------------------------------------------------
# shared torus-pairing pipeline (klein4 and smoke-z2)
# ---------------------------------------------------------------------------

def _build_torus_pipeline(cfg, mut, rep, full=True):
    G = FiniteGroup.preset(cfg.group)
    perms = G.regular_permutations()
    m, n = cfg.m, cfg.n
    if n != G.order:
        raise ScenarioError("tensor arity must match the regular embedding size")
    nG = G.order

    L = truncated_torus(m, n, gen_symbol="t")
    Lx = truncated_torus(m, n, gen_symbol="x")
    act = torus_permutation_action(G, perms, Lx)
    H1 = smash_product(Lx, act, validate=False)
    comp = torus_permutation_coaction(G, perms, L)
    H2 = cosemidirect_product(L, G, comp, validate=False)

    if _maybe(mut, "antipode"):
        idx = mut.index % H1.dim
        if mut.op != "corrupt":
            raise ScenarioError("antipode mutation op must be 'corrupt'")
        H1.antipode[idx] = {idx: ONE}
    if _maybe(mut, "hopf_mult"):
        idx = mut.index % H1.dim
        H1.algebra.mult[(idx, idx)] = dict(H1.algebra.unit)

    if full:
        rep.extend_prefixed(validate_hopf(H1, "smash"), "smash")
        rep.extend_prefixed(validate_hopf(H2, "cosemidirect"), "cosemidirect")

    # pairing <x^j @ u_g, t^k @ p_s> = delta(g,s) zeta_m^(j.k)
    table = {}
    for l1 in range(Lx.dim):
        j = index_exponent(l1, m, n)
        for g in range(nG):
            for l2 in range(L.dim):
                k = index_exponent(l2, m, n)
                e = sum(a * b for a, b in zip(j, k)) % m
                table[(l1 * nG + g, l2 * nG + g)] = Cyclo.zeta(m, e)
    if _maybe(mut, "pairing"):
        keys = sorted(table.keys())
        key = keys[mut.index % len(keys)]
        if mut.op == "negate":
            table[key] = -table[key]
        else:
            raise ScenarioError("pairing mutation op must be 'negate'")
    if full:
        try:
            pairing = hopf_pairing(H1, H2, table)
            rep.record("pairing.laws", 0)
        except PairingLawViolation as exc:
            rep.record("pairing.laws", 1, detail=str(exc))
            from .constructors import HopfPairing

            pairing = HopfPairing(H1, H2, table)
    else:
        from .constructors import HopfPairing

        pairing = HopfPairing(H1, H2, table)

    X = GroupSubset.from_labels(G, cfg.subset)
    if full:
        rep.record("subset.not_subgroup", 0,
                   detail=f"is_subgroup={X.is_subgroup}")

    e_x = {}
    for l, c in L.algebra.unit.items():
        for s in X.members:
            e_x[l * nG + s] = c
    sub, rho = restrict_coaction(H2, e_x)
    A = sub.algebra
    if full:
        rep.record("carrier.dimension",
                   0 if A.dim == (m ** n) * len(X.members) else 1,
                   detail=f"dim A = {A.dim}")
        rep.record("coaction.closed_form", *_coaction_closed_form(G, X, sub, rho, m, n, nG))

    tpa0 = pairing_action(pairing, A, rho, verify=False)
    if _maybe(mut, "action"):
        keys = sorted(tpa0.action.keys())
        key = keys[mut.index % len(keys)]
        if mut.op == "negate":
            tpa0.action[key] = _neg_vec(tpa0.action[key])
        else:
            raise ScenarioError("action mutation op must be 'negate'")

    if cfg.cocycle == "klein":
        gamma = GroupCocycleTable.klein_cocycle(G)
    elif cfg.cocycle == "trivial":
        gamma = GroupCocycleTable.trivial(G)
    else:
        raise ScenarioError(f"unknown cocycle preset {cfg.cocycle!r}")
    if _maybe(mut, "gamma"):
        keys = sorted(gamma.values.keys())
        key = keys[mut.index % len(keys)]
        if mut.op == "scale2":
            gamma.values[key] = gamma.values[key] * Cyclo.rational(2)
        elif mut.op == "negate":
            gamma.values[key] = -gamma.values[key]
        else:
            raise ScenarioError("gamma mutation op must be scale2 or negate")

    if full:
        rep.record("cocycle.law", 0 if gamma.is_cocycle() else 1,
                   gamma.cocycle_witness())
        rep.record("cocycle.normalized", 0 if gamma.is_normalized() else 1)
        if cfg.cocycle == "klein":
            rep.record("cocycle.paper_values", *_klein_values_check(G, gamma))
            found, _ = gamma.is_coboundary()
            rep.record("cocycle.not_coboundary", 1 if found else 0)

    tpa = cocycle_twist_smash(tpa0, gamma)
    if _maybe(mut, "omega"):
        if mut.op == "spill":
            _spill_omega(tpa, mut.index)
        else:
            _mutate_table(tpa.omega, mut)

    return {
        "group": G, "L": L, "Lx": Lx, "H1": H1, "H2": H2, "pairing": pairing,
        "X": X, "e_x": e_x, "sub": sub, "rho": rho, "A": A, "gamma": gamma,
        "tpa0": tpa0, "tpa": tpa, "m": m, "n": n,
    }


def _coaction_closed_form(G, X, sub, rho, m, n, nG):
    """rho(t^k @ p_g) = sum_{s in X} (t^k @ p_s) (x) (t^(s^-1.k) @ p_(s^-1 g))."""
    fails, wit = 0, None
    inv_perm_of = {}
    perms = G.regular_permutations()
    for s in range(nG):
        p = perms[s]
        ip = [0] * len(p)
        for i, x in enumerate(p):
            ip[x] = i
        inv_perm_of[s] = tuple(ip)
    pivots = sub.space.pivots
    for a in range(sub.algebra.dim):
        flat = pivots[a]
        l_idx, g = divmod(flat, nG)
        k = index_exponent(l_idx, m, n)
        expected = {}
        for s in X.members:
            # first leg t^k @ p_s, second leg t^(s^-1 . k) @ p_(s^-1 g)
            a0 = _sub_index_of(sub, l_idx * nG + s)
            if a0 is None:
                return 1, {"reason": "first leg outside carrier"}
            kk = tuple(k[perms[s][i]] for i in range(n))
            k2 = 0
            for x in kk:
                k2 = k2 * m + x
            h_idx = k2 * nG + G.table[G.inv[s]][g]
            expected[(a0, h_idx)] = ONE
        got = {(a0, h): c for a0, h, c in rho.get(a, ())}
        if got != expected:
            fails += 1
            if wit is None:
                wit = {"basis": sub.algebra.labels[a]}
    return fails, wit


def _sub_index_of(sub, ambient_flat):
    for i, p in enumerate(sub.space.pivots):
        if p == ambient_flat:
            return i
    return None


def _klein_values_check(G, gamma):
    neg = Cyclo.zeta(2)
    idx = {lbl: G.index_of(lbl) for lbl in ("e", "a", "b", "ab")}
    minus = (("a", "a"), ("a", "ab"), ("b", "a"), ("b", "b"), ("ab", "b"), ("ab", "ab"))
    plus = (("a", "b"), ("b", "ab"), ("ab", "a"))
    fails, wit = 0, None
    for g, s in minus:
        if gamma(idx[g], idx[s]) != neg:
            fails += 1
            if wit is None:
                wit = {"pair": (g, s), "expected": "-1"}
    for g, s in plus:
        if gamma(idx[g], idx[s]) != ONE:
            fails += 1
            if wit is None:
                wit = {"pair": (g, s), "expected": "1"}
    for g in range(4):
        if gamma(g, idx["e"]) != ONE or gamma(idx["e"], g) != ONE:
            fails += 1
            if wit is None:
                wit = {"pair": (G.labels[g], "e"), "expected": "1"}
    return fails, wit


def _action_closed_form(objs):
    """Entry-by-entry comparison with the explicit root-of-unity formula."""
    G, X = objs["group"], objs["X"]
    sub, tpa = objs["sub"], objs["tpa"]
    m, n = objs["m"], objs["n"]
    nG = G.order
    H1 = objs["H1"]
    perms = G.regular_permutations()
    members = set(X.members)
    pivots = sub.space.pivots
    fails, wit = 0, None
    for h in range(H1.dim):
        l1, g = divmod(h, nG)
        j = index_exponent(l1, m, n)
        for a in range(sub.algebra.dim):
            flat = pivots[a]
            l2, s = divmod(flat, nG)
            k = index_exponent(l2, m, n)
            target_g = G.table[s][G.inv[g]]  # s g^-1, = g^-1 s for Klein four
            expected = {}
            if target_g in members:
                perm = perms[G.table[g][G.inv[s]]]  # g s^-1
                expo = sum(k[i] * j[perm[i]] for i in range(n)) % m
                a_t = _sub_index_of(sub, l2 * nG + target_g)
                expected = {a_t: Cyclo.zeta(m, expo)}
            if tpa.action.get((h, a), {}) != expected:
                fails += 1
                if wit is None:
                    wit = {"h": H1.labels[h], "a": sub.algebra.labels[a]}
    return fails, wit


# ---------------------------------------------------------------------------
# the torus scenarios
# ---------------------------------------------------------------------------

def _run_torus_scenario(cfg, mut, full=True, exhaustive_assoc=False):
    rep = Report(title=cfg.name)
    jobs = cfg.jobs
    objs = _build_torus_pipeline(cfg, mut, rep, full=full)
    result = ScenarioResult(cfg.name, cfg, rep, objects=objs)
    tpa = objs["tpa"]
    facts = result.facts
    facts["dim_H1"] = objs["H1"].dim
    facts["dim_H2"] = objs["H2"].dim
    facts["dim_A"] = objs["A"].dim
    if not full:
        cp, _ = build_crossed_product(tpa)
        objs["cp"] = cp
        facts["dim_crossed"] = cp.dim
        return result

    rep.record("action.closed_form", *_action_closed_form(objs))

    rep.extend(verify_twisted_partial(tpa, jobs=jobs))
    cls = classify_cocycle(tpa, jobs=jobs)
    facts["classification"] = cls.kind
    expected_kind = "Trivial" if cfg.cocycle == "trivial" else "NormalizedCocycle"
    rep.record("classify.eq8_eq9", 0 if cls.normalized else 1,
               cls.normalized_witness or cls.cocycle_witness)
    rep.record("classify.expected_kind", 0 if cls.kind == expected_kind else 1,
               detail=f"kind={cls.kind}")
    rep.extend(verify_symmetric(tpa, jobs=jobs))

    try:
        cp, crep = build_crossed_product(tpa)
    except Exception as exc:
        rep.record("crossed.exception", 1, detail=str(exc)[:200])
        _skip(rep, _CROSSED_DOWNSTREAM + _CLEFT_NAMES + _GAUGE_NAMES)
        return result
    rep.extend(crep)
    objs["cp"] = cp
    facts["dim_crossed"] = cp.dim
    rep.extend(verify_closure(cp, jobs=jobs))
    rep.extend(verify_associativity(cp, "criterion", jobs=jobs))
    rep.extend(verify_associativity(cp, "sampled", samples=cfg.sample_count,
                                    seed=cfg.seed, jobs=jobs))
    if exhaustive_assoc:
        rep.extend(verify_associativity(cp, "exhaustive", jobs=jobs))

    try:
        ca, corep = comodule_structure(cp, jobs=jobs)
    except Exception as exc:
        rep.record("comodule.exception", 1, detail=str(exc)[:200])
        _skip(rep, _CLEFT_NAMES + _GAUGE_NAMES)
        return result
    rep.extend(corep)
    objs["ca"] = ca
    space, coirep = coinvariants(ca)
    rep.extend(coirep)
    facts["dim_coinvariants"] = space.dim
    rep.record("coinvariants.equals_A_sharp_1",
               0 if coinvariants_equal_sharp_a(cp, space) else 1)

    _cleft_stage(rep, objs, cp, ca, cfg, mut, facts, check_reduction=cfg.name == "smoke-z2")
    _gauge_stage(rep, objs, cp, cfg, mut, facts)
    return result


_CROSSED_DOWNSTREAM = (
    "crossed.closure_and_lemma26_ii", "assoc.criterion_eq3", "assoc.criterion_eq9",
    "assoc.sampled",
)
_CLEFT_NAMES = (
    "cleft.build", "cleft.verify", "cleft.normalized_fixed_point",
    "cleft.reconstruct", "cleft.round_trip", "cleft.isomorphism",
)
_GAUGE_NAMES = (
    "gauge.identity", "gauge.coboundary", "gauge.extract",
)


def _skip(rep, names):
    for n in names:
        rep.record_skip(n)


def _cleft_stage(rep, objs, cp, ca, cfg, mut, facts, check_reduction=False):
    jobs = cfg.jobs
    try:
        cd, crep = build_cleft_maps(cp, ca)
    except CleftError as exc:
        rep.record("cleft.build", 1, detail=str(exc)[:200])
        _skip(rep, _CLEFT_NAMES[1:])
        return
    rep.extend(crep)
    rep.record("cleft.build", 0)
    objs["cleft"] = cd

    if _maybe(mut, "gamma_prime"):
        if mut.op != "zero":
            raise ScenarioError("gamma_prime mutation op must be 'zero'")
        keys = sorted(cd.gamma_prime.keys())
        cd.gamma_prime.pop(keys[mut.index % len(keys)], None)

    vrep = verify_partially_cleft(cd, jobs=jobs)
    rep.extend(vrep)

    if check_reduction:
        rep.record("cleft.partial_representation_reduction",
                   *_partial_rep_reduction(cd))

    cd2, nrep = normalize_gamma_prime(cd, verify=False)
    rep.extend(nrep)
    rep.record("cleft.normalized_fixed_point",
               0 if cd2.gamma_prime == cd.gamma_prime else 1,
               detail="Prop 5.3 gamma' already satisfies (33)")

    if not vrep.passed:
        _skip(rep, _CLEFT_NAMES[3:])
        return
    try:
        rec, rrep = reconstruct_action(cd, jobs=jobs)
    except CleftError as exc:
        rep.record("cleft.reconstruct", 1, detail=str(exc)[:200])
        _skip(rep, _CLEFT_NAMES[4:])
        return
    rep.extend(rrep)
    rep.record("cleft.reconstruct", 0)
    objs["reconstructed"] = rec
    rep.extend(round_trip_compare(cp, cd, rec))
    irep, cp2, phi, psi = cleft_isomorphism(cd, rec, cp=cp, jobs=jobs)
    rep.extend(irep)
    objs["cp2"] = cp2


def _partial_rep_reduction(cd):
    """On a grouplike basis, clauses (v)-(vii) collapse to the partial
    representation identities gamma(g) e_r = e_{gr} gamma(g) and mirrors."""
    H = cd.extension.hopf
    B = cd.extension.carrier
    if not H.is_grouplike_basis():
        return 0, None
    g_of = cd.gamma
    gp_of = cd.gamma_prime
    e_tab = cd.conv(g_of, gp_of)
    et_tab = cd.conv(gp_of, g_of)
    fails, wit = 0, None
    for g in range(H.dim):
        for r in range(H.dim):
            gr = next(iter(H.algebra.mul_basis(g, r)))
            lhs = B.mul_vec(g_of.get(g, {}), e_tab.get(r, {}))
            rhs = B.mul_vec(e_tab.get(gr, {}), g_of.get(g, {}))
            if lhs != rhs:
                fails += 1
                if wit is None:
                    wit = {"clause": "v", "g": H.labels[g], "r": H.labels[r]}
            lhs = B.mul_vec(gp_of.get(r, {}), et_tab.get(g, {}))
            rhs = B.mul_vec(et_tab.get(gr, {}), gp_of.get(r, {}))
            if lhs != rhs:
                fails += 1
                if wit is None:
                    wit = {"clause": "vi", "g": H.labels[g], "r": H.labels[r]}
            lhs = B.mul_vec(g_of.get(gr, {}), et_tab.get(r, {}))
            rhs = B.mul_vec(e_tab.get(g, {}), g_of.get(gr, {}))
            if lhs != rhs:
                fails += 1
                if wit is None:
                    wit = {"clause": "vii", "g": H.labels[g], "r": H.labels[r]}
    return fails, wit


def _gauge_stage(rep, objs, cp, cfg, mut, facts):
    jobs = cfg.jobs
    tpa = objs["tpa"]
    H = tpa.hopf
    A = tpa.carrier

    # identity gauge u = v = e
    e_tab = {h: dict(tpa.one_image(h)) for h in range(H.dim) if tpa.one_image(h)}
    gp_id = GaugePair(tpa, tpa, e_tab, e_tab)
    idrep = verify_gauge(gp_id, jobs=jobs)
    rep.record("gauge.identity", 0 if idrep.passed else 1,
               None if idrep.passed else [c.name for c in idrep.failed_checks()])

    # coboundary gauge from a normalized scalar table on the grouplike basis
    lam = _gauge_lambda(H)
    u_tab = {}
    v_tab = {}
    for h in range(H.dim):
        one = tpa.one_image(h)
        if not one:
            continue
        u_tab[h] = {k: lam[h] * c for k, c in one.items()}
        v_tab[h] = {k: lam[h].inverse() * c for k, c in one.items()}
    if _maybe(mut, "gauge_u"):
        if mut.op != "unit":
            raise ScenarioError("gauge_u mutation op must be 'unit'")
        keys = sorted(u_tab.keys())
        u_tab[keys[mut.index % len(keys)]] = dict(A.unit)

    target = build_gauge_target(tpa, u_tab, v_tab, name="gauge_target")
    trep = verify_twisted_partial(target, jobs=jobs)
    rep.record("gauge.target_def21", 0 if trep.passed else 1,
               None if trep.passed else [c.name for c in trep.failed_checks()])
    srep = verify_symmetric(target, jobs=jobs)
    rep.record("gauge.target_symmetric", 0 if srep.passed else 1,
               None if srep.passed else [c.name for c in srep.failed_checks()])
    facts["gauge_sigma_differs"] = target.omega != tpa.omega

    gp = GaugePair(tpa, target, u_tab, v_tab)
    grep = verify_gauge(gp, jobs=jobs)
    rep.extend_prefixed(grep, "gauge.pair")

    if not (trep.passed and srep.passed and grep.passed):
        _skip(rep, ("gauge.coboundary", "gauge.extract"))
        return
    try:
        cp_t, btrep = build_crossed_product(target)
    except Exception as exc:
        rep.record("gauge.coboundary", 1, detail=str(exc)[:200])
        _skip(rep, ("gauge.extract",))
        return
    girep, phi, psi = gauge_isomorphism(gp, cp, cp_t, jobs=jobs)
    rep.extend_prefixed(girep, "gauge.iso")
    rep.record("gauge.coboundary", 0 if girep.passed else 1)
    if not girep.passed or phi is None:
        _skip(rep, ("gauge.extract",))
        return
    try:
        gp_back = extract_gauge(phi, cp, cp_t, jobs=jobs)
        backrep = verify_gauge(gp_back, jobs=jobs)
        ok = backrep.passed
        # recovered u must be the e-absorbed form of the original
        for h in range(H.dim):
            expect = {}
            for h1, h2, c in H.coalgebra.comult.get(h, ()):
                uu = u_tab.get(h1)
                if not uu:
                    continue
                one = tpa.one_image(h2)
                if one:
                    v_iadd(expect, A.mul_vec(uu, one), c)
            if gp_back.u.get(h, {}) != expect:
                ok = False
                break
        rep.record("gauge.extract", 0 if ok else 1)
        objs["gauge_pair"] = gp
        objs["gauge_extracted"] = gp_back
    except GaugeError as exc:
        rep.record("gauge.extract", 1, detail=str(exc)[:200])


def _gauge_lambda(H):
    """A normalized scalar table on the basis that is not a character,
    so the induced coboundary genuinely changes the cocycle."""
    lam = {}
    unit_idx = next(iter(H.unit))
    for h in range(H.dim):
        lam[h] = Cyclo.zeta(2) if (h % 3 == 1 and h != unit_idx) else ONE
    lam[unit_idx] = ONE
    return lam


# ---------------------------------------------------------------------------
# induced-functions scenario (Example 2.4 + corner identity)
# ---------------------------------------------------------------------------

def _functions_algebra(G):
    n = G.order
    mult = {(i, i): {i: ONE} for i in range(n)}
    unit = {i: ONE for i in range(n)}
    labels = tuple(f"d_{x}" for x in G.labels)
    return StructuredAlgebra(n, mult, unit, labels)


def _run_induced_functions(cfg, mut, full=True):
    rep = Report(title=cfg.name)
    jobs = cfg.jobs
    G = FiniteGroup.preset(cfg.group)
    B = _functions_algebra(G)
    H = group_algebra(G)
    if cfg.cocycle == "klein":
        gamma = GroupCocycleTable.klein_cocycle(G)
    else:
        gamma = GroupCocycleTable.trivial(G)

    action = {}
    for g in range(G.order):
        for b in range(G.order):
            action[(g, b)] = {G.table[g][b]: ONE}
    cocycle = {}
    for g in range(G.order):
        for h in range(G.order):
            cocycle[(g, h)] = {b: gamma(g, h) for b in range(G.order)}
    if _maybe(mut, "u"):
        keys = sorted(cocycle.keys())
        key = keys[mut.index % len(keys)]
        if mut.op == "zero":
            del cocycle[key]
        elif mut.op == "negate":
            cocycle[key] = _neg_vec(cocycle[key])
        else:
            raise ScenarioError("u mutation op must be zero or negate")

    glob = GlobalTwistedAction(H, B, action, cocycle)
    objs = {"group": G, "B": B, "H": H, "glob": glob, "gamma": gamma}
    result = ScenarioResult(cfg.name, cfg, rep, objects=objs)
    facts = result.facts
    facts["dim_B"] = B.dim
    facts["dim_H"] = H.dim

    grep = glob.verify(jobs=jobs)
    rep.extend_prefixed(grep, "induced")
    if not full:
        return result

    Y = GroupSubset.from_labels(G, cfg.subset)
    rep.record("induced.Y_not_translation_closed", 0,
               detail=f"Y={[G.labels[i] for i in Y.members]}")
    idem = {i: ONE for i in Y.members}

    try:
        tpa, sub = induce_partial(glob, idem, jobs=jobs, verify=False)
    except PartialActionError as exc:
        rep.record("induced.build", 1, detail=str(exc)[:200])
        return result
    rep.record("induced.build", 0)
    objs["tpa"], objs["sub"] = tpa, sub
    facts["dim_A"] = tpa.carrier.dim

    rep.extend(verify_twisted_partial(tpa, jobs=jobs))
    cls = classify_cocycle(tpa, jobs=jobs)
    facts["classification"] = cls.kind
    rep.record("classify.eq8_eq9", 0 if cls.normalized else 1)
    rep.extend(verify_symmetric(tpa, jobs=jobs))

    # omega' closed form for an invertible global cocycle (grouplike H = kG):
    # omega'(g,h) = (gh . 1) u^{-1}(g,h) (g . 1) with u^{-1} = gamma^{-1} 1_B
    if tpa.omega_prime is not None:
        A = tpa.carrier
        fails, wit = 0, None
        for g in range(G.order):
            for h in range(G.order):
                gh = G.table[g][h]
                uinv = gamma(g, h).inverse()
                prod = A.mul_vec(tpa.one_image(gh), tpa.one_image(g))
                expect = {k: uinv * v for k, v in prod.items()}
                if expect != tpa.omega_prime.get((g, h), {}):
                    fails += 1
                    if wit is None:
                        wit = {"g": G.labels[g], "h": G.labels[h]}
        rep.record("induced.omega_prime_closed_form", fails, wit)
    else:
        rep.record_skip("induced.omega_prime_closed_form", "omega' unavailable")

    # trivial u gives trivial omega
    triv_cocycle = {}
    for g in range(G.order):
        for h in range(G.order):
            triv_cocycle[(g, h)] = dict(B.unit)
    glob_triv = GlobalTwistedAction(H, B, action, triv_cocycle)
    tpa_triv, _ = induce_partial(glob_triv, idem, jobs=jobs, verify=False)
    cls_triv = classify_cocycle(tpa_triv, jobs=jobs)
    rep.record("induced.trivial_u_gives_trivial_omega",
               0 if cls_triv.trivial else 1)

    # idem = 1_B recovers the global crossed product
    tpa_full, _ = induce_partial(glob, dict(B.unit), jobs=jobs, verify=False)
    cp_full, _ = build_crossed_product(tpa_full)
    rep.record("induced.full_idem_recovers_global",
               0 if cp_full.dim == B.dim * H.dim else 1,
               detail=f"dim = {cp_full.dim}")

    # crossed product and corner identity
    try:
        cp, crep = build_crossed_product(tpa)
    except Exception as exc:
        rep.record("crossed.exception", 1, detail=str(exc)[:200])
        return result
    rep.extend(crep)
    objs["cp"] = cp
    facts["dim_crossed"] = cp.dim
    rep.extend(verify_closure(cp, jobs=jobs))
    rep.extend(verify_associativity(cp, "criterion", jobs=jobs))
    rep.extend(verify_associativity(cp, "exhaustive", jobs=jobs))

    cor_rep, cp_b, cp_a = global_corner_embedding(glob, idem, tpa, sub, jobs=jobs, cp_a=cp)
    rep.extend_prefixed(cor_rep, "corner")

    try:
        ca, corep = comodule_structure(cp, jobs=jobs)
        rep.extend(corep)
        space, coirep = coinvariants(ca)
        rep.extend(coirep)
        rep.record("coinvariants.equals_A_sharp_1",
                   0 if coinvariants_equal_sharp_a(cp, space) else 1)
        _cleft_stage(rep, objs, cp, ca, cfg, mut, facts)
    except Exception as exc:
        rep.record("comodule.exception", 1, detail=str(exc)[:200])
    return result


# ---------------------------------------------------------------------------
# group-dictionary scenario (Example 2.3 both ways)
# ---------------------------------------------------------------------------

def _run_group_dictionary(cfg, mut, full=True):
    rep = Report(title=cfg.name)
    jobs = cfg.jobs
    G = FiniteGroup.preset(cfg.group)
    if G.order != 2:
        raise ScenarioError("group-dictionary scenario wants Z/2")
    # A = k x k x k, alpha_g swaps the first two coordinates, D_g = <d0, d1>
    mult = {(i, i): {i: ONE} for i in range(3)}
    unit = {0: ONE, 1: ONE, 2: ONE}
    A = StructuredAlgebra(3, mult, unit, ("d0", "d1", "d2"))
    one_g = {0: ONE, 1: ONE}
    idem = [dict(unit), dict(one_g)]
    alphas = {
        0: {0: {0: ONE}, 1: {1: ONE}, 2: {2: ONE}},
        1: {0: {1: ONE}, 1: {0: ONE}},
    }
    w = {
        (0, 0): dict(unit),
        (0, 1): dict(one_g),
        (1, 0): dict(one_g),
        (1, 1): dict(one_g),
    }
    if _maybe(mut, "w"):
        if mut.op != "noninvertible":
            raise ScenarioError("w mutation op must be 'noninvertible'")
        w[(1, 1)] = {0: ONE}

    gpa = GroupTwistedPartialAction(G, A, idem, alphas, w)
    objs = {"group": G, "A": A, "gpa": gpa}
    result = ScenarioResult(cfg.name, cfg, rep, objects=objs)
    facts = result.facts
    facts["dim_A"] = A.dim

    grep = gpa.verify()
    rep.extend_prefixed(grep, "dict")
    if not full:
        return result

    wit = inner_automorphism_witness(gpa, 1)
    rep.record("dict.inner_automorphism", 0 if wit is None else 1, wit)

    try:
        tpa = group_dictionary_forward(gpa, verify=False)
        vrep = verify_twisted_partial(tpa, jobs=jobs)
        rep.extend(vrep)
        objs["tpa"] = tpa
    except PartialActionError as exc:
        rep.record("dict.forward", 1, detail=str(exc)[:200])
        return result
    rep.record("dict.forward", 0)

    fails, wit = 0, None
    for g in range(G.order):
        w2 = None
        one = tpa.one_image(g)
        if A.mul_vec(one, one) != one:
            w2 = "not idempotent"
        if w2 is None and one != idem[g]:
            w2 = "1_g mismatch"
        if w2 is not None:
            fails += 1
            if wit is None:
                wit = {"g": G.labels[g], "reason": w2}
    rep.record("dict.one_g_central_idempotents", fails, wit)

    try:
        gpa2 = group_dictionary_inverse(tpa, verify=True)
        rep.record("dict.inverse_extraction", 0)
    except PartialActionError as exc:
        rep.record("dict.inverse_extraction", 1, detail=str(exc)[:200])
        _skip(rep, ("dict.round_trip", "dict.crossed_product"))
        return result

    fails, wit = 0, None
    for g in range(G.order):
        if gpa2.idempotents[g] != gpa.idempotents[g]:
            fails += 1
            wit = wit or {"g": G.labels[g], "part": "idempotent"}
        for a in range(A.dim):
            if gpa2.alpha(g, A.mul_vec({a: ONE}, gpa.idempotents[G.inv[g]])) != gpa.alpha(
                g, A.mul_vec({a: ONE}, gpa.idempotents[G.inv[g]])
            ):
                fails += 1
                wit = wit or {"g": G.labels[g], "part": "alpha"}
        for h in range(G.order):
            if gpa2.w[(g, h)] != gpa.w[(g, h)]:
                fails += 1
                wit = wit or {"g": G.labels[g], "h": G.labels[h], "part": "w"}
    rep.record("dict.round_trip", fails, wit)

    tpa2 = group_dictionary_forward(gpa2, verify=False)
    same = tpa2.action == tpa.action and tpa2.omega == tpa.omega
    rep.record("dict.round_trip_tpa_tables", 0 if same else 1)

    cp, crep = build_crossed_product(tpa)
    rep.extend(crep)
    objs["cp"] = cp
    facts["dim_crossed"] = cp.dim
    rep.extend(verify_associativity(cp, "exhaustive", jobs=jobs))
    rep.record("dict.crossed_product", 0)
    return result


# ---------------------------------------------------------------------------
# entry point + mutation catalog
# ---------------------------------------------------------------------------

def run_scenario(name, jobs=1, seed=0, sample_count=10_000, mutate=None, full=True,
                 config=None):
    cfg = config or default_config(name, jobs=jobs, seed=seed, sample_count=sample_count)
    cfg.jobs = jobs
    mut = Mutation.parse(mutate) if isinstance(mutate, str) else mutate
    if cfg.name == "klein4":
        return _run_torus_scenario(cfg, mut, full=full)
    if cfg.name == "smoke-z2":
        return _run_torus_scenario(cfg, mut, full=full, exhaustive_assoc=True)
    if cfg.name == "induced-functions":
        return _run_induced_functions(cfg, mut, full=full)
    if cfg.name == "group-dictionary":
        return _run_group_dictionary(cfg, mut, full=full)
    raise ScenarioError(f"unknown scenario {cfg.name!r}")


# Catalogued single-entry mutations with their verified failure signatures.
# Each entry: (catalog name, scenario, mutation spec, primary failing check).
MUTATION_CATALOG = (
    ("omega-sign-flip", "smoke-z2", "omega:negate:5", "symm.eq9_cocycle"),
    ("omega-spill", "smoke-z2", "omega:spill:0", "tpa.eq4_cocycle_absorption"),
    ("omega-zero", "smoke-z2", "omega:zero:9", "symm.omega_prime"),
    ("gamma-scaling", "klein4", "gamma:scale2:6", "cocycle.law"),
    ("antipode-corruption", "smoke-z2", "antipode:corrupt:3", "smash.antipode.axiom"),
    ("action-sign-flip", "smoke-z2", "action:negate:7", "tpa.eq2_multiplicativity"),
    ("gamma-prime-zero", "smoke-z2", "gamma_prime:zero:2", "cleft.iv_expansion"),
    ("gauge-u-clause-ii", "smoke-z2", "gauge_u:unit:1", "gauge.pair.gauge.ii_absorption"),
    ("pairing-sign-flip", "smoke-z2", "pairing:negate:3", "pairing.laws"),
    ("mult-corruption", "smoke-z2", "hopf_mult:unit:5", "smash.algebra.associativity"),
    ("global-u-sign-flip", "induced-functions", "u:negate:5", "induced.global.u_cocycle_law"),
    ("w-not-invertible", "group-dictionary", "w:noninvertible:0", "dict.inverse_extraction"),
)
