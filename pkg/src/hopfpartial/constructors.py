"""Concrete Hopf algebras: group algebras, truncated tori, smash and
cosemidirect products, and verified Hopf pairings.

Torus factors are finite truncations: the circle group and the Laurent
algebra are replaced by the cyclic group C_m of m-th roots of unity, so that
every construction is finite-dimensional and machine-checkable.
"""

from __future__ import annotations

from .algebra import (
    CoalgebraData,
    HopfAlgebraData,
    LinMap,
    StructuredAlgebra,
    dual_hopf,
    v_iadd,
    validate_hopf,
)
from .groups import FiniteGroup
from .reports import Report
from .scalars import Cyclo

ONE = Cyclo.one()


class ConstructorError(ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotCocommutativeError(ConstructorError):
    pass


class NotModuleAlgebraError(ConstructorError):
    pass


class NotComoduleCoalgebraError(ConstructorError):
    pass


class PairingLawViolation(ConstructorError):
    pass


# ---------------------------------------------------------------------------
# group algebras and tori
# ---------------------------------------------------------------------------

def group_algebra(G):
    """kG with grouplike basis u_g, S(u_g) = u_{g^-1}."""
    n = G.order
    labels = tuple(f"u_{x}" for x in G.labels)
    mult = {(i, j): {G.table[i][j]: ONE} for i in range(n) for j in range(n)}
    algebra = StructuredAlgebra(n, mult, {G.identity: ONE}, labels)
    comult = {i: ((i, i, ONE),) for i in range(n)}
    counit = {i: ONE for i in range(n)}
    coalgebra = CoalgebraData(n, comult, counit, labels)
    antipode = {i: {G.inv[i]: ONE} for i in range(n)}
    H = HopfAlgebraData(algebra, coalgebra, antipode)
    H.extra["kind"] = "group_algebra"
    H.extra["group"] = G
    return H


def exponent_index(vec, m):
    flat = 0
    for k in vec:
        flat = flat * m + k
    return flat


def index_exponent(flat, m, n):
    out = []
    for _ in range(n):
        out.append(flat % m)
        flat //= m
    return tuple(reversed(out))


def truncated_torus(m, n, gen_symbol="t"):
    """(kC_m)^(x n): the torus coordinate algebra truncated at t^m = 1.

    Basis monomials t_1^{k_1}...t_n^{k_n} with 0 <= k_i < m, all grouplike.
    """
    if m < 1 or n < 1:
        raise ConstructorError("m and n must be positive")
    dim = m ** n
    labels = []
    for flat in range(dim):
        k = index_exponent(flat, m, n)
        labels.append(gen_symbol + "^(" + ",".join(str(x) for x in k) + ")")
    mult = {}
    for i in range(dim):
        ki = index_exponent(i, m, n)
        for j in range(dim):
            kj = index_exponent(j, m, n)
            mult[(i, j)] = {exponent_index(tuple((a + b) % m for a, b in zip(ki, kj)), m): ONE}
    algebra = StructuredAlgebra(dim, mult, {0: ONE}, labels)
    comult = {i: ((i, i, ONE),) for i in range(dim)}
    counit = {i: ONE for i in range(dim)}
    coalgebra = CoalgebraData(dim, comult, counit, labels)
    antipode = {
        i: {exponent_index(tuple((-a) % m for a in index_exponent(i, m, n)), m): ONE}
        for i in range(dim)
    }
    H = HopfAlgebraData(algebra, coalgebra, antipode)
    H.extra.update({"kind": "torus", "m": m, "n": n, "symbol": gen_symbol})
    return H


def permute_exponents(perm, k):
    """Left action of a position permutation on an exponent vector.

    (g.k)_j = k_{g^-1(j)}; perm is the tuple (g(0), ..., g(n-1)).
    """
    out = [0] * len(k)
    for i, x in enumerate(k):
        out[perm[i]] = x
    return tuple(out)


class ModuleAlgebraAction:
    """Action of a group Hopf algebra kG on a Hopf algebra L by algebra maps."""

    __slots__ = ("hopf", "carrier", "action")

    def __init__(self, hopf, carrier, action):
        self.hopf = hopf  # kG
        self.carrier = carrier  # L
        self.action = action  # dict[(g_idx, l_idx)] -> vec over L

    def act(self, g, vec):
        out = {}
        for l, c in vec.items():
            col = self.action.get((g, l))
            if col:
                v_iadd(out, col, c)
        return out

    def verify(self):
        """Module-algebra laws, exhaustively on the bases."""
        rep = Report(title="module_algebra")
        G = self.hopf.extra["group"]
        L = self.carrier.algebra
        n, dim = G.order, L.dim

        fails, wit = 0, None
        for g in range(n):
            for i in range(dim):
                for j in range(dim):
                    lhs = self.act(g, L.mul_basis(i, j))
                    rhs = L.mul_vec(self.act(g, {i: ONE}), self.act(g, {j: ONE}))
                    if lhs != rhs:
                        fails += 1
                        if wit is None:
                            wit = (G.labels[g], L.labels[i], L.labels[j])
        rep.record("module_algebra.multiplicative", fails, wit)

        fails, wit = 0, None
        for g in range(n):
            if self.act(g, L.unit) != L.unit:
                fails += 1
                if wit is None:
                    wit = (G.labels[g],)
        rep.record("module_algebra.unital", fails, wit)

        fails, wit = 0, None
        for g in range(n):
            for h in range(n):
                gh = G.table[g][h]
                for i in range(dim):
                    if self.act(gh, {i: ONE}) != self.act(g, self.act(h, {i: ONE})):
                        fails += 1
                        if wit is None:
                            wit = (G.labels[g], G.labels[h], L.labels[i])
        rep.record("module_algebra.associative", fails, wit)

        fails, wit = 0, None
        e = G.identity
        for i in range(dim):
            if self.act(e, {i: ONE}) != {i: ONE}:
                fails += 1
                if wit is None:
                    wit = (L.labels[i],)
        rep.record("module_algebra.unit_acts_trivially", fails, wit)
        return rep


def torus_permutation_action(G, perms, L):
    """The kG-module algebra structure on a torus by permuting tensor factors."""
    m, n = L.extra["m"], L.extra["n"]
    kG = group_algebra(G)
    action = {}
    for g, perm in enumerate(perms):
        for i in range(L.dim):
            k = index_exponent(i, m, n)
            action[(g, i)] = {exponent_index(permute_exponents(perm, k), m): ONE}
    return ModuleAlgebraAction(kG, L, action)


# ---------------------------------------------------------------------------
# smash product L x| kG
# ---------------------------------------------------------------------------

def is_cocommutative(H):
    for i in range(H.dim):
        terms = sorted(H.coalgebra.comult.get(i, ()))
        flipped = sorted((k, j, c) for j, k, c in H.coalgebra.comult.get(i, ()))
        if len(terms) != len(flipped):
            return False
        for (a, b, c), (d, e, f) in zip(terms, flipped):
            if a != d or b != e or c != f:
                return False
    return True


def smash_product(L, act, validate=True):
    """Smash product Hopf algebra L x| kG for cocommutative L.

    Product (l@g)(l'@g') = l(g.l') @ gg', comultiplication leg-wise on L with
    the group index duplicated, and S(l@g) = (g^-1 . S_L(l)) @ g^-1.  The
    antipode formula is verified by validate_hopf rather than assumed.
    """
    if not is_cocommutative(L):
        raise NotCocommutativeError("smash product requires a cocommutative L")
    mrep = act.verify()
    if not mrep.passed:
        raise NotModuleAlgebraError("module-algebra laws fail", mrep)
    G = act.hopf.extra["group"]
    nG = G.order
    dimL = L.dim
    dim = dimL * nG
    labels = tuple(f"{L.labels[l]}@u_{G.labels[g]}" for l in range(dimL) for g in range(nG))

    def flat(l, g):
        return l * nG + g

    mult = {}
    for l1 in range(dimL):
        for g1 in range(nG):
            i = flat(l1, g1)
            for l2 in range(dimL):
                for g2 in range(nG):
                    acted = act.action.get((g1, l2), {})
                    col = {}
                    g = G.table[g1][g2]
                    for z, cz in acted.items():
                        prod = L.algebra.mul_basis(l1, z)
                        for w, cw in prod.items():
                            v_iadd(col, {flat(w, g): cz * cw})
                    if col:
                        mult[(i, flat(l2, g2))] = col
    unit = {}
    for l, c in L.algebra.unit.items():
        unit[flat(l, G.identity)] = c
    algebra = StructuredAlgebra(dim, mult, unit, labels)

    comult = {}
    counit = {}
    for l in range(dimL):
        for g in range(nG):
            i = flat(l, g)
            comult[i] = tuple(
                (flat(j, g), flat(k, g), c) for j, k, c in L.coalgebra.comult.get(l, ())
            )
            e = L.coalgebra.counit.get(l)
            if e is not None and not e.is_zero():
                counit[i] = e
    coalgebra = CoalgebraData(dim, comult, counit, labels)

    antipode = {}
    for l in range(dimL):
        sl = L.antipode.get(l, {})
        for g in range(nG):
            ginv = G.inv[g]
            col = {}
            for z, cz in act.act(ginv, sl).items():
                col[flat(z, ginv)] = cz
            if col:
                antipode[flat(l, g)] = col
    H = HopfAlgebraData(algebra, coalgebra, antipode)
    H.extra.update({
        "kind": "smash",
        "L": L,
        "group": G,
        "action": act,
        "g_of_index": tuple(i % nG for i in range(dim)),
        "l_of_index": tuple(i // nG for i in range(dim)),
        "flat": flat,
    })
    if validate:
        rep = validate_hopf(H, "smash")
        if not rep.passed:
            raise ConstructorError("smash product failed Hopf validation", rep)
    return H


# ---------------------------------------------------------------------------
# cosemidirect product L >| (kG)*
# ---------------------------------------------------------------------------

def torus_permutation_coaction(G, perms, L):
    """Left (kG)*-coaction on a torus: delta(t^k) = sum_g p_g (x) t^(g^-1 . k).

    Returned as components: comp[g] is the linear map l -> delta_g(l).
    """
    m, n = L.extra["m"], L.extra["n"]
    comp = {}
    for g, perm in enumerate(perms):
        inv_perm = [0] * len(perm)
        for i, x in enumerate(perm):
            inv_perm[x] = i
        cols = {}
        for i in range(L.dim):
            k = index_exponent(i, m, n)
            cols[i] = {exponent_index(permute_exponents(tuple(inv_perm), k), m): ONE}
        comp[g] = cols
    return comp


def coaction_components_to_linmap(comp, G, L):
    """Pack components into a LinMap L -> (kG)* (x) L, flat index g*dimL + l."""
    out = LinMap((L.dim,), G.order * L.dim)
    for l in range(L.dim):
        col = {}
        for g in range(G.order):
            for l2, c in comp[g].get(l, {}).items():
                col[g * L.dim + l2] = c
        out.cols[l] = col
    return out


def verify_comodule_coalgebra(comp, G, L):
    """Laws making L a left (kG)*-comodule coalgebra (and algebra)."""
    rep = Report(title="comodule_coalgebra")
    dim = L.dim
    e = G.identity

    def delta(g, vec):
        out = {}
        for l, c in vec.items():
            col = comp[g].get(l)
            if col:
                v_iadd(out, col, c)
        return out

    fails, wit = 0, None
    for l in range(dim):
        if delta(e, {l: ONE}) != {l: ONE}:
            fails += 1
            if wit is None:
                wit = (L.labels[l],)
    rep.record("comodule.counit", fails, wit)

    fails, wit = 0, None
    for s in range(G.order):
        for u in range(G.order):
            su = G.table[s][u]
            for l in range(dim):
                if delta(su, {l: ONE}) != delta(u, delta(s, {l: ONE})):
                    fails += 1
                    if wit is None:
                        wit = (G.labels[s], G.labels[u], L.labels[l])
    rep.record("comodule.coassociative", fails, wit)

    fails, wit = 0, None
    for g in range(G.order):
        for l in range(dim):
            lhs = {}
            for j, k, c in L.coalgebra.comult.get(l, ()):
                dgj = comp[g].get(j, {})
                dgk = comp[g].get(k, {})
                for a, ca in dgj.items():
                    for b, cb in dgk.items():
                        v_iadd(lhs, {a * dim + b: c * ca * cb})
            rhs = {}
            for l2, c in comp[g].get(l, {}).items():
                for j, k, d in L.coalgebra.comult.get(l2, ()):
                    v_iadd(rhs, {j * dim + k: c * d})
            if lhs != rhs:
                fails += 1
                if wit is None:
                    wit = (G.labels[g], L.labels[l])
            lhs_e = L.coalgebra.counit_of(delta(g, {l: ONE}))
            rhs_e = L.coalgebra.counit.get(l, Cyclo.zero())
            if lhs_e != rhs_e:
                fails += 1
                if wit is None:
                    wit = (G.labels[g], L.labels[l], "counit")
    rep.record("comodule.coalgebra_map", fails, wit)

    fails, wit = 0, None
    for g in range(G.order):
        for i in range(dim):
            for j in range(dim):
                if delta(g, L.algebra.mul_basis(i, j)) != L.algebra.mul_vec(
                    delta(g, {i: ONE}), delta(g, {j: ONE})
                ):
                    fails += 1
                    if wit is None:
                        wit = (G.labels[g], L.labels[i], L.labels[j])
        if delta(g, L.algebra.unit) != L.algebra.unit:
            fails += 1
            if wit is None:
                wit = (G.labels[g], "unit")
    rep.record("comodule.algebra_map", fails, wit)
    return rep


def cosemidirect_product(L, G, comp, validate=True):
    """Cosemidirect product L >| (kG)* with componentwise algebra structure.

    Delta(l @ p_g) = sum_s (l_(1) @ p_s) (x) (delta_s(l_(2)) @ p_{s^-1 g}),
    S(l @ p_g) = S_L(delta_g(l)) @ p_{g^-1}.  Output is Hopf-validated.
    """
    crep = verify_comodule_coalgebra(comp, G, L)
    if not crep.passed:
        raise NotComoduleCoalgebraError("coaction laws fail", crep)
    nG = G.order
    dimL = L.dim
    dim = dimL * nG
    labels = tuple(f"{L.labels[l]}@p_{G.labels[g]}" for l in range(dimL) for g in range(nG))

    def flat(l, g):
        return l * nG + g

    mult = {}
    for l1 in range(dimL):
        for l2 in range(dimL):
            prod = L.algebra.mul_basis(l1, l2)
            if not prod:
                continue
            for g in range(nG):
                col = {flat(w, g): c for w, c in prod.items()}
                mult[(flat(l1, g), flat(l2, g))] = col
    unit = {}
    for l, c in L.algebra.unit.items():
        for g in range(nG):
            unit[flat(l, g)] = c
    algebra = StructuredAlgebra(dim, mult, unit, labels)

    comult = {}
    counit = {}
    e = G.identity
    for l in range(dimL):
        for g in range(nG):
            terms = []
            for j, k, c in L.coalgebra.comult.get(l, ()):
                for s in range(nG):
                    sg = G.table[G.inv[s]][g]
                    for k2, d in comp[s].get(k, {}).items():
                        terms.append((flat(j, s), flat(k2, sg), c * d))
            comult[flat(l, g)] = tuple(terms)
            if g == e:
                ce = L.coalgebra.counit.get(l)
                if ce is not None and not ce.is_zero():
                    counit[flat(l, g)] = ce
    coalgebra = CoalgebraData(dim, comult, counit, labels)

    antipode = {}
    for l in range(dimL):
        for g in range(nG):
            col = {}
            for l2, c in comp[g].get(l, {}).items():
                for w, cw in L.antipode.get(l2, {}).items():
                    v_iadd(col, {flat(w, G.inv[g]): c * cw})
            if col:
                antipode[flat(l, g)] = col
    H = HopfAlgebraData(algebra, coalgebra, antipode)
    H.extra.update({
        "kind": "cosemidirect",
        "L": L,
        "group": G,
        "coaction": comp,
        "g_of_index": tuple(i % nG for i in range(dim)),
        "l_of_index": tuple(i // nG for i in range(dim)),
        "flat": flat,
    })
    if validate:
        rep = validate_hopf(H, "cosemidirect")
        if not rep.passed:
            raise ConstructorError("cosemidirect product failed Hopf validation", rep)
    return H


# ---------------------------------------------------------------------------
# Hopf pairings
# ---------------------------------------------------------------------------

class HopfPairing:
    """A verified bilinear pairing H1 (x) H2 -> k compatible with all structure."""

    __slots__ = ("h1", "h2", "table")

    def __init__(self, h1, h2, table):
        self.h1 = h1
        self.h2 = h2
        self.table = table  # dict[(i1, i2)] -> Cyclo, absent = 0

    def pair_basis(self, i, j):
        return self.table.get((i, j), Cyclo.zero())

    def pair(self, u, v):
        out = Cyclo.zero()
        for i, ci in u.items():
            for j, cj in v.items():
                t = self.table.get((i, j))
                if t is not None:
                    out = out + ci * cj * t
        return out


def hopf_pairing(h1, h2, table):
    """Verify the pairing laws exhaustively and return a HopfPairing.

    Laws: <ab,x> = sum <a,x_(1)><b,x_(2)>, <a,xy> = sum <a_(1),x><a_(2),y>,
    <1,x> = eps(x), <a,1> = eps(a), <S(a),x> = <a,S(x)>.
    """
    pairing = HopfPairing(h1, h2, table)
    d1, d2 = h1.dim, h2.dim

    for a in range(d1):
        for b in range(d1):
            ab = h1.algebra.mul_basis(a, b)
            for x in range(d2):
                lhs = Cyclo.zero()
                for i, c in ab.items():
                    t = table.get((i, x))
                    if t is not None:
                        lhs = lhs + c * t
                rhs = Cyclo.zero()
                for x1, x2, c in h2.coalgebra.comult.get(x, ()):
                    t1 = table.get((a, x1))
                    if t1 is None:
                        continue
                    t2 = table.get((b, x2))
                    if t2 is not None:
                        rhs = rhs + c * t1 * t2
                if lhs != rhs:
                    raise PairingLawViolation(
                        f"<ab,x> law fails at ({h1.labels[a]},{h1.labels[b]},{h2.labels[x]})"
                    )

    for a in range(d1):
        for x in range(d2):
            for y in range(d2):
                xy = h2.algebra.mul_basis(x, y)
                lhs = Cyclo.zero()
                for j, c in xy.items():
                    t = table.get((a, j))
                    if t is not None:
                        lhs = lhs + c * t
                rhs = Cyclo.zero()
                for a1, a2, c in h1.coalgebra.comult.get(a, ()):
                    t1 = table.get((a1, x))
                    if t1 is None:
                        continue
                    t2 = table.get((a2, y))
                    if t2 is not None:
                        rhs = rhs + c * t1 * t2
                if lhs != rhs:
                    raise PairingLawViolation(
                        f"<a,xy> law fails at ({h1.labels[a]},{h2.labels[x]},{h2.labels[y]})"
                    )

    for x in range(d2):
        lhs = pairing.pair(h1.unit, {x: ONE})
        if lhs != h2.coalgebra.counit.get(x, Cyclo.zero()):
            raise PairingLawViolation(f"<1,x> law fails at {h2.labels[x]}")
    for a in range(d1):
        lhs = pairing.pair({a: ONE}, h2.unit)
        if lhs != h1.coalgebra.counit.get(a, Cyclo.zero()):
            raise PairingLawViolation(f"<a,1> law fails at {h1.labels[a]}")

    for a in range(d1):
        sa = h1.apply_antipode({a: ONE})
        for x in range(d2):
            sx = h2.apply_antipode({x: ONE})
            if pairing.pair(sa, {x: ONE}) != pairing.pair({a: ONE}, sx):
                raise PairingLawViolation(
                    f"antipode law fails at ({h1.labels[a]},{h2.labels[x]})"
                )
    return pairing


def canonical_group_pairing(G):
    """<u_g, p_s> = delta(g,s) between kG and its dual."""
    kg = group_algebra(G)
    dual = dual_hopf(kg)
    table = {(g, g): ONE for g in range(G.order)}
    return hopf_pairing(kg, dual, table)
