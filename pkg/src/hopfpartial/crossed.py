"""Partial crossed products A # H = (A (x) H)(1 (x) 1).

The corner is realized as an explicit sub-basis of A (x) H via an exact rank
computation of the projector, so membership, closure and corner comparisons
are exact subspace operations rather than quotient bookkeeping.
"""

from __future__ import annotations

import random

from .algebra import StructuredAlgebra, v_iadd
from .linalg import Subspace
from .parallel import run_partitioned
from .partial_actions import TwistedPartialAction, _check_eq8, _tpa_ctx, _w_eq3, _w_eq9
from .reports import Report
from .scalars import Cyclo

ONE = Cyclo.one()


class CrossedProductError(ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NormalizationFailure(CrossedProductError):
    pass


class ClosureFailure(CrossedProductError):
    pass


class CrossedProduct:
    """The corner (A (x) H)(1 (x) 1) with its product and comodule map."""

    __slots__ = ("tpa", "dim_a", "dim_h", "unit_ambient", "space", "dim",
                 "labels", "unit", "_rho", "_cache", "_cache_full")

    def __init__(self, tpa, space, unit_ambient):
        self.tpa = tpa
        self.dim_a = tpa.carrier.dim
        self.dim_h = tpa.hopf.dim
        self.space = space
        self.unit_ambient = unit_ambient
        self.dim = space.dim
        A, H = tpa.carrier, tpa.hopf
        self.labels = tuple(
            f"{A.labels[p // self.dim_h]}#{H.labels[p % self.dim_h]}" for p in space.pivots
        )
        self.unit = space.coords(unit_ambient)
        self._rho = {}
        self._cache = {}
        self._cache_full = False

    # -- ambient arithmetic ----------------------------------------------------

    def ambient_pair_product(self, a, h, b, l):
        """(e_a (x) e_h)(e_b (x) e_l) in A (x) H."""
        tpa = self.tpa
        A = tpa.carrier
        Halg = tpa.hopf.algebra
        dim_h = self.dim_h
        out = {}
        for (h1, h2, h3), ch in tpa.hopf.sweedler(h, 3):
            acted = tpa.action.get((h1, b))
            if not acted:
                continue
            left = A.mul_basis_vec(a, acted)
            if not left:
                continue
            for (l1, l2), cl in _sw2(tpa.hopf, l):
                om = tpa.omega.get((h2, l1))
                if not om:
                    continue
                avec = A.mul_vec(left, om)
                if not avec:
                    continue
                c = ch * cl
                for z, cz in Halg.mul_basis(h3, l2).items():
                    czc = cz * c
                    for t, ct in avec.items():
                        key = t * dim_h + z
                        cur = out.get(key)
                        w = ct * czc
                        nv = w if cur is None else cur + w
                        if nv.is_zero():
                            out.pop(key, None)
                        else:
                            out[key] = nv
        return out

    def ambient_product(self, x, y):
        dim_h = self.dim_h
        out = {}
        for i, ci in x.items():
            a, h = divmod(i, dim_h)
            for j, cj in y.items():
                b, l = divmod(j, dim_h)
                v_iadd(out, self.ambient_pair_product(a, h, b, l), ci * cj)
        return out

    def sharp(self, avec, hvec):
        """a # h = (a (x) h)(1 (x) 1) for vectors a, h; coordinates or None."""
        dim_h = self.dim_h
        amb = {}
        for a, ca in avec.items():
            for h, ch in hvec.items():
                amb[a * dim_h + h] = ca * ch
        proj = self.ambient_product(amb, self.unit_ambient)
        return self.space.coords(proj)

    # -- corner product ----------------------------------------------------------

    def product_basis(self, i, j, cache=True):
        if cache:
            hit = self._cache.get((i, j))
            if hit is not None:
                return hit
        amb = self.ambient_product(self.space.basis[i], self.space.basis[j])
        coords = self.space.coords(amb)
        if coords is None:
            raise ClosureFailure(f"product of basis {i},{j} leaves the corner")
        if cache and len(self._cache) < 60_000:
            self._cache[(i, j)] = coords
        return coords

    def mul_basis(self, i, j):
        return self.product_basis(i, j)

    def mul_vec(self, u, v):
        out = {}
        for i, ci in u.items():
            for j, cj in v.items():
                col = self.product_basis(i, j)
                if col:
                    v_iadd(out, col, ci * cj)
        return out

    def mul_vec_basis(self, u, j):
        out = {}
        for i, ci in u.items():
            col = self.product_basis(i, j)
            if col:
                v_iadd(out, col, ci)
        return out

    def mul_basis_vec(self, i, v):
        out = {}
        for j, cj in v.items():
            col = self.product_basis(i, j)
            if col:
                v_iadd(out, col, cj)
        return out

    def label_of(self, i):
        return self.labels[i]

    # -- comodule map ------------------------------------------------------------

    def rho_basis(self, i):
        """rho(e_i) = (id (x) Delta) restricted; tuple of (cp_idx, h_idx, c)."""
        cached = self._rho.get(i)
        if cached is not None:
            return cached
        dim_h = self.dim_h
        by_h = {}
        for flat, c in self.space.basis[i].items():
            a, h = divmod(flat, dim_h)
            for h1, h2, ch in self.tpa.hopf.coalgebra.comult.get(h, ()):
                acc = by_h.setdefault(h2, {})
                key = a * dim_h + h1
                cur = acc.get(key)
                w = c * ch
                nv = w if cur is None else cur + w
                if nv.is_zero():
                    acc.pop(key, None)
                else:
                    acc[key] = nv
        triples = []
        for h2 in sorted(by_h):
            coords = self.space.coords(by_h[h2])
            if coords is None:
                raise CrossedProductError("rho leaves the corner")
            for b in sorted(coords):
                triples.append((b, h2, coords[b]))
        out = tuple(triples)
        self._rho[i] = out
        return out

    def materialize_algebra(self):
        """Full structure-constant table; intended for small dimensions."""
        mult = {}
        for i in range(self.dim):
            for j in range(self.dim):
                col = self.product_basis(i, j, cache=False)
                if col:
                    mult[(i, j)] = col
        return StructuredAlgebra(self.dim, mult, self.unit, self.labels)


def _sw2(H, i):
    return tuple(((j, k), c) for j, k, c in H.coalgebra.comult.get(i, ()))


# ---------------------------------------------------------------------------
# construction
# ---------------------------------------------------------------------------

def build_crossed_product(tpa, report=None):
    """Build A # H; requires the normalization (8) so the projector is idempotent."""
    rep = report if report is not None else Report(title="crossed_product")
    wit = _check_eq8(tpa)
    if wit is not None:
        raise NormalizationFailure(f"omega is not normalized (eq 8) at {wit}")
    A, H = tpa.carrier, tpa.hopf
    dim_h = H.dim
    unit_ambient = {}
    for a, ca in A.unit.items():
        for h, ch in H.unit.items():
            unit_ambient[a * dim_h + h] = ca * ch

    shell = CrossedProduct.__new__(CrossedProduct)
    shell.tpa = tpa
    shell.dim_a = A.dim
    shell.dim_h = dim_h
    shell.unit_ambient = unit_ambient

    # projector pi = right multiplication by 1 (x) 1
    cols = {}
    for a in range(A.dim):
        for h in range(dim_h):
            amb = {a * dim_h + h: ONE}
            cols[a * dim_h + h] = shell.ambient_product(amb, unit_ambient)

    fails = 0
    wit = None
    for flat in sorted(cols):
        twice = {}
        for z, c in cols[flat].items():
            v_iadd(twice, cols[z], c)
        if twice != cols[flat]:
            fails += 1
            if wit is None:
                wit = {"a": A.labels[flat // dim_h], "h": H.labels[flat % dim_h]}
    rep.record("crossed.projector_idempotent", fails, wit)
    if fails:
        raise NormalizationFailure("projector is not idempotent", rep)

    space = Subspace(A.dim * dim_h)
    for flat in sorted(cols):
        space.add(cols[flat])
    cp = CrossedProduct(tpa, space, unit_ambient)
    if cp.unit is None:
        raise CrossedProductError("1 # 1 is outside the corner")
    rep.record("crossed.rank", 0, detail=f"dim(A#H) = {cp.dim}")

    # Prop 2.5(i): 1#1 is a two-sided unit
    fails, wit = 0, None
    for i in range(cp.dim):
        e = {i: ONE}
        if cp.mul_vec(cp.unit, e) != e or cp.mul_vec(e, cp.unit) != e:
            fails += 1
            if wit is None:
                wit = {"x": cp.labels[i]}
    rep.record("crossed.unit_two_sided", fails, wit)

    # Lemma 2.6(i): a # h = sum a(h1 . 1) (x) h2
    fails, wit = 0, None
    for a in range(A.dim):
        for h in range(dim_h):
            direct = {}
            for (h1, h2), ch in _sw2(H, h):
                left = A.mul_basis_vec(a, tpa.one_image(h1))
                for t, ct in left.items():
                    v_iadd(direct, {t * dim_h + h2: ct}, ch)
            if direct != cols[a * dim_h + h]:
                fails += 1
                if wit is None:
                    wit = {"a": A.labels[a], "h": H.labels[h]}
    rep.record("crossed.lemma26_i", fails, wit)
    return cp, rep


# ---------------------------------------------------------------------------
# closure + Lemma 2.6(ii), associativity
# ---------------------------------------------------------------------------

def _w_closure(ctx, lo, hi):
    # loops over generator pairs (a#h, b#l): checks the ambient product of the
    # projected generators stays in the corner and matches Lemma 2.6(ii)
    cp = ctx["cp"]
    pi_cols = ctx["pi_cols"]
    tpa = cp.tpa
    A = tpa.carrier
    Halg = tpa.hopf.algebra
    dim_h = cp.dim_h
    nflat = cp.dim_a * dim_h
    fails, wit = 0, None
    for x in range(lo, hi):
        a, h = divmod(x, dim_h)
        col_x = pi_cols[x]
        sw3 = tpa.hopf.sweedler(h, 3)
        for y in range(nflat):
            b, l = divmod(y, dim_h)
            amb = cp.ambient_product(col_x, pi_cols[y]) if col_x and pi_cols[y] else {}
            coords = cp.space.coords(amb)
            if coords is None:
                fails += 1
                if wit is None:
                    wit = {"x": (A.labels[a], tpa.hopf.labels[h]),
                           "y": (A.labels[b], tpa.hopf.labels[l]), "law": "closure"}
                continue
            via = {}
            bad = False
            for (h1, h2, h3), ch in sw3:
                acted = tpa.action.get((h1, b))
                if not acted:
                    continue
                left = A.mul_basis_vec(a, acted)
                if not left:
                    continue
                for (l1, l2), cl in _sw2(tpa.hopf, l):
                    om = tpa.omega.get((h2, l1))
                    if not om:
                        continue
                    avec = A.mul_vec(left, om)
                    if not avec:
                        continue
                    sh = cp.sharp(avec, Halg.mul_basis(h3, l2))
                    if sh is None:
                        bad = True
                        break
                    v_iadd(via, sh, ch * cl)
                if bad:
                    break
            if bad or via != coords:
                fails += 1
                if wit is None:
                    wit = {"x": (A.labels[a], tpa.hopf.labels[h]),
                           "y": (A.labels[b], tpa.hopf.labels[l]), "law": "lemma26_ii"}
    return fails, wit


def _w_assoc_exhaustive(ctx, lo, hi):
    cp = ctx["cp"]
    fails, wit = 0, None
    for i in range(lo, hi):
        for j in range(cp.dim):
            ij = cp.product_basis(i, j)
            for k in range(cp.dim):
                lhs = cp.mul_vec_basis(ij, k)
                rhs = cp.mul_basis_vec(i, cp.product_basis(j, k))
                if lhs != rhs:
                    fails += 1
                    if wit is None:
                        wit = {"x": cp.labels[i], "y": cp.labels[j], "z": cp.labels[k]}
    return fails, wit


def _w_assoc_sampled(ctx, lo, hi):
    cp = ctx["cp"]
    triples = ctx["triples"]
    fails, wit = 0, None
    for t in range(lo, hi):
        i, j, k = triples[t]
        lhs = cp.mul_vec_basis(cp.product_basis(i, j), k)
        rhs = cp.mul_basis_vec(i, cp.product_basis(j, k))
        if lhs != rhs:
            fails += 1
            if wit is None:
                wit = {"x": cp.labels[i], "y": cp.labels[j], "z": cp.labels[k], "sample": t}
    return fails, wit


def verify_closure(cp, jobs=1, report=None):
    rep = report if report is not None else Report(title="crossed_closure")
    nflat = cp.dim_a * cp.dim_h
    pi_cols = []
    for x in range(nflat):
        amb = cp.ambient_product({x: ONE}, cp.unit_ambient)
        pi_cols.append(amb)
    fails, wit = run_partitioned(_w_closure, nflat, {"cp": cp, "pi_cols": pi_cols}, jobs)
    rep.record("crossed.closure_and_lemma26_ii", fails, wit)
    return rep


def verify_associativity(cp, mode="criterion", samples=10_000, seed=0, jobs=1, report=None):
    """Prop 2.5(ii) criterion, seeded sampling, or full triple enumeration."""
    rep = report if report is not None else Report(title=f"crossed_assoc[{mode}]")
    if mode == "criterion":
        ctx = _tpa_ctx(cp.tpa)
        fails, wit = run_partitioned(_w_eq3, cp.tpa.hopf.dim, ctx, jobs)
        rep.record("assoc.criterion_eq3", fails, wit)
        fails, wit = run_partitioned(_w_eq9, cp.tpa.hopf.dim, ctx, jobs)
        rep.record("assoc.criterion_eq9", fails, wit)
    elif mode == "sampled":
        rng = random.Random(seed)
        triples = [
            (rng.randrange(cp.dim), rng.randrange(cp.dim), rng.randrange(cp.dim))
            for _ in range(samples)
        ]
        fails, wit = run_partitioned(_w_assoc_sampled, len(triples), {"cp": cp, "triples": triples}, jobs)
        rep.record("assoc.sampled", fails, wit, detail=f"samples={samples} seed={seed}")
    elif mode == "exhaustive":
        fails, wit = run_partitioned(_w_assoc_exhaustive, cp.dim, {"cp": cp}, jobs)
        rep.record("assoc.exhaustive", fails, wit, detail=f"triples={cp.dim ** 3}")
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return rep


# ---------------------------------------------------------------------------
# comodule structure and coinvariants
# ---------------------------------------------------------------------------

class ComoduleAlgebra:
    """A right H-comodule algebra: carrier B with rho: B -> B (x) H."""

    __slots__ = ("carrier", "hopf", "rho")

    def __init__(self, carrier, hopf, rho):
        self.carrier = carrier
        self.hopf = hopf
        self.rho = rho  # dict[i] -> tuple of (b_idx, h_idx, coeff)

    def rho_vec(self, vec):
        dim_h = self.hopf.dim
        out = {}
        for i, c in vec.items():
            for b, h, d in self.rho.get(i, ()):
                key = b * dim_h + h
                cur = out.get(key)
                w = c * d
                nv = w if cur is None else cur + w
                if nv.is_zero():
                    out.pop(key, None)
                else:
                    out[key] = nv
        return out


def _w_rho_multiplicative(ctx, lo, hi):
    ca = ctx["ca"]
    B, H = ca.carrier, ca.hopf
    dim_h = H.dim
    fails, wit = 0, None
    for i in range(lo, hi):
        ri = ca.rho.get(i, ())
        for j in range(B.dim):
            rj = ca.rho.get(j, ())
            prod_ij = B.mul_basis(i, j)
            lhs = ca.rho_vec(prod_ij)
            rhs = {}
            for b1, h1, c1 in ri:
                for b2, h2, c2 in rj:
                    bb = prod_ij if (b1 == i and b2 == j) else B.mul_basis(b1, b2)
                    if not bb:
                        continue
                    c = c1 * c2
                    for z, cz in H.algebra.mul_basis(h1, h2).items():
                        for t, ct in bb.items():
                            key = t * dim_h + z
                            cur = rhs.get(key)
                            w = c * cz * ct
                            nv = w if cur is None else cur + w
                            if nv.is_zero():
                                rhs.pop(key, None)
                            else:
                                rhs[key] = nv
            if lhs != rhs:
                fails += 1
                if wit is None:
                    wit = {"x": _lbl(B, i), "y": _lbl(B, j)}
    return fails, wit


def _lbl(B, i):
    return B.labels[i] if hasattr(B, "labels") else i


def comodule_structure(cp, jobs=1):
    """rho = (id (x) Delta) on A # H, with the comodule-algebra laws verified."""
    rho = {i: cp.rho_basis(i) for i in range(cp.dim)}
    ca = ComoduleAlgebra(cp, cp.tpa.hopf, rho)
    rep = verify_comodule_algebra(ca, jobs=jobs)
    if not rep.passed:
        raise CrossedProductError("comodule-algebra laws fail", rep)
    return ca, rep


def verify_comodule_algebra(ca, jobs=1):
    rep = Report(title="comodule_algebra")
    B, H = ca.carrier, ca.hopf
    dim_h = H.dim

    fails, wit = 0, None
    for i in range(B.dim):
        out = {}
        for b, h, c in ca.rho.get(i, ()):
            e = H.coalgebra.counit.get(h)
            if e is not None:
                v_iadd(out, {b: c * e})
        if out != {i: ONE}:
            fails += 1
            if wit is None:
                wit = {"x": _lbl(B, i)}
    rep.record("comodule.counit", fails, wit)

    fails, wit = 0, None
    for i in range(B.dim):
        lhs, rhs = {}, {}
        for b, h, c in ca.rho.get(i, ()):
            for b2, h2, c2 in ca.rho.get(b, ()):
                key = (b2 * dim_h + h2) * dim_h + h
                v_iadd(lhs, {key: c * c2})
            for h1, h2, c2 in H.coalgebra.comult.get(h, ()):
                key = (b * dim_h + h1) * dim_h + h2
                v_iadd(rhs, {key: c * c2})
        if lhs != rhs:
            fails += 1
            if wit is None:
                wit = {"x": _lbl(B, i)}
    rep.record("comodule.coassociative", fails, wit)

    if ca.rho_vec(B.unit) != _unit_tensor(B, H):
        rep.record("comodule.rho_unital", 1)
    else:
        rep.record("comodule.rho_unital", 0)

    fails, wit = run_partitioned(_w_rho_multiplicative, B.dim, {"ca": ca}, jobs)
    rep.record("comodule.rho_multiplicative", fails, wit)
    return rep


def _unit_tensor(B, H):
    dim_h = H.dim
    out = {}
    for b, cb in B.unit.items():
        for h, chh in H.unit.items():
            out[b * dim_h + h] = cb * chh
    return out


def coinvariants(ca, report=None):
    """Kernel of rho - (- (x) 1_H): basis of B^{coH}, verified unital subalgebra."""
    from .linalg import ExactMatrix, kernel as kernel_of

    rep = report if report is not None else Report(title="coinvariants")
    B, H = ca.carrier, ca.hopf
    dim_h = H.dim
    m = ExactMatrix(B.dim * dim_h, B.dim)
    for j in range(B.dim):
        for b, h, c in ca.rho.get(j, ()):
            r = b * dim_h + h
            m.set(r, j, m.get(r, j) + c)
        for h, c in H.unit.items():
            r = j * dim_h + h
            m.set(r, j, m.get(r, j) - c)
    basis = kernel_of(m)
    space = Subspace(B.dim, basis)

    fails = 0
    wit = None
    if not space.contains(B.unit):
        fails += 1
        wit = {"law": "unit outside"}
    for i in range(space.dim):
        for j in range(space.dim):
            if not space.contains(B.mul_vec(space.basis[i], space.basis[j])):
                fails += 1
                if wit is None:
                    wit = {"law": "not closed", "i": i, "j": j}
    rep.record("coinvariants.unital_subalgebra", fails, wit,
               detail=f"dim = {space.dim}")
    return space, rep


def coinvariants_equal_sharp_a(cp, space):
    """Is B^{coH} exactly A # 1_H?"""
    expected = Subspace(cp.dim)
    for a in range(cp.dim_a):
        coords = cp.sharp({a: ONE}, cp.tpa.hopf.unit)
        if coords:
            expected.add(coords)
    return space.equals(expected)


# ---------------------------------------------------------------------------
# the corner identity (1#1)(B#H)(1#1) = A#H
# ---------------------------------------------------------------------------

def global_corner_embedding(glob, idem, induced_tpa, sub, jobs=1, cp_a=None):
    """Verify (1_A # 1_H)(B #_u H)(1_A # 1_H) = A #_(alpha,omega) H."""
    rep = Report(title="corner_embedding")
    B, H = glob.carrier, glob.hopf

    crep = glob.verify_normalized_cocycle()
    rep.extend(crep)
    if not crep.passed:
        return rep, None, None

    glob_tpa = TwistedPartialAction(H, B, glob.action, glob.cocycle, name="global_as_tpa")
    cp_b, brep = build_crossed_product(glob_tpa)
    rep.record("corner.global_cp_ok", 0 if brep.passed else 1,
               None if brep.passed else [c.name for c in brep.failed_checks()])
    rep.record("corner.global_is_full", 0 if cp_b.dim == B.dim * H.dim else 1,
               detail=f"dim(B#H) = {cp_b.dim}")

    e_a = {}
    for b, cb in idem.items():
        for h, chh in H.unit.items():
            e_a[b * cp_b.dim_h + h] = cb * chh
    e_coords = cp_b.space.coords(e_a)
    if e_coords is None:
        rep.record("corner.idempotent", 1, detail="1_A#1_H outside B#H")
        return rep, cp_b, None
    sq = cp_b.mul_vec(e_coords, e_coords)
    rep.record("corner.idempotent", 0 if sq == e_coords else 1)

    # (1_A # 1_H)(B #_u H) = A (x) H as subspaces
    left_span = Subspace(cp_b.dim)
    for i in range(cp_b.dim):
        left_span.add(cp_b.mul_vec(e_coords, {i: ONE}))
    a_tensor_h = Subspace(cp_b.dim)
    for a in range(sub.algebra.dim):
        amb_a = sub.space.basis[a]
        for h in range(H.dim):
            vec = {}
            for b, cb in amb_a.items():
                vec[b * cp_b.dim_h + h] = cb
            coords = cp_b.space.coords(vec)
            if coords is None:
                rep.record("corner.left_ideal_eq_AtensorH", 1, detail="A(x)H outside B#H")
                return rep, cp_b, None
            a_tensor_h.add(coords)
    rep.record("corner.left_ideal_eq_AtensorH",
               0 if left_span.equals(a_tensor_h) else 1,
               detail=f"dims {left_span.dim} vs {a_tensor_h.dim}")

    corner_span = Subspace(cp_b.dim)
    for i in range(cp_b.dim):
        corner_span.add(cp_b.mul_vec(cp_b.mul_vec(e_coords, {i: ONE}), e_coords))

    # image of A#H under the canonical inclusion
    if cp_a is None:
        cp_a, arep = build_crossed_product(induced_tpa)
        rep.record("corner.induced_cp_ok", 0 if arep.passed else 1,
                   None if arep.passed else [c.name for c in arep.failed_checks()])

    def include(cp_a_vec):
        amb = {}
        for i, c in cp_a_vec.items():
            for flat, d in cp_a.space.basis[i].items():
                a_idx, h_idx = divmod(flat, cp_a.dim_h)
                for b, cb in sub.space.basis[a_idx].items():
                    key = b * cp_b.dim_h + h_idx
                    cur = amb.get(key)
                    w = c * d * cb
                    nv = w if cur is None else cur + w
                    if nv.is_zero():
                        amb.pop(key, None)
                    else:
                        amb[key] = nv
        return cp_b.space.coords(amb)

    included = Subspace(cp_b.dim)
    images = []
    ok = True
    for i in range(cp_a.dim):
        img = include({i: ONE})
        if img is None:
            ok = False
            break
        images.append(img)
        included.add(img)
    if not ok:
        rep.record("corner.equals_induced_crossed_product", 1, detail="inclusion failed")
        return rep, cp_b, cp_a
    rep.record("corner.equals_induced_crossed_product",
               0 if corner_span.equals(included) else 1,
               detail=f"dims {corner_span.dim} vs {included.dim}")

    fails, wit = 0, None
    for i in range(cp_a.dim):
        for j in range(cp_a.dim):
            lhs = include(cp_a.product_basis(i, j))
            rhs = cp_b.mul_vec(images[i], images[j])
            if lhs != rhs:
                fails += 1
                if wit is None:
                    wit = {"x": cp_a.labels[i], "y": cp_a.labels[j]}
    rep.record("corner.products_agree", fails, wit)
    return rep, cp_b, cp_a
