"""Gauge equivalence of partial crossed products (both directions).

A gauge pair (u, v) between two symmetric twisted partial actions (., omega)
and (*, sigma) on the same A satisfies

  (i)   u * v (h) = h . 1
  (ii)  u(h) = sum u(h_(1)) (h_(2) . 1) = sum (h_(1) . 1) u(h_(2))
  (iii) h * a = sum v(h_(1)) (h_(2) . a) u(h_(3))
  (iv)  sigma(h,k) = sum v(h_(1)) (h_(2) . v(k_(1))) omega(h_(3), k_(2))
                         u(h_(4) k_(3))

and then Phi(a #_omega h) = sum a u(h_(1)) #_sigma h_(2) is an isomorphism
with inverse Psi(a #_sigma h) = sum a v(h_(1)) #_omega h_(2).  The converse
extraction reads u and v off the isomorphism through (id (x) eps).
"""

from __future__ import annotations

from .algebra import v_iadd
from .linalg import ExactMatrix, NoSolutionError, inverse as matrix_inverse
from .parallel import run_partitioned
from .partial_actions import TwistedPartialAction
from .reports import Report
from .scalars import Cyclo

ONE = Cyclo.one()


class GaugeError(ValueError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class NotAlgebraMapError(GaugeError):
    pass


class NotALinearError(GaugeError):
    pass


class NotColinearError(GaugeError):
    pass


class NotInvertibleMapError(GaugeError):
    pass


class GaugePair:
    """Maps u, v: H -> A carrying an isomorphism A #_omega H = A #_sigma H."""

    __slots__ = ("source", "target", "u", "v")

    def __init__(self, source, target, u, v):
        self.source = source  # TwistedPartialAction (., omega)
        self.target = target  # TwistedPartialAction (*, sigma), same H and A
        self.u = u  # dict[h_idx] -> A vec
        self.v = v

    def u_vec(self, hvec, table=None):
        table = self.u if table is None else table
        out = {}
        for h, c in hvec.items():
            col = table.get(h)
            if col:
                v_iadd(out, col, c)
        return out

    def to_json(self):
        def tab(t):
            return [[h, [[k, v.to_json()] for k, v in sorted(col.items())]]
                    for h, col in sorted(t.items())]

        return {"u": tab(self.u), "v": tab(self.v)}


def verify_gauge(gp, jobs=1):
    rep = Report(title="gauge_pair")
    src, tgt = gp.source, gp.target
    H = src.hopf
    A = src.carrier
    dim = H.dim

    ok = gp.u_vec(H.unit) == A.unit and gp.u_vec(H.unit, gp.v) == A.unit
    rep.record("gauge.unit_values", 0 if ok else 1)

    # (i) u * v = e and the derived v * u (h) = h target-dot 1
    fails, wit = 0, None
    for h in range(dim):
        acc = {}
        for h1, h2, c in H.coalgebra.comult.get(h, ()):
            uu = gp.u.get(h1)
            if not uu:
                continue
            vv = gp.v.get(h2)
            if vv:
                v_iadd(acc, A.mul_vec(uu, vv), c)
        if acc != src.one_image(h):
            fails += 1
            if wit is None:
                wit = {"h": H.labels[h]}
    rep.record("gauge.i_u_conv_v", fails, wit)

    fails, wit = 0, None
    for h in range(dim):
        acc = {}
        for h1, h2, c in H.coalgebra.comult.get(h, ()):
            vv = gp.v.get(h1)
            if not vv:
                continue
            uu = gp.u.get(h2)
            if uu:
                v_iadd(acc, A.mul_vec(vv, uu), c)
        if acc != tgt.one_image(h):
            fails += 1
            if wit is None:
                wit = {"h": H.labels[h]}
    rep.record("gauge.v_conv_u_target", fails, wit)

    # (ii) absorption on both sides
    fails, wit = 0, None
    for h in range(dim):
        uh = gp.u.get(h, {})
        right, left = {}, {}
        for h1, h2, c in H.coalgebra.comult.get(h, ()):
            uu = gp.u.get(h1)
            if uu:
                one = src.one_image(h2)
                if one:
                    v_iadd(right, A.mul_vec(uu, one), c)
            uu = gp.u.get(h2)
            if uu:
                one = src.one_image(h1)
                if one:
                    v_iadd(left, A.mul_vec(one, uu), c)
        if right != uh or left != uh:
            fails += 1
            if wit is None:
                wit = {"h": H.labels[h]}
    rep.record("gauge.ii_absorption", fails, wit)

    # (iii) h * a = sum v(h1)(h2 . a) u(h3)
    fails, wit = 0, None
    for h in range(dim):
        sw3 = H.sweedler(h, 3)
        for a in range(A.dim):
            lhs = tgt.action.get((h, a), {})
            rhs = {}
            for (h1, h2, h3), c in sw3:
                vv = gp.v.get(h1)
                if not vv:
                    continue
                mid = src.action.get((h2, a))
                if not mid:
                    continue
                uu = gp.u.get(h3)
                if not uu:
                    continue
                v_iadd(rhs, A.mul_vec(A.mul_vec(vv, mid), uu), c)
            if lhs != rhs:
                fails += 1
                if wit is None:
                    wit = {"h": H.labels[h], "a": A.labels[a]}
    rep.record("gauge.iii_conjugated_action", fails, wit)

    # (iv) sigma from omega
    fails, wit = 0, None
    for h in range(dim):
        sw4 = H.sweedler(h, 4)
        for k in range(dim):
            sw3k = H.sweedler(k, 3)
            lhs = tgt.omega.get((h, k), {})
            rhs = {}
            for (h1, h2, h3, h4), ch in sw4:
                vv = gp.v.get(h1)
                if not vv:
                    continue
                for (k1, k2, k3), ck in sw3k:
                    vk = gp.v.get(k1)
                    if not vk:
                        continue
                    mid = src.act_basis_vec(h2, vk)
                    if not mid:
                        continue
                    om = src.omega.get((h3, k2))
                    if not om:
                        continue
                    tail = gp.u_vec(H.algebra.mul_basis(h4, k3))
                    if not tail:
                        continue
                    v_iadd(rhs, A.mul_vec(A.mul_vec(A.mul_vec(vv, mid), om), tail), ch * ck)
            if lhs != rhs:
                fails += 1
                if wit is None:
                    wit = {"h": H.labels[h], "k": H.labels[k]}
    rep.record("gauge.iv_sigma_coboundary", fails, wit)
    return rep


def build_gauge_target(src, u, v, name="gauge_target"):
    """Define (*, sigma) from (iii) and (iv); callers re-verify it from scratch."""
    H, A = src.hopf, src.carrier
    action = {}
    for h in range(H.dim):
        for a in range(A.dim):
            acc = {}
            for (h1, h2, h3), c in H.sweedler(h, 3):
                vv = v.get(h1)
                if not vv:
                    continue
                mid = src.action.get((h2, a))
                if not mid:
                    continue
                uu = u.get(h3)
                if uu:
                    v_iadd(acc, A.mul_vec(A.mul_vec(vv, mid), uu), c)
            if acc:
                action[(h, a)] = acc
    sigma = {}
    for h in range(H.dim):
        sw4 = H.sweedler(h, 4)
        for k in range(H.dim):
            sw3k = H.sweedler(k, 3)
            acc = {}
            for (h1, h2, h3, h4), ch in sw4:
                vv = v.get(h1)
                if not vv:
                    continue
                for (k1, k2, k3), ck in sw3k:
                    vk = v.get(k1)
                    if not vk:
                        continue
                    mid = src.act_basis_vec(h2, vk)
                    if not mid:
                        continue
                    om = src.omega.get((h3, k2))
                    if not om:
                        continue
                    tail = {}
                    for z, cz in H.algebra.mul_basis(h4, k3).items():
                        col = u.get(z)
                        if col:
                            v_iadd(tail, col, cz)
                    if tail:
                        v_iadd(acc, A.mul_vec(A.mul_vec(A.mul_vec(vv, mid), om), tail), ch * ck)
            if acc:
                sigma[(h, k)] = acc
    return TwistedPartialAction(H, A, action, sigma, name=name)


# ---------------------------------------------------------------------------
# the isomorphism Phi and its converse extraction
# ---------------------------------------------------------------------------

def _phi_columns(gp, cp_src, cp_tgt):
    """Columns of Phi(a #_omega h) = sum a u(h1) #_sigma h2 on the cp basis."""
    H = gp.source.hopf
    A = gp.source.carrier
    cols = []
    for i in range(cp_src.dim):
        acc = {}
        ok = True
        for flat, c in cp_src.space.basis[i].items():
            a, h = divmod(flat, cp_src.dim_h)
            for h1, h2, ch in H.coalgebra.comult.get(h, ()):
                uu = gp.u.get(h1)
                if not uu:
                    continue
                avec = A.mul_basis_vec(a, uu)
                if not avec:
                    continue
                sh = cp_tgt.sharp(avec, {h2: ONE})
                if sh is None:
                    ok = False
                    break
                v_iadd(acc, sh, c * ch)
            if not ok:
                break
        if not ok:
            return None
        cols.append(acc)
    return cols


def _w_map_multiplicative(ctx, lo, hi):
    cp_src, cols, cp_tgt = ctx["cp_src"], ctx["cols"], ctx["cp_tgt"]
    fails, wit = 0, None
    for i in range(lo, hi):
        for j in range(cp_src.dim):
            prod = cp_src.product_basis(i, j, cache=False)
            lhs = {}
            for z, c in prod.items():
                v_iadd(lhs, cols[z], c)
            rhs = cp_tgt.mul_vec(cols[i], cols[j])
            if lhs != rhs:
                fails += 1
                if wit is None:
                    wit = {"x": cp_src.labels[i], "y": cp_src.labels[j]}
    return fails, wit


def gauge_isomorphism(gp, cp_src, cp_tgt, jobs=1):
    """Verify Phi directly: unital, multiplicative, A-linear, colinear, invertible."""
    rep = Report(title="gauge_isomorphism")
    H = gp.source.hopf
    A = gp.source.carrier
    phi = _phi_columns(gp, cp_src, cp_tgt)
    psi = _phi_columns(GaugePair(gp.target, gp.source, gp.v, gp.u), cp_tgt, cp_src)
    if phi is None or psi is None:
        rep.record("gauge_iso.well_defined", 1)
        return rep, None, None
    rep.record("gauge_iso.well_defined", 0)

    unit_img = {}
    for i, c in cp_src.unit.items():
        v_iadd(unit_img, phi[i], c)
    rep.record("gauge_iso.phi_unital", 0 if unit_img == cp_tgt.unit else 1)

    fails, wit = run_partitioned(
        _w_map_multiplicative, cp_src.dim,
        {"cp_src": cp_src, "cols": phi, "cp_tgt": cp_tgt}, jobs)
    rep.record("gauge_iso.phi_multiplicative", fails, wit)

    # left A-linearity
    fails, wit = 0, None
    for a in range(A.dim):
        a_src = cp_src.sharp({a: ONE}, H.unit)
        a_tgt = cp_tgt.sharp({a: ONE}, H.unit)
        for i in range(cp_src.dim):
            lhs = {}
            for z, c in cp_src.mul_vec(a_src, {i: ONE}).items():
                v_iadd(lhs, phi[z], c)
            rhs = cp_tgt.mul_vec(a_tgt, phi[i])
            if lhs != rhs:
                fails += 1
                if wit is None:
                    wit = {"a": A.labels[a], "x": cp_src.labels[i]}
    rep.record("gauge_iso.phi_A_linear", fails, wit)

    # right H-colinearity
    fails, wit = 0, None
    dim_h = H.dim
    for i in range(cp_src.dim):
        lhs = {}
        for b, h, c in _rho_of_vec(cp_tgt, phi[i]):
            lhs[b * dim_h + h] = c
        rhs = {}
        for b, h, c in cp_src.rho_basis(i):
            for t, ct in phi[b].items():
                v_iadd(rhs, {t * dim_h + h: ct}, c)
        if dict(lhs) != rhs:
            fails += 1
            if wit is None:
                wit = {"x": cp_src.labels[i]}
    rep.record("gauge_iso.phi_colinear", fails, wit)

    fails, wit = 0, None
    for i in range(cp_src.dim):
        acc = {}
        for z, c in phi[i].items():
            v_iadd(acc, psi[z], c)
        if acc != {i: ONE}:
            fails += 1
            if wit is None:
                wit = {"x": cp_src.labels[i]}
    rep.record("gauge_iso.psi_phi_identity", fails, wit)

    fails, wit = 0, None
    for i in range(cp_tgt.dim):
        acc = {}
        for z, c in psi[i].items():
            v_iadd(acc, phi[z], c)
        if acc != {i: ONE}:
            fails += 1
            if wit is None:
                wit = {"x": cp_tgt.labels[i]}
    rep.record("gauge_iso.phi_psi_identity", fails, wit)
    return rep, phi, psi


def _rho_of_vec(cp, vec):
    out = {}
    for i, c in vec.items():
        for b, h, d in cp.rho_basis(i):
            key = (b, h)
            cur = out.get(key)
            w = c * d
            nv = w if cur is None else cur + w
            if nv.is_zero():
                out.pop(key, None)
            else:
                out[key] = nv
    return [(b, h, c) for (b, h), c in out.items()]


def extract_gauge(phi_cols, cp_src, cp_tgt, jobs=1):
    """Thm 4.1 forward: read (u, v) off a verified isomorphism.

    u(h) = (id (x) eps) Phi(1 #_omega h), v(h) = (id (x) eps) Phi^{-1}(1 #_sigma h).
    """
    H = cp_src.tpa.hopf
    A = cp_src.tpa.carrier

    unit_img = {}
    for i, c in cp_src.unit.items():
        v_iadd(unit_img, phi_cols[i], c)
    if unit_img != cp_tgt.unit:
        raise NotAlgebraMapError("Phi does not preserve the unit")
    fails, wit = run_partitioned(
        _w_map_multiplicative, cp_src.dim,
        {"cp_src": cp_src, "cols": phi_cols, "cp_tgt": cp_tgt}, jobs)
    if fails:
        raise NotAlgebraMapError(f"Phi is not multiplicative, witness {wit}")

    for a in range(A.dim):
        a_src = cp_src.sharp({a: ONE}, H.unit)
        a_tgt = cp_tgt.sharp({a: ONE}, H.unit)
        for i in range(cp_src.dim):
            lhs = {}
            for z, c in cp_src.mul_vec(a_src, {i: ONE}).items():
                v_iadd(lhs, phi_cols[z], c)
            if lhs != cp_tgt.mul_vec(a_tgt, phi_cols[i]):
                raise NotALinearError(f"Phi is not left A-linear at ({A.labels[a]}, {cp_src.labels[i]})")

    dim_h = H.dim
    for i in range(cp_src.dim):
        lhs = sorted((b * dim_h + h, c) for b, h, c in _rho_of_vec(cp_tgt, phi_cols[i]))
        rhs = {}
        for b, h, c in cp_src.rho_basis(i):
            for t, ct in phi_cols[b].items():
                v_iadd(rhs, {t * dim_h + h: ct}, c)
        if dict(lhs) != rhs:
            raise NotColinearError(f"Phi is not H-colinear at {cp_src.labels[i]}")

    m = ExactMatrix(cp_tgt.dim, cp_src.dim)
    for i, col in enumerate(phi_cols):
        for r, v in col.items():
            m.entries[(r, i)] = v
    try:
        inv = matrix_inverse(m)
    except (NoSolutionError, ValueError) as exc:
        raise NotInvertibleMapError(f"Phi is not invertible: {exc}")
    inv_cols = [dict() for _ in range(cp_tgt.dim)]
    for (r, c), v in inv.entries.items():
        inv_cols[c][r] = v

    def id_eps(cp, coords):
        amb = {}
        for i, c in coords.items():
            v_iadd(amb, cp.space.basis[i], c)
        out = {}
        eps = H.coalgebra.counit
        for flat, c in amb.items():
            a, h = divmod(flat, cp.dim_h)
            e = eps.get(h)
            if e is not None:
                v_iadd(out, {a: c * e})
        return out

    u = {}
    for h in range(dim_h):
        sh = cp_src.sharp(A.unit, {h: ONE})
        img = {}
        for i, c in sh.items():
            v_iadd(img, phi_cols[i], c)
        col = id_eps(cp_tgt, img)
        if col:
            u[h] = col
    v = {}
    for h in range(dim_h):
        sh = cp_tgt.sharp(A.unit, {h: ONE})
        img = {}
        for i, c in sh.items():
            v_iadd(img, inv_cols[i], c)
        col = id_eps(cp_src, img)
        if col:
            v[h] = col
    gp = GaugePair(cp_src.tpa, cp_tgt.tpa, u, v)

    # Phi must be reproduced by (v): Phi(a#h) = sum a u(h1) # h2
    rebuilt = _phi_columns(gp, cp_src, cp_tgt)
    if rebuilt is None or any(rebuilt[i] != phi_cols[i] for i in range(cp_src.dim)):
        raise GaugeError("extracted u does not reproduce Phi")
    return gp
