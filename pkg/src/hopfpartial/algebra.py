"""Finite-dimensional algebras, coalgebras and Hopf algebras.

All objects are basis-indexed structure constants over cyclotomic scalars.
Elements are sparse dicts {basis index: Cyclo}; every operation prunes zeros
so that dict equality is exact equality of elements.
"""

from __future__ import annotations

from .linalg import ExactMatrix
from .reports import Report
from .scalars import Cyclo

ONE = Cyclo.one()


# ---------------------------------------------------------------------------
# sparse vector helpers
# ---------------------------------------------------------------------------

def v_iadd(acc, vec, coeff=None):
    """acc += coeff * vec, in place, pruning zeros."""
    if coeff is None:
        for k, v in vec.items():
            cur = acc.get(k)
            nv = v if cur is None else cur + v
            if nv.is_zero():
                acc.pop(k, None)
            else:
                acc[k] = nv
    else:
        if coeff.is_zero():
            return acc
        for k, v in vec.items():
            cur = acc.get(k)
            w = coeff * v
            nv = w if cur is None else cur + w
            if nv.is_zero():
                acc.pop(k, None)
            else:
                acc[k] = nv
    return acc


def v_sub(a, b):
    out = dict(a)
    for k, v in b.items():
        cur = out.get(k)
        nv = -v if cur is None else cur - v
        if nv.is_zero():
            out.pop(k, None)
        else:
            out[k] = nv
    return out


def v_scale(vec, coeff):
    if coeff.is_zero():
        return {}
    if coeff.is_one():
        return dict(vec)
    return {k: coeff * v for k, v in vec.items()}


def v_json(vec):
    return [[k, v.to_json()] for k, v in sorted(vec.items())]


def v_from_json(items):
    return {int(k): Cyclo.from_json(v) for k, v in items}


def flatten_index(idxs, dims):
    flat = 0
    for i, d in zip(idxs, dims):
        flat = flat * d + i
    return flat


def unflatten_index(flat, dims):
    out = []
    for d in reversed(dims):
        out.append(flat % d)
        flat //= d
    return tuple(reversed(out))


# ---------------------------------------------------------------------------
# algebras
# ---------------------------------------------------------------------------

class StructuredAlgebra:
    """Unital associative algebra by structure constants (i,j) -> column."""

    __slots__ = ("dim", "mult", "unit", "labels")

    def __init__(self, dim, mult, unit, labels=None):
        self.dim = dim
        self.mult = mult
        self.unit = unit
        self.labels = tuple(labels) if labels else tuple(f"e{i}" for i in range(dim))

    def mul_basis(self, i, j):
        return self.mult.get((i, j), {})

    def mul_vec(self, u, v):
        out = {}
        mult = self.mult
        for i, ci in u.items():
            for j, cj in v.items():
                col = mult.get((i, j))
                if col:
                    v_iadd(out, col, ci * cj)
        return out

    def mul_basis_vec(self, i, v):
        out = {}
        mult = self.mult
        for j, cj in v.items():
            col = mult.get((i, j))
            if col:
                v_iadd(out, col, cj)
        return out

    def mul_vec_basis(self, u, j):
        out = {}
        mult = self.mult
        for i, ci in u.items():
            col = mult.get((i, j))
            if col:
                v_iadd(out, col, ci)
        return out

    def left_mult_matrix(self, v):
        """Matrix of a -> v*a on the basis, as column dicts."""
        return [self.mul_vec_basis(v, j) for j in range(self.dim)]

    def right_mult_matrix(self, v):
        """Matrix of a -> a*v on the basis, as column dicts."""
        return [self.mul_basis_vec(j, v) for j in range(self.dim)]

    def label_of(self, i):
        return self.labels[i]

    def is_commutative(self):
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                if self.mul_basis(i, j) != self.mul_basis(j, i):
                    return False
        return True

    def to_json(self):
        return {
            "dim": self.dim,
            "labels": list(self.labels),
            "mult": [[i, j, v_json(col)] for (i, j), col in sorted(self.mult.items())],
            "unit": v_json(self.unit),
        }

    @staticmethod
    def from_json(obj):
        mult = {(int(i), int(j)): v_from_json(col) for i, j, col in obj["mult"]}
        return StructuredAlgebra(int(obj["dim"]), mult, v_from_json(obj["unit"]), obj.get("labels"))


class CoalgebraData:
    """Coalgebra by comultiplication triples and a counit row."""

    __slots__ = ("dim", "comult", "counit", "labels", "_grouplike")

    def __init__(self, dim, comult, counit, labels=None):
        self.dim = dim
        self.comult = comult
        self.counit = counit
        self.labels = tuple(labels) if labels else tuple(f"e{i}" for i in range(dim))
        self._grouplike = None

    def counit_of(self, vec):
        out = Cyclo.zero()
        for k, v in vec.items():
            e = self.counit.get(k)
            if e is not None:
                out = out + e * v
        return out

    def is_grouplike_basis(self):
        """True when every basis element is grouplike; enables fast paths."""
        if self._grouplike is None:
            ok = True
            for i in range(self.dim):
                terms = self.comult.get(i, ())
                if len(terms) != 1:
                    ok = False
                    break
                j, k, c = terms[0]
                if j != i or k != i or not c.is_one():
                    ok = False
                    break
                e = self.counit.get(i)
                if e is None or not e.is_one():
                    ok = False
                    break
            self._grouplike = ok
        return self._grouplike

    def tensor(self, other):
        """Tensor-product coalgebra (with the middle flip)."""
        dim = self.dim * other.dim
        comult = {}
        counit = {}
        d2 = other.dim
        for i in range(self.dim):
            ti = self.comult.get(i, ())
            for j in range(other.dim):
                tj = other.comult.get(j, ())
                terms = []
                for (a1, a2, c) in ti:
                    for (b1, b2, d) in tj:
                        terms.append((a1 * d2 + b1, a2 * d2 + b2, c * d))
                comult[i * d2 + j] = tuple(terms)
                e = self.counit.get(i)
                f = other.counit.get(j)
                if e is not None and f is not None:
                    ef = e * f
                    if not ef.is_zero():
                        counit[i * d2 + j] = ef
        labels = tuple(
            f"{a}(x){b}" for a in self.labels for b in other.labels
        )
        return CoalgebraData(dim, comult, counit, labels)

    def to_json(self):
        comult = []
        for i, terms in sorted(self.comult.items()):
            for j, k, c in terms:
                comult.append([i, j, k, c.to_json()])
        return {
            "dim": self.dim,
            "labels": list(self.labels),
            "comult": comult,
            "counit": [[i, c.to_json()] for i, c in sorted(self.counit.items())],
        }

    @staticmethod
    def from_json(obj):
        comult = {}
        for i, j, k, c in obj["comult"]:
            comult.setdefault(int(i), []).append((int(j), int(k), Cyclo.from_json(c)))
        comult = {i: tuple(t) for i, t in comult.items()}
        counit = {int(i): Cyclo.from_json(c) for i, c in obj["counit"]}
        return CoalgebraData(int(obj["dim"]), comult, counit, obj.get("labels"))


class LinMap:
    """Linear map from a tensor product of basis-indexed spaces to one space."""

    __slots__ = ("source_dims", "target_dim", "cols")

    def __init__(self, source_dims, target_dim, cols=None):
        self.source_dims = tuple(source_dims)
        self.target_dim = target_dim
        self.cols = cols if cols is not None else {}

    @property
    def source_dim(self):
        n = 1
        for d in self.source_dims:
            n *= d
        return n

    def apply_basis(self, *idxs):
        if len(idxs) == 1 and len(self.source_dims) == 1:
            return self.cols.get(idxs[0], {})
        return self.cols.get(flatten_index(idxs, self.source_dims), {})

    def apply(self, vec):
        out = {}
        for k, c in vec.items():
            col = self.cols.get(k)
            if col:
                v_iadd(out, col, c)
        return out

    def set_col(self, idxs, vec):
        if vec:
            self.cols[flatten_index(idxs, self.source_dims)] = vec

    def __eq__(self, other):
        if not isinstance(other, LinMap):
            return NotImplemented
        if self.source_dims != other.source_dims or self.target_dim != other.target_dim:
            return False
        keys = set(self.cols) | set(other.cols)
        return all(self.cols.get(k, {}) == other.cols.get(k, {}) for k in keys)

    def matrix(self):
        m = ExactMatrix(self.target_dim, self.source_dim)
        for c, col in self.cols.items():
            for r, v in col.items():
                m.entries[(r, c)] = v
        return m

    @staticmethod
    def identity(n):
        return LinMap((n,), n, {i: {i: ONE} for i in range(n)})

    def to_json(self):
        return {
            "source_dims": list(self.source_dims),
            "target_dim": self.target_dim,
            "cols": [[k, v_json(col)] for k, col in sorted(self.cols.items())],
        }

    @staticmethod
    def from_json(obj):
        cols = {int(k): v_from_json(col) for k, col in obj["cols"]}
        return LinMap(tuple(obj["source_dims"]), int(obj["target_dim"]), cols)


class HopfAlgebraData:
    """Bialgebra with antipode; validation is explicit via validate_hopf."""

    __slots__ = ("algebra", "coalgebra", "antipode", "_sweedler_cache", "_tensor_square", "extra")

    def __init__(self, algebra, coalgebra, antipode):
        if algebra.dim != coalgebra.dim:
            raise ValueError("algebra/coalgebra dimension mismatch")
        self.algebra = algebra
        self.coalgebra = coalgebra
        self.antipode = antipode  # dict[i] -> column vec
        self._sweedler_cache = {}
        self._tensor_square = None
        self.extra = {}

    @property
    def dim(self):
        return self.algebra.dim

    @property
    def labels(self):
        return self.algebra.labels

    @property
    def unit(self):
        return self.algebra.unit

    def counit_of(self, vec):
        return self.coalgebra.counit_of(vec)

    def apply_antipode(self, vec):
        out = {}
        for k, c in vec.items():
            col = self.antipode.get(k)
            if col:
                v_iadd(out, col, c)
        return out

    def antipode_matrix(self):
        m = ExactMatrix(self.dim, self.dim)
        for c, col in self.antipode.items():
            for r, v in col.items():
                m.entries[(r, c)] = v
        return m

    def is_grouplike_basis(self):
        return self.coalgebra.is_grouplike_basis()

    def sweedler(self, i, legs):
        """Iterated comultiplication terms of basis element i.

        Returns a tuple of (index tuple of length legs, coefficient).  The
        canonical association expands the leftmost leg; by coassociativity any
        other association gives the same map.
        """
        if legs < 1:
            raise ValueError("legs must be >= 1")
        key = (i, legs)
        cached = self._sweedler_cache.get(key)
        if cached is not None:
            return cached
        if legs == 1:
            out = (((i,), ONE),)
        elif legs == 2:
            out = tuple(((j, k), c) for j, k, c in self.coalgebra.comult.get(i, ()))
        else:
            prev = self.sweedler(i, legs - 1)
            acc = {}
            for idxs, c in prev:
                for j, k, d in self.coalgebra.comult.get(idxs[0], ()):
                    key2 = (j, k) + idxs[1:]
                    cur = acc.get(key2)
                    w = c * d
                    nv = w if cur is None else cur + w
                    if nv.is_zero():
                        acc.pop(key2, None)
                    else:
                        acc[key2] = nv
            out = tuple(sorted(acc.items()))
        self._sweedler_cache[key] = out
        return out

    def tensor_square_coalgebra(self):
        if self._tensor_square is None:
            self._tensor_square = self.coalgebra.tensor(self.coalgebra)
        return self._tensor_square

    def to_json(self):
        return {
            "algebra": self.algebra.to_json(),
            "coalgebra": self.coalgebra.to_json(),
            "antipode": [[i, v_json(col)] for i, col in sorted(self.antipode.items())],
        }

    @staticmethod
    def from_json(obj):
        algebra = StructuredAlgebra.from_json(obj["algebra"])
        coalgebra = CoalgebraData.from_json(obj["coalgebra"])
        antipode = {int(i): v_from_json(col) for i, col in obj["antipode"]}
        return HopfAlgebraData(algebra, coalgebra, antipode)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def _tensor_mul(alg, d2_alg, u, v):
    """Product in A (x) B of sparse vectors with flat indices."""
    d2 = d2_alg.dim
    out = {}
    for x, cx in u.items():
        x1, x2 = divmod(x, d2)
        for y, cy in v.items():
            y1, y2 = divmod(y, d2)
            col1 = alg.mult.get((x1, y1))
            if not col1:
                continue
            col2 = d2_alg.mult.get((x2, y2))
            if not col2:
                continue
            c = cx * cy
            for k1, v1 in col1.items():
                base = k1 * d2
                cv1 = c * v1
                for k2, v2 in col2.items():
                    key = base + k2
                    cur = out.get(key)
                    nv = cv1 * v2 if cur is None else cur + cv1 * v2
                    if nv.is_zero():
                        out.pop(key, None)
                    else:
                        out[key] = nv
    return out


def _comult_vec(H, vec):
    out = {}
    for i, c in vec.items():
        for j, k, d in H.coalgebra.comult.get(i, ()):
            key = j * H.dim + k
            cur = out.get(key)
            w = c * d
            nv = w if cur is None else cur + w
            if nv.is_zero():
                out.pop(key, None)
            else:
                out[key] = nv
    return out


def validate_hopf(H, name=""):
    """Exhaustive check of all Hopf algebra laws on the basis.

    Returns a Report whose entries carry the first failing basis tuple.
    Bilinearity makes a passing exhaustive basis check a proof of the law.
    """
    rep = Report(title=f"validate_hopf({name or 'H'})")
    alg, coa = H.algebra, H.coalgebra
    dim = H.dim
    labels = H.labels

    fails, wit = 0, None
    for i in range(dim):
        for j in range(dim):
            ij = alg.mul_basis(i, j)
            for k in range(dim):
                lhs = alg.mul_vec_basis(ij, k)
                rhs = alg.mul_basis_vec(i, alg.mul_basis(j, k))
                if lhs != rhs:
                    fails += 1
                    if wit is None:
                        wit = (labels[i], labels[j], labels[k])
    rep.record("algebra.associativity", fails, wit)

    fails, wit = 0, None
    for i in range(dim):
        e = {i: ONE}
        if alg.mul_vec(alg.unit, e) != e or alg.mul_vec(e, alg.unit) != e:
            fails += 1
            if wit is None:
                wit = (labels[i],)
    rep.record("algebra.unit", fails, wit)

    fails, wit = 0, None
    for i in range(dim):
        lhs, rhs = {}, {}
        for j, k, c in coa.comult.get(i, ()):
            for j1, j2, d in coa.comult.get(j, ()):
                key = (j1 * dim + j2) * dim + k
                v_iadd(lhs, {key: c * d})
            for k1, k2, d in coa.comult.get(k, ()):
                key = (j * dim + k1) * dim + k2
                v_iadd(rhs, {key: c * d})
        if lhs != rhs:
            fails += 1
            if wit is None:
                wit = (labels[i],)
    rep.record("coalgebra.coassociativity", fails, wit)

    fails, wit = 0, None
    for i in range(dim):
        left, right = {}, {}
        for j, k, c in coa.comult.get(i, ()):
            e = coa.counit.get(j)
            if e is not None:
                v_iadd(left, {k: c * e})
            e = coa.counit.get(k)
            if e is not None:
                v_iadd(right, {j: c * e})
        if left != {i: ONE} or right != {i: ONE}:
            fails += 1
            if wit is None:
                wit = (labels[i],)
    rep.record("coalgebra.counit", fails, wit)

    fails, wit = 0, None
    for i in range(dim):
        for j in range(dim):
            lhs = _comult_vec(H, alg.mul_basis(i, j))
            di = _comult_vec(H, {i: ONE})
            dj = _comult_vec(H, {j: ONE})
            rhs = _tensor_mul(alg, alg, di, dj)
            if lhs != rhs:
                fails += 1
                if wit is None:
                    wit = (labels[i], labels[j])
    if _comult_vec(H, alg.unit) != _tensor_mul_unit(alg):
        fails += 1
        if wit is None:
            wit = ("1_H",)
    rep.record("bialgebra.comult_multiplicative", fails, wit)

    fails, wit = 0, None
    for i in range(dim):
        for j in range(dim):
            lhs = coa.counit_of(alg.mul_basis(i, j))
            ei = coa.counit.get(i, Cyclo.zero())
            ej = coa.counit.get(j, Cyclo.zero())
            if lhs != ei * ej:
                fails += 1
                if wit is None:
                    wit = (labels[i], labels[j])
    if not coa.counit_of(alg.unit).is_one():
        fails += 1
        if wit is None:
            wit = ("1_H",)
    rep.record("bialgebra.counit_multiplicative", fails, wit)

    fails, wit = 0, None
    for i in range(dim):
        left, right = {}, {}
        for j, k, c in coa.comult.get(i, ()):
            v_iadd(left, alg.mul_vec(H.apply_antipode({j: ONE}), {k: ONE}), c)
            v_iadd(right, alg.mul_vec({j: ONE}, H.apply_antipode({k: ONE})), c)
        target = v_scale(alg.unit, coa.counit.get(i, Cyclo.zero()))
        if left != target or right != target:
            fails += 1
            if wit is None:
                wit = (labels[i],)
    rep.record("antipode.axiom", fails, wit)
    return rep


def _tensor_mul_unit(alg):
    out = {}
    for i, c in alg.unit.items():
        for j, d in alg.unit.items():
            v_iadd(out, {i * alg.dim + j: c * d})
    return out


# ---------------------------------------------------------------------------
# tensor products and duals
# ---------------------------------------------------------------------------

def tensor_algebra(a1, a2):
    dim = a1.dim * a2.dim
    d2 = a2.dim
    mult = {}
    for (i1, j1), col1 in a1.mult.items():
        for (i2, j2), col2 in a2.mult.items():
            col = {}
            for k1, v1 in col1.items():
                for k2, v2 in col2.items():
                    val = v1 * v2
                    if not val.is_zero():
                        col[k1 * d2 + k2] = val
            if col:
                mult[(i1 * d2 + i2, j1 * d2 + j2)] = col
    unit = {}
    for i, c in a1.unit.items():
        for j, d in a2.unit.items():
            unit[i * d2 + j] = c * d
    labels = tuple(f"{x}(x){y}" for x in a1.labels for y in a2.labels)
    return StructuredAlgebra(dim, mult, unit, labels)


def tensor_hopf(h1, h2):
    """Tensor product Hopf algebra: componentwise product, flipped comult."""
    algebra = tensor_algebra(h1.algebra, h2.algebra)
    coalgebra = h1.coalgebra.tensor(h2.coalgebra)
    coalgebra = CoalgebraData(coalgebra.dim, coalgebra.comult, coalgebra.counit, algebra.labels)
    d2 = h2.dim
    antipode = {}
    for i in range(h1.dim):
        si = h1.antipode.get(i, {})
        for j in range(h2.dim):
            sj = h2.antipode.get(j, {})
            col = {}
            for k1, v1 in si.items():
                for k2, v2 in sj.items():
                    val = v1 * v2
                    if not val.is_zero():
                        col[k1 * d2 + k2] = val
            if col:
                antipode[i * d2 + j] = col
    return HopfAlgebraData(algebra, coalgebra, antipode)


def dual_hopf(H):
    """Dual Hopf algebra: multiplication and comultiplication transposed."""
    dim = H.dim
    labels = tuple(f"{x}*" for x in H.labels)
    mult = {}
    for k in range(dim):
        for (a, b, c) in H.coalgebra.comult.get(k, ()):
            col = mult.setdefault((a, b), {})
            cur = col.get(k)
            nv = c if cur is None else cur + c
            if nv.is_zero():
                col.pop(k, None)
            else:
                col[k] = nv
    mult = {key: col for key, col in mult.items() if col}
    unit = dict(H.coalgebra.counit)
    algebra = StructuredAlgebra(dim, mult, unit, labels)
    comult = {}
    for k in range(dim):
        terms = []
        for (i, j), col in H.algebra.mult.items():
            c = col.get(k)
            if c is not None:
                terms.append((i, j, c))
        if terms:
            comult[k] = tuple(sorted(terms))
    counit = {i: c for i, c in H.algebra.unit.items()}
    coalgebra = CoalgebraData(dim, comult, counit, labels)
    antipode = {}
    for i, col in H.antipode.items():
        for r, v in col.items():
            antipode.setdefault(r, {})[i] = v
    return HopfAlgebraData(algebra, coalgebra, antipode)


class SubalgebraError(ValueError):
    pass


class Subalgebra:
    """A unital subalgebra of an ambient algebra, spanned by given vectors.

    The basis is the reduced echelon form of the input span (deterministic),
    structure constants are computed by multiplying in the ambient algebra and
    reading coordinates off the pivots.  Raises if the span is not closed
    under multiplication or the designated unit lies outside.
    """

    __slots__ = ("ambient", "space", "algebra", "unit_ambient")

    def __init__(self, ambient, space, unit_vec, label_prefix=""):
        from .linalg import Subspace

        if not isinstance(space, Subspace):
            space = Subspace(ambient.dim, space)
        self.ambient = ambient
        self.space = space
        self.unit_ambient = unit_vec
        dim = space.dim
        labels = tuple(label_prefix + ambient.labels[p] for p in space.pivots)
        unit = space.coords(unit_vec)
        if unit is None:
            raise SubalgebraError("unit vector lies outside the span")
        mult = {}
        for i in range(dim):
            for j in range(dim):
                prod = ambient.mul_vec(space.basis[i], space.basis[j])
                coords = space.coords(prod)
                if coords is None:
                    raise SubalgebraError(f"span not closed under multiplication at ({i},{j})")
                if coords:
                    mult[(i, j)] = coords
        self.algebra = StructuredAlgebra(dim, mult, unit, labels)
        for i in range(dim):
            e = {i: ONE}
            if self.algebra.mul_vec(unit, e) != e or self.algebra.mul_vec(e, unit) != e:
                raise SubalgebraError("designated unit is not a two-sided unit")

    def embed(self, vec):
        out = {}
        for j, c in vec.items():
            v_iadd(out, self.space.basis[j], c)
        return out

    def coords(self, ambient_vec):
        return self.space.coords(ambient_vec)


def iterated_comult(H, legs):
    """Delta^(legs) as a LinMap H -> H^(x legs); cached via the sweedler table."""
    dims = (H.dim,) * legs
    out = LinMap((H.dim,), H.dim ** legs)
    for i in range(H.dim):
        col = {}
        for idxs, c in H.sweedler(i, legs):
            v_iadd(col, {flatten_index(idxs, dims): c})
        if col:
            out.cols[i] = col
    return out
