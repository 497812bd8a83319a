"""Convolution algebras Hom(C, A) and inversion inside corner ideals.

For a coalgebra C and algebra A, Hom(C, A) carries the convolution product
(f*g)(c) = sum f(c_(1)) g(c_(2)) with unit eta o epsilon.  The inverse solver
realizes invertibility inside the ideal generated by a central idempotent: the
semigroup argument (vv'=e, v'v=e', v'e=v' force v' unique) turns into the
requirement that the affine solution space of the linear system is a single
point, which the solver checks by an exact kernel computation.
"""

from __future__ import annotations

from .algebra import v_iadd, v_scale, v_sub
from .linalg import ExactMatrix, NoSolutionError, solve_linear
from .scalars import Cyclo

ONE = Cyclo.one()


class ConvolutionError(Exception):
    pass


class NotInIdealError(ConvolutionError):
    pass


class NotInvertibleError(ConvolutionError):
    pass


class ConvolutionElement:
    """A linear map from a coalgebra to an algebra, stored column-wise."""

    __slots__ = ("domain", "codomain", "values")

    def __init__(self, domain, codomain, values):
        self.domain = domain
        self.codomain = codomain
        self.values = values  # dict[i] -> sparse vec in codomain

    def __call__(self, i):
        return self.values.get(i, {})

    def apply(self, vec):
        out = {}
        for i, c in vec.items():
            col = self.values.get(i)
            if col:
                v_iadd(out, col, c)
        return out

    def __eq__(self, other):
        if not isinstance(other, ConvolutionElement):
            return NotImplemented
        keys = set(self.values) | set(other.values)
        return all(self.values.get(k, {}) == other.values.get(k, {}) for k in keys)

    def __add__(self, other):
        out = {i: dict(col) for i, col in self.values.items()}
        for i, col in other.values.items():
            v_iadd(out.setdefault(i, {}), col)
        return ConvolutionElement(self.domain, self.codomain, {i: c for i, c in out.items() if c})

    def __sub__(self, other):
        out = {i: dict(col) for i, col in self.values.items()}
        for i, col in other.values.items():
            out[i] = v_sub(out.get(i, {}), col)
        return ConvolutionElement(self.domain, self.codomain, {i: c for i, c in out.items() if c})

    def scale(self, coeff):
        return ConvolutionElement(
            self.domain, self.codomain,
            {i: v_scale(col, coeff) for i, col in self.values.items()},
        )


def conv_unit(domain, codomain):
    """The convolution unit eta o epsilon."""
    values = {}
    for i, e in domain.counit.items():
        col = v_scale(codomain.unit, e)
        if col:
            values[i] = col
    return ConvolutionElement(domain, codomain, values)


def convolve(f, g):
    """(f*g)(c) = sum f(c_(1)) g(c_(2)), assembled by tensor contraction."""
    if f.domain is not g.domain and f.domain.dim != g.domain.dim:
        raise ConvolutionError("domain mismatch")
    if f.codomain is not g.codomain and f.codomain.dim != g.codomain.dim:
        raise ConvolutionError("codomain mismatch")
    A = f.codomain
    values = {}
    for i in range(f.domain.dim):
        acc = {}
        for j, k, c in f.domain.comult.get(i, ()):
            fj = f.values.get(j)
            if not fj:
                continue
            gk = g.values.get(k)
            if not gk:
                continue
            v_iadd(acc, A.mul_vec(fj, gk), c)
        if acc:
            values[i] = acc
    return ConvolutionElement(f.domain, f.codomain, values)


def convolve_many(*fs):
    out = fs[0]
    for f in fs[1:]:
        out = convolve(out, f)
    return out


def is_idempotent(f):
    return convolve(f, f) == f


def centrality_witness(f):
    """First witness that f fails to be central in Hom(C, A), else None.

    f is central iff for every basis index i of C and every second/first leg
    j0, the partial sums L = sum c f(c_(1)) over terms with c_(2) = j0 and
    R = sum c f(c_(2)) over terms with c_(1) = j0 agree and are central in A.
    This is equivalent to commuting with the spanning maps c -> delta(c,j0) a.
    """
    A = f.codomain
    C = f.domain
    for i in range(C.dim):
        left, right = {}, {}
        for j, k, c in C.comult.get(i, ()):
            fj = f.values.get(j)
            if fj:
                v_iadd(left.setdefault(k, {}), fj, c)
            fk = f.values.get(k)
            if fk:
                v_iadd(right.setdefault(j, {}), fk, c)
        for j0 in set(left) | set(right):
            lv = {k: v for k, v in left.get(j0, {}).items()}
            rv = {k: v for k, v in right.get(j0, {}).items()}
            if lv != rv:
                return (i, j0, "legs")
            for a in range(A.dim):
                if A.mul_vec_basis(lv, a) != A.mul_basis_vec(a, lv):
                    return (i, j0, a)
    return None


def is_central(f):
    return centrality_witness(f) is None


# ---------------------------------------------------------------------------
# inverse inside the ideal generated by f1 * f2
# ---------------------------------------------------------------------------

def _stack_rows(blocks):
    """Stack (matrix_cols, rhs_vec) blocks into one ExactMatrix system."""
    total = sum(nrows for nrows, _, _ in blocks)
    ncols = blocks[0][1]
    m = ExactMatrix(total, ncols)
    rhs = ExactMatrix(total, 1)
    offset = 0
    for nrows, _, rows in blocks:
        for (r, c), v in rows[0].items():
            m.entries[(r + offset, c)] = v
        for r, v in rows[1].items():
            rhs.entries[(r + offset, 0)] = v
        offset += nrows
    return m, rhs


def convolution_inverse_in_ideal(omega, f1, f2, precomputed_z=None, precheck=True, jobs=1):
    """Unique omega' in <f1*f2> with omega*omega' = omega'*omega = f1*f2.

    Preconditions: f1 and f2 are central convolution idempotents and omega
    lies in the ideal they generate.  Existence is decided by an exact linear
    solve; since any solution of the three semigroup identities is unique,
    a nontrivial kernel is reported as NotInvertible rather than resolved by
    choice.
    """
    if precheck:
        for name, f in (("f1", f1), ("f2", f2)):
            if not is_idempotent(f):
                raise ConvolutionError(f"{name} is not a convolution idempotent")
            wit = centrality_witness(f)
            if wit is not None:
                raise ConvolutionError(f"{name} is not central: witness {wit}")
    z = precomputed_z if precomputed_z is not None else convolve(f1, f2)
    if convolve(omega, z) != omega or convolve(z, omega) != omega:
        raise NotInIdealError("omega does not lie in the ideal <f1*f2>")

    if omega.domain.is_grouplike_basis():
        result = _solve_grouplike(omega, f1, f2, z, jobs=jobs)
    else:
        result = _solve_general(omega, f1, f2, z)

    # re-check the defining identities directly
    if convolve(omega, result) != z or convolve(result, omega) != z:
        raise NotInvertibleError("solver output failed the two-sided re-check")
    if convolve(result, f1) != result or convolve(result, f2) != result:
        raise NotInvertibleError("solver output left the ideal")
    return result


def _w_solve_grouplike(ctx, lo, hi):
    omega, f1, f2, z = ctx
    A = omega.codomain
    dim_a = A.dim
    values = {}
    for i in range(lo, hi):
        zi = z.values.get(i, {})
        wi = omega.values.get(i, {})
        f1i = f1.values.get(i, {})
        f2i = f2.values.get(i, {})
        lm = A.left_mult_matrix(wi)
        rm = A.right_mult_matrix(wi)
        r1 = A.right_mult_matrix(f1i)
        r2 = A.right_mult_matrix(f2i)
        m = ExactMatrix(4 * dim_a, dim_a)
        rhs = ExactMatrix(4 * dim_a, 1)
        for c in range(dim_a):
            for r, v in lm[c].items():
                m.entries[(r, c)] = v
            for r, v in rm[c].items():
                m.entries[(r + dim_a, c)] = v
            for r, v in r1[c].items():
                m.set(r + 2 * dim_a, c, m.get(r + 2 * dim_a, c) + v)
            for r, v in r2[c].items():
                m.set(r + 3 * dim_a, c, m.get(r + 3 * dim_a, c) + v)
            m.set(2 * dim_a + c, c, m.get(2 * dim_a + c, c) - ONE)
            m.set(3 * dim_a + c, c, m.get(3 * dim_a + c, c) - ONE)
        for r, v in zi.items():
            rhs.entries[(r, 0)] = v
            rhs.entries[(r + dim_a, 0)] = v
        try:
            sol = solve_linear(m, rhs)
        except NoSolutionError:
            raise NotInvertibleError(f"no inverse at domain basis index {i}")
        if sol.kernel:
            raise NotInvertibleError(f"ambiguous inverse at domain basis index {i}")
        col = {r: v for (r, _), v in sol.solution.entries.items()}
        if col:
            values[i] = col
    return values


def _solve_grouplike(omega, f1, f2, z, jobs=1):
    """Per-basis decomposition: on a grouplike basis convolution is pointwise."""
    from .parallel import run_partitioned_values

    values = run_partitioned_values(
        _w_solve_grouplike, omega.domain.dim, (omega, f1, f2, z), jobs)
    return ConvolutionElement(omega.domain, omega.codomain, values)


def _solve_general(omega, f1, f2, z):
    """Global sparse solve over all of Hom(C, A) at once."""
    C, A = omega.domain, omega.codomain
    dim_c, dim_a = C.dim, A.dim
    n_unknowns = dim_c * dim_a

    def unknown(k, s):
        return k * dim_a + s

    rows = {}
    rhs_rows = {}
    row_count = 0

    def add_block(kind):
        nonlocal row_count
        for i in range(dim_c):
            base = row_count
            for j, k, c in C.comult.get(i, ()):
                if kind == "left":
                    wj = omega.values.get(j)
                    if not wj:
                        continue
                    for s, ws in wj.items():
                        for sp in range(dim_a):
                            col = A.mult.get((s, sp))
                            if not col:
                                continue
                            u = unknown(k, sp)
                            for t, mv in col.items():
                                key = base + t
                                row = rows.setdefault(key, {})
                                cur = row.get(u)
                                w = c * ws * mv
                                nv = w if cur is None else cur + w
                                if nv.is_zero():
                                    row.pop(u, None)
                                else:
                                    row[u] = nv
                else:
                    fk = (omega if kind == "right" else (f1 if kind == "abs1" else f2)).values.get(k)
                    if not fk:
                        continue
                    for sp, ws in fk.items():
                        for s in range(dim_a):
                            col = A.mult.get((s, sp))
                            if not col:
                                continue
                            u = unknown(j, s)
                            for t, mv in col.items():
                                key = base + t
                                row = rows.setdefault(key, {})
                                cur = row.get(u)
                                w = c * ws * mv
                                nv = w if cur is None else cur + w
                                if nv.is_zero():
                                    row.pop(u, None)
                                else:
                                    row[u] = nv
            if kind in ("left", "right"):
                zi = z.values.get(i, {})
                for t, v in zi.items():
                    rhs_rows[base + t] = v
            else:
                # x*f - x = 0
                for s in range(dim_a):
                    key = base + s
                    row = rows.setdefault(key, {})
                    u = unknown(i, s)
                    cur = row.get(u)
                    nv = -ONE if cur is None else cur - ONE
                    if nv.is_zero():
                        row.pop(u, None)
                    else:
                        row[u] = nv
            row_count += dim_a

    add_block("left")
    add_block("right")
    add_block("abs1")
    add_block("abs2")

    m = ExactMatrix(row_count, n_unknowns)
    for r, row in rows.items():
        for u, v in row.items():
            m.entries[(r, u)] = v
    rhs = ExactMatrix(row_count, 1)
    for r, v in rhs_rows.items():
        rhs.entries[(r, 0)] = v
    try:
        sol = solve_linear(m, rhs)
    except NoSolutionError:
        raise NotInvertibleError("no inverse exists in the ideal")
    if sol.kernel:
        raise NotInvertibleError("inverse is not unique within the ideal")
    values = {}
    for (u, _), v in sol.solution.entries.items():
        k, s = divmod(u, dim_a)
        values.setdefault(k, {})[s] = v
    return ConvolutionElement(C, A, values)
