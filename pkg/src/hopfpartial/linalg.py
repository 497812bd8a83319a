"""Exact sparse linear algebra over cyclotomic scalars.

Everything here is deterministic: Gaussian elimination pivots on the leftmost
column first and, within a column, on the smallest row index.  There are no
tolerances anywhere; a coefficient is zero exactly when its canonical form is.
"""

from __future__ import annotations

from .scalars import Cyclo

ONE = Cyclo.one()


class NoSolutionError(Exception):
    """rhs is not in the column space of the matrix."""


class LinearSolution:
    __slots__ = ("solution", "kernel")

    def __init__(self, solution, kernel):
        self.solution = solution
        self.kernel = kernel


class ExactMatrix:
    """Sparse exact matrix; absent entries are zero, stored entries are not."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows, cols, entries=None):
        self.rows = rows
        self.cols = cols
        self.entries = {}
        if entries:
            for (r, c), v in entries.items():
                if not v.is_zero():
                    self.entries[(r, c)] = v

    @staticmethod
    def identity(n):
        m = ExactMatrix(n, n)
        for i in range(n):
            m.entries[(i, i)] = ONE
        return m

    @staticmethod
    def from_rows(rows):
        nr = len(rows)
        nc = len(rows[0]) if rows else 0
        m = ExactMatrix(nr, nc)
        for r, row in enumerate(rows):
            for c, v in enumerate(row):
                v = Cyclo.coerce(v)
                if not v.is_zero():
                    m.entries[(r, c)] = v
        return m

    @staticmethod
    def from_columns(cols, nrows):
        m = ExactMatrix(nrows, len(cols))
        for c, col in enumerate(cols):
            for r, v in col.items():
                if not v.is_zero():
                    m.entries[(r, c)] = v
        return m

    def get(self, r, c):
        return self.entries.get((r, c), Cyclo.zero())

    def set(self, r, c, v):
        if v.is_zero():
            self.entries.pop((r, c), None)
        else:
            self.entries[(r, c)] = v

    def column(self, c):
        return {r: v for (r, cc), v in self.entries.items() if cc == c}

    def columns(self):
        out = [dict() for _ in range(self.cols)]
        for (r, c), v in self.entries.items():
            out[c][r] = v
        return out

    def row_dicts(self):
        out = {}
        for (r, c), v in self.entries.items():
            out.setdefault(r, {})[c] = v
        return out

    def transpose(self):
        m = ExactMatrix(self.cols, self.rows)
        for (r, c), v in self.entries.items():
            m.entries[(c, r)] = v
        return m

    def __mul__(self, other):
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        out = ExactMatrix(self.rows, other.cols)
        by_row = self.row_dicts()
        other_rows = other.row_dicts()
        acc = {}
        for r, row in by_row.items():
            for k, v in row.items():
                orow = other_rows.get(k)
                if not orow:
                    continue
                for c, w in orow.items():
                    key = (r, c)
                    cur = acc.get(key)
                    acc[key] = v * w if cur is None else cur + v * w
        for key, v in acc.items():
            if not v.is_zero():
                out.entries[key] = v
        return out

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        out = ExactMatrix(self.rows, self.cols, dict(self.entries))
        for key, v in other.entries.items():
            out.set(*key, out.get(*key) + v)
        return out

    def __sub__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        out = ExactMatrix(self.rows, self.cols, dict(self.entries))
        for key, v in other.entries.items():
            out.set(*key, out.get(*key) - v)
        return out

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if (self.rows, self.cols) != (other.rows, other.cols):
            return False
        keys = set(self.entries) | set(other.entries)
        return all(self.get(*k) == other.get(*k) for k in keys)

    def __repr__(self):
        return f"ExactMatrix({self.rows}x{self.cols}, nnz={len(self.entries)})"

    def to_json(self):
        items = sorted(self.entries.items())
        return {
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[r, c, v.to_json()] for (r, c), v in items],
        }

    @staticmethod
    def from_json(obj):
        m = ExactMatrix(int(obj["rows"]), int(obj["cols"]))
        for r, c, v in obj["entries"]:
            m.entries[(int(r), int(c))] = Cyclo.from_json(v)
        return m


def _rref(rows, ncols, b=None):
    """In-place reduced row echelon form on sparse row dicts.

    rows: {r: {c: Cyclo}} with only nonzero entries; b: optional aligned rhs
    rows {r: {j: Cyclo}} transformed alongside.  Returns the ordered pivot list
    [(col, row)].
    """
    col_index = {}
    for r, row in rows.items():
        for c in row:
            col_index.setdefault(c, set()).add(r)
    pivots = []
    pivot_rows = set()
    for c in range(ncols):
        holders = col_index.get(c)
        if not holders:
            continue
        cand = [r for r in holders if r not in pivot_rows]
        if not cand:
            continue
        r0 = min(cand)
        pivot_rows.add(r0)
        pivots.append((c, r0))
        prow = rows[r0]
        inv = prow[c].inverse()
        if not inv.is_one():
            for cc in list(prow):
                nv = prow[cc] * inv
                prow[cc] = nv
                if nv.is_zero():
                    del prow[cc]
                    col_index[cc].discard(r0)
            if b is not None and r0 in b:
                brow = b[r0]
                for j in list(brow):
                    nv = brow[j] * inv
                    if nv.is_zero():
                        del brow[j]
                    else:
                        brow[j] = nv
        for r in sorted(col_index[c] - {r0}):
            row = rows[r]
            factor = row.get(c)
            if factor is None:
                continue
            for cc, pv in prow.items():
                cur = row.get(cc)
                nv = -factor * pv if cur is None else cur - factor * pv
                if nv.is_zero():
                    if cur is not None:
                        del row[cc]
                        col_index[cc].discard(r)
                else:
                    row[cc] = nv
                    if cur is None:
                        col_index.setdefault(cc, set()).add(r)
            if b is not None:
                prhs = b.get(r0)
                if prhs:
                    brow = b.setdefault(r, {})
                    for j, pv in prhs.items():
                        cur = brow.get(j)
                        nv = -factor * pv if cur is None else cur - factor * pv
                        if nv.is_zero():
                            brow.pop(j, None)
                        else:
                            brow[j] = nv
    return pivots


def _kernel_from_rref(rows, ncols, pivots):
    pivot_by_col = dict(pivots)
    basis = []
    for f in range(ncols):
        if f in pivot_by_col:
            continue
        vec = {f: ONE}
        for c, r in pivots:
            v = rows[r].get(f)
            if v is not None:
                vec[c] = -v
        basis.append(vec)
    return basis


def solve_linear(matrix, rhs):
    """Exact solve M X = rhs; returns LinearSolution(solution, kernel columns).

    Raises NoSolutionError when rhs is not in the column space.
    """
    if matrix.rows != rhs.rows:
        raise ValueError("row count mismatch between matrix and rhs")
    rows = matrix.row_dicts()
    b = rhs.row_dicts()
    pivots = _rref(rows, matrix.cols, b)
    pivot_rows = {r for _, r in pivots}
    for r, brow in b.items():
        if r not in pivot_rows and brow:
            raise NoSolutionError(f"inconsistent row {r}")
    sol = ExactMatrix(matrix.cols, rhs.cols)
    for c, r in pivots:
        brow = b.get(r)
        if brow:
            for j, v in brow.items():
                sol.entries[(c, j)] = v
    return LinearSolution(sol, _kernel_from_rref(rows, matrix.cols, pivots))


def kernel(matrix):
    """Basis of the null space as sparse column dicts, deterministic order."""
    rows = matrix.row_dicts()
    pivots = _rref(rows, matrix.cols)
    return _kernel_from_rref(rows, matrix.cols, pivots)


def rank(matrix):
    rows = matrix.row_dicts()
    return len(_rref(rows, matrix.cols))


def inverse(matrix):
    if matrix.rows != matrix.cols:
        raise ValueError("inverse needs a square matrix")
    sol = solve_linear(matrix, ExactMatrix.identity(matrix.rows))
    if sol.kernel:
        raise NoSolutionError("matrix is singular")
    return sol.solution


class Subspace:
    """Reduced echelon basis for a span of sparse vectors in k^ambient_dim.

    Basis vectors are normalized so each has a distinct pivot coordinate equal
    to one, eliminated from all other basis vectors; `coords` then reads
    coefficients off the pivots.  The basis order is the insertion order of
    the independent input vectors, so the construction is deterministic.
    """

    __slots__ = ("ambient_dim", "basis", "pivots", "_pivot_pos")

    def __init__(self, ambient_dim, vectors=()):
        self.ambient_dim = ambient_dim
        self.basis = []
        self.pivots = []
        self._pivot_pos = {}
        for v in vectors:
            self.add(v)

    def _reduce(self, vec):
        # basis vectors carry no pivot coordinate but their own, so the
        # coefficient at each pivot is fixed by the input vector: one pass
        out = dict(vec)
        pp = self._pivot_pos
        for p in list(vec.keys()):
            j = pp.get(p)
            if j is None:
                continue
            c = vec[p]
            for k, w in self.basis[j].items():
                cur = out.get(k)
                nv = -c * w if cur is None else cur - c * w
                if nv.is_zero():
                    out.pop(k, None)
                else:
                    out[k] = nv
        return out

    def add(self, vec):
        """Add a vector to the span; returns True if it was independent."""
        red = self._reduce(vec)
        if not red:
            return False
        pivot = min(red)
        inv = red[pivot].inverse()
        if not inv.is_one():
            red = {k: v * inv for k, v in red.items()}
        for other in self.basis:
            c = other.get(pivot)
            if c is None:
                continue
            for k, w in red.items():
                cur = other.get(k)
                nv = -c * w if cur is None else cur - c * w
                if nv.is_zero():
                    other.pop(k, None)
                else:
                    other[k] = nv
        self._pivot_pos[pivot] = len(self.basis)
        self.basis.append(red)
        self.pivots.append(pivot)
        return True

    @property
    def dim(self):
        return len(self.basis)

    def coords(self, vec):
        """Coefficients of vec over the basis, or None if vec is outside.

        One pass over the vector's support: reduction against the echelon
        basis never introduces new pivot coordinates.
        """
        out = {}
        rem = dict(vec)
        pp = self._pivot_pos
        for p in list(vec.keys()):
            j = pp.get(p)
            if j is None:
                continue
            c = vec[p]
            out[j] = c
            for k, w in self.basis[j].items():
                cur = rem.get(k)
                nv = -c * w if cur is None else cur - c * w
                if nv.is_zero():
                    rem.pop(k, None)
                else:
                    rem[k] = nv
        if rem:
            return None
        return out

    def contains(self, vec):
        return self.coords(vec) is not None

    def equals(self, other):
        if self.dim != other.dim:
            return False
        return all(other.contains(v) for v in self.basis) and all(
            self.contains(v) for v in other.basis
        )
