import random
from fractions import Fraction

import pytest

from hopfpartial.linalg import (
    ExactMatrix,
    NoSolutionError,
    Subspace,
    inverse,
    kernel,
    rank,
    solve_linear,
)
from hopfpartial.scalars import Cyclo

ONE = Cyclo.one()


def _rand_matrix(rng, rows, cols, order=1):
    m = ExactMatrix(rows, cols)
    for r in range(rows):
        for c in range(cols):
            if rng.random() < 0.7:
                val = Fraction(rng.randint(-5, 5), rng.randint(1, 3))
                if val:
                    m.entries[(r, c)] = Cyclo.rational(val)
    return m


def test_identity_solve_returns_rhs():
    rng = random.Random(1)
    m = ExactMatrix.identity(5)
    rhs = _rand_matrix(rng, 5, 2)
    sol = solve_linear(m, rhs)
    assert sol.solution == rhs
    assert sol.kernel == []


def test_zero_matrix_nonzero_rhs_has_no_solution():
    m = ExactMatrix(3, 3)
    rhs = ExactMatrix(3, 1, {(1, 0): ONE})
    with pytest.raises(NoSolutionError):
        solve_linear(m, rhs)


def test_random_invertible_solve_multiply_back():
    rng = random.Random(42)
    while True:
        m = _rand_matrix(rng, 6, 6)
        if rank(m) == 6:
            break
    rhs = _rand_matrix(rng, 6, 3)
    sol = solve_linear(m, rhs)
    assert sol.kernel == []
    assert m * sol.solution == rhs


def test_solve_underdetermined_kernel_spans_null_space():
    rng = random.Random(5)
    m = _rand_matrix(rng, 3, 6)
    rhs = ExactMatrix(3, 1)
    for r in range(3):
        rhs.entries[(r, 0)] = Cyclo.rational(r + 1)
    # make rhs consistent: rhs = m * ones
    ones = ExactMatrix(6, 1, {(i, 0): ONE for i in range(6)})
    rhs = m * ones
    sol = solve_linear(m, rhs)
    assert m * sol.solution == rhs
    assert len(sol.kernel) == 6 - rank(m)
    for k in sol.kernel:
        col = ExactMatrix.from_columns([k], 6)
        assert m * col == ExactMatrix(3, 1)


def test_kernel_identity_and_zero():
    assert kernel(ExactMatrix.identity(4)) == []
    basis = kernel(ExactMatrix(3, 3))
    assert len(basis) == 3
    assert basis == [{0: ONE}, {1: ONE}, {2: ONE}]


def test_kernel_of_projection_multiply_back():
    # projection onto the first r coordinates of k^n
    n, r = 7, 3
    m = ExactMatrix(n, n, {(i, i): ONE for i in range(r)})
    basis = kernel(m)
    assert len(basis) == n - r
    for k in basis:
        assert m * ExactMatrix.from_columns([k], n) == ExactMatrix(n, 1)


def test_rank_plus_kernel_dim_equals_cols():
    rng = random.Random(9)
    for _ in range(8):
        rows, cols = rng.randint(2, 7), rng.randint(2, 7)
        m = _rand_matrix(rng, rows, cols, order=1)
        assert rank(m) + len(kernel(m)) == cols


def test_inverse_and_cyclotomic_entries():
    z = Cyclo.zeta(4)
    m = ExactMatrix(2, 2, {(0, 0): ONE, (0, 1): z, (1, 1): ONE})
    inv = inverse(m)
    assert m * inv == ExactMatrix.identity(2)
    with pytest.raises(NoSolutionError):
        inverse(ExactMatrix(2, 2, {(0, 0): ONE}))


def test_matrix_json_roundtrip():
    z = Cyclo.zeta(3)
    m = ExactMatrix(2, 3, {(0, 0): z, (1, 2): Cyclo.rational(Fraction(1, 2))})
    assert ExactMatrix.from_json(m.to_json()) == m


def test_subspace_coords_roundtrip():
    rng = random.Random(3)
    vecs = []
    for _ in range(4):
        vecs.append({i: Cyclo.rational(rng.randint(-3, 3)) for i in rng.sample(range(8), 3)})
    space = Subspace(8, [v for v in vecs if any(not c.is_zero() for c in v.values())])
    for j, b in enumerate(space.basis):
        coords = space.coords(b)
        assert coords == {j: ONE}
    # random combination lies inside; its coordinates reproduce it
    from hopfpartial.algebra import v_iadd

    combo = {}
    weights = {}
    for j in range(space.dim):
        w = Cyclo.rational(rng.randint(-2, 2))
        if not w.is_zero():
            weights[j] = w
        v_iadd(combo, space.basis[j], w)
    assert space.coords(combo) == weights
    assert not space.contains({7: ONE, 3: ONE}) or space.dim >= 1


def test_subspace_rejects_outside_vector():
    space = Subspace(4, [{0: ONE, 1: ONE}])
    assert space.coords({0: ONE}) is None
    assert space.contains({0: ONE, 1: ONE})
