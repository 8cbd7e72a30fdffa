import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pbwforge.linalg import (
    Matrix,
    Subspace,
    inverse,
    kernel,
    rank,
    rref,
    solve_affine,
    vector,
)
from pbwforge.rationals import ONE, ZERO, rational

rationals = st.fractions(
    min_value=-20, max_value=20, max_denominator=20
).map(rational)


def small_matrix(max_dim=4):
    return st.integers(1, max_dim).flatmap(
        lambda r: st.integers(1, max_dim).flatmap(
            lambda c: st.lists(
                st.lists(rationals, min_size=c, max_size=c), min_size=r, max_size=r
            )
        )
    ).map(Matrix.from_rows)


def test_rref_rank_one_collapse():
    m = Matrix.from_rows([[2, 4], [1, 2]])
    assert rref(m) == Matrix.from_rows([[1, 2]])


def test_rref_identity_fixed():
    m = Matrix.identity(3)
    assert rref(m) == m


def test_rref_exact_fractions():
    m = Matrix.from_rows([["1/2", "1/3"], ["1/4", "1/6"]])
    assert rref(m) == Matrix.from_rows([[1, "2/3"]])


@settings(max_examples=60, deadline=None)
@given(small_matrix())
def test_rref_idempotent(m):
    assert rref(rref(m)) == rref(m)


@settings(max_examples=60, deadline=None)
@given(small_matrix())
def test_rank_transpose(m):
    assert rank(m) == rank(m.transpose())


def test_kernel_zero_matrix():
    assert kernel(Matrix.zeros(2, 3)).dim == 3


def test_kernel_identity():
    assert kernel(Matrix.identity(4)).dim == 0


def test_kernel_hand_solve():
    k = kernel(Matrix.from_rows([[1, 1, 0]]))
    assert k.dim == 2
    assert k.contains(vector([1, -1, 0]))
    assert k.contains(vector([0, 0, 1]))
    assert not k.contains(vector([1, 0, 0]))


@settings(max_examples=60, deadline=None)
@given(small_matrix())
def test_kernel_annihilates(m):
    k = kernel(m)
    assert k.dim == m.cols - rank(m)
    for row in k.basis:
        assert all(x == 0 for x in m.mat_vec(row))


def test_subspace_canonical_equality():
    a = Subspace.from_spanning([[1, 2], [3, 6]], 2)
    b = Subspace.from_spanning([[2, 4]], 2)
    assert a == b
    assert a.dim == 1


def test_intersect_idempotent():
    a = Subspace.from_spanning([[1, 0, 1], [0, 1, 0]], 3)
    assert a.intersect(a) == a


def test_intersect_complementary_lines():
    a = Subspace.from_spanning([[1, 0]], 2)
    b = Subspace.from_spanning([[0, 1]], 2)
    assert a.intersect(b).dim == 0


def test_intersect_generic_planes():
    a = Subspace.from_spanning([[1, 0, 0], [0, 1, 0]], 3)
    b = Subspace.from_spanning([[0, 1, 1], [1, 0, 1]], 3)
    meet = a.intersect(b)
    assert meet.dim == a.dim + b.dim - (a + b).dim
    assert meet.dim == 1


def test_sum_with_zero():
    x = Subspace.from_spanning([[1, 1, 0]], 3)
    assert x + Subspace.zero(3) == x


def test_contains_basics():
    line = Subspace.from_spanning([[1, 2]], 2)
    assert line.contains(vector([0, 0]))
    assert line.contains(vector([2, 4]))
    assert not line.contains(vector([1, 0]))


def _random_subspace(rng, ambient, count):
    rows = [
        [rational(rng.randint(-20, 20)) / rational(rng.randint(1, 20)) for _ in range(ambient)]
        for _ in range(count)
    ]
    return Subspace.from_spanning(rows, ambient)


@pytest.mark.parametrize("seed", range(8))
def test_grassmann_identity(seed):
    rng = random.Random(seed)
    ambient = rng.randint(2, 6)
    a = _random_subspace(rng, ambient, rng.randint(0, ambient))
    b = _random_subspace(rng, ambient, rng.randint(0, ambient))
    assert a.dim + b.dim == a.intersect(b).dim + (a + b).dim


def test_solve_affine_identity():
    sol = solve_affine(Matrix.identity(3), vector([1, 2, 3]))
    assert sol.particular == vector([1, 2, 3])
    assert sol.homogeneous.dim == 0


def test_solve_affine_underdetermined():
    sol = solve_affine(Matrix.from_rows([[1, 1]]), vector([0]))
    assert sol.particular == (ZERO, ZERO)
    assert sol.homogeneous.contains(vector([1, -1]))
    assert sol.homogeneous.dim == 1


def test_solve_affine_infeasible():
    assert solve_affine(Matrix.from_rows([[1], [1]]), vector([0, 1])) is None


@settings(max_examples=60, deadline=None)
@given(small_matrix(), st.data())
def test_solve_affine_exact(m, data):
    x = vector(data.draw(st.lists(rationals, min_size=m.cols, max_size=m.cols)))
    rhs = m.mat_vec(x)
    sol = solve_affine(m, rhs)
    assert sol is not None
    assert m.mat_vec(sol.particular) == tuple(rhs)


def test_inverse_round_trip():
    m = Matrix.from_rows([[1, 2], [3, 5]])
    mi = inverse(m)
    prod = Matrix.from_rows(
        [[sum((m.data[i][k] * mi.data[k][j] for k in range(2)), ZERO) for j in range(2)] for i in range(2)]
    )
    assert prod == Matrix.identity(2)
    assert inverse(Matrix.from_rows([[1, 2], [2, 4]])) is None


def test_ambient_mismatch_rejected():
    a = Subspace.from_spanning([[1, 0]], 2)
    b = Subspace.from_spanning([[1, 0, 0]], 3)
    with pytest.raises(ValueError):
        a.intersect(b)


def test_subspace_reduce_is_canonical():
    a = Subspace.from_spanning([[1, 0, 2]], 3)
    res = a.reduce(vector([3, 1, 6]))
    assert res == (ZERO, ONE, ZERO)
    assert a.reduce(vector([1, 0, 2])) == (ZERO, ZERO, ZERO)
