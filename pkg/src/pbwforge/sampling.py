"""Seeded exact samplers for metrics and current parameters.

Everything is driven by ``random.Random`` with an explicit seed, so any
sample is reproducible from (seed, shape) alone.  Constrained parameter
blocks are drawn from the exact kernel of the constraint map, never by
projection, so side conditions hold identically rather than
approximately.
"""

from __future__ import annotations

import random
from itertools import combinations_with_replacement
from typing import Optional

from .linalg import Matrix, kernel
from .rationals import ZERO, Q, rational
from .yang_mills import CurrentParameters, Metric, _freeze, _nested


def random_rational(rng: random.Random, bound: int = 20) -> Q:
    """A rational p/q with |p| <= bound and 1 <= q <= bound."""
    return rational(rng.randint(-bound, bound)) / rational(rng.randint(1, bound))


def random_vector(rng: random.Random, n: int, bound: int = 20) -> tuple:
    return tuple(random_rational(rng, bound) for _ in range(n))


def random_nonzero_vector(rng: random.Random, n: int, bound: int = 20) -> tuple:
    while True:
        v = random_vector(rng, n, bound)
        if any(x != 0 for x in v):
            return v


def random_metric(rng: random.Random, n: int, bound: int = 5) -> Metric:
    """A random symmetric nondegenerate rational matrix."""
    while True:
        entries = [[ZERO] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                entries[i][j] = entries[j][i] = random_rational(rng, bound)
        try:
            return Metric.from_rows(entries)
        except ValueError:
            continue


def random_antisymmetric2(rng: random.Random, n: int, bound: int = 20) -> tuple:
    t = _nested(n, 2)
    for a in range(n):
        for b in range(a + 1, n):
            x = random_rational(rng, bound)
            t[a][b] = x
            t[b][a] = -x
    return _freeze(t)


def random_antisymmetric3(rng: random.Random, n: int, bound: int = 20) -> tuple:
    t = _nested(n, 3)
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                x = random_rational(rng, bound)
                t[a][b][c] = t[b][c][a] = t[c][a][b] = x
                t[b][a][c] = t[a][c][b] = t[c][b][a] = -x
    return _freeze(t)


def _sym_multisets(n: int, rank: int) -> list:
    return list(combinations_with_replacement(range(n), rank))


def _unflatten_symmetric(coords, n: int, rank: int):
    """Full symmetric tensor from one coordinate per sorted multiset."""
    lookup = {m: c for m, c in zip(_sym_multisets(n, rank), coords)}
    t = _nested(n, rank)
    if rank == 2:
        for a in range(n):
            for b in range(n):
                t[a][b] = lookup[tuple(sorted((a, b)))]
    else:
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    t[a][b][c] = lookup[tuple(sorted((a, b, c)))]
    return _freeze(t)


def _orthogonal_symmetric_sample(
    rng: random.Random, n: int, rank: int, b: tuple, bound: int = 20
):
    """Random symmetric rank-2 or rank-3 tensor s with s(..., b) = 0.

    The contraction s^{a...r} b_r = 0 over the last slot is a linear
    condition on the multiset coordinates; we sample from its exact
    kernel.
    """
    multisets = _sym_multisets(n, rank)
    col = {m: i for i, m in enumerate(multisets)}
    rows = []
    for free in _sym_multisets(n, rank - 1):
        row = [ZERO] * len(multisets)
        for r in range(n):
            if b[r] != 0:
                row[col[tuple(sorted(free + (r,)))]] += b[r]
        rows.append(row)
    null = kernel(Matrix.from_rows(rows))
    coords = [ZERO] * len(multisets)
    for basis_row in null.basis:
        c = random_rational(rng, bound)
        coords = [x + c * y for x, y in zip(coords, basis_row)]
    return _unflatten_symmetric(coords, n, rank)


def orthogonal_vector_sample(rng: random.Random, b: tuple, bound: int = 20) -> tuple:
    n = len(b)
    null = kernel(Matrix.from_rows([b]))
    v = [ZERO] * n
    for basis_row in null.basis:
        c = random_rational(rng, bound)
        v = [x + c * y for x, y in zip(v, basis_row)]
    return tuple(v)


def sample_current_parameters(
    rng: random.Random, metric: Metric, violate: Optional[str] = None
) -> CurrentParameters:
    """A seeded parameter pack with all orthogonality side conditions met.

    With ``violate`` set to "s3", "s2" or "s1", the corresponding block is
    re-drawn unconstrained until its side condition actually fails; the
    other two conditions still hold.
    """
    if violate not in (None, "s3", "s2", "s1"):
        raise ValueError(f"unknown violation target {violate!r}")
    n = metric.dim
    b = random_nonzero_vector(rng, n)
    omega3 = random_antisymmetric3(rng, n)
    s3 = _orthogonal_symmetric_sample(rng, n, 3, b)
    s2 = _orthogonal_symmetric_sample(rng, n, 2, b)
    s1 = orthogonal_vector_sample(rng, b)
    if violate == "s3":
        while True:
            coords = [random_rational(rng) for _ in _sym_multisets(n, 3)]
            s3 = _unflatten_symmetric(coords, n, 3)
            if any(
                sum((s3[a][c][r] * b[r] for r in range(n)), ZERO) != 0
                for a in range(n)
                for c in range(n)
            ):
                break
    elif violate == "s2":
        while True:
            coords = [random_rational(rng) for _ in _sym_multisets(n, 2)]
            s2 = _unflatten_symmetric(coords, n, 2)
            if any(sum((s2[a][r] * b[r] for r in range(n)), ZERO) != 0 for a in range(n)):
                break
    elif violate == "s1":
        while True:
            s1 = random_vector(rng, n)
            if sum((s1[r] * b[r] for r in range(n)), ZERO) != 0:
                break
    return CurrentParameters(b, omega3, s3, s2, s1)


def sample_super_parameters(rng: random.Random, n: int) -> tuple:
    """A seeded (b, omega2) pair for the super current family."""
    return random_nonzero_vector(rng, n), random_antisymmetric2(rng, n)
