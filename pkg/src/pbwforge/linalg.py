"""Exact rational linear algebra.

Dense matrices over the rationals with deterministic Gaussian elimination
(first nonzero pivot in column order), canonical reduced-row-echelon
subspaces, the usual lattice operations, and a sparse incremental echelon
accumulator for large spanning sets.

Everything is exact: a rank, a membership bit, or a solution vector is a
theorem, not an approximation.  All values are immutable after
construction and all operations are pure.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional, Sequence

from .rationals import ONE, ZERO, Q, rational

Vector = tuple  # tuple of rationals


def vector(entries: Iterable) -> Vector:
    return tuple(rational(e) for e in entries)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def dot(a: Sequence, b: Sequence) -> Q:
    return sum((x * y for x, y in zip(a, b)), ZERO)


@dataclass(frozen=True)
class Matrix:
    """Immutable dense matrix of exact rationals."""

    data: tuple

    def __post_init__(self) -> None:
        widths = {len(row) for row in self.data}
        if len(widths) > 1:
            raise ValueError("ragged rows")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "Matrix":
        return cls(tuple(vector(row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(tuple((ZERO,) * cols for _ in range(rows)))

    @property
    def rows(self) -> int:
        return len(self.data)

    @property
    def cols(self) -> int:
        return len(self.data[0]) if self.data else 0

    def row(self, i: int) -> Vector:
        return self.data[i]

    def transpose(self) -> "Matrix":
        return Matrix(tuple(zip(*self.data))) if self.data else Matrix(())

    def mat_vec(self, v: Sequence) -> Vector:
        if self.data and len(v) != self.cols:
            raise ValueError(f"length {len(v)} vector against {self.cols} columns")
        return tuple(dot(row, v) for row in self.data)

    def __iter__(self):
        return iter(self.data)


def _eliminate(rows: list[list], col_limit: Optional[int] = None) -> list[int]:
    """In-place full reduction to RREF; returns pivot column indices.

    Pivoting is deterministic: first row with a nonzero entry, columns in
    order.  ``col_limit`` restricts pivot search (used for augmented
    systems); row operations always span the full width.
    """
    if not rows:
        return []
    n_cols = len(rows[0])
    limit = n_cols if col_limit is None else col_limit
    pivots: list[int] = []
    r = 0
    for c in range(limit):
        src = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if src is None:
            continue
        rows[r], rows[src] = rows[src], rows[r]
        inv = ONE / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return pivots


def rref(m: Matrix) -> Matrix:
    """Unique reduced row-echelon form of ``m``, zero rows dropped."""
    rows = [list(row) for row in m.data]
    pivots = _eliminate(rows)
    return Matrix(tuple(tuple(row) for row in rows[: len(pivots)]))


def rank(m: Matrix) -> int:
    rows = [list(row) for row in m.data]
    return len(_eliminate(rows))


@dataclass(frozen=True)
class Subspace:
    """A subspace of a fixed coordinate space, in canonical RREF basis.

    The basis rows have strictly increasing pivot columns, unit pivots and
    zeros elsewhere in each pivot column, so two ``Subspace`` values are
    equal iff their representations are equal.
    """

    ambient_dim: int
    basis: Matrix

    def __post_init__(self) -> None:
        for row in self.basis.data:
            if len(row) != self.ambient_dim:
                raise ValueError("basis row length does not match ambient dimension")

    @classmethod
    def from_spanning(cls, vectors: Iterable[Iterable], ambient_dim: int) -> "Subspace":
        rows = [list(vector(v)) for v in vectors]
        for row in rows:
            if len(row) != ambient_dim:
                raise ValueError("spanning vector length does not match ambient dimension")
        pivots = _eliminate(rows)
        return cls(ambient_dim, Matrix(tuple(tuple(r) for r in rows[: len(pivots)])))

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix(()))

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, Matrix.identity(ambient_dim))

    @property
    def dim(self) -> int:
        return self.basis.rows

    def pivot_columns(self) -> tuple[int, ...]:
        return tuple(next(j for j, x in enumerate(row) if x != 0) for row in self.basis.data)

    def reduce(self, v: Sequence) -> Vector:
        """Residual of ``v`` after elimination against the RREF basis.

        The residual is the canonical representative of ``v`` modulo this
        subspace (zero on all pivot columns); it is zero iff ``v`` lies in
        the subspace.
        """
        if len(v) != self.ambient_dim:
            raise ValueError("vector length does not match ambient dimension")
        res = list(v)
        for row, p in zip(self.basis.data, self.pivot_columns()):
            f = res[p]
            if f != 0:
                res = [x - f * y for x, y in zip(res, row)]
        return tuple(res)

    def contains(self, v: Sequence) -> bool:
        return all(x == 0 for x in self.reduce(v))

    def contains_subspace(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        return all(self.contains(row) for row in other.basis.data)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace.from_spanning(
            list(self.basis.data) + list(other.basis.data), self.ambient_dim
        )

    def intersect(self, other: "Subspace") -> "Subspace":
        """Intersection via the Zassenhaus block construction."""
        self._check_ambient(other)
        n = self.ambient_dim
        block = [list(row) + list(row) for row in self.basis.data]
        block += [list(row) + [ZERO] * n for row in other.basis.data]
        pivots = _eliminate(block, col_limit=2 * n)
        result = []
        for row, p in zip(block, pivots):
            if p >= n:
                result.append(row[n:])
        return Subspace.from_spanning(result, n)

    def _check_ambient(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(
                f"ambient mismatch: {self.ambient_dim} vs {other.ambient_dim}"
            )


def kernel(m: Matrix) -> Subspace:
    """Null space {v : M v = 0} as a canonical subspace of dimension cols - rank."""
    n = m.cols
    if m.rows == 0 or n == 0:
        return Subspace.full(n) if n else Subspace.zero(0)
    rows = [list(row) for row in m.data]
    pivots = _eliminate(rows)
    pivot_set = set(pivots)
    free_cols = [c for c in range(n) if c not in pivot_set]
    basis = []
    for fc in free_cols:
        v = [ZERO] * n
        v[fc] = ONE
        for row, p in zip(rows, pivots):
            v[p] = -row[fc]
        basis.append(v)
    return Subspace.from_spanning(basis, n)


def inverse(m: Matrix) -> Optional[Matrix]:
    """Exact inverse of a square matrix, or ``None`` when singular."""
    n = m.rows
    if n != m.cols:
        raise ValueError("inverse of a non-square matrix")
    aug = [list(row) + [ONE if i == j else ZERO for j in range(n)] for i, row in enumerate(m.data)]
    pivots = _eliminate(aug, col_limit=n)
    if len(pivots) < n:
        return None
    return Matrix(tuple(tuple(row[n:]) for row in aug))


class AffineSolution(NamedTuple):
    particular: Vector
    homogeneous: Subspace


def solve_affine(m: Matrix, rhs: Sequence) -> Optional[AffineSolution]:
    """Full solution set of M x = rhs, or ``None`` when infeasible."""
    if len(rhs) != m.rows:
        raise ValueError("right-hand side length does not match row count")
    n = m.cols
    aug = [list(row) + [rational(b)] for row, b in zip(m.data, rhs)]
    pivots = _eliminate(aug, col_limit=n)
    for row in aug[len(pivots):]:
        if row[n] != 0:
            return None
    x = [ZERO] * n
    for row, p in zip(aug, pivots):
        x[p] = row[n]
    return AffineSolution(tuple(x), kernel(m))


class SparseEchelon:
    """Incremental row-echelon accumulator over sparse rational vectors.

    Rows are dicts keyed by coordinate index under an arbitrary total
    order on keys; each stored row is normalized to a unit leading
    coefficient.  Built for large, very sparse spanning sets (ideal spans)
    where dense elimination would be wasteful.  Mutable, unlike the rest
    of this module; intended as a local accumulator.
    """

    def __init__(self) -> None:
        self.rows: dict = {}  # pivot key -> {key: coeff}, row[pivot] == 1

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        """Eliminate every pivot key from ``vec``; returns the residual."""
        v = {k: c for k, c in vec.items() if c != 0}
        heap = sorted(v)
        while heap:
            k = heapq.heappop(heap)
            c = v.get(k)
            if not c:
                continue
            row = self.rows.get(k)
            if row is None:
                continue
            for rk, rc in row.items():
                nv = v.get(rk, ZERO) - c * rc
                if nv:
                    if rk not in v and rk > k:
                        heapq.heappush(heap, rk)
                    v[rk] = nv
                else:
                    v.pop(rk, None)
        return v

    def insert(self, vec: dict) -> bool:
        """Reduce and, if independent, add ``vec``; True iff rank grew."""
        res = self.reduce(vec)
        if not res:
            return False
        p = min(res)
        inv = ONE / res[p]
        self.rows[p] = {k: c * inv for k, c in res.items()}
        return True

    def extend(self, vectors: Iterable[dict]) -> None:
        for v in vectors:
            self.insert(v)
