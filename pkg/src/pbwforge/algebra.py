"""Homogeneous N-algebras T(V)/(R): graded ideal components, graded
dimensions, and the overlap space (R tensor V) intersect (V tensor R).

Graded dimensions are always computed by brute quotient dimension (rank
of an explicit spanning set of the ideal component); no Hilbert-series
assumption ever enters the computation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, permutations
from typing import Sequence

from .linalg import Matrix, SparseEchelon, Subspace, solve_affine
from .rationals import ONE, ZERO
from .tensors import TensorElement, side_tensor, word_index, words


@dataclass(frozen=True, eq=False)
class AlgebraPresentation:
    """Generators V of dimension s+1 and a relation space R in V^(tensor N).

    ``relation_basis`` is the distinguished ordered basis of R; relation
    coordinates everywhere refer to this ordering.
    """

    dim_v: int
    degree: int
    relation_basis: tuple

    def __post_init__(self) -> None:
        if self.dim_v < 1:
            raise ValueError("need at least one generator")
        if self.degree < 2:
            raise ValueError("relation degree must be at least 2")
        for r in self.relation_basis:
            if r.dim_v != self.dim_v:
                raise ValueError("relation with mismatched generator count")
            if not r.is_homogeneous(self.degree) or r.is_zero():
                raise ValueError("relations must be nonzero and homogeneous of degree N")
        if self.relation_space.dim != len(self.relation_basis):
            raise ValueError("relation basis is linearly dependent")

    @classmethod
    def from_relations(cls, dim_v: int, degree: int, relations: Sequence[TensorElement]) -> "AlgebraPresentation":
        return cls(dim_v, degree, tuple(relations))

    @cached_property
    def relation_space(self) -> Subspace:
        return Subspace.from_spanning(
            [r.to_degree_vector(self.degree) for r in self.relation_basis],
            self.dim_v**self.degree,
        )

    @cached_property
    def _relation_matrix(self) -> Matrix:
        cols = [r.to_degree_vector(self.degree) for r in self.relation_basis]
        return Matrix(tuple(zip(*cols)))

    def relation_coords(self, x: TensorElement):
        """Coordinates of x in the distinguished relation basis.

        Raises ValueError when x is not in R.
        """
        sol = solve_affine(self._relation_matrix, x.to_degree_vector(self.degree))
        if sol is None:
            raise ValueError("element is not in the relation space")
        return sol.particular


def _ideal_spanning_words(a: AlgebraPresentation, n: int):
    """Yield sparse vectors u (x) r (x) v spanning the degree-n ideal part."""
    dim = a.dim_v
    for i in range(n - a.degree + 1):
        k = n - a.degree - i
        for left in words(dim, i):
            for right in words(dim, k):
                for r in a.relation_basis:
                    yield {
                        word_index(left + w + right, dim): c
                        for w, c in r.terms.items()
                    }


def ideal_component(a: AlgebraPresentation, n: int) -> Subspace:
    """Degree-n component of the two-sided ideal (R), in canonical form."""
    size = a.dim_v**n
    if n < a.degree:
        return Subspace.zero(size)
    spanning = []
    for sparse in _ideal_spanning_words(a, n):
        vec = [ZERO] * size
        for idx, c in sparse.items():
            vec[idx] = c
        spanning.append(vec)
    return Subspace.from_spanning(spanning, size)


def ideal_component_dim(a: AlgebraPresentation, n: int) -> int:
    """dim of the degree-n ideal component, via sparse echelon (fast path)."""
    if n < a.degree:
        return 0
    ech = SparseEchelon()
    ech.extend(_ideal_spanning_words(a, n))
    return ech.rank


def graded_dim(a: AlgebraPresentation, n: int) -> int:
    """Exact dimension of the degree-n part of T(V)/(R)."""
    if n < 0:
        raise ValueError("degree must be nonnegative")
    return a.dim_v**n - ideal_component_dim(a, n)


def overlap_space(a: AlgebraPresentation) -> Subspace:
    """(R tensor V) intersect (V tensor R) inside V^(tensor N+1)."""
    r = a.relation_space
    if r.dim == 0:
        return Subspace.zero(a.dim_v ** (a.degree + 1))
    right = side_tensor(r, a.dim_v, "right", degree=a.degree)
    left = side_tensor(r, a.dim_v, "left", degree=a.degree)
    return right.intersect(left)


def _sign(perm: Sequence[int]) -> int:
    inv = sum(
        1
        for i in range(len(perm))
        for j in range(i + 1, len(perm))
        if perm[i] > perm[j]
    )
    return -1 if inv % 2 else 1


def build_antisymmetrizer_relations(dim_v: int, degree: int) -> AlgebraPresentation:
    """Relations spanned by full antisymmetrizations of N distinct letters.

    For N=2 this presents the symmetric algebra on the generators.  When
    N > dim_v the relation space is empty (the free algebra).
    """
    basis = []
    for combo in combinations(range(dim_v), degree):
        terms = {}
        for perm in permutations(combo):
            terms[perm] = ONE * _sign(perm)
        basis.append(TensorElement.from_terms(dim_v, terms))
    return AlgebraPresentation(dim_v, degree, tuple(basis))
