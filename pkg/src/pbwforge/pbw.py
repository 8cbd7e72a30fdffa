"""PBW property of filtered deformations U = T(V)/({x - phi(x)}).

The theorem-based checker evaluates three conditions on the overlap
space W = (R tensor V) intersect (V tensor R): the top-level bracket
image must land in R, the intermediate composites must vanish, and the
scalar composite must vanish.  Because the deformed relations are graphs
{x - phi(x)}, the ideal meets F^(N-1) trivially by construction; that
condition needs no computation.

The brute-force oracle is fully independent: it spans the filtered ideal
by explicit products up to a degree cutoff and compares quotient
dimensions against the graded algebra.  It can refute the PBW property
definitively at a finite cutoff, but can only ever report bounded
consistency in the positive direction.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import cached_property
from typing import Optional, Sequence

from .algebra import AlgebraPresentation, graded_dim, overlap_space
from .linalg import SparseEchelon, Subspace
from .tensors import (
    GradedMap,
    TensorElement,
    apply_graded_side,
    filtered_dim,
    index_word,
    word_index,
    words,
)

DEFAULT_DIM_LIMIT = 10_000
DIM_LIMIT_ENV = "PBWFORGE_MAX_TENSOR_DIM"


class ResourceGuardError(RuntimeError):
    """A computation would exceed the configured tensor-dimension limit."""


def tensor_dim_limit() -> int:
    raw = os.environ.get(DIM_LIMIT_ENV)
    return int(raw) if raw else DEFAULT_DIM_LIMIT


def _guard(dim_v: int, degree: int) -> None:
    limit = tensor_dim_limit()
    if dim_v**degree > limit:
        raise ResourceGuardError(
            f"tensor space of dimension {dim_v**degree} (degree {degree}) "
            f"exceeds the limit {limit}"
        )


@dataclass(frozen=True, eq=False)
class DeformationMap:
    """phi = sum of phi_j : R -> V^(tensor j), j = 0 .. N-1.

    ``phi`` is indexed by target degree; ``None`` entries are zero maps.
    Columns of each map refer to the algebra's distinguished relation
    basis.  The deformed relations x - phi(x) form a graph over R, so
    the ideal's intersection with F^(N-1) is automatically zero.
    """

    algebra: AlgebraPresentation
    phi: tuple

    def __post_init__(self) -> None:
        n = self.algebra.degree
        if len(self.phi) != n:
            raise ValueError(f"expected {n} graded map slots (j = 0..{n - 1})")
        for j, m in enumerate(self.phi):
            if m is None:
                continue
            if m.target_degree != j or m.source_dim != len(self.algebra.relation_basis):
                raise ValueError(f"slot {j} holds a map with wrong shape")
            if m.dim_v != self.algebra.dim_v:
                raise ValueError("graded map over the wrong generator space")

    @classmethod
    def homogeneous(cls, algebra: AlgebraPresentation) -> "DeformationMap":
        return cls(algebra, (None,) * algebra.degree)

    def phi_map(self, j: int) -> GradedMap:
        m = self.phi[j]
        if m is not None:
            return m
        return GradedMap.zero(self.algebra.dim_v, len(self.algebra.relation_basis), j)

    def tail(self, coords: Sequence) -> TensorElement:
        """phi applied to the relation with the given basis coordinates."""
        out = TensorElement.zero(self.algebra.dim_v)
        for m in self.phi:
            if m is not None:
                out = out + m.apply_coords(coords)
        return out

    def deformed_relations(self) -> tuple:
        """The relations x - phi(x) for x in the distinguished basis."""
        k = len(self.algebra.relation_basis)
        rels = []
        for i, r in enumerate(self.algebra.relation_basis):
            unit = tuple(1 if j == i else 0 for j in range(k))
            rels.append(r - self.tail(unit))
        return tuple(rels)

    @cached_property
    def _overlap_basis(self) -> tuple:
        w = overlap_space(self.algebra)
        n1 = self.algebra.degree + 1
        return tuple(
            TensorElement.from_degree_vector(self.algebra.dim_v, n1, row)
            for row in w.basis
        )


def deformation_from_tails(
    algebra: AlgebraPresentation, tails: Sequence[TensorElement]
) -> DeformationMap:
    """Build the deformation with phi(r_a) = tails[a] in F^(N-1)."""
    if len(tails) != len(algebra.relation_basis):
        raise ValueError("one tail per relation basis vector is required")
    n = algebra.degree
    maps = []
    for j in range(n):
        comps = [t.degree_component(j) for t in tails]
        if all(c.is_zero() for c in comps):
            maps.append(None)
        else:
            maps.append(GradedMap.from_images(algebra.dim_v, j, comps))
    for t in tails:
        if t.max_degree >= n:
            raise ValueError("tails must lie in F^(N-1)")
    return DeformationMap(algebra, tuple(maps))


def _top_bracket(d: DeformationMap, x: TensorElement) -> TensorElement:
    """(phi_{N-1} tensor I - I tensor phi_{N-1}) applied to x in W."""
    top = d.phi_map(d.algebra.degree - 1)
    rb = d.algebra.relation_basis
    return apply_graded_side(top, rb, x, "right") - apply_graded_side(top, rb, x, "left")


def check_j1(d: DeformationMap) -> tuple[bool, Optional[TensorElement]]:
    """Top condition: the bracket image of the overlap space lies in R.

    Returns (holds, witness); the witness is an offending image vector.
    """
    r = d.algebra.relation_space
    for x in d._overlap_basis:
        image = _top_bracket(d, x)
        if not r.contains(image.to_degree_vector(d.algebra.degree)):
            return False, image
    return True, None


def check_j2(d: DeformationMap, j: int) -> bool:
    """Level-j condition: phi_j of the bracket plus the level-(j-1) bracket
    annihilates the overlap space.  Requires the top condition (the inner
    image must lie in R); violating that precondition raises ValueError.
    """
    if not 1 <= j <= d.algebra.degree - 1:
        raise ValueError(f"level must be in 1..{d.algebra.degree - 1}")
    rb = d.algebra.relation_basis
    phi_j = d.phi_map(j)
    phi_jm1 = d.phi_map(j - 1)
    for x in d._overlap_basis:
        inner = _top_bracket(d, x)
        coords = d.algebra.relation_coords(inner)
        term = phi_j.apply_coords(coords)
        term = term + apply_graded_side(phi_jm1, rb, x, "right")
        term = term - apply_graded_side(phi_jm1, rb, x, "left")
        if not term.is_zero():
            return False
    return True


def check_j3(d: DeformationMap) -> bool:
    """Scalar condition: phi_0 of the bracket vanishes on the overlap space."""
    phi_0 = d.phi_map(0)
    for x in d._overlap_basis:
        inner = _top_bracket(d, x)
        coords = d.algebra.relation_coords(inner)
        if not phi_0.apply_coords(coords).is_zero():
            return False
    return True


@dataclass(frozen=True)
class PbwVerdict:
    j1_holds: bool
    j2_holds: tuple  # one entry per level j = 1..N-1; None = not applicable
    j3_holds: Optional[bool]
    witness: Optional[TensorElement]
    overall: bool


def pbw_verdict(d: DeformationMap) -> PbwVerdict:
    """Conjunction of all conditions; equals the PBW property whenever the
    homogeneous part is Koszul (an assumption the caller asserts)."""
    n = d.algebra.degree
    j1, witness = check_j1(d)
    if not j1:
        return PbwVerdict(False, (None,) * (n - 1), None, witness, False)
    j2 = tuple(check_j2(d, j) for j in range(1, n))
    j3 = check_j3(d)
    return PbwVerdict(True, j2, j3, None, all(j2) and j3)


def _filtered_key(word, dim_v: int):
    # Decreasing degree first: echelon pivots then expose the F^n blocks.
    return (-len(word), word_index(word, dim_v))


class IdealSpan:
    """Echelon basis of span{a p b : |a| + N + |b| <= cutoff} in F^cutoff.

    Coordinates are ordered by decreasing degree, so basis rows whose
    pivot sits in degree <= n span exactly the intersection with F^n.
    """

    def __init__(self, relations: Sequence[TensorElement], dim_v: int, cutoff: int):
        if not relations:
            raise ValueError("need at least one relation")
        degree = max(r.max_degree for r in relations)
        if cutoff < degree:
            raise ValueError("cutoff below the relation degree")
        _guard(dim_v, cutoff)
        self.dim_v = dim_v
        self.cutoff = cutoff
        self.echelon = SparseEchelon()
        for total in range(cutoff - degree + 1):
            for i in range(total + 1):
                k = total - i
                for left in words(dim_v, i):
                    for right in words(dim_v, k):
                        for p in relations:
                            vec = {
                                _filtered_key(left + w + right, dim_v): c
                                for w, c in p.terms.items()
                            }
                            self.echelon.insert(vec)

    def intersection_dim(self, n: int) -> int:
        """dim of span intersect F^n."""
        if n > self.cutoff:
            raise ValueError("n exceeds the cutoff")
        return sum(1 for (neg_deg, _) in self.echelon.rows if -neg_deg <= n)

    def reduce(self, x: TensorElement) -> TensorElement:
        res = self.echelon.reduce(
            {_filtered_key(w, self.dim_v): c for w, c in x.terms.items()}
        )
        terms = {}
        for (neg_deg, idx), c in res.items():
            terms[index_word(-neg_deg, idx, self.dim_v)] = c
        return TensorElement(self.dim_v, terms)


@dataclass(frozen=True)
class OracleResult:
    n_max: int
    cutoff: int
    quotient_dims: tuple  # dim F^n / J_n for n = 0..n_max
    expected_dims: tuple  # cumulative graded dims of the homogeneous algebra
    verdict: str  # "FAIL" | "CONSISTENT" | "INCONCLUSIVE"
    failure_degree: Optional[int]

    @property
    def failed(self) -> bool:
        return self.verdict == "FAIL"


def brute_force_oracle(d: DeformationMap, n_max: int, cutoff: Optional[int] = None) -> OracleResult:
    """Compare filtered quotient dimensions with the graded algebra.

    FAIL (a quotient is strictly smaller than the graded count) is a
    definitive refutation of the PBW property.  CONSISTENT means every
    quotient matches up to the cutoff: bounded evidence, not a proof.
    INCONCLUSIVE means the cutoff was too low for the span to reach the
    full filtered ideal in some degree.
    """
    if cutoff is None:
        cutoff = n_max + 1
    if cutoff < n_max:
        raise ValueError("cutoff must be at least n_max")
    a = d.algebra
    span = IdealSpan(d.deformed_relations(), a.dim_v, cutoff)
    quotients = []
    expected = []
    running = 0
    failure = None
    for n in range(n_max + 1):
        q = filtered_dim(a.dim_v, n) - span.intersection_dim(n)
        running += graded_dim(a, n)
        quotients.append(q)
        expected.append(running)
        if q < running and failure is None:
            failure = n
    if failure is not None:
        verdict = "FAIL"
    elif all(q == e for q, e in zip(quotients, expected)):
        verdict = "CONSISTENT"
    else:
        verdict = "INCONCLUSIVE"
    return OracleResult(n_max, cutoff, tuple(quotients), tuple(expected), verdict, failure)


@dataclass(frozen=True)
class ConservationResult:
    residual: TensorElement
    conserved: bool


def conservation_residual(d: DeformationMap) -> ConservationResult:
    """Divergence [e_rho, J^rho] of the current, reduced modulo the
    deformed relations.

    Requires a Yang-Mills-form presentation: one relation per generator,
    with the two-sided overlap identity sum(e_rho (x) r^rho) =
    sum(r^rho (x) e_rho) holding exactly.  The divergence then reduces to
    zero iff the deformation satisfies the PBW conditions.
    """
    a = d.algebra
    k = len(a.relation_basis)
    if k != a.dim_v:
        raise ValueError("conservation requires one relation per generator")
    two_sided = TensorElement.zero(a.dim_v)
    for rho, r in enumerate(a.relation_basis):
        e = TensorElement.generator(a.dim_v, rho)
        two_sided = two_sided + e.tensor(r) - r.tensor(e)
    if not two_sided.is_zero():
        raise ValueError("relation basis lacks the two-sided overlap identity")

    divergence = TensorElement.zero(a.dim_v)
    for rho in range(k):
        unit = tuple(1 if j == rho else 0 for j in range(k))
        current = d.tail(unit)
        e = TensorElement.generator(a.dim_v, rho)
        divergence = divergence + e.tensor(current) - current.tensor(e)

    n = a.degree
    relations = Subspace.from_spanning(
        [p.to_filtered_vector(n) for p in d.deformed_relations()],
        filtered_dim(a.dim_v, n),
    )
    residual_vec = relations.reduce(divergence.to_filtered_vector(n))
    residual = TensorElement.from_filtered_vector(a.dim_v, n, residual_vec)
    return ConservationResult(residual, residual.is_zero())
