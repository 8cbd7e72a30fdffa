"""Yang-Mills algebras and their currents.

The cubic algebra on generators nabla_0..nabla_s has one relation per
generator, with coefficients built from a nondegenerate symmetric
bilinear form.  A current attaches inhomogeneous tails to the relations;
the closed-form regular family is parametrized by a covector b, a
totally antisymmetric 3-tensor, and symmetric tensors orthogonal to b.

Index convention: in the degree-2 coefficient array ``j3[mu][nu][rho]``
the LAST index labels the relation; e.g. the tail of the relation with
label rho contains j3[mu][nu][rho] * nabla_mu (x) nabla_nu.  All raising
and lowering of indices goes explicitly through the metric.  For the
physics form of the current (built from field strengths only), see
:func:`physics_current`; completed with its two orthogonality
constraints it contains a generalization of Ohm's law.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .algebra import AlgebraPresentation, overlap_space
from .linalg import Matrix, inverse
from .pbw import DeformationMap, deformation_from_tails
from .rationals import HALF, ONE, Q, ZERO, rational
from .tensors import TensorElement, commutator


@dataclass(frozen=True, eq=False)
class Metric:
    """Nondegenerate symmetric bilinear form g with its exact inverse."""

    g: Matrix

    def __post_init__(self) -> None:
        n = self.g.rows
        if self.g.cols != n:
            raise ValueError("metric must be square")
        for i in range(n):
            for j in range(n):
                if self.g.data[i][j] != self.g.data[j][i]:
                    raise ValueError("metric must be symmetric")
        if inverse(self.g) is None:
            raise ValueError("metric is degenerate")

    @classmethod
    def from_rows(cls, rows) -> "Metric":
        return cls(Matrix.from_rows(rows))

    @classmethod
    def euclidean(cls, dim: int) -> "Metric":
        return cls(Matrix.identity(dim))

    @classmethod
    def minkowski(cls, dim: int) -> "Metric":
        rows = [[(-ONE if i == 0 else ONE) if i == j else ZERO for j in range(dim)] for i in range(dim)]
        return cls(Matrix.from_rows(rows))

    @property
    def dim(self) -> int:
        return self.g.rows

    @cached_property
    def g_inv(self) -> Matrix:
        inv = inverse(self.g)
        assert inv is not None
        return inv

    def lower(self, i: int, j: int) -> Q:
        return self.g.data[i][j]

    def upper(self, i: int, j: int) -> Q:
        return self.g_inv.data[i][j]


def ym_coefficients(metric: Metric) -> tuple:
    """The relation coefficient array W[rho][lam][mu][nu]."""
    n = metric.dim
    G = metric.g_inv.data
    return tuple(
        tuple(
            tuple(
                tuple(
                    G[rho][lam] * G[mu][nu] + G[rho][nu] * G[lam][mu] - 2 * G[rho][mu] * G[lam][nu]
                    for nu in range(n)
                )
                for mu in range(n)
            )
            for lam in range(n)
        )
        for rho in range(n)
    )


def build_ym(s: int, metric: Metric) -> AlgebraPresentation:
    """The cubic Yang-Mills presentation on s+1 generators."""
    if s < 1:
        raise ValueError("need at least two generators (s >= 1)")
    if metric.dim != s + 1:
        raise ValueError("metric dimension must be s + 1")
    w = ym_coefficients(metric)
    n = s + 1
    basis = []
    for rho in range(n):
        terms = {}
        for lam in range(n):
            for mu in range(n):
                for nu in range(n):
                    c = w[rho][lam][mu][nu]
                    if c != 0:
                        terms[(lam, mu, nu)] = terms.get((lam, mu, nu), ZERO) + c
        basis.append(TensorElement.from_terms(n, terms))
    return AlgebraPresentation(n, 3, tuple(basis))


def relations_from_nested_commutators(metric: Metric) -> tuple:
    """The same relations written as g^{lam mu} g^{nu rho} [x_lam,[x_mu,x_nu]]."""
    n = metric.dim
    G = metric.g_inv.data
    gens = [TensorElement.generator(n, i) for i in range(n)]
    out = []
    for rho in range(n):
        acc = TensorElement.zero(n)
        for lam in range(n):
            for mu in range(n):
                for nu in range(n):
                    c = G[lam][mu] * G[nu][rho]
                    if c != 0:
                        acc = acc + commutator(gens[lam], commutator(gens[mu], gens[nu])).scale(c)
        out.append(acc)
    return tuple(out)


@dataclass(frozen=True)
class IdentityReport:
    cyclic_invariance: bool       # W^{lam mu nu rho} = W^{rho lam mu nu}
    two_sided_overlap: bool       # sum W^rho (x) e_rho = sum e_rho (x) W^rho
    cyclic_sum_zero: bool         # W^{rho lam mu nu} + W^{rho nu lam mu} + W^{rho mu nu lam} = 0
    commutator_form: bool         # relations match the nested-commutator expansion
    overlap_is_line: bool         # dim W_4 = 1, spanned by the two-sided element

    @property
    def all_pass(self) -> bool:
        return (
            self.cyclic_invariance
            and self.two_sided_overlap
            and self.cyclic_sum_zero
            and self.commutator_form
            and self.overlap_is_line
        )


def _two_sided_element(a: AlgebraPresentation) -> tuple[TensorElement, TensorElement]:
    right = TensorElement.zero(a.dim_v)
    left = TensorElement.zero(a.dim_v)
    for rho, r in enumerate(a.relation_basis):
        e = TensorElement.generator(a.dim_v, rho)
        right = right + r.tensor(e)
        left = left + e.tensor(r)
    return right, left


def verify_identities(metric: Metric, coefficients=None) -> IdentityReport:
    """Check the structural identities of the Yang-Mills relation tensor.

    ``coefficients`` overrides the relation array (used as a negative
    control with a deliberately corrupted tensor).
    """
    n = metric.dim
    w = coefficients if coefficients is not None else ym_coefficients(metric)
    idx = range(n)
    cyclic = all(
        w[l][m][nu][r] == w[r][l][m][nu] for r in idx for l in idx for m in idx for nu in idx
    )
    cyclic_sum = all(
        w[r][l][m][nu] + w[r][nu][l][m] + w[r][m][nu][l] == 0
        for r in idx
        for l in idx
        for m in idx
        for nu in idx
    )
    basis = []
    for rho in idx:
        terms = {}
        for lam in idx:
            for mu in idx:
                for nu in idx:
                    if w[rho][lam][mu][nu] != 0:
                        terms[(lam, mu, nu)] = w[rho][lam][mu][nu]
        basis.append(TensorElement.from_terms(n, terms))
    right = TensorElement.zero(n)
    left = TensorElement.zero(n)
    for rho, r in enumerate(basis):
        e = TensorElement.generator(n, rho)
        right = right + r.tensor(e)
        left = left + e.tensor(r)
    two_sided = right == left

    commutator_ok = tuple(basis) == relations_from_nested_commutators(metric) if coefficients is None else True

    overlap_ok = False
    try:
        a = AlgebraPresentation(n, 3, tuple(basis))
        wspace = overlap_space(a)
        overlap_ok = (
            wspace.dim == 1
            and not right.is_zero()
            and wspace.contains(right.to_degree_vector(4))
        )
    except ValueError:
        overlap_ok = False
    return IdentityReport(cyclic, two_sided, cyclic_sum, commutator_ok, overlap_ok)


def _nested(dim: int, rank: int, fill=ZERO):
    if rank == 0:
        return fill
    return [
        _nested(dim, rank - 1, fill) for _ in range(dim)
    ]


def _freeze(x):
    if isinstance(x, list):
        return tuple(_freeze(e) for e in x)
    return x


@dataclass(frozen=True)
class Current:
    """Inhomogeneous tails J^rho = j3 part + j2 part + j1 part."""

    j3: tuple  # j3[mu][nu][rho]
    j2: tuple  # j2[lam][rho]
    j1: tuple  # j1[rho]

    @classmethod
    def zero(cls, dim: int) -> "Current":
        return cls(_freeze(_nested(dim, 3)), _freeze(_nested(dim, 2)), _freeze(_nested(dim, 1)))

    @property
    def dim(self) -> int:
        return len(self.j1)

    def tails(self) -> tuple:
        """J^rho as tensor elements of F^2, indexed by the relation label."""
        n = self.dim
        out = []
        for rho in range(n):
            terms = {(): self.j1[rho]}
            for mu in range(n):
                terms[(mu,)] = self.j2[mu][rho]
                for nu in range(n):
                    terms[(mu, nu)] = self.j3[mu][nu][rho]
            out.append(TensorElement.from_terms(n, terms))
        return tuple(out)


def _is_antisymmetric3(t, n: int) -> bool:
    # the two adjacent transpositions generate S3
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if t[a][b][c] != -t[b][a][c] or t[a][b][c] != -t[a][c][b]:
                    return False
    return True


def _is_symmetric3(t, n: int) -> bool:
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if t[a][b][c] != t[b][a][c] or t[a][b][c] != t[a][c][b]:
                    return False
    return True


def _is_symmetric2(t, n: int) -> bool:
    return all(t[a][b] == t[b][a] for a in range(n) for b in range(n))


@dataclass(frozen=True)
class CurrentParameters:
    """Parameters (b, omega3, s3, s2, s1) of the closed-form current family.

    Symmetry invariants are enforced at construction; the orthogonality
    side conditions against b are *reported*, never silently enforced.
    """

    b: tuple
    omega3: tuple
    s3: tuple
    s2: tuple
    s1: tuple

    def __post_init__(self) -> None:
        n = len(self.b)
        if not _is_antisymmetric3(self.omega3, n):
            raise ValueError("omega3 must be totally antisymmetric")
        if not _is_symmetric3(self.s3, n):
            raise ValueError("s3 must be totally symmetric")
        if not _is_symmetric2(self.s2, n):
            raise ValueError("s2 must be symmetric")

    @property
    def dim(self) -> int:
        return len(self.b)

    def side_conditions(self) -> dict:
        n = self.dim
        s3b = all(
            sum((self.s3[a][b_][r] * self.b[r] for r in range(n)), ZERO) == 0
            for a in range(n)
            for b_ in range(n)
        )
        s2b = all(
            sum((self.s2[a][r] * self.b[r] for r in range(n)), ZERO) == 0 for a in range(n)
        )
        s1b = sum((self.s1[r] * self.b[r] for r in range(n)), ZERO) == 0
        return {"s3_orthogonal": s3b, "s2_orthogonal": s2b, "s1_orthogonal": s1b}

    def all_side_conditions_hold(self) -> bool:
        return all(self.side_conditions().values())


def current_from_parameters(p: CurrentParameters, metric: Metric) -> Current:
    """Assemble the closed-form current from its parameters."""
    n = p.dim
    if metric.dim != n:
        raise ValueError("metric dimension mismatch")
    G = metric.g_inv.data
    j3 = _nested(n, 3)
    for a in range(n):
        for b_ in range(n):
            for c in range(n):
                acc = p.omega3[a][b_][c] + p.s3[a][b_][c]
                for r in range(n):
                    acc = acc + (G[a][r] * G[b_][c] - G[a][c] * G[b_][r]) * p.b[r]
                j3[a][b_][c] = acc
    j2 = _nested(n, 2)
    for a in range(n):
        for b_ in range(n):
            acc = p.s2[a][b_]
            for r in range(n):
                acc = acc - HALF * p.omega3[a][b_][r] * p.b[r]
            j2[a][b_] = acc
    j1 = list(p.s1)
    return Current(_freeze(j3), _freeze(j2), tuple(j1))


def current_to_deformation(c: Current, a: AlgebraPresentation) -> DeformationMap:
    """Deformation with phi(W^rho) = J^rho, per the relation-label convention."""
    if c.dim != a.dim_v or len(a.relation_basis) != a.dim_v:
        raise ValueError("current shape does not match the presentation")
    return deformation_from_tails(a, c.tails())


def flatten_top_block(j3, dim: int) -> tuple:
    """Flatten a j3 coefficient array into stage-1 classifier coordinates:
    u[k * dim^2 + mu * dim + nu] = j3[mu][nu][k]."""
    out = []
    for k in range(dim):
        for mu in range(dim):
            for nu in range(dim):
                out.append(rational(j3[mu][nu][k]))
    return tuple(out)


def iym_family_generators(metric: Metric) -> list:
    """Generators of the regular family's top block: the b-family, the
    antisymmetric 3-tensors, and the symmetric 3-tensors, flattened into
    stage-1 coordinates."""
    n = metric.dim
    G = metric.g_inv.data
    gens = []
    for rp in range(n):
        j3 = _nested(n, 3)
        for a in range(n):
            for b_ in range(n):
                for c in range(n):
                    j3[a][b_][c] = G[a][rp] * G[b_][c] - G[a][c] * G[b_][rp]
        gens.append(flatten_top_block(j3, n))
    from itertools import combinations, combinations_with_replacement, permutations

    def _perm_sign(perm) -> int:
        inv = sum(
            1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j]
        )
        return -1 if inv % 2 else 1

    for combo in combinations(range(n), 3):
        j3 = _nested(n, 3)
        for perm in permutations(combo):
            j3[perm[0]][perm[1]][perm[2]] = ONE * _perm_sign(perm)
        gens.append(flatten_top_block(j3, n))
    for combo in combinations_with_replacement(range(n), 3):
        j3 = _nested(n, 3)
        for perm in set(permutations(combo)):
            j3[perm[0]][perm[1]][perm[2]] = ONE
        gens.append(flatten_top_block(j3, n))
    return gens


def physics_current(
    b: Sequence, omega3, s1: Sequence, metric: Metric
) -> tuple[Current, dict]:
    """Current built from field strengths only: b_lam F^{lam mu} +
    omega^{lam rho mu} F_{lam rho} + s^mu 1.

    Returns the expanded current together with a report of the two
    orthogonality constraints (b against omega3 and against s1) that the
    regularity theorem imposes on this form.
    """
    n = metric.dim
    b = tuple(rational(x) for x in b)
    s1 = tuple(rational(x) for x in s1)
    if not _is_antisymmetric3(omega3, n):
        raise ValueError("omega3 must be totally antisymmetric")
    G = metric.g_inv.data
    j3 = _nested(n, 3)
    for mu in range(n):
        # b_lam F^{lam mu} = b_lam g^{lam a} g^{mu b} (e_a e_b - e_b e_a)
        for lam in range(n):
            if b[lam] == 0:
                continue
            for a in range(n):
                for b_ in range(n):
                    coeff = b[lam] * G[lam][a] * G[mu][b_]
                    if coeff != 0:
                        j3[a][b_][mu] = j3[a][b_][mu] + coeff
                        j3[b_][a][mu] = j3[b_][a][mu] - coeff
        # omega^{lam rho mu} F_{lam rho} = omega^{lam rho mu} (e_lam e_rho - e_rho e_lam)
        for lam in range(n):
            for rho in range(n):
                coeff = omega3[lam][rho][mu]
                if coeff != 0:
                    j3[lam][rho][mu] = j3[lam][rho][mu] + coeff
                    j3[rho][lam][mu] = j3[rho][lam][mu] - coeff
    current = Current(_freeze(j3), _freeze(_nested(n, 2)), s1)
    constraints = {
        "b_omega_orthogonal": all(
            sum((b[lam] * omega3[lam][mu][nu] for lam in range(n)), ZERO) == 0
            for mu in range(n)
            for nu in range(n)
        ),
        "b_s_orthogonal": sum((b[lam] * s1[lam] for lam in range(n)), ZERO) == 0,
    }
    return current, constraints
