"""Super Yang-Mills algebras and their currents.

Same cubic machinery as the Yang-Mills side with the anti-cyclic
relation tensor; equivalently, the quadratic element g^{lam mu} S_lam
S_mu is central.  The regular current family here is parametrized by a
covector b and an antisymmetric 2-tensor only.  No Z2-graded sign
calculus is involved: the relations are ordinary tensors, "super" is
nomenclature.  The half-integer shifts require characteristic != 2,
which the rational ground field guarantees.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import AlgebraPresentation, ideal_component, overlap_space
from .pbw import DeformationMap, deformation_from_tails
from .rationals import HALF, ONE, ZERO, rational
from .tensors import TensorElement, anticommutator, commutator, words
from .yang_mills import Current, Metric, _freeze, _nested


def sym_coefficients(metric: Metric) -> tuple:
    """The relation coefficient array Wt[rho][lam][mu][nu]."""
    n = metric.dim
    G = metric.g_inv.data
    return tuple(
        tuple(
            tuple(
                tuple(G[rho][lam] * G[mu][nu] - G[rho][nu] * G[lam][mu] for nu in range(n))
                for mu in range(n)
            )
            for lam in range(n)
        )
        for rho in range(n)
    )


def build_sym(s: int, metric: Metric) -> AlgebraPresentation:
    """The cubic super Yang-Mills presentation on s+1 generators."""
    if s < 1:
        raise ValueError("need at least two generators (s >= 1)")
    if metric.dim != s + 1:
        raise ValueError("metric dimension must be s + 1")
    w = sym_coefficients(metric)
    n = s + 1
    basis = []
    for rho in range(n):
        terms = {}
        for lam in range(n):
            for mu in range(n):
                for nu in range(n):
                    if w[rho][lam][mu][nu] != 0:
                        terms[(lam, mu, nu)] = w[rho][lam][mu][nu]
        basis.append(TensorElement.from_terms(n, terms))
    return AlgebraPresentation(n, 3, tuple(basis))


def relations_from_mixed_brackets(metric: Metric) -> tuple:
    """The relations written as g^{lam mu} [{S_nu, S_lam}, S_mu], with the
    free index raised by the metric to match the distinguished basis.
    Expanding the mixed bracket in this order reproduces the coefficient
    array exactly; the opposite order gives its negative."""
    n = metric.dim
    G = metric.g_inv.data
    gens = [TensorElement.generator(n, i) for i in range(n)]
    lowered = []
    for nu in range(n):
        acc = TensorElement.zero(n)
        for lam in range(n):
            for mu in range(n):
                c = G[lam][mu]
                if c != 0:
                    acc = acc + commutator(anticommutator(gens[nu], gens[lam]), gens[mu]).scale(c)
        lowered.append(acc)
    out = []
    for rho in range(n):
        acc = TensorElement.zero(n)
        for nu in range(n):
            c = G[rho][nu]
            if c != 0:
                acc = acc + lowered[nu].scale(c)
        out.append(acc)
    return tuple(out)


@dataclass(frozen=True)
class SuperIdentityReport:
    anti_cyclic: bool          # Wt^{lam mu nu rho} = -Wt^{rho lam mu nu}
    two_sided_overlap: bool    # sum S_rho (x) Wt^rho = -sum Wt^rho (x) S_rho
    bracket_form: bool         # relations match the mixed-bracket expansion
    overlap_is_line: bool      # dim W_4 = 1, spanned by the two-sided element

    @property
    def all_pass(self) -> bool:
        return self.anti_cyclic and self.two_sided_overlap and self.bracket_form and self.overlap_is_line


def verify_super_identities(metric: Metric, coefficients=None) -> SuperIdentityReport:
    n = metric.dim
    w = coefficients if coefficients is not None else sym_coefficients(metric)
    idx = range(n)
    anti_cyclic = all(
        w[l][m][nu][r] == -w[r][l][m][nu] for r in idx for l in idx for m in idx for nu in idx
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
    left = TensorElement.zero(n)
    right = TensorElement.zero(n)
    for rho, r in enumerate(basis):
        e = TensorElement.generator(n, rho)
        left = left + e.tensor(r)
        right = right + r.tensor(e)
    two_sided = left == -right

    bracket_ok = tuple(basis) == relations_from_mixed_brackets(metric) if coefficients is None else True

    overlap_ok = False
    try:
        a = AlgebraPresentation(n, 3, tuple(basis))
        wspace = overlap_space(a)
        overlap_ok = (
            wspace.dim == 1 and not left.is_zero() and wspace.contains(left.to_degree_vector(4))
        )
    except ValueError:
        overlap_ok = False
    return SuperIdentityReport(anti_cyclic, two_sided, bracket_ok, overlap_ok)


def quadratic_casimir(metric: Metric) -> TensorElement:
    """The quadratic element g^{lam mu} S_lam (x) S_mu."""
    n = metric.dim
    terms = {}
    G = metric.g_inv.data
    for lam in range(n):
        for mu in range(n):
            if G[lam][mu] != 0:
                terms[(lam, mu)] = G[lam][mu]
    return TensorElement.from_terms(n, terms)


def centrality_check(a: AlgebraPresentation, metric: Metric, n_max: int = 3) -> bool:
    """The commutators of the quadratic element with the generators span
    exactly R, and commutators with all monomials up to degree n_max land
    in the ideal."""
    n = a.dim_v
    q = quadratic_casimir(metric)
    gens = [TensorElement.generator(n, i) for i in range(n)]
    span = [commutator(q, g).to_degree_vector(3) for g in gens]
    from .linalg import Subspace

    if Subspace.from_spanning(span, n**3) != a.relation_space:
        return False
    for deg in range(4, n_max + 1):
        component = ideal_component(a, deg)
        for word in words(n, deg - 2):
            monomial = TensorElement.from_terms(n, {word: ONE})
            c = commutator(q, monomial)
            if not component.contains(c.to_degree_vector(deg)):
                return False
    return True


def _is_antisymmetric2(t, n: int) -> bool:
    return all(t[a][b] == -t[b][a] for a in range(n) for b in range(n))


def super_current_from_parameters(b: Sequence, omega2, metric: Metric) -> Current:
    """The closed-form regular super current for parameters (b, omega2)."""
    n = metric.dim
    b = tuple(rational(x) for x in b)
    if not _is_antisymmetric2(omega2, n):
        raise ValueError("omega2 must be antisymmetric")
    G = metric.g_inv.data
    j3 = _nested(n, 3)
    for a in range(n):
        for b_ in range(n):
            for c in range(n):
                acc = ZERO
                for r in range(n):
                    acc = acc + (G[a][c] * G[b_][r] - G[b_][c] * G[a][r]) * b[r]
                j3[a][b_][c] = acc
    j2 = tuple(tuple(rational(omega2[a][b_]) for b_ in range(n)) for a in range(n))
    # the scalar part contracts b against the *first* slot of omega2
    j1 = tuple(
        HALF * sum((rational(omega2[a][r]) * b[r] for r in range(n)), ZERO) for a in range(n)
    )
    return Current(_freeze(j3), j2, j1)


def isym_family_generators(metric: Metric) -> list:
    """Generators of the regular super family's top block (the b-family
    only), flattened into stage-1 classifier coordinates."""
    from .yang_mills import flatten_top_block

    n = metric.dim
    G = metric.g_inv.data
    gens = []
    for rp in range(n):
        j3 = _nested(n, 3)
        for a in range(n):
            for b_ in range(n):
                for c in range(n):
                    j3[a][b_][c] = G[a][c] * G[b_][rp] - G[b_][c] * G[a][rp]
        gens.append(flatten_top_block(j3, n))
    return gens


def super_current_to_deformation(c: Current, a: AlgebraPresentation) -> DeformationMap:
    if c.dim != a.dim_v or len(a.relation_basis) != a.dim_v:
        raise ValueError("current shape does not match the presentation")
    return deformation_from_tails(a, c.tails())


@dataclass(frozen=True)
class ShiftReport:
    centrality_form_matches: bool  # the commutator rewriting spans P
    shifted_form_matches: bool     # the shifted-generator rewriting spans P

    @property
    def all_pass(self) -> bool:
        return self.centrality_form_matches and self.shifted_form_matches


def shifted_generator_check(
    b: Sequence, omega2, metric: Metric, shift=HALF
) -> ShiftReport:
    """Span-equality of the two rewritings of the deformed relations.

    The first rewriting keeps the original generators; the second absorbs
    b into shifted generators S - shift * b * 1 (the correct shift factor
    is one half; passing a wrong factor is the negative control).
    """
    n = metric.dim
    b = tuple(rational(x) for x in b)
    shift = rational(shift)
    G = metric.g_inv.data
    g = metric.g.data
    a = build_sym(n - 1, metric)
    current = super_current_from_parameters(b, omega2, metric)
    d = super_current_to_deformation(current, a)
    from .linalg import Subspace
    from .tensors import filtered_dim

    ambient = filtered_dim(n, 3)
    p_span = Subspace.from_spanning(
        [p.to_filtered_vector(3) for p in d.deformed_relations()], ambient
    )

    q = quadratic_casimir(metric)
    gens = [TensorElement.generator(n, i) for i in range(n)]
    unit = TensorElement.unit(n)

    # first rewriting: [q, S_nu] - [g^{lam mu} b_lam S_mu, S_nu]
    #                  + omega^{lam rho} g_{rho nu} (S_lam - b_lam/2)
    b_vec = TensorElement.zero(n)
    for lam in range(n):
        for mu in range(n):
            c = G[lam][mu] * b[lam]
            if c != 0:
                b_vec = b_vec + gens[mu].scale(c)
    first = []
    for nu in range(n):
        rel = commutator(q, gens[nu]) - commutator(b_vec, gens[nu])
        for lam in range(n):
            for rho in range(n):
                c = rational(omega2[lam][rho]) * g[rho][nu]
                if c != 0:
                    rel = rel + (gens[lam] - unit.scale(HALF * b[lam])).scale(c)
        first.append(rel.to_filtered_vector(3))
    first_span = Subspace.from_spanning(first, ambient)

    # second rewriting in the shifted generators
    shifted = [gens[lam] - unit.scale(shift * b[lam]) for lam in range(n)]
    q_hat = TensorElement.zero(n)
    for lam in range(n):
        for mu in range(n):
            if G[lam][mu] != 0:
                q_hat = q_hat + shifted[lam].tensor(shifted[mu]).scale(G[lam][mu])
    second = []
    for nu in range(n):
        rel = commutator(q_hat, shifted[nu])
        for tau in range(n):
            for rho in range(n):
                c = rational(omega2[tau][rho]) * g[rho][nu]
                if c != 0:
                    rel = rel + shifted[tau].scale(c)
        second.append(rel.to_filtered_vector(3))
    second_span = Subspace.from_spanning(second, ambient)

    return ShiftReport(first_span == p_span, second_span == p_span)
