"""Staged classification of all PBW deformations of a presentation.

Stage 1 solves the top condition as an exact linear system for the
degree-(N-1) coefficient block.  The lower conditions are bilinear in
(top block, lower blocks), so the full classification proceeds by fixing
a concrete stage-1 point and solving each lower level as an affine
linear system, then comparing the resulting spaces against a supplied
closed-form family by two-sided inclusion.

Coefficient coordinates: the degree-j block of a deformation is
flattened as ``u[k * dim_v**j + word_index(w)]`` where k indexes the
distinguished relation basis and w runs over degree-j words.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .algebra import AlgebraPresentation, overlap_space
from .linalg import Matrix, Subspace, Vector, kernel, solve_affine
from .rationals import ONE, ZERO
from .tensors import GradedMap, TensorElement, apply_graded_side, side_decompose


def flatten_graded_map(m: GradedMap) -> Vector:
    """Column-stacked coefficients of a graded map, per the block layout."""
    block = m.dim_v**m.target_degree
    out = []
    for k in range(m.source_dim):
        out.extend(m.matrix.data[row][k] for row in range(block))
    return tuple(out)


def unflatten_graded_map(
    dim_v: int, source_dim: int, target_degree: int, coeffs: Sequence
) -> GradedMap:
    block = dim_v**target_degree
    rows = tuple(
        tuple(coeffs[k * block + row] for k in range(source_dim)) for row in range(block)
    )
    return GradedMap(dim_v, source_dim, target_degree, Matrix.from_rows(rows))


@dataclass(frozen=True)
class StageSolution:
    stage: str
    parameters: Subspace  # solution directions in coefficient coordinates
    particular: Optional[Vector]
    feasible: bool


def _overlap_data(a: AlgebraPresentation):
    """Overlap basis with both side decompositions precomputed."""
    w = overlap_space(a)
    n1 = a.degree + 1
    data = []
    for row in w.basis:
        x = TensorElement.from_degree_vector(a.dim_v, n1, row)
        cr = side_decompose(x, a.relation_basis, "right")
        cl = side_decompose(x, a.relation_basis, "left")
        data.append((x, cr, cl))
    return data


def _bracket_matrix(a: AlgebraPresentation, target_degree: int, cr: Matrix, cl: Matrix) -> Matrix:
    """Matrix of u -> (phi tensor I - I tensor phi)(x) in V^(N or j+1) coords,
    where u flattens an unknown phi with the given target degree and the
    decompositions cr, cl describe a fixed overlap vector x."""
    dim = a.dim_v
    k_count = len(a.relation_basis)
    block = dim**target_degree
    out_dim = dim ** (target_degree + 1)
    cols = k_count * block
    rows = [[ZERO] * cols for _ in range(out_dim)]
    for k in range(k_count):
        for widx in range(block):
            col = k * block + widx
            for lam in range(dim):
                c = cr.data[k][lam]
                if c != 0:
                    rows[widx * dim + lam][col] += c  # phi(r_k) (x) e_lam
                c = cl.data[k][lam]
                if c != 0:
                    rows[lam * block + widx][col] -= c  # e_lam (x) phi(r_k)
    return Matrix.from_rows(rows)


def _membership_projector(space: Subspace) -> Matrix:
    """Linear map whose kernel is the subspace: v -> canonical residual."""
    n = space.ambient_dim
    # residual_i = v_i - sum over pivots p of v_p * basis_row(p)_i
    rows = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    for brow, p in zip(space.basis.data, space.pivot_columns()):
        for i in range(n):
            rows[i][p] = rows[i][p] - brow[i]
    return Matrix.from_rows(rows)


def solve_stage1(a: AlgebraPresentation) -> StageSolution:
    """All top-degree blocks satisfying the first PBW condition.

    Returns the exact solution subspace of the coefficient space of
    dimension dim_v^(N-1) * dim R.
    """
    dim = a.dim_v
    top = a.degree - 1
    k_count = len(a.relation_basis)
    cols = k_count * dim**top
    if k_count == 0:
        return StageSolution("stage1", Subspace.full(0), (), True)
    data = _overlap_data(a)
    proj = _membership_projector(a.relation_space)
    eq_rows = []
    for _, cr, cl in data:
        bm = _bracket_matrix(a, top, cr, cl)
        # condition: residual of the image modulo R vanishes
        for prow in proj.data:
            eq_rows.append(
                tuple(
                    sum((prow[i] * bm.data[i][c] for i in range(len(prow))), ZERO)
                    for c in range(cols)
                )
            )
    if not eq_rows:
        return StageSolution("stage1", Subspace.full(cols), (ZERO,) * cols, True)
    sol = kernel(Matrix.from_rows(eq_rows))
    return StageSolution("stage1", sol, (ZERO,) * cols, True)


def solve_stage2plus(a: AlgebraPresentation, phi_top: GradedMap) -> list:
    """Solve the lower conditions for a fixed top block.

    The unknowns are all lower blocks phi_(N-2), ..., phi_0 jointly: each
    level-j condition couples the blocks j and j-1 linearly, so the whole
    descent is one affine system.  Equations are added level by level and
    the accumulated system is re-solved after each, which attributes an
    infeasibility to the first level whose equations make the system
    unsolvable.  The scalar condition is folded into level 1; "level0" in
    the returned list reports it.  Each level's entry carries the slice of
    the joint solution for the block that level determines.  Raises
    ValueError when phi_top does not satisfy the top condition.
    """
    dim = a.dim_v
    n = a.degree
    data = _overlap_data(a)
    # inner images and their relation coordinates (requires stage-1 point)
    inner_coords = []
    for x, cr, cl in data:
        img = apply_graded_side(phi_top, a.relation_basis, x, "right") - apply_graded_side(
            phi_top, a.relation_basis, x, "left"
        )
        inner_coords.append(a.relation_coords(img))

    k_count = len(a.relation_basis)
    sizes = [k_count * dim**j for j in range(n - 1)]
    offsets = [sum(sizes[:j]) for j in range(n - 1)]
    total = sum(sizes)
    eq_rows: list = []
    rhs: list = []
    levels = list(range(n - 1, 0, -1))
    sol = None
    for j in levels:
        off = offsets[j - 1]
        for (x, cr, cl), coords in zip(data, inner_coords):
            bm = _bracket_matrix(a, j - 1, cr, cl)
            if j == n - 1:
                const_vec = phi_top.apply_coords(coords).to_degree_vector(j)
            for i in range(dim**j):
                row = [ZERO] * total
                for c in range(sizes[j - 1]):
                    row[off + c] = bm.data[i][c]
                if j == n - 1:
                    rhs.append(-const_vec[i])
                else:
                    # the phi_j term, linear in the unknown degree-j block
                    offj = offsets[j]
                    for k in range(k_count):
                        row[offj + k * dim**j + i] += coords[k]
                    rhs.append(ZERO)
                eq_rows.append(row)
        if j == 1:
            # fold in the scalar condition: phi_0 kills every inner image
            for coords in inner_coords:
                row = [ZERO] * total
                for k in range(k_count):
                    row[offsets[0] + k] += coords[k]
                eq_rows.append(row)
                rhs.append(ZERO)
        sol = solve_affine(Matrix.from_rows(eq_rows), tuple(rhs)) if eq_rows else None
        if eq_rows and sol is None:
            return [StageSolution(f"level{j}", Subspace.zero(sizes[j - 1]), None, False)]

    def block_slice(j: int) -> StageSolution:
        off, size = offsets[j], sizes[j]
        if sol is None:
            return StageSolution(f"level{j + 1}", Subspace.full(size), (ZERO,) * size, True)
        particular = sol.particular[off : off + size]
        params = Subspace.from_spanning(
            [row[off : off + size] for row in sol.homogeneous.basis], size
        )
        return StageSolution(f"level{j + 1}", params, particular, True)

    solutions = [block_slice(j - 1) for j in levels]
    low = solutions[-1] if solutions else StageSolution("level1", Subspace.zero(0), None, True)
    solutions.append(StageSolution("level0", low.parameters, low.particular, True))
    return solutions


@dataclass(frozen=True)
class FamilyComparison:
    family_dim: int
    solution_dim: int
    family_in_solutions: bool
    solutions_in_family: bool

    @property
    def equal(self) -> bool:
        return self.family_in_solutions and self.solutions_in_family


def family_equals_solutions(
    a: AlgebraPresentation, family_generators: Sequence
) -> FamilyComparison:
    """Two-sided inclusion between the stage-1 solution space and the span
    of a parametrized family, given by generator coefficient vectors (or
    graded maps) of the top-degree block."""
    vectors = [
        flatten_graded_map(g) if isinstance(g, GradedMap) else tuple(g)
        for g in family_generators
    ]
    stage1 = solve_stage1(a)
    sols = stage1.parameters
    family = Subspace.from_spanning(vectors, sols.ambient_dim)
    forward = all(sols.contains(v) for v in vectors)
    backward = all(family.contains(row) for row in sols.basis)
    return FamilyComparison(family.dim, sols.dim, forward, backward)
