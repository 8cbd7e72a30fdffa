"""Tensor powers of V with word-indexed bases and the filtration F^n.

A word is a tuple of generator indices; the words of degree n enumerate
the canonical basis of V^(tensor n) in lexicographic order, fixed once
and used globally so canonical subspace forms are comparable across
modules.  Filtered coordinates list degrees in increasing order (degree 0
first), lexicographic within each degree.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, Mapping, Optional, Sequence

from .linalg import Matrix, Subspace, Vector, solve_affine
from .rationals import ONE, ZERO, Q, rational

Word = tuple  # tuple of generator indices


def words(dim_v: int, degree: int) -> Iterator[Word]:
    """All words of the given degree in lexicographic order."""
    return product(range(dim_v), repeat=degree)


def word_index(word: Word, dim_v: int) -> int:
    """Position of ``word`` in the lexicographic basis of its tensor power."""
    idx = 0
    for letter in word:
        if not 0 <= letter < dim_v:
            raise ValueError(f"letter {letter} out of range for dim_v={dim_v}")
        idx = idx * dim_v + letter
    return idx


def index_word(degree: int, idx: int, dim_v: int) -> Word:
    """Inverse of :func:`word_index` at a fixed degree."""
    if not 0 <= idx < dim_v**degree:
        raise ValueError(f"index {idx} out of range for degree {degree}")
    letters = []
    for _ in range(degree):
        idx, r = divmod(idx, dim_v)
        letters.append(r)
    return tuple(reversed(letters))


def filtered_dim(dim_v: int, max_degree: int) -> int:
    """Dimension of F^n = direct sum of tensor powers 0..max_degree."""
    return sum(dim_v**i for i in range(max_degree + 1))


def filtered_offset(dim_v: int, degree: int) -> int:
    """Offset of the degree block inside filtered coordinates."""
    return sum(dim_v**i for i in range(degree))


def filtered_index(word: Word, dim_v: int) -> int:
    return filtered_offset(dim_v, len(word)) + word_index(word, dim_v)


@dataclass(frozen=True)
class TensorElement:
    """Element of the filtered free algebra, as sparse word -> coefficient.

    Mixed degrees are allowed (and essential: the deformed relations
    x - phi(x) live in F^N, not in a single tensor power).  Zero
    coefficients are never stored.
    """

    dim_v: int
    terms: Mapping

    @classmethod
    def from_terms(cls, dim_v: int, terms: Mapping) -> "TensorElement":
        clean = {}
        for word, coeff in terms.items():
            c = rational(coeff)
            if c != 0:
                for letter in word:
                    if not 0 <= letter < dim_v:
                        raise ValueError(f"letter {letter} out of range")
                clean[tuple(word)] = c
        return cls(dim_v, clean)

    @classmethod
    def zero(cls, dim_v: int) -> "TensorElement":
        return cls(dim_v, {})

    @classmethod
    def unit(cls, dim_v: int) -> "TensorElement":
        return cls(dim_v, {(): ONE})

    @classmethod
    def generator(cls, dim_v: int, i: int) -> "TensorElement":
        if not 0 <= i < dim_v:
            raise ValueError(f"generator index {i} out of range")
        return cls(dim_v, {(i,): ONE})

    def coefficient(self, word: Word) -> Q:
        return self.terms.get(tuple(word), ZERO)

    @property
    def max_degree(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def is_homogeneous(self, degree: int) -> bool:
        return all(len(w) == degree for w in self.terms)

    def degree_component(self, degree: int) -> "TensorElement":
        return TensorElement(
            self.dim_v, {w: c for w, c in self.terms.items() if len(w) == degree}
        )

    def __add__(self, other: "TensorElement") -> "TensorElement":
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            nc = terms.get(w, ZERO) + c
            if nc:
                terms[w] = nc
            else:
                terms.pop(w, None)
        return TensorElement(self.dim_v, terms)

    def __neg__(self) -> "TensorElement":
        return TensorElement(self.dim_v, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "TensorElement") -> "TensorElement":
        return self + (-other)

    def scale(self, factor) -> "TensorElement":
        f = rational(factor)
        if f == 0:
            return TensorElement.zero(self.dim_v)
        return TensorElement(self.dim_v, {w: f * c for w, c in self.terms.items()})

    def tensor(self, other: "TensorElement") -> "TensorElement":
        """Concatenation (tensor) product; bilinear and associative."""
        self._check(other)
        terms: dict = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                w = wa + wb
                nc = terms.get(w, ZERO) + ca * cb
                if nc:
                    terms[w] = nc
                else:
                    terms.pop(w, None)
        return TensorElement(self.dim_v, terms)

    def to_degree_vector(self, degree: int) -> Vector:
        """Coordinates of the pure degree component in V^(tensor degree)."""
        for w in self.terms:
            if len(w) != degree:
                raise ValueError("element is not homogeneous of the requested degree")
        vec = [ZERO] * self.dim_v**degree
        for w, c in self.terms.items():
            vec[word_index(w, self.dim_v)] = c
        return tuple(vec)

    def to_filtered_vector(self, max_degree: int) -> Vector:
        if self.max_degree > max_degree:
            raise ValueError("element exceeds the requested filtration level")
        vec = [ZERO] * filtered_dim(self.dim_v, max_degree)
        for w, c in self.terms.items():
            vec[filtered_index(w, self.dim_v)] = c
        return tuple(vec)

    @classmethod
    def from_degree_vector(cls, dim_v: int, degree: int, vec: Sequence) -> "TensorElement":
        terms = {}
        for w in words(dim_v, degree):
            c = rational(vec[word_index(w, dim_v)])
            if c != 0:
                terms[w] = c
        return cls(dim_v, terms)

    @classmethod
    def from_filtered_vector(cls, dim_v: int, max_degree: int, vec: Sequence) -> "TensorElement":
        terms = {}
        for deg in range(max_degree + 1):
            off = filtered_offset(dim_v, deg)
            for w in words(dim_v, deg):
                c = rational(vec[off + word_index(w, dim_v)])
                if c != 0:
                    terms[w] = c
        return cls(dim_v, terms)

    def _check(self, other: "TensorElement") -> None:
        if self.dim_v != other.dim_v:
            raise ValueError(f"dim_v mismatch: {self.dim_v} vs {other.dim_v}")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TensorElement)
            and self.dim_v == other.dim_v
            and dict(self.terms) == dict(other.terms)
        )


def commutator(a: TensorElement, b: TensorElement) -> TensorElement:
    return a.tensor(b) - b.tensor(a)


def anticommutator(a: TensorElement, b: TensorElement) -> TensorElement:
    return a.tensor(b) + b.tensor(a)


def side_tensor(sub: Subspace, dim_v: int, side: str, degree: Optional[int] = None) -> Subspace:
    """R (tensor) V or V (tensor) R: extend a pure-degree subspace one letter.

    ``sub`` must be a subspace of V^(tensor n) coordinates; the result
    lives in V^(tensor n+1).
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if degree is None:
        degree = _degree_of_ambient(sub.ambient_dim, dim_v)
    size = dim_v**degree
    if sub.ambient_dim != size:
        raise ValueError("subspace ambient is not a tensor power of the given dim_v")
    spanning = []
    for row in sub.basis:
        for lam in range(dim_v):
            vec = [ZERO] * (size * dim_v)
            for idx, c in enumerate(row):
                if c != 0:
                    if side == "right":
                        vec[idx * dim_v + lam] = c
                    else:
                        vec[lam * size + idx] = c
            spanning.append(vec)
    return Subspace.from_spanning(spanning, size * dim_v)


def _degree_of_ambient(ambient: int, dim_v: int) -> int:
    if dim_v < 2:
        raise ValueError("degree is ambiguous for dim_v < 2; pass it explicitly")
    degree = 0
    size = 1
    while size < ambient:
        size *= dim_v
        degree += 1
    if size != ambient:
        raise ValueError(f"ambient {ambient} is not a power of {dim_v}")
    return degree


@dataclass(frozen=True)
class GradedMap:
    """A linear map from relation coordinates into V^(tensor target_degree).

    ``matrix`` has one column per distinguished relation basis vector and
    one row per word of the target degree.  Which ordered basis the
    columns refer to is the owner's contract (see DeformationMap).
    """

    dim_v: int
    source_dim: int
    target_degree: int
    matrix: Matrix

    def __post_init__(self) -> None:
        expected_rows = self.dim_v**self.target_degree
        if self.matrix.rows != expected_rows or (
            self.matrix.rows and self.matrix.cols != self.source_dim
        ):
            raise ValueError(
                f"matrix shape {self.matrix.rows}x{self.matrix.cols} does not match "
                f"target {expected_rows} x source {self.source_dim}"
            )

    @classmethod
    def zero(cls, dim_v: int, source_dim: int, target_degree: int) -> "GradedMap":
        return cls(dim_v, source_dim, target_degree, Matrix.zeros(dim_v**target_degree, source_dim))

    @classmethod
    def from_images(cls, dim_v: int, target_degree: int, images: Sequence[TensorElement]) -> "GradedMap":
        cols = [img.to_degree_vector(target_degree) for img in images]
        rows = tuple(zip(*cols)) if cols else ()
        return cls(dim_v, len(images), target_degree, Matrix(rows))

    def apply_coords(self, coords: Sequence) -> TensorElement:
        vec = self.matrix.mat_vec(coords)
        return TensorElement.from_degree_vector(self.dim_v, self.target_degree, vec)

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in row) for row in self.matrix)


def side_decompose(
    x: TensorElement, relation_basis: Sequence[TensorElement], side: str
) -> Matrix:
    """Write x in R (tensor) V (side='right') or V (tensor) R (side='left').

    Returns the coefficient matrix c[k][lam] with
    x = sum c[k][lam] r_k (tensor) e_lam (right) or e_lam (tensor) r_k
    (left).  Raises ValueError when x is not in the stated subspace; this
    is the explicit change of basis the evaluation of phi (tensor) I
    requires.
    """
    if side not in ("left", "right"):
        raise ValueError("side must be 'left' or 'right'")
    if not relation_basis:
        if x.is_zero():
            return Matrix(())
        raise ValueError("nonzero element against an empty relation basis")
    dim_v = x.dim_v
    degree = relation_basis[0].max_degree
    target = degree + 1
    columns = []
    for r in relation_basis:
        e_r = r
        for lam in range(dim_v):
            e = TensorElement.generator(dim_v, lam)
            prod = e_r.tensor(e) if side == "right" else e.tensor(e_r)
            columns.append(prod.to_degree_vector(target))
    m = Matrix(tuple(zip(*columns)))
    sol = solve_affine(m, x.to_degree_vector(target))
    if sol is None:
        raise ValueError(f"element is not in the {side}-side relation product space")
    coeffs = sol.particular
    k = len(relation_basis)
    return Matrix(tuple(tuple(coeffs[i * dim_v + lam] for lam in range(dim_v)) for i in range(k)))


def apply_graded_side(
    phi: GradedMap,
    relation_basis: Sequence[TensorElement],
    x: TensorElement,
    side: str,
) -> TensorElement:
    """Evaluate phi (tensor) I (side='right') or I (tensor) phi (side='left').

    ``x`` must lie in R (tensor) V resp. V (tensor) R; it is first
    factorized against the relation basis (ValueError otherwise), then
    phi acts on the relation factor.
    """
    dim_v = x.dim_v
    coeffs = side_decompose(x, relation_basis, side)
    unit = [ZERO] * len(relation_basis)
    result = TensorElement.zero(dim_v)
    for k in range(len(relation_basis)):
        unit[k] = ONE
        image = phi.apply_coords(tuple(unit))
        unit[k] = ZERO
        for lam in range(dim_v):
            c = coeffs.data[k][lam]
            if c == 0:
                continue
            e = TensorElement.generator(dim_v, lam)
            piece = image.tensor(e) if side == "right" else e.tensor(image)
            result = result + piece.scale(c)
    return result
