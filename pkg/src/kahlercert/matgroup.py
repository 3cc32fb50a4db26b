"""Finite integer matrix groups, group averaging and invariant forms.

Forms act by congruence: a matrix ``F`` is invariant under ``g`` when
``g.T @ F @ g == F``.  Coordinates of a form are its entries over the strict
upper triangle (alternating) or the upper triangle with the diagonal
(symmetric), listed row by row.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Sequence

from .errors import DimensionMismatch, NonIntegral, NonUnimodular, OrderExceeded
from .exactlin import (
    RationalMatrix,
    as_rational_matrix,
    det,
    kernel_basis,
    ldlt_signature,
)

FormKind = Literal["symmetric", "alternating"]

DEFAULT_MAX_ORDER = 20000


@dataclass(frozen=True, eq=False)
class FiniteMatrixGroup:
    """A finite subgroup of GL(n, Z) with its full element list.

    ``elements[0]`` is the identity; the rest follow breadth-first order.
    """

    dimension: int
    generators: tuple[RationalMatrix, ...]
    elements: tuple[RationalMatrix, ...]
    name: str | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, m) -> bool:
        return as_rational_matrix(m) in self._element_set

    @property
    def _element_set(self) -> frozenset:
        cached = self.__dict__.get("_elset")
        if cached is None:
            cached = frozenset(self.elements)
            object.__setattr__(self, "_elset", cached)
        return cached

    def conjugate(self, u, name: str | None = None) -> "FiniteMatrixGroup":
        """The group ``u^-1 G u`` for a unimodular integer ``u``."""
        from .exactlin import inverse

        u = as_rational_matrix(u)
        ui = inverse(u)
        gens = [ui @ g @ u for g in self.generators]
        return close_group(gens, max_order=max(self.order, 1), name=name or self.name)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<FiniteMatrixGroup{label} n={self.dimension} order={self.order}>"


@dataclass(frozen=True, eq=False)
class BilinearForm:
    """A symmetric or alternating rational bilinear form ``x.T @ matrix @ y``.

    When ``invariant_under`` is set the congruence invariance under every
    generator is checked at construction.
    """

    matrix: RationalMatrix
    kind: FormKind
    invariant_under: FiniteMatrixGroup | None = field(default=None, repr=False)

    def __post_init__(self):
        m = as_rational_matrix(self.matrix)
        object.__setattr__(self, "matrix", m)
        if not m.is_square:
            raise DimensionMismatch("bilinear form matrix must be square")
        if self.kind == "alternating":
            if not m.is_alternating():
                raise ValueError("matrix is not alternating")
        elif self.kind == "symmetric":
            if not m.is_symmetric():
                raise ValueError("matrix is not symmetric")
        else:
            raise ValueError(f"unknown form kind {self.kind!r}")
        if self.invariant_under is not None and not is_invariant(self.invariant_under, m):
            raise ValueError("form is not invariant under the given group")

    @property
    def dimension(self) -> int:
        return self.matrix.nrows

    def __eq__(self, other):
        if not isinstance(other, BilinearForm):
            return NotImplemented
        return self.kind == other.kind and self.matrix == other.matrix

    def __hash__(self):
        return hash((self.kind, self.matrix))


def _int_matmul(a: tuple, b: tuple) -> tuple:
    cols = tuple(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(r, c)) for c in cols) for r in a)


def close_group(
    generators: Sequence,
    max_order: int = DEFAULT_MAX_ORDER,
    name: str | None = None,
) -> FiniteMatrixGroup:
    """Enumerate the group generated by integer unimodular matrices.

    Breadth-first from the identity; each dequeued element is multiplied on
    the right by the generators in index order and new products are appended.

    Raises:
        OrderExceeded: more than ``max_order`` distinct elements were found.
        NonIntegral, NonUnimodular, DimensionMismatch: invalid generators.
    """
    gens = [as_rational_matrix(g) for g in generators]
    if not gens:
        raise ValueError("at least one generator is required")
    n = gens[0].nrows
    for g in gens:
        if g.shape != (n, n):
            raise DimensionMismatch(f"generator of shape {g.shape}, expected {(n, n)}")
        if not g.is_integral():
            raise NonIntegral("generators must have integer entries")
        if abs(det(g)) != 1:
            raise NonUnimodular("generators must have determinant +-1")

    int_gens = [tuple(tuple(x.numerator for x in r) for r in g.rows) for g in gens]
    ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
    seen = {ident}
    order = [ident]
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for g in int_gens:
            y = _int_matmul(x, g)
            if y not in seen:
                if len(order) >= max_order:
                    raise OrderExceeded(max_order)
                seen.add(y)
                order.append(y)
                queue.append(y)

    elements = tuple(RationalMatrix(r) for r in order)
    return FiniteMatrixGroup(dimension=n, generators=tuple(gens), elements=elements, name=name)


def is_invariant(G: FiniteMatrixGroup, F) -> bool:
    """Exact congruence invariance; checking the generators suffices."""
    F = as_rational_matrix(F)
    return all(g.T @ F @ g == F for g in G.generators)


def reynolds_average(G: FiniteMatrixGroup, F) -> RationalMatrix:
    """``(1/|G|) * sum_g g.T @ F @ g``, exactly invariant under ``G``."""
    F = as_rational_matrix(F)
    if F.shape != (G.dimension, G.dimension):
        raise DimensionMismatch(f"form of shape {F.shape} for a group of dimension {G.dimension}")
    total = RationalMatrix.zeros(G.dimension)
    for g in G.elements:
        total = total + g.T @ F @ g
    return total / G.order


def form_coordinates(kind: FormKind, n: int) -> list[tuple[int, int]]:
    """Index pairs ``(i, j)`` used as coordinates of a form of the given kind."""
    off = 1 if kind == "alternating" else 0
    return [(i, j) for i in range(n) for j in range(i + off, n)]


def form_from_coordinates(kind: FormKind, n: int, coords: Sequence) -> RationalMatrix:
    sign = -1 if kind == "alternating" else 1
    rows = [[Fraction(0)] * n for _ in range(n)]
    for (i, j), c in zip(form_coordinates(kind, n), coords):
        c = Fraction(c)
        rows[i][j] = c
        if i != j:
            rows[j][i] = sign * c
    return RationalMatrix(rows)


def coordinates_of(kind: FormKind, F) -> tuple[Fraction, ...]:
    F = as_rational_matrix(F)
    return tuple(F[i, j] for i, j in form_coordinates(kind, F.nrows))


def invariant_form_space(G: FiniteMatrixGroup, kind: FormKind) -> list[BilinearForm]:
    """Exact basis of the ``G``-invariant forms of the given kind.

    Solves ``g.T F g - F = 0`` for every generator over the free coordinates.
    Basis vectors are rescaled to primitive integer matrices.
    """
    n = G.dimension
    idx = form_coordinates(kind, n)
    if not idx:
        return []
    unit_forms = []
    for k in range(len(idx)):
        e = [0] * len(idx)
        e[k] = 1
        unit_forms.append(form_from_coordinates(kind, n, e))

    equations: list[list[Fraction]] = []
    for g in G.generators:
        images = [coordinates_of(kind, g.T @ E @ g - E) for E in unit_forms]
        # one row per coordinate of the residual, one column per unknown
        equations.extend([list(col) for col in zip(*images)])

    if equations:
        basis = kernel_basis(RationalMatrix(equations))
    else:
        basis = [tuple(Fraction(int(i == k)) for i in range(len(idx))) for k in range(len(idx))]

    forms = []
    for v in basis:
        F = form_from_coordinates(kind, n, v).primitive()
        forms.append(BilinearForm(F, kind, invariant_under=G))
    return forms


def invariant_positive_form(G: FiniteMatrixGroup) -> BilinearForm:
    """Integral invariant inner product ``S = sum_g g.T @ g``.

    Positive definiteness is certified by exact inertia.
    """
    n = G.dimension
    S = RationalMatrix.zeros(n)
    for g in G.elements:
        S = S + g.T @ g
    pos, _, _ = ldlt_signature(S)
    assert pos == n, "sum of Gram matrices must be positive definite"
    return BilinearForm(S, "symmetric", invariant_under=G)


def commutant_basis(G: FiniteMatrixGroup) -> list[RationalMatrix]:
    """Exact basis of the matrices ``X`` with ``g X = X g`` for all generators."""
    n = G.dimension
    units = []
    for k in range(n * n):
        rows = [[0] * n for _ in range(n)]
        rows[k // n][k % n] = 1
        units.append(RationalMatrix(rows))
    equations = []
    for g in G.generators:
        images = [g @ E - E @ g for E in units]
        flat = [[x for r in im.rows for x in r] for im in images]
        equations.extend([list(col) for col in zip(*flat)])
    basis = kernel_basis(RationalMatrix(equations))
    return [RationalMatrix([v[i * n : (i + 1) * n] for i in range(n)]).primitive() for v in basis]
