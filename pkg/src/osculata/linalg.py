"""Exact rational dense linear algebra for span and dimension arguments.

Every subspace of Q^m is stored through its reduced row echelon basis
(leading ones, zeroes above and below each pivot).  That basis is unique
per subspace, so `Subspace` equality is genuine subspace equality and any
serialized output is byte-stable.  No floating point is involved anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

Vector = tuple
Matrix = list  # list of row sequences


def _as_rows(rows: Sequence[Sequence]) -> list[list[Fraction]]:
    out = [[Fraction(x) for x in row] for row in rows]
    if out:
        width = len(out[0])
        if any(len(r) != width for r in out):
            raise ValueError("ragged rows: all rows must have the same length")
    return out


def rref(rows: Sequence[Sequence]) -> tuple[list[Vector], list[int]]:
    """Reduced row echelon form: returns (nonzero rows, pivot columns)."""
    m = _as_rows(rows)
    if not m:
        return [], []
    ncols = len(m[0])
    pivots: list[int] = []
    rank = 0
    for col in range(ncols):
        pivot_row = next((i for i in range(rank, len(m)) if m[i][col]), None)
        if pivot_row is None:
            continue
        m[rank], m[pivot_row] = m[pivot_row], m[rank]
        inv = m[rank][col]
        m[rank] = [x / inv for x in m[rank]]
        for i in range(len(m)):
            if i != rank and m[i][col]:
                f = m[i][col]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        pivots.append(col)
        rank += 1
        if rank == len(m):
            break
    return [tuple(r) for r in m[:rank]], pivots


def matrix_rank(rows: Sequence[Sequence]) -> int:
    rows = [r for r in rows]
    if not rows or not len(rows[0]):
        return 0
    return len(rref(rows)[0])


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^m held as its canonical echelon basis.

    A zero-dimensional subspace has an empty basis but keeps an explicit
    ambient dimension.
    """

    ambient_dim: int
    basis: tuple[Vector, ...]

    def __post_init__(self):
        if self.ambient_dim < 1:
            raise ValueError("ambient dimension must be >= 1")
        for row in self.basis:
            if len(row) != self.ambient_dim:
                raise ValueError("basis vector length does not match ambient dimension")

    @property
    def dim(self) -> int:
        return len(self.basis)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        rows = []
        for i in range(ambient_dim):
            row = [Fraction(0)] * ambient_dim
            row[i] = Fraction(1)
            rows.append(tuple(row))
        return cls(ambient_dim, tuple(rows))

    def contains(self, v: Sequence) -> bool:
        return not any(quotient_reduce(v, self))


def _pivot_columns(basis: Sequence[Vector]) -> list[int]:
    return [next(i for i, x in enumerate(row) if x) for row in basis]


def row_space(rows: Sequence[Sequence]) -> Subspace:
    """Canonical echelon basis of the span of the given rows."""
    m = _as_rows(rows)
    if not m:
        raise ValueError("row_space needs at least one row")
    basis, _ = rref(m)
    return Subspace(len(m[0]), tuple(basis))


def annihilator(s: Subspace) -> Subspace:
    """All functionals vanishing on s, identified with vectors in Q^m."""
    m = s.ambient_dim
    if s.dim == 0:
        return Subspace.full(m)
    pivots = _pivot_columns(s.basis)
    free = [c for c in range(m) if c not in pivots]
    if not free:
        return Subspace.zero(m)
    kernel = []
    for f in free:
        vec = [Fraction(0)] * m
        vec[f] = Fraction(1)
        for j, pc in enumerate(pivots):
            vec[pc] = -s.basis[j][f]
        kernel.append(vec)
    return row_space(kernel)


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    stacked = list(a.basis) + list(b.basis)
    if not stacked:
        return Subspace.zero(a.ambient_dim)
    return row_space(stacked)


def intersection_dim(a: Subspace, b: Subspace) -> int:
    if a.ambient_dim != b.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    return a.dim + b.dim - subspace_sum(a, b).dim


def quotient_reduce(v: Sequence, s: Subspace) -> Vector:
    """Canonical representative of v modulo s.

    Subtracts the echelon-pivot projection onto s, so the result has zero
    entries in every pivot column of s; it is the zero vector iff v is in s.
    """
    if len(v) != s.ambient_dim:
        raise ValueError("vector length does not match ambient dimension")
    out = [Fraction(x) for x in v]
    for row, pc in zip(s.basis, _pivot_columns(s.basis)):
        f = out[pc]
        if f:
            out = [a - f * b for a, b in zip(out, row)]
    return tuple(out)
