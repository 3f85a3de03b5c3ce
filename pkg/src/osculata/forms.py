"""Fundamental-form linear systems and their multilinear avatars.

The order-k fundamental form system at a point collects, for each
functional vanishing on the order-(k-1) osculating space, the degree-k
form

    G(S) = sum over |p| = k of  <functional, jet row at p> * S^p

in the tangent variables S_1..S_n.  The span of these forms measures how
the order-k jet sticks out of the order-(k-1) osculating space: its
dimension always equals dims[k] - dims[k-1], and the system is zero
exactly when the tower plateaus at k.

Coefficients carry no extra factorials: the divided-power normalization
of the jet rows already absorbs them.  `polarize` recovers the symmetric
multilinear form from diagonal values by the alternating-sum identity and
divides by k!, which is lossless over the rationals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, combinations_with_replacement
from typing import Sequence

from .errors import InternalInvariantError
from .jets import OsculatingTower, osculating_tower
from .linalg import annihilator, matrix_rank, quotient_reduce
from .polyjet import MultiPoly, indices_of_degree
from .variety import ChartPoint, VarietySpec


@dataclass(frozen=True)
class FormSystem:
    """Degree-k forms in the tangent variables, one per conormal functional."""

    degree: int
    nvars: int
    forms: tuple
    point: ChartPoint
    annihilators: tuple

    @property
    def is_zero(self) -> bool:
        return all(f.is_zero() for f in self.forms)


@dataclass(frozen=True)
class SymmetricForm:
    """The symmetric multilinear form underlying a degree-k system, stored
    as quotient representatives indexed by sorted tangent-basis tuples."""

    degree: int
    nvars: int
    values: dict

    def value(self, indices: Sequence[int]) -> tuple:
        if len(indices) != self.degree:
            raise ValueError(f"expected {self.degree} indices, got {len(indices)}")
        return self.values[tuple(sorted(indices))]


def conormal_basis(tower: OsculatingTower, k: int) -> list[tuple]:
    """Canonical basis of the functionals vanishing on the order-(k-1)
    osculating space; empty when that space already fills the ambient."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if k > tower.order:
        raise ValueError(f"tower holds order {tower.order}, asked for {k}")
    return list(annihilator(tower.spaces[k - 1]).basis)


def fundamental_form_system(
    spec: VarietySpec, x: ChartPoint, k: int, tower: OsculatingTower | None = None
) -> FormSystem:
    if k < 1:
        raise ValueError("k must be >= 1")
    if tower is None or tower.order < k:
        table = tower.table if tower is not None else None
        tower = osculating_tower(spec, x, k, table=table)
    functionals = conormal_basis(tower, k)
    n = spec.nparams
    forms = []
    for ell in functionals:
        terms = {}
        for p in indices_of_degree(n, k):
            row = tower.table.rows[p]
            c = sum((a * b for a, b in zip(ell, row)), Fraction(0))
            if c:
                terms[p] = c
        forms.append(MultiPoly(n, terms))
    fs = FormSystem(k, n, tuple(forms), x, tuple(functionals))
    expected = tower.dims[k] - tower.dims[k - 1]
    if form_rank(fs) != expected:
        raise InternalInvariantError(
            f"form system rank {form_rank(fs)} != osculating dimension jump {expected}"
        )
    return fs


def form_rank(fs: FormSystem) -> int:
    """Dimension of the linear span of the forms."""
    if not fs.forms:
        return 0
    monomials = indices_of_degree(fs.nvars, fs.degree)
    rows = [[f.terms.get(p, Fraction(0)) for p in monomials] for f in fs.forms]
    return matrix_rank(rows)


def evaluate_form(fs: FormSystem, v: Sequence) -> tuple:
    """Diagonal value of the system at a tangent vector, one coordinate per
    conormal functional."""
    if len(v) != fs.nvars:
        raise ValueError(f"expected {fs.nvars} components, got {len(v)}")
    vals = [Fraction(c) for c in v]
    return tuple(f.evaluate(vals) for f in fs.forms)


def polarize(fs: FormSystem, vectors: Sequence[Sequence]) -> tuple:
    """Symmetric multilinear value at k tangent vectors, recovered from the
    diagonal by the alternating-sum identity divided by k factorial."""
    k = fs.degree
    if len(vectors) != k:
        raise ValueError(f"expected {k} tangent vectors, got {len(vectors)}")
    vs = []
    for v in vectors:
        if len(v) != fs.nvars:
            raise ValueError(f"expected {fs.nvars} components, got {len(v)}")
        vs.append([Fraction(c) for c in v])
    total = [Fraction(0)] * len(fs.forms)
    for size in range(1, k + 1):
        sign = 1 if (k - size) % 2 == 0 else -1
        for subset in combinations(range(k), size):
            w = [sum(vs[i][j] for i in subset) for j in range(fs.nvars)]
            for m, val in enumerate(evaluate_form(fs, w)):
                total[m] += sign * val
    kfac = math.factorial(k)
    return tuple(t / kfac for t in total)


def symmetric_form(
    spec: VarietySpec, x: ChartPoint, k: int, tower: OsculatingTower | None = None
) -> SymmetricForm:
    """Quotient-space realization of the degree-k multilinear form.

    The entry at a sorted index tuple is the jet row of the matching
    multi-index, reduced modulo the order-(k-1) osculating space and
    scaled by p!/k! so diagonal values match `evaluate_form` through the
    conormal pairing.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if tower is None or tower.order < k:
        table = tower.table if tower is not None else None
        tower = osculating_tower(spec, x, k, table=table)
    n = spec.nparams
    below = tower.spaces[k - 1]
    kfac = math.factorial(k)
    values = {}
    for tup in combinations_with_replacement(range(n), k):
        p = [0] * n
        for i in tup:
            p[i] += 1
        p = tuple(p)
        pfac = 1
        for e in p:
            pfac *= math.factorial(e)
        scale = Fraction(pfac, kfac)
        reduced = quotient_reduce(tower.table.rows[p], below)
        values[tup] = tuple(scale * c for c in reduced)
    return SymmetricForm(k, n, values)
