"""Jet tables and osculating towers at chart points.

The jet table at a point holds the divided-power derivative rows of the
chart map, keyed by multi-index in the fixed graded order.  The row space
of all rows of order <= k is the deprojectivized order-k osculating space;
dimensions are reported projectively (``dims[k]`` is that rank minus one).
Conormal ranks count the independent hyperplanes through each osculating
space, so ``conormal_ranks[k] == ambient_dim - dims[k]`` always.

Towers are computed from the unnormalized affine-cone lift.  Rescaling
every coordinate by a function that is nonzero at the point rewrites each
row as a triangular combination of lower-order rows, so the spans (and
everything derived from them) do not change; the test suite exercises
this invariance.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .errors import InternalInvariantError, PointError, StabilizationNotReached
from .linalg import Subspace, annihilator, row_space
from .polyjet import indices_of_degree, indices_up_to
from .variety import ChartPoint, VarietySpec


class JetTable:
    """Derivative rows of a chart map at one point, up to a fixed order.

    Immutable by convention; `extend` returns a new table sharing the rows
    already computed.
    """

    __slots__ = ("spec", "point", "order", "rows")

    def __init__(self, spec: VarietySpec, point: ChartPoint, order: int, rows: dict):
        self.spec = spec
        self.point = point
        self.order = order
        self.rows = rows

    def row(self, p) -> tuple:
        return self.rows[p]

    def rows_up_to(self, order: int) -> list[tuple]:
        """Rows of total order <= order, in the fixed graded order."""
        if order > self.order:
            raise ValueError(f"table holds order {self.order}, asked for {order}")
        return [self.rows[p] for p in indices_up_to(self.spec.nparams, order)]

    def extend(self, order: int) -> "JetTable":
        if order <= self.order:
            return self
        rows = dict(self.rows)
        x = self.point.coords
        for d in range(self.order + 1, order + 1):
            for p in indices_of_degree(self.spec.nparams, d):
                rows[p] = tuple(c.hasse_derivative(p).evaluate(x) for c in self.spec.coords)
        return JetTable(self.spec, self.point, order, rows)


def jet_table(spec: VarietySpec, point: ChartPoint, order: int) -> JetTable:
    """All derivative rows of total order <= order at the point, exact."""
    if order < 0:
        raise ValueError("jet order must be >= 0")
    x = point.coords
    rows = {
        p: tuple(c.hasse_derivative(p).evaluate(x) for c in spec.coords)
        for p in indices_up_to(spec.nparams, order)
    }
    return JetTable(spec, point, order, rows)


class OsculatingTower:
    """Osculating spaces of all orders up to ``order`` at one point.

    ``pivots[k]`` lists the multi-indices whose rows were kept by the
    incremental elimination, i.e. a jet-row basis of ``spaces[k]``.
    """

    __slots__ = ("spec", "point", "order", "dims", "conormal_ranks", "spaces", "pivots", "table")

    def __init__(self, spec, point, order, dims, conormal_ranks, spaces, pivots, table):
        self.spec = spec
        self.point = point
        self.order = order
        self.dims = dims
        self.conormal_ranks = conormal_ranks
        self.spaces = spaces
        self.pivots = pivots
        self.table = table


def osculating_tower(
    spec: VarietySpec, point: ChartPoint, order: int, table: JetTable | None = None
) -> OsculatingTower:
    if order < 0:
        raise ValueError("tower order must be >= 0")
    table = table.extend(order) if table is not None else jet_table(spec, point, order)
    n = spec.nparams
    r = spec.ambient_dim

    echelon: list[tuple[list[Fraction], int]] = []  # (row, pivot column), forward form
    pivot_indices: list[tuple] = []
    raw_rows: list[tuple] = []
    dims: list[int] = []
    spaces: list[Subspace] = []
    pivots: list[tuple] = []
    for k in range(order + 1):
        for p in indices_of_degree(n, k):
            row = table.rows[p]
            raw_rows.append(row)
            reduced = list(row)
            for erow, ecol in echelon:
                if reduced[ecol]:
                    f = reduced[ecol] / erow[ecol]
                    reduced = [a - f * b for a, b in zip(reduced, erow)]
            lead = next((i for i, x in enumerate(reduced) if x), None)
            if lead is not None:
                echelon.append((reduced, lead))
                pivot_indices.append(p)
        dims.append(len(echelon) - 1)
        spaces.append(row_space(raw_rows))
        pivots.append(tuple(pivot_indices))

    if dims[0] != 0:
        raise PointError("the chart map vanishes at the point; validate the point first")
    if order >= 1 and dims[1] != n:
        raise PointError("non-immersive point: order-1 jet rank is below nparams + 1")
    plateau = None
    for k in range(1, order + 1):
        if plateau is None and dims[k] == dims[k - 1]:
            plateau = dims[k]
        elif plateau is not None and dims[k] != plateau:
            raise InternalInvariantError(
                f"osculating dimensions resumed growing after a plateau: {dims}"
            )
    if any(t > r for t in dims):
        raise InternalInvariantError(f"osculating dimension exceeds ambient dimension: {dims}")

    return OsculatingTower(
        spec,
        point,
        order,
        tuple(dims),
        tuple(r - t for t in dims),
        tuple(spaces),
        tuple(pivots),
        table,
    )


def stabilization(
    spec: VarietySpec,
    point: ChartPoint,
    max_order: int,
    tower: OsculatingTower | None = None,
) -> tuple[int, Subspace]:
    """First order m whose osculating space already equals the next one,
    together with the space of linear forms vanishing on it.

    A nonzero second component W means the whole variety lies in the
    proper linear subspace cut out by W.
    """
    if max_order < 1:
        raise ValueError("max_order must be >= 1")
    if tower is None or tower.order < max_order:
        table = tower.table if tower is not None else None
        tower = osculating_tower(spec, point, max_order, table=table)
    for m in range(max_order):
        if tower.dims[m] == tower.dims[m + 1]:
            return m, annihilator(tower.spaces[m])
    raise StabilizationNotReached(max_order)
