"""Sampled numerical invariants and theorem checkers.

"Generic" data (sample points, tangent directions, osculating-space
combinations) is operationalized by seeded uniform integer sampling in
[-B, B]: rank-type invariants take the maximum over trials, intersection
dimensions the minimum (a special sample can only drop a rank or inflate
an intersection), and every reported entry carries a stability flag that
is true only when all trials agreed.  Degenerate draws that are never
generic are rejected and redrawn: coincident point pairs, the zero
direction, and osculating combinations that fall into the previous
osculating space.

All randomness is derived deterministically from the configured seed, so
identical inputs reproduce identical results byte for byte.  Trials are
independent pure computations; nothing here mutates shared state.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .errors import InternalInvariantError, PointError
from .forms import FormSystem, fundamental_form_system, polarize
from .jets import OsculatingTower, osculating_tower, stabilization
from .linalg import intersection_dim, matrix_rank, quotient_reduce, subspace_sum
from .polyjet import add_index, unit_index
from .variety import ChartPoint, VarietySpec, validate_point
from .errors import StabilizationNotReached

_MAX_DRAWS = 200


@dataclass(frozen=True)
class SamplerConfig:
    """Deterministic sampling policy: seed, trial count, coordinate bound."""

    seed: int
    trials: int = 3
    coord_bound: int = 10

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("trials must be >= 1")
        if self.coord_bound < 1:
            raise ValueError("coord_bound must be >= 1")

    def rng(self, label: str) -> random.Random:
        """Independent deterministic stream for one labelled task."""
        return random.Random(f"{self.seed}|{label}")


@dataclass(frozen=True)
class Sampled:
    """An integer invariant aggregated over trials, with per-trial values."""

    value: int
    trial_values: tuple
    stable: bool

    @classmethod
    def collect(cls, values: Sequence[int], pick: Callable) -> "Sampled":
        values = tuple(values)
        return cls(pick(values), values, len(set(values)) == 1)


# ---------------------------------------------------------------------------
# Sampling helpers
# ---------------------------------------------------------------------------


def sample_point(
    spec: VarietySpec, rng: random.Random, bound: int, attempts: int = _MAX_DRAWS
) -> ChartPoint:
    for _ in range(attempts):
        coords = [Fraction(rng.randint(-bound, bound)) for _ in range(spec.nparams)]
        try:
            return validate_point(spec, coords)
        except PointError:
            continue
    raise PointError(
        f"no valid chart point on {spec.name!r} after {attempts} draws; "
        "the chart may be degenerate"
    )


def sample_point_pair(spec, rng, bound) -> tuple[ChartPoint, ChartPoint]:
    x = sample_point(spec, rng, bound)
    for _ in range(_MAX_DRAWS):
        y = sample_point(spec, rng, bound)
        if y.coords != x.coords:
            return x, y
    raise PointError(f"could not sample two distinct points on {spec.name!r}")


def sample_direction(nvars: int, rng: random.Random, bound: int) -> tuple:
    for _ in range(_MAX_DRAWS):
        u = tuple(Fraction(rng.randint(-bound, bound)) for _ in range(nvars))
        if any(u):
            return u
    raise InternalInvariantError("sampling never produced a nonzero direction")


def _sample_osc_coeffs(tower: OsculatingTower, k: int, rng, bound) -> list[Fraction]:
    """Coefficients of a generic combination of the order-k jet basis.

    Draws lying in the order-(k-1) space are rejected whenever that space
    is strictly smaller (a generic element never falls there)."""
    pivots = tower.pivots[k]
    strictly_above = tower.dims[k] > tower.dims[k - 1]
    below = tower.spaces[k - 1]
    for _ in range(_MAX_DRAWS):
        cs = [Fraction(rng.randint(-bound, bound)) for _ in pivots]
        if not any(cs):
            continue
        if strictly_above:
            vec = _combine_rows(tower, pivots, cs)
            if not any(quotient_reduce(vec, below)):
                continue
        return cs
    raise InternalInvariantError("sampling never produced a generic osculating combination")


def _combine_rows(tower, pivots, cs) -> tuple:
    width = tower.spec.ambient_dim + 1
    acc = [Fraction(0)] * width
    for p, c in zip(pivots, cs):
        if c:
            row = tower.table.rows[p]
            acc = [a + c * b for a, b in zip(acc, row)]
    return tuple(acc)


# ---------------------------------------------------------------------------
# Directional derivative maps on osculating spaces
# ---------------------------------------------------------------------------


def f_map_direction(
    spec: VarietySpec,
    x: ChartPoint,
    k: int,
    u: Sequence,
    tower: OsculatingTower | None = None,
) -> list[tuple]:
    """Matrix of the direction-u derivative map on the order-k osculating
    space, modulo that space.

    One row per order-k pivot multi-index p (in the fixed order): the jet
    rows are differentiated through d/ds_i D_p = (p_i + 1) D_{p+e_i},
    combined along u, and reduced to the canonical quotient representative.
    Rows for pivots of order below k are always zero.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if len(u) != spec.nparams:
        raise ValueError(f"expected {spec.nparams} direction components, got {len(u)}")
    weights = [Fraction(c) for c in u]
    if tower is None or tower.order < k:
        table = tower.table if tower is not None else None
        tower = osculating_tower(spec, x, k, table=table)
    table = tower.table.extend(k + 1)
    space = tower.spaces[k]
    n = spec.nparams
    width = spec.ambient_dim + 1
    out = []
    for p in tower.pivots[k]:
        acc = [Fraction(0)] * width
        for i, w in enumerate(weights):
            if w:
                row = table.rows[add_index(p, unit_index(n, i))]
                scale = w * (p[i] + 1)
                acc = [a + scale * b for a, b in zip(acc, row)]
        out.append(quotient_reduce(acc, space))
    return out


def _directional_rank_once(spec, x, k, rng, bound, tower) -> int:
    u = sample_direction(spec.nparams, rng, bound)
    rank = matrix_rank(f_map_direction(spec, x, k, u, tower=tower))
    limit = tower.dims[k] - tower.dims[k - 1]
    if rank > limit:
        raise InternalInvariantError(
            f"direction-map rank {rank} exceeds osculating jump {limit}"
        )
    return rank


def theta_k(spec: VarietySpec, x: ChartPoint, k: int, sampler: SamplerConfig) -> Sampled:
    """Generic rank of the direction-derivative map on the order-k
    osculating space; maximum over sampled nonzero directions."""
    if k < 1:
        raise ValueError("k must be >= 1")
    tower = osculating_tower(spec, x, k + 1)
    vals = []
    for t in range(sampler.trials):
        rng = sampler.rng(f"theta/k={k}/trial={t}")
        vals.append(_directional_rank_once(spec, x, k, rng, sampler.coord_bound, tower))
    return Sampled.collect(vals, max)


def _tangent_rank_once(spec, x, k, rng, bound, tower) -> tuple[int, list[Fraction]]:
    """Rank of the tangent-direction map at one sampled osculating point.

    The point is a generic combination of the order-k jet basis; columns
    are its coordinate-direction derivatives reduced modulo the order-k
    space.  Returns the rank and the sampled coefficients."""
    cs = _sample_osc_coeffs(tower, k, rng, bound)
    table = tower.table.extend(k + 1)
    space = tower.spaces[k]
    n = spec.nparams
    width = spec.ambient_dim + 1
    cols = []
    for i in range(n):
        acc = [Fraction(0)] * width
        for p, c in zip(tower.pivots[k], cs):
            if c:
                row = table.rows[add_index(p, unit_index(n, i))]
                scale = c * (p[i] + 1)
                acc = [a + scale * b for a, b in zip(acc, row)]
        cols.append(quotient_reduce(acc, space))
    rank = matrix_rank(cols)
    limit = min(n, tower.dims[k + 1] - tower.dims[k])
    if rank > limit:
        raise InternalInvariantError(f"tangent-map rank {rank} exceeds bound {limit}")
    return rank, cs


def tangent_rank(spec: VarietySpec, x: ChartPoint, k: int, sampler: SamplerConfig) -> Sampled:
    """Generic rank of the derivative map restricted to one sampled point of
    the order-k osculating space; maximum over trials."""
    if k < 1:
        raise ValueError("k must be >= 1")
    tower = osculating_tower(spec, x, k + 1)
    vals = []
    for t in range(sampler.trials):
        rng = sampler.rng(f"tangent-rank/k={k}/trial={t}")
        rank, _ = _tangent_rank_once(spec, x, k, rng, sampler.coord_bound, tower)
        vals.append(rank)
    return Sampled.collect(vals, max)


# ---------------------------------------------------------------------------
# Pairwise and global invariants
# ---------------------------------------------------------------------------


def delta_k(spec: VarietySpec, k: int, sampler: SamplerConfig) -> Sampled:
    """Projective dimension of the intersection of the order-k osculating
    spaces at two sampled points (-1 for an empty intersection); minimum
    over trials, coincident pairs redrawn."""
    if k < 1:
        raise ValueError("k must be >= 1")
    vals = []
    for t in range(sampler.trials):
        rng = sampler.rng(f"delta/k={k}/trial={t}")
        x, y = sample_point_pair(spec, rng, sampler.coord_bound)
        tx = osculating_tower(spec, x, k)
        ty = osculating_tower(spec, y, k)
        d = intersection_dim(tx.spaces[k], ty.spaces[k]) - 1
        if not -1 <= d <= min(tx.dims[k], ty.dims[k]):
            raise InternalInvariantError(f"intersection dimension {d} out of range")
        vals.append(d)
    return Sampled.collect(vals, min)


@dataclass(frozen=True)
class TangentResult:
    """Dimension data of the order-k tangent variety."""

    k: int
    osc_dim: int  # generic order-k osculating dimension
    rank: Sampled  # rank of the derivative map at a sampled osculating point
    dim: Sampled  # dim of the order-k tangent variety
    defect: int  # expected dim (osc_dim + n) minus actual dim


def tangent_variety_dim(spec: VarietySpec, k: int, sampler: SamplerConfig) -> TangentResult:
    if k < 1:
        raise ValueError("k must be >= 1")
    ranks = []
    dims = []
    osc = []
    for t in range(sampler.trials):
        rng = sampler.rng(f"tangent/k={k}/trial={t}")
        x = sample_point(spec, rng, sampler.coord_bound)
        tower = osculating_tower(spec, x, k + 1)
        rank, _ = _tangent_rank_once(spec, x, k, rng, sampler.coord_bound, tower)
        ranks.append(rank)
        osc.append(tower.dims[k])
        dims.append(tower.dims[k] + rank)
    rank = Sampled.collect(ranks, max)
    dim = Sampled.collect(dims, max)
    defect = max(osc) + spec.nparams - dim.value
    return TangentResult(k, max(osc), rank, dim, defect)


@dataclass(frozen=True)
class SecantResult:
    """Secant-variety dimension estimated from tangent-space pairs."""

    dim_sec: Sampled
    delta_x: int  # 2n + 1 - dim_sec
    delta_1: Sampled  # intersection dimension from the same pairs


def secant_dim_terracini(spec: VarietySpec, sampler: SamplerConfig) -> SecantResult:
    n = spec.nparams
    sec_vals = []
    d1_vals = []
    for t in range(sampler.trials):
        rng = sampler.rng(f"secant/trial={t}")
        x, y = sample_point_pair(spec, rng, sampler.coord_bound)
        tx = osculating_tower(spec, x, 1)
        ty = osculating_tower(spec, y, 1)
        total = subspace_sum(tx.spaces[1], ty.spaces[1])
        dim_sec = total.dim - 1
        if dim_sec > min(2 * n + 1, spec.ambient_dim):
            raise InternalInvariantError(f"secant dimension {dim_sec} out of range")
        sec_vals.append(dim_sec)
        d1_vals.append(intersection_dim(tx.spaces[1], ty.spaces[1]) - 1)
    dim_sec = Sampled.collect(sec_vals, max)
    return SecantResult(dim_sec, 2 * n + 1 - dim_sec.value, Sampled.collect(d1_vals, min))


# ---------------------------------------------------------------------------
# Theorem checkers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class VanishingVerdict:
    """Audit record for the order-k vanishing statement: when the order-k
    osculating dimension equals theta_k + delta_k, the order-(k+2) system
    must vanish (the tower plateaus one step later)."""

    k: int
    osc_dim: int
    theta: Sampled
    delta: Sampled
    osc_dim_k1: int
    osc_dim_k2: int
    hypothesis_holds: bool
    conclusion_holds: bool
    theorem_respected: bool
    stable: bool


def vanishing_check(spec: VarietySpec, k: int, sampler: SamplerConfig) -> VanishingVerdict:
    if k < 1:
        raise ValueError("k must be >= 1")
    tks, tk1s, tk2s, thetas, deltas = [], [], [], [], []
    for t in range(sampler.trials):
        rng = sampler.rng(f"vanishing/k={k}/trial={t}")
        x = sample_point(spec, rng, sampler.coord_bound)
        tower = osculating_tower(spec, x, k + 2)
        tks.append(tower.dims[k])
        tk1s.append(tower.dims[k + 1])
        tk2s.append(tower.dims[k + 2])
        thetas.append(_directional_rank_once(spec, x, k, rng, sampler.coord_bound, tower))
        xp, yp = sample_point_pair(spec, rng, sampler.coord_bound)
        txp = osculating_tower(spec, xp, k)
        typ = osculating_tower(spec, yp, k)
        deltas.append(intersection_dim(txp.spaces[k], typ.spaces[k]) - 1)
    theta = Sampled.collect(thetas, max)
    delta = Sampled.collect(deltas, min)
    osc_dim, osc_k1, osc_k2 = max(tks), max(tk1s), max(tk2s)
    hypothesis = osc_dim == theta.value + delta.value
    conclusion = osc_k2 == osc_k1
    stable = (
        theta.stable
        and delta.stable
        and len(set(tks)) == 1
        and len(set(tk1s)) == 1
        and len(set(tk2s)) == 1
    )
    return VanishingVerdict(
        k,
        osc_dim,
        theta,
        delta,
        osc_k1,
        osc_k2,
        hypothesis,
        conclusion,
        (not hypothesis) or conclusion,
        stable,
    )


@dataclass(frozen=True)
class Tm06Verdict:
    """Audit record for: equal tangent and secant varieties force the
    third fundamental form to vanish."""

    dim_tau: Sampled
    dim_sec: Sampled
    osc_dim_2: int
    osc_dim_3: int
    hypothesis_holds: bool
    conclusion_holds: bool
    theorem_respected: bool
    stable: bool


def cor_tm06_check(spec: VarietySpec, sampler: SamplerConfig) -> Tm06Verdict:
    taus, secs, t2s, t3s = [], [], [], []
    for t in range(sampler.trials):
        rng = sampler.rng(f"tm06/trial={t}")
        x = sample_point(spec, rng, sampler.coord_bound)
        tower = osculating_tower(spec, x, 3)
        rank, _ = _tangent_rank_once(spec, x, 1, rng, sampler.coord_bound, tower)
        taus.append(tower.dims[1] + rank)
        t2s.append(tower.dims[2])
        t3s.append(tower.dims[3])
        xp, yp = sample_point_pair(spec, rng, sampler.coord_bound)
        txp = osculating_tower(spec, xp, 1)
        typ = osculating_tower(spec, yp, 1)
        secs.append(subspace_sum(txp.spaces[1], typ.spaces[1]).dim - 1)
    dim_tau = Sampled.collect(taus, max)
    dim_sec = Sampled.collect(secs, max)
    t2, t3 = max(t2s), max(t3s)
    hypothesis = dim_tau.value == dim_sec.value
    conclusion = t3 == t2
    stable = (
        dim_tau.stable and dim_sec.stable and len(set(t2s)) == 1 and len(set(t3s)) == 1
    )
    return Tm06Verdict(
        dim_tau,
        dim_sec,
        t2,
        t3,
        hypothesis,
        conclusion,
        (not hypothesis) or conclusion,
        stable,
    )


@dataclass(frozen=True)
class Tm07Verdict:
    """Audit record for the lower bound rank II >= min(codim, dim).

    The bound presumes the tangent variety fills its expected dimension
    and the variety spans the ambient space; neither hypothesis is fully
    machine-checkable here, so a degenerate tangent variety downgrades the
    verdict to advisory rather than claiming refutation."""

    rank_ii: int
    bound: int
    satisfied: bool
    advisory: bool
    dim_tau: Sampled
    stable: bool


def cor_tm07_check(spec: VarietySpec, sampler: SamplerConfig) -> Tm07Verdict:
    n = spec.nparams
    ranks, taus = [], []
    for t in range(sampler.trials):
        rng = sampler.rng(f"tm07/trial={t}")
        x = sample_point(spec, rng, sampler.coord_bound)
        tower = osculating_tower(spec, x, 2)
        ranks.append(tower.dims[2] - tower.dims[1])
        rank, _ = _tangent_rank_once(spec, x, 1, rng, sampler.coord_bound, tower)
        taus.append(tower.dims[1] + rank)
    rank_ii = max(ranks)
    dim_tau = Sampled.collect(taus, max)
    bound = min(spec.ambient_dim - n, n)
    return Tm07Verdict(
        rank_ii,
        bound,
        rank_ii >= bound,
        dim_tau.value < 2 * n,
        dim_tau,
        len(set(ranks)) == 1 and dim_tau.stable,
    )


@dataclass(frozen=True)
class P09Verdict:
    """Consistency record: the rank of the derivative map at a sampled
    tangent point must equal the rank of the second fundamental form
    contracted with the matching tangent direction."""

    rank_map: Sampled
    rank_polarized: Sampled
    consistent: bool
    stable: bool


def cor_p09_consistency(spec: VarietySpec, sampler: SamplerConfig) -> P09Verdict:
    n = spec.nparams
    map_ranks, pol_ranks = [], []
    consistent = True
    for t in range(sampler.trials):
        rng = sampler.rng(f"p09/trial={t}")
        x = sample_point(spec, rng, sampler.coord_bound)
        tower = osculating_tower(spec, x, 2)
        rank_map, cs = _tangent_rank_once(spec, x, 1, rng, sampler.coord_bound, tower)
        # order-1 pivots are (0, e_1, ..., e_n); the tangent direction of
        # the sampled osculating point is the e_i coefficient vector
        w = cs[1:]
        fs = fundamental_form_system(spec, x, 2, tower=tower)
        rows = []
        for i in range(n):
            e = [Fraction(0)] * n
            e[i] = Fraction(1)
            rows.append(polarize(fs, (e, w)))
        rank_pol = matrix_rank(rows)
        map_ranks.append(rank_map)
        pol_ranks.append(rank_pol)
        consistent = consistent and rank_map == rank_pol
    rank_map = Sampled.collect(map_ranks, max)
    rank_pol = Sampled.collect(pol_ranks, max)
    return P09Verdict(rank_map, rank_pol, consistent, rank_map.stable and rank_pol.stable)


# ---------------------------------------------------------------------------
# Full per-variety report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StabilizationSummary:
    order: int
    span_corank: int  # number of independent linear forms vanishing on the variety
    span_dim: int  # projective dimension of the linear span
    annihilator_basis: tuple


@dataclass(frozen=True)
class InvariantReport:
    """Everything computed for one variety at one chart point, plus the
    pairwise and global invariants sampled alongside it."""

    spec_name: str
    max_order: int
    point: ChartPoint
    dims: tuple
    conormal_ranks: tuple
    span: StabilizationSummary | None
    form_systems: tuple  # FormSystem per order 1..max_order
    theta: dict  # k -> Sampled
    delta: dict  # k -> Sampled
    tangent: dict  # k -> TangentResult
    secant: SecantResult
    vanishing: dict  # k -> VanishingVerdict
    tm06: Tm06Verdict | None
    tm07: Tm07Verdict
    p09: P09Verdict
    warnings: tuple


def build_invariant_report(
    spec: VarietySpec,
    sampler: SamplerConfig,
    max_order: int = 4,
    point: Sequence | None = None,
    chart="auto",
) -> InvariantReport:
    """Compute the full invariant suite.

    The per-point section uses the given point when one is supplied
    (validated, possibly rejecting it) and a sampled one otherwise; the
    pairwise and theorem sections always sample their own generic data.
    """
    if max_order < 2:
        raise ValueError("max_order must be >= 2")
    warnings: list[str] = []
    if point is None:
        x = sample_point(spec, sampler.rng("point"), sampler.coord_bound)
    else:
        x = validate_point(spec, point, chart)
    tower = osculating_tower(spec, x, max_order)
    try:
        m, w = stabilization(spec, x, max_order, tower=tower)
        span = StabilizationSummary(m, w.dim, spec.ambient_dim - w.dim, w.basis)
    except StabilizationNotReached:
        span = None
        warnings.append(
            f"osculating dimensions did not stabilize within order {max_order}; "
            "rerun with a larger --max-order to detect the linear span"
        )
    form_systems = tuple(
        fundamental_form_system(spec, x, k, tower=tower) for k in range(1, max_order + 1)
    )
    ks = range(1, max_order - 1)
    theta = {k: theta_k(spec, x, k, sampler) for k in ks}
    delta = {k: delta_k(spec, k, sampler) for k in ks}
    tangent = {k: tangent_variety_dim(spec, k, sampler) for k in ks}
    secant = secant_dim_terracini(spec, sampler)
    vanishing = {k: vanishing_check(spec, k, sampler) for k in ks}
    tm06 = cor_tm06_check(spec, sampler) if max_order >= 3 else None
    tm07 = cor_tm07_check(spec, sampler)
    p09 = cor_p09_consistency(spec, sampler)

    for k, s in theta.items():
        if not s.stable:
            warnings.append(f"theta[{k}] trials disagreed: {s.trial_values}")
    for k, s in delta.items():
        if not s.stable:
            warnings.append(f"delta[{k}] trials disagreed: {s.trial_values}")
    for k, tr in tangent.items():
        if not tr.dim.stable:
            warnings.append(f"tangent dim[{k}] trials disagreed: {tr.dim.trial_values}")
    if not secant.dim_sec.stable:
        warnings.append(f"secant dim trials disagreed: {secant.dim_sec.trial_values}")
    for k, v in vanishing.items():
        if not v.stable:
            warnings.append(f"vanishing check k={k} used unstable samples")
    if not p09.consistent:
        warnings.append("tangent-map rank and polarized second-form rank disagreed")

    return InvariantReport(
        spec.name,
        max_order,
        x,
        tower.dims,
        tower.conormal_ranks,
        span,
        form_systems,
        theta,
        delta,
        tangent,
        secant,
        vanishing,
        tm06,
        tm07,
        p09,
        tuple(warnings),
    )
