import random
from fractions import Fraction

import pytest

from _oracles import oracle_tower_dims
from osculata import (
    InternalInvariantError,
    MultiPoly,
    PointError,
    StabilizationNotReached,
    VarietySpec,
    annihilator,
    gen_rnc,
    gen_segre,
    gen_veronese,
    indices_up_to,
    jet_table,
    osculating_tower,
    plane_in_p4,
    stabilization,
    validate_point,
)


def F(x):
    return Fraction(x)


class TestJetTable:
    def test_twisted_cubic_rows_at_one(self):
        spec = gen_rnc(3)
        x = validate_point(spec, [1])
        jt = jet_table(spec, x, 2)
        assert jt.rows[(0,)] == (1, 1, 1, 1)
        assert jt.rows[(1,)] == (0, 1, 2, 3)
        assert jt.rows[(2,)] == (0, 0, 1, 3)

    def test_order_zero_is_the_point(self):
        spec = gen_veronese(2, 2)
        x = validate_point(spec, [2, 3])
        jt = jet_table(spec, x, 0)
        assert list(jt.rows) == [(0, 0)]
        assert jt.rows[(0, 0)] == tuple(c.evaluate(x.coords) for c in spec.coords)

    def test_quadric_rows_in_fixed_order(self):
        spec = gen_segre((1, 1))
        x = validate_point(spec, [0, 0])
        jt = jet_table(spec, x, 2)
        ordered = [jt.rows[p] for p in indices_up_to(2, 2)]
        assert ordered == [
            (1, 0, 0, 0),
            (0, 1, 0, 0),
            (0, 0, 1, 0),
            (0, 0, 0, 0),
            (0, 0, 0, 1),
            (0, 0, 0, 0),
        ]

    def test_extend_reuses_rows(self):
        spec = gen_rnc(4)
        x = validate_point(spec, [2])
        jt = jet_table(spec, x, 1)
        bigger = jt.extend(3)
        assert bigger.order == 3
        assert bigger.rows[(1,)] is jt.rows[(1,)]
        assert (3,) in bigger.rows
        assert bigger.extend(2) is bigger


class TestOsculatingTower:
    @pytest.mark.parametrize(
        "make,point,expected",
        [
            (lambda: gen_rnc(3), [1], (0, 1, 2, 3, 3)),
            (lambda: gen_rnc(4), [1], (0, 1, 2, 3, 4)),
            (lambda: gen_veronese(2, 2), [1, 1], (0, 2, 5, 5)),
            (lambda: gen_segre((1, 2)), [1, 2, 3], (0, 3, 5, 5)),
            (lambda: gen_segre((1, 1)), [2, 5], (0, 2, 3, 3)),
            (lambda: plane_in_p4(), [3, 4], (0, 2, 2, 2)),
        ],
    )
    def test_corpus_towers_match_brute_force_oracle(self, make, point, expected):
        spec = make()
        x = validate_point(spec, point)
        tower = osculating_tower(spec, x, 4)
        assert tower.dims[: len(expected)] == expected
        assert oracle_tower_dims(spec, point, 4) == tower.dims

    def test_towers_at_sampled_points(self, corpus):
        rng = random.Random("tower-sample")
        expected = {
            "twisted-cubic": (0, 1, 2, 3, 3),
            "rnc4": (0, 1, 2, 3, 4),
            "quadric-surface": (0, 2, 3, 3),
            "veronese-2-2": (0, 2, 5, 5),
            "segre-1-2": (0, 3, 5, 5),
            "plane-in-p4": (0, 2, 2, 2),
        }
        for name, spec in corpus.items():
            coords = [F(rng.randint(-7, 7)) for _ in range(spec.nparams)]
            x = validate_point(spec, coords)
            tower = osculating_tower(spec, x, 4)
            want = expected[name]
            assert tower.dims[: len(want)] == want, name
            assert oracle_tower_dims(spec, coords, 4) == tower.dims, name

    def test_immersiveness_dimension(self, corpus):
        for spec in corpus.values():
            x = validate_point(spec, [F(2)] * spec.nparams)
            assert osculating_tower(spec, x, 1).dims[1] == spec.nparams

    def test_conormal_ranks_complement(self, corpus):
        for spec in corpus.values():
            x = validate_point(spec, [F(1)] * spec.nparams)
            tower = osculating_tower(spec, x, 3)
            r = spec.ambient_dim
            for k in range(4):
                assert tower.conormal_ranks[k] == r - tower.dims[k]
                assert annihilator(tower.spaces[k]).dim == tower.conormal_ranks[k]

    def test_monotone_stabilization_holds_everywhere(self, corpus):
        for spec in corpus.values():
            x = validate_point(spec, [F(3)] * spec.nparams)
            dims = osculating_tower(spec, x, 6).dims
            plateau = next(k for k in range(1, 7) if dims[k] == dims[k - 1])
            assert all(dims[j] == dims[plateau] for j in range(plateau, 7))

    def test_chart_unit_invariance(self, corpus):
        # rescaling the lift by a function nonzero at the point keeps every
        # osculating space identical
        for spec in corpus.values():
            n = spec.nparams
            unit = MultiPoly.const(n, 1) + MultiPoly.variable(n, 0)  # 1 + s_1
            rescaled = VarietySpec(
                spec.name + "-rescaled",
                spec.param_names,
                spec.ambient_dim,
                tuple(c * unit for c in spec.coords),
            )
            coords = [F(2)] * n  # 1 + s_1 = 3 != 0 there
            xa = validate_point(spec, coords)
            xb = validate_point(rescaled, coords)
            ta = osculating_tower(spec, xa, 4)
            tb = osculating_tower(rescaled, xb, 4)
            assert ta.dims == tb.dims
            assert ta.spaces == tb.spaces

    def test_unvalidated_base_point_rejected(self):
        spec = VarietySpec(
            "cusp",
            ("s",),
            2,
            (MultiPoly.zero(1), MultiPoly.monomial((2,)), MultiPoly.monomial((3,))),
        )
        from osculata import ChartPoint

        with pytest.raises(PointError):
            osculating_tower(spec, ChartPoint((F(0),), 0), 2)


class TestStabilization:
    def test_plane_detects_its_span(self):
        spec = plane_in_p4()
        x = validate_point(spec, [1, 2])
        m, w = stabilization(spec, x, 4)
        assert m == 1 and w.dim == 2

    def test_twisted_cubic_spans_ambient(self):
        spec = gen_rnc(3)
        x = validate_point(spec, [1])
        m, w = stabilization(spec, x, 4)
        assert m == 3 and w.dim == 0

    def test_quadric_stabilizes_at_two(self):
        spec = gen_segre((1, 1))
        x = validate_point(spec, [1, 1])
        m, w = stabilization(spec, x, 4)
        assert m == 2 and w.dim == 0

    def test_not_reached_signal(self):
        spec = gen_rnc(4)
        x = validate_point(spec, [1])
        with pytest.raises(StabilizationNotReached):
            stabilization(spec, x, 3)  # dims (0,1,2,3) never repeat

    def test_span_functionals_kill_all_jet_rows(self):
        # detected span forms vanish on jets of every computed order
        spec = plane_in_p4()
        x = validate_point(spec, [5, -3])
        tower = osculating_tower(spec, x, 6)
        _, w = stabilization(spec, x, 6, tower=tower)
        assert w.dim == 2
        for ell in w.basis:
            for p in indices_up_to(spec.nparams, 6):
                row = tower.table.rows[p]
                assert sum(a * b for a, b in zip(ell, row)) == 0
