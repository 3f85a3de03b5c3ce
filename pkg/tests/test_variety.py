import json
import math
import random
from fractions import Fraction

import pytest

from osculata import (
    MultiPoly,
    PointError,
    SpecError,
    canonical_spec_json,
    gen_cone,
    gen_projection,
    gen_rnc,
    gen_segre,
    gen_veronese,
    parse_polynomial,
    parse_spec,
    plane_in_p4,
    poly_to_string,
    validate_point,
)


class TestPolynomialGrammar:
    def test_basic_terms(self):
        f = parse_polynomial("s1^2*s2 - 3/2", ["s1", "s2"])
        assert f == MultiPoly(2, {(2, 1): 1, (0, 0): Fraction(-3, 2)})

    def test_parenthesized(self):
        f = parse_polynomial("(s + 1)^2", ["s"])
        assert f == MultiPoly(1, {(2,): 1, (1,): 2, (0,): 1})

    def test_negative_literal_in_product(self):
        f = parse_polynomial("-2*s", ["s"])
        assert f == MultiPoly(1, {(1,): -2})

    def test_whitespace_insignificant(self):
        a = parse_polynomial(" s ^ 2 + 1/3 ", ["s"])
        b = parse_polynomial("s^2+1/3", ["s"])
        assert a == b

    def test_double_caret_reports_position(self):
        with pytest.raises(SpecError) as err:
            parse_polynomial("s1^^2", ["s1"])
        assert err.value.column == 4

    def test_unknown_variable(self):
        with pytest.raises(SpecError, match="unknown variable 't'"):
            parse_polynomial("s + t", ["s"])

    def test_implicit_multiplication_rejected(self):
        with pytest.raises(SpecError):
            parse_polynomial("2 s", ["s"])

    def test_zero_denominator(self):
        with pytest.raises(SpecError, match="zero denominator"):
            parse_polynomial("1/0", ["s"])

    def test_float_literal_rejected(self):
        with pytest.raises(SpecError):
            parse_polynomial("1.5", ["s"])

    def test_division_only_in_literals(self):
        with pytest.raises(SpecError):
            parse_polynomial("s/2", ["s"])

    def test_printer_round_trip_on_awkward_coefficients(self):
        f = MultiPoly(2, {(0, 0): Fraction(-3, 2), (1, 0): -1, (2, 1): Fraction(5, 7)})
        text = poly_to_string(f, ["s1", "s2"])
        assert parse_polynomial(text, ["s1", "s2"]) == f

    def test_printer_zero(self):
        assert poly_to_string(MultiPoly.zero(2), ["s1", "s2"]) == "0"


class TestSpecSchema:
    def test_twisted_cubic_document(self):
        spec = parse_spec(
            '{"params":["s"],"ambient":3,"coords":["1","s","s^2","s^3"]}'
        )
        assert spec == gen_rnc(3, name="variety")

    def test_coordinate_count_mismatch(self):
        with pytest.raises(SpecError, match="expected 4 coordinate"):
            parse_spec('{"params":["s"],"ambient":3,"coords":["1","s"]}')

    def test_all_zero_map_rejected(self):
        with pytest.raises(SpecError, match="identically zero"):
            parse_spec('{"params":["s"],"ambient":1,"coords":["0","0"]}')

    def test_invalid_json_reports_position(self):
        with pytest.raises(SpecError, match="invalid JSON"):
            parse_spec("{not json}")

    def test_unknown_keys_rejected(self):
        with pytest.raises(SpecError, match="unknown spec keys"):
            parse_spec('{"params":["s"],"ambient":1,"coords":["1","s"],"extra":1}')

    def test_duplicate_params_rejected(self):
        with pytest.raises(SpecError, match="distinct"):
            parse_spec('{"params":["s","s"],"ambient":1,"coords":["1","s"]}')

    def test_round_trip_for_generated_specs(self):
        specs = [
            gen_rnc(3),
            gen_rnc(4),
            gen_veronese(2, 2),
            gen_veronese(2, 3),
            gen_segre((1, 1)),
            gen_segre((1, 2)),
            gen_segre((1, 1, 1)),
            gen_cone(gen_rnc(3)),
            gen_projection(gen_veronese(2, 3), 5, seed=7),
            plane_in_p4(),
        ]
        for spec in specs:
            assert parse_spec(canonical_spec_json(spec)) == spec


class TestGenerators:
    def test_rnc3_coords(self):
        spec = gen_rnc(3)
        assert spec.ambient_dim == 3
        assert [poly_to_string(c, spec.param_names) for c in spec.coords] == [
            "1",
            "s",
            "s^2",
            "s^3",
        ]

    @pytest.mark.parametrize("n,d", [(n, d) for n in (1, 2, 3) for d in (1, 2, 3, 4)])
    def test_veronese_coordinate_count(self, n, d):
        spec = gen_veronese(n, d)
        assert len(spec.coords) == math.comb(n + d, d)
        assert spec.ambient_dim == math.comb(n + d, d) - 1

    def test_veronese_2_3_matches_ten_coordinates(self):
        assert gen_veronese(2, 3).ambient_dim == 9

    def test_segre_1_1(self):
        spec = gen_segre((1, 1))
        assert [poly_to_string(c, spec.param_names) for c in spec.coords] == [
            "1",
            "s",
            "t",
            "s*t",
        ]

    def test_segre_counts(self):
        assert len(gen_segre((1, 2)).coords) == 6
        assert len(gen_segre((1, 1, 1)).coords) == 8
        assert gen_segre((1, 1, 1)).nparams == 3

    def test_projection_shape_and_determinism(self):
        src = gen_veronese(2, 3)
        a = gen_projection(src, 5, seed=42)
        b = gen_projection(src, 5, seed=42)
        c = gen_projection(src, 5, seed=43)
        assert a == b
        assert a != c
        assert a.ambient_dim == 5 and len(a.coords) == 6 and a.nparams == 2

    def test_projection_is_matrix_times_coords(self):
        # replay the seeded stream: the output must be exactly M * coords
        src = gen_rnc(3)
        proj = gen_projection(src, 2, seed=1)
        rng = random.Random("projection:1")
        for row_poly in proj.coords:
            expected = MultiPoly.zero(1)
            for c in src.coords:
                expected = expected + rng.randint(-10, 10) * c
            assert row_poly == expected

    def test_projection_target_too_large(self):
        with pytest.raises(ValueError):
            gen_projection(gen_rnc(3), 3, seed=1)

    def test_cone_over_twisted_cubic(self):
        spec = gen_cone(gen_rnc(3))
        assert spec.param_names == ("s", "w")
        assert [poly_to_string(c, spec.param_names) for c in spec.coords] == [
            "1",
            "s",
            "s^2",
            "s^3",
            "w",
        ]

    def test_cone_counts(self):
        spec = gen_cone(gen_veronese(2, 2))
        assert len(spec.coords) == 7 and spec.nparams == 3

    def test_cone_avoids_parameter_collision(self):
        base = gen_segre((1, 1, 1, 1, 1))  # parameters s,t,u,v,w
        spec = gen_cone(base)
        assert spec.param_names[-1] == "w1"


class TestValidatePoint:
    def test_auto_chart_picks_first_nonzero(self):
        pt = validate_point(gen_rnc(3), [1])
        assert pt.chart_index == 0 and pt.coords == (Fraction(1),)

    def test_base_point_rejected(self):
        spec = parse_spec('{"params":["s"],"ambient":1,"coords":["s","s^2"]}')
        with pytest.raises(PointError, match="base point"):
            validate_point(spec, [0])

    def test_cusp_rejected_as_non_immersive(self):
        spec = parse_spec('{"params":["s"],"ambient":2,"coords":["1","s^2","s^3"]}')
        with pytest.raises(PointError, match="non-immersive"):
            validate_point(spec, [0])

    def test_explicit_chart_must_not_vanish(self):
        spec = gen_rnc(3)
        with pytest.raises(PointError):
            validate_point(spec, [0], chart=1)
        assert validate_point(spec, [2], chart=3).chart_index == 3

    def test_chart_index_out_of_range(self):
        with pytest.raises(ValueError):
            validate_point(gen_rnc(3), [1], chart=9)

    def test_wrong_coordinate_count(self):
        with pytest.raises(ValueError):
            validate_point(gen_rnc(3), [1, 2])

    @pytest.mark.parametrize(
        "make",
        [
            lambda: gen_rnc(3),
            lambda: gen_veronese(2, 2),
            lambda: gen_segre((1, 2)),
            lambda: plane_in_p4(),
            lambda: gen_projection(gen_veronese(2, 3), 5, seed=11),
        ],
    )
    def test_random_points_nearly_always_accepted(self, make):
        spec = make()
        rng = random.Random(f"accept:{spec.name}")
        accepted = 0
        for _ in range(100):
            coords = [Fraction(rng.randint(-10, 10)) for _ in range(spec.nparams)]
            try:
                validate_point(spec, coords)
                accepted += 1
            except PointError:
                pass
        assert accepted >= 99
