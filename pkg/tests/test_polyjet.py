import random
from fractions import Fraction

import pytest

from conftest import random_poly, random_rationals
from osculata import (
    MultiPoly,
    directional_derivative,
    evaluate,
    hasse_derivative,
    index_sort_key,
    indices_of_degree,
    indices_up_to,
    taylor_shift,
)


def poly(nvars, terms):
    return MultiPoly(nvars, terms)


class TestMultiIndexOrder:
    def test_two_variable_order(self):
        assert indices_up_to(2, 2) == [(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]

    def test_degree_block_is_lex_descending(self):
        block = indices_of_degree(3, 2)
        assert block[0] == (2, 0, 0)
        assert block[-1] == (0, 0, 2)
        assert block == sorted(block, reverse=True)

    def test_sort_key_matches_generation_order(self):
        idx = indices_up_to(3, 4)
        assert idx == sorted(idx, key=index_sort_key)


class TestHasseDerivative:
    def test_order_zero_is_identity(self):
        f = poly(1, {(3,): 1})
        assert hasse_derivative(f, (0,)) == f

    def test_mixed_term(self):
        # s1^2*s2 under D_(1,1) -> C(2,1)*C(1,1) * s1 = 2*s1
        f = poly(2, {(2, 1): 1})
        assert hasse_derivative(f, (1, 1)) == poly(2, {(1, 0): 2})

    def test_binomial_scaling(self):
        f = poly(1, {(3,): 1})
        assert hasse_derivative(f, (2,)) == poly(1, {(1,): 3})

    def test_vanishes_beyond_degree(self):
        rng = random.Random("hasse-beyond")
        for _ in range(20):
            f = random_poly(rng, 2, 3)
            d = f.degree()
            for p in indices_of_degree(2, max(d, 0) + 1):
                assert hasse_derivative(f, p).is_zero()

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            hasse_derivative(poly(2, {(1, 0): 1}), (1,))

    def test_leibniz_identity(self):
        # D_p(f*g) == sum over q <= p of D_q(f) * D_{p-q}(g)
        rng = random.Random("leibniz")
        for _ in range(15):
            f = random_poly(rng, 2, 4)
            g = random_poly(rng, 2, 4)
            for p in indices_up_to(2, 3):
                expected = MultiPoly.zero(2)
                for q in indices_up_to(2, sum(p)):
                    if all(qi <= pi for qi, pi in zip(q, p)):
                        rest = tuple(pi - qi for pi, qi in zip(p, q))
                        expected = expected + hasse_derivative(f, q) * hasse_derivative(g, rest)
                assert hasse_derivative(f * g, p) == expected


class TestEvaluate:
    def test_direct_substitution(self):
        f = poly(2, {(2, 1): 1})
        assert evaluate(f, [2, 3]) == 12

    def test_zero_polynomial(self):
        assert evaluate(MultiPoly.zero(3), [5, -1, Fraction(1, 2)]) == 0

    def test_root(self):
        f = poly(1, {(3,): 1, (1,): -1})
        assert evaluate(f, [1]) == 0

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            evaluate(poly(2, {(1, 1): 1}), [1])


class TestTaylorShift:
    def test_square_shift(self):
        f = poly(1, {(2,): 1})
        assert taylor_shift(f, [1]) == {(0,): 1, (1,): 2, (2,): 1}

    def test_centered_product(self):
        f = poly(2, {(1, 1): 1})
        assert taylor_shift(f, [0, 0]) == {(1, 1): 1}

    def test_constant(self):
        f = MultiPoly.const(3, Fraction(7, 2))
        assert taylor_shift(f, [1, 2, 3]) == {(0, 0, 0): Fraction(7, 2)}

    def test_consistency_with_hasse(self):
        # shifted-expansion coefficient at p == value of D_p(f), 20 random x
        rng = random.Random("taylor-hasse")
        f = random_poly(rng, 2, 4)
        for _ in range(20):
            x = random_rationals(rng, 2)
            shift = taylor_shift(f, x)
            for p in indices_up_to(2, max(f.degree(), 0)):
                assert shift.get(p, Fraction(0)) == evaluate(hasse_derivative(f, p), x)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            taylor_shift(poly(2, {(1, 0): 1}), [1, 2, 3])


class TestDirectionalDerivative:
    def test_power_rule(self):
        f = poly(2, {(2, 0): 1})
        assert directional_derivative(f, (1, 0)) == poly(2, {(1, 0): 2})

    def test_sum_of_partials(self):
        f = poly(2, {(1, 1): 1})
        assert directional_derivative(f, (1, 1)) == poly(2, {(1, 0): 1, (0, 1): 1})

    def test_constant_annihilated(self):
        assert directional_derivative(MultiPoly.const(2, 5), (3, -2)).is_zero()

    def test_links_ordinary_and_divided(self):
        # d/ds_i (D_p f) == (p_i + 1) * D_{p + e_i} f
        rng = random.Random("link")
        for _ in range(10):
            f = random_poly(rng, 2, 4)
            for p in indices_up_to(2, 3):
                for i in range(2):
                    e = tuple(1 if j == i else 0 for j in range(2))
                    bumped = tuple(a + b for a, b in zip(p, e))
                    lhs = hasse_derivative(f, p).partial(i)
                    rhs = (p[i] + 1) * hasse_derivative(f, bumped)
                    assert lhs == rhs

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            directional_derivative(poly(2, {(1, 0): 1}), (1,))


class TestArithmetic:
    def test_no_zero_terms_stored(self):
        f = poly(1, {(1,): 1}) - poly(1, {(1,): 1})
        assert f.terms == {} and f.is_zero()

    def test_pow_matches_repeated_mul(self):
        f = poly(2, {(1, 0): 1, (0, 1): Fraction(1, 2)})
        assert f**3 == f * f * f
        assert f**0 == MultiPoly.const(2, 1)

    def test_scalar_mul(self):
        f = poly(1, {(2,): 3})
        assert 2 * f == poly(1, {(2,): 6})
        assert f * Fraction(1, 3) == poly(1, {(2,): 1})

    def test_coefficients_stay_exact(self):
        f = MultiPoly.const(1, Fraction(1, 3)) + MultiPoly.const(1, Fraction(1, 6))
        assert f == MultiPoly.const(1, Fraction(1, 2))
