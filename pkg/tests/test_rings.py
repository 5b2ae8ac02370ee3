import math
import random
from fractions import Fraction

import pytest

from degenalg.rings import (
    LaurentPoly,
    NotAUnit,
    RationalFunction,
    TruncSeries,
    normalize_unit_part,
    poly_gcd,
    series_invert,
    valuation,
)


class TestSeriesInvert:
    def test_identity(self):
        u = TruncSeries([1], 4)
        assert series_invert(u) == TruncSeries([1], 4)

    def test_geometric(self):
        u = TruncSeries([1, -1], 3)
        assert series_invert(u) == TruncSeries([1, 1, 1, 1], 3)

    def test_not_a_unit(self):
        with pytest.raises(NotAUnit):
            series_invert(TruncSeries([0, 1, 1], 3))

    def test_random_units(self):
        rng = random.Random(11)
        for _ in range(60):
            order = rng.randint(0, 8)
            coeffs = [Fraction(rng.randint(-5, 5)) for _ in range(order + 1)]
            coeffs[0] = Fraction(rng.choice([1, -1, 2, 3, -2]))
            u = TruncSeries(coeffs, order)
            assert u * series_invert(u) == TruncSeries([1], order)


class TestTruncSeries:
    def test_truncation_aware_equality(self):
        a = TruncSeries([1, 2, 3], 2)
        b = TruncSeries([1, 2, 7, 9], 3)
        assert a != b
        c = TruncSeries([1, 2, 3, 9], 3)
        assert a == c  # compares on the common prefix

    def test_min_order_rule(self):
        a = TruncSeries([1, 1, 1], 2)
        b = TruncSeries([1, 0, 0, 0, 0], 4)
        assert (a + b).order == 2
        assert (a * b).order == 2

    def test_shift_tracks_order(self):
        a = TruncSeries([1, 2], 1)
        up = a.shift(3)
        assert up.order == 4
        assert up.coeffs == (0, 0, 0, 1, 2)
        assert up.shift(-3) == a

    def test_shift_below_valuation_rejected(self):
        with pytest.raises(ValueError):
            TruncSeries([1, 0], 1).shift(-1)

    def test_valuation(self):
        assert TruncSeries([0, 0, 5], 4).valuation() == 2
        assert TruncSeries([0, 0, 0], 2).valuation() is None


class TestValuation:
    def test_polynomial(self):
        assert valuation(LaurentPoly({2: 1, 3: 1})) == 2

    def test_zero_is_infinite(self):
        assert valuation(LaurentPoly()) == math.inf

    def test_quotient(self):
        f = RationalFunction(LaurentPoly({2: 1, 4: 1}), LaurentPoly({1: 1}))
        assert valuation(f) == 1

    def test_multiplicative(self):
        rng = random.Random(23)
        for _ in range(100):
            def rand_poly():
                p = LaurentPoly(
                    {rng.randint(-3, 4): Fraction(rng.randint(-4, 4))
                     for _ in range(rng.randint(1, 4))}
                )
                return p
            f, g = rand_poly(), rand_poly()
            if f.is_zero() or g.is_zero():
                continue
            assert valuation(f * g) == valuation(f) + valuation(g)


class TestNormalizeUnitPart:
    def test_shifts_to_valuation_zero(self):
        f = LaurentPoly({3: 1, 4: -2})
        assert normalize_unit_part(f) == LaurentPoly({0: 1, 1: -2})

    def test_zero_maps_to_zero(self):
        assert normalize_unit_part(LaurentPoly()) == LaurentPoly()

    def test_constant_unchanged(self):
        assert normalize_unit_part(LaurentPoly({0: 5})) == LaurentPoly({0: 5})

    def test_random_nonzero_has_unit_constant_term(self):
        rng = random.Random(5)
        for _ in range(60):
            f = LaurentPoly(
                {rng.randint(-4, 4): Fraction(rng.randint(-5, 5))
                 for _ in range(rng.randint(1, 5))}
            )
            if f.is_zero():
                continue
            g = normalize_unit_part(f)
            assert g.valuation() == 0
            assert g.eval_at_zero() != 0


class TestLaurentPoly:
    def test_gcd_monic(self):
        a = LaurentPoly({0: 1, 1: -2, 2: 1})  # (1-t)^2
        b = LaurentPoly({0: 2, 1: -2})        # 2(1-t)
        g = poly_gcd(a, b)
        assert g == LaurentPoly({0: -1, 1: 1})  # monic in the leading power

    def test_exact_div(self):
        a = LaurentPoly({0: 1, 2: -1})
        b = LaurentPoly({0: 1, 1: 1})
        assert a.exact_div(b) == LaurentPoly({0: 1, 1: -1})
        with pytest.raises(ValueError):
            LaurentPoly({0: 1, 1: 1}).exact_div(LaurentPoly({0: 1, 2: 1}))


class TestRationalFunction:
    def test_canonical_form(self):
        f = RationalFunction(LaurentPoly({1: 2, 2: 2}), LaurentPoly({1: 4}))
        # (2t + 2t^2)/(4t) = (1 + t)/2
        assert f.den == LaurentPoly({0: 1})
        assert f.num == LaurentPoly({0: Fraction(1, 2), 1: Fraction(1, 2)})

    def test_den_monic_valuation_zero(self):
        f = RationalFunction(LaurentPoly({0: 1}), LaurentPoly({2: 3, 3: 3}))
        assert f.den.valuation() == 0
        assert f.den.leading_coeff() == 1
        assert f.valuation() == -2

    def test_arithmetic(self):
        t = RationalFunction.t_power(1)
        one = RationalFunction.constant(1)
        f = one / (one - t)
        g = f - one
        assert g == t / (one - t)
        assert f * (one - t) == one

    def test_expansion(self):
        t = RationalFunction.t_power(1)
        one = RationalFunction.constant(1)
        f = one / (one - t)
        assert f.to_trunc(4) == TruncSeries([1, 1, 1, 1, 1], 4)

    def test_negative_valuation_cannot_expand(self):
        f = RationalFunction.t_power(-1)
        with pytest.raises(ValueError):
            f.to_trunc(3)

    def test_eval_at_zero(self):
        f = RationalFunction(
            LaurentPoly({0: 3, 1: 1}), LaurentPoly({0: 2, 1: 5})
        )
        assert f.eval_at_zero() == Fraction(3, 2)
