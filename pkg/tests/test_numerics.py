import math

import pytest
from hypothesis import given, strategies as st

from bellboson.numerics import (LogComplex, LogScalar, log_binomial,
                                log_factorial, log_sum_exp_signed)

from oracles import pascal_binomial


class TestLogScalar:
    def test_zero_sentinel(self):
        z = LogScalar.zero()
        assert z.sign == 0 and z.log_magnitude == float("-inf")
        assert z.is_zero and z.to_real() == 0.0

    def test_sign_sentinel_consistency_enforced(self):
        with pytest.raises(ValueError):
            LogScalar(0, 1.0)
        with pytest.raises(ValueError):
            LogScalar(1, float("-inf"))
        with pytest.raises(ValueError):
            LogScalar(2, 0.0)

    @pytest.mark.parametrize("x", [3.7e-26, 1e-20, 1.0, -1.0, 2.5e20, -8.1e26])
    def test_round_trip_tight(self, x):
        back = LogScalar.from_real(x).to_real()
        assert abs(back - x) <= 1e-14 * abs(x)

    @pytest.mark.parametrize("x", [1e-300, 3.7e-151, -9.9e299, 1e300])
    def test_round_trip_full_range(self, x):
        # the stored log quantizes at half an ulp of ln|x| (~5.7e-14 relative
        # at 1e300), which is the representability floor for these extremes
        back = LogScalar.from_real(x).to_real()
        assert abs(back - x) <= 6e-14 * abs(x)

    @given(st.floats(min_value=-1e10, max_value=1e10,
                     allow_nan=False, allow_infinity=False),
           st.floats(min_value=-1e10, max_value=1e10,
                     allow_nan=False, allow_infinity=False))
    def test_add_mul_match_real_arithmetic(self, x, y):
        a, b = LogScalar.from_real(x), LogScalar.from_real(y)
        prod = (a * b).to_real()
        assert abs(prod - x * y) <= 1e-12 * max(abs(x * y), 1e-300)
        total = (a + b).to_real()
        true = x + y
        # sums below the rounding floor of the larger operand are not representable
        if abs(true) > 1e-12 * max(abs(x), abs(y)):
            assert abs(total - true) <= 1e-12 * abs(true)

    def test_negation(self):
        a = LogScalar.from_real(3.5)
        assert (-a).to_real() == -3.5
        assert (-LogScalar.zero()).is_zero


class TestLogComplex:
    def test_squared_modulus_doubles_log_and_drops_phase(self):
        z = LogComplex.from_complex(3 + 4j)
        sq = z.squared_modulus()
        assert sq.sign == 1
        assert sq.log_magnitude == pytest.approx(math.log(25.0), rel=1e-14)

    def test_zero(self):
        assert LogComplex.zero().squared_modulus().is_zero
        assert LogComplex.from_complex(0j).is_zero

    def test_phase_in_half_open_interval(self):
        z = LogComplex.from_complex(-1 + 0j)
        assert -math.pi < z.phase <= math.pi
        assert z.phase == pytest.approx(math.pi)

    def test_round_trip(self):
        z = LogComplex.from_complex(1 - 2j).to_complex()
        assert abs(z - (1 - 2j)) < 1e-14


class TestLogFactorial:
    def test_trivial_values(self):
        assert log_factorial(0) == 0.0
        assert log_factorial(1) == 0.0

    def test_five(self):
        # direct integer product: 5! = 120
        assert log_factorial(5) == pytest.approx(math.log(120), rel=1e-15)

    def test_against_exact_integer_factorial(self):
        fact = 1
        for n in range(1, 400):
            fact *= n
            assert log_factorial(n) == pytest.approx(math.log(fact), rel=1e-13)

    def test_recurrence_exact_on_table(self):
        for n in range(1, 2000):
            assert log_factorial(n) == log_factorial(n - 1) + math.log(n)

    def test_large_argument_supported(self):
        assert log_factorial(1_000_000) > 0

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            log_factorial(-1)


class TestLogBinomial:
    def test_pairs_of_four(self):
        # enumeration: C(4,2) = 6 pairs
        assert log_binomial(4, 2) == pytest.approx(math.log(6), rel=1e-14)

    def test_choose_zero(self):
        for n in (0, 1, 17):
            assert log_binomial(n, 0) == 0.0

    def test_100_choose_50_against_pascal(self):
        exact = pascal_binomial(100, 50)
        assert exact == math.comb(100, 50)
        assert log_binomial(100, 50) == pytest.approx(math.log(exact), rel=1e-13)

    @given(st.integers(min_value=0, max_value=600), st.data())
    def test_symmetry_exact(self, n, data):
        k = data.draw(st.integers(min_value=0, max_value=n))
        assert log_binomial(n, k) == log_binomial(n, n - k)

    def test_k_above_n_rejected(self):
        with pytest.raises(ValueError):
            log_binomial(3, 4)
        with pytest.raises(ValueError):
            log_binomial(3, -1)


class TestLogSumExpSigned:
    def test_two_plus_two(self):
        out = log_sum_exp_signed([LogScalar.from_real(2.0)] * 2)
        assert out.sign == 1
        assert out.log_magnitude == pytest.approx(math.log(4.0), rel=1e-15)

    def test_exact_cancellation(self):
        out = log_sum_exp_signed([LogScalar.from_real(3.0),
                                  LogScalar.from_real(-3.0)])
        assert out.is_zero

    def test_one_plus_two_minus_three(self):
        # real-arithmetic oracle: 1 + 2 - 3 = 0
        out = log_sum_exp_signed([LogScalar.from_real(1.0),
                                  LogScalar.from_real(2.0),
                                  LogScalar.from_real(-3.0)])
        assert out.is_zero

    def test_empty_sequence(self):
        assert log_sum_exp_signed([]).is_zero

    def test_extreme_scale_terms(self):
        out = log_sum_exp_signed([LogScalar(1, 800.0), LogScalar(-1, 750.0),
                                  LogScalar(1, -900.0)])
        assert out.sign == 1
        assert out.log_magnitude == pytest.approx(
            800.0 + math.log1p(-math.exp(-50.0)), rel=1e-14)

    @given(st.lists(st.floats(min_value=-1e6, max_value=1e6,
                              allow_nan=False, allow_infinity=False),
                    min_size=1, max_size=12))
    def test_matches_fsum_where_representable(self, xs):
        out = log_sum_exp_signed([LogScalar.from_real(x) for x in xs])
        true = math.fsum(xs)
        scale = max(abs(x) for x in xs)
        if abs(true) > 1e-12 * max(scale, 1.0):
            assert out.to_real() == pytest.approx(true, rel=1e-12)
