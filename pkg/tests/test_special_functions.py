import math
import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ellhyp.special_functions import (
    DivergenceError,
    DomainError,
    EvalOptions,
    HypergeometricSpec,
    agm,
    gamma_real,
    gauss_2f1_integral,
    hyp2f1,
    pfq,
    pfq_term,
    pfq_terms,
    rational_binomial,
)

HALF = Fraction(1, 2)

# mpmath at 30 digits
THREE_F_TWO_QUARTER = 1.03512066142564898104595755145
GAMMA_THIRD = 2.67893853470774763365569294097
AGM_1_SQRT2 = 1.19814023473559220743992249228
BINOM_THIRD_HALF = 0.892656852710186659057680927937


def rel(a, b):
    return abs(a - b) / abs(b)


class TestPfq:
    def test_zero_argument(self):
        res = pfq(HypergeometricSpec([Fraction(1, 3), 2, 5], [Fraction(7, 2), 1], 0.0))
        assert res.value == 1.0
        assert res.converged
        assert res.terms_used <= 3

    def test_3f2_at_quarter(self):
        res = pfq(HypergeometricSpec([HALF] * 3, [1, 1], 0.25))
        assert res.converged
        assert rel(res.value, THREE_F_TWO_QUARTER) < 1e-12

    def test_3f2_at_quarter_matches_agm_route(self):
        lam = 1 / 3
        b = math.sqrt(1 + lam)
        omega = 2 * math.pi / agm(2 * math.sqrt(b), math.sqrt(2 * b + 2))
        expected = math.sqrt(1 + lam) * omega ** 2 / math.pi ** 2
        assert rel(pfq(HypergeometricSpec([HALF] * 3, [1, 1], 0.25)).value, expected) < 1e-12

    def test_2f1_gamma_evaluation(self):
        value = hyp2f1(Fraction(1, 4), Fraction(3, 4), 1, -1 / 3)
        closed = 3 / (2 * math.sqrt(2)) * gamma_real(Fraction(4, 3)) / (
            gamma_real(Fraction(3, 2)) * gamma_real(Fraction(5, 6)))
        assert rel(value, closed) < 1e-12

    def test_terminating_series(self):
        # 2F1(-3, 1; 1; z) = (1 - z)^3, even outside the unit disc
        assert hyp2f1(-3, 1, 1, 2.5) == pytest.approx((1 - 2.5) ** 3, rel=1e-14)

    def test_exponential(self):
        assert pfq(HypergeometricSpec([], [], 1.0)).value == pytest.approx(math.e, rel=1e-14)

    @pytest.mark.parametrize("lower", [[0], [-2], [Fraction(-4)]])
    def test_invalid_lower_parameter(self, lower):
        with pytest.raises(DomainError):
            HypergeometricSpec([1, 1], lower, 0.5)

    @pytest.mark.parametrize("upper,lower,z", [
        ([HALF, HALF], [1], 1.5),
        ([1, 1, 1], [1], 0.1),
        ([HALF, HALF], [1], 1.0),  # sum(lower) - sum(upper) = 0
    ])
    def test_divergent(self, upper, lower, z):
        with pytest.raises(DivergenceError):
            pfq(HypergeometricSpec(upper, lower, z))

    def test_unit_argument_with_positive_parameter_excess(self):
        # Gauss: 2F1(1/2, 1/2; 2; 1) = Gamma(2) Gamma(1) / Gamma(3/2)^2 = 4/pi,
        # reached slowly since the terms decay like n^-2
        res = pfq(HypergeometricSpec([HALF, HALF], [2], 1.0), EvalOptions(1e-9))
        assert res.converged
        assert res.value == pytest.approx(4 / math.pi, abs=1e-4)

    def test_max_terms_reports_unconverged(self):
        res = pfq(HypergeometricSpec([HALF] * 3, [1, 1], 0.9), EvalOptions(max_terms=5))
        assert not res.converged
        assert res.terms_used == 5

    def test_converged_invariant(self):
        opts = EvalOptions(relative_tolerance=1e-10)
        res = pfq(HypergeometricSpec([Fraction(1, 4)] * 2, [1], 0.9), opts)
        assert res.converged
        assert res.last_term_magnitude <= opts.relative_tolerance * abs(res.value)

    def test_options_validation(self):
        with pytest.raises(ValueError):
            EvalOptions(relative_tolerance=0)
        with pytest.raises(ValueError):
            EvalOptions(max_terms=0)

    def test_term_ratio_consistency(self):
        rng = random.Random(7)
        for _ in range(20):
            spec = HypergeometricSpec(
                [Fraction(rng.randint(1, 20), rng.randint(1, 8)) for _ in range(3)],
                [Fraction(rng.randint(1, 20), rng.randint(1, 8)) for _ in range(2)],
                rng.uniform(-0.9, 0.9),
            )
            res = pfq(spec)
            terms = []
            for t in pfq_terms(spec):
                terms.append(t)
                if len(terms) >= max(res.terms_used, 3):
                    break
            for n in rng.sample(range(len(terms)), 3):
                exact = pfq_term(spec, n)
                if exact == 0:
                    assert terms[n] == 0
                else:
                    assert rel(terms[n], exact) < 1e-14


class TestIntegralOracle:
    def test_zero_argument(self):
        assert gauss_2f1_integral(3.7, 0.3, 1.9, 0.0) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("a,b,c,z", [(0.5, 0.5, 1, 0.5), (0.25, 0.25, 1, 0.25)])
    def test_matches_series(self, a, b, c, z):
        assert abs(gauss_2f1_integral(a, b, c, z) - hyp2f1(a, b, c, z)) < 1e-8

    def test_singular_endpoints(self):
        # both endpoint exponents in (-1, 0)
        a, b, c, z = 0.7, 0.2, 0.45, 0.6
        assert abs(gauss_2f1_integral(a, b, c, z) - float(mpmath.hyp2f1(a, b, c, z))) < 1e-9

    def test_negative_argument(self):
        assert abs(gauss_2f1_integral(0.25, 0.75, 1, -3.0) - float(mpmath.hyp2f1(0.25, 0.75, 1, -3))) < 1e-9

    @pytest.mark.parametrize("b,c,z", [(0, 1, 0.5), (1, 1, 0.5), (1, 0.5, 0.5), (0.5, 1, 1.0)])
    def test_domain(self, b, c, z):
        with pytest.raises(DomainError):
            gauss_2f1_integral(0.5, b, c, z)

    def test_oracle_equivalence_random(self):
        rng = random.Random(2024)
        for _ in range(50):
            b = rng.uniform(0.1, 2.0)
            c = b + rng.uniform(0.1, 2.0)
            a = rng.uniform(-1.0, 2.0)
            z = rng.uniform(0.0, 0.9)
            assert abs(hyp2f1(a, b, c, z) - gauss_2f1_integral(a, b, c, z)) <= 1e-7


class TestGamma:
    def test_half(self):
        assert rel(gamma_real(0.5), math.sqrt(math.pi)) < 1e-14

    def test_integer(self):
        assert rel(gamma_real(5), 24.0) < 1e-14

    def test_third(self):
        assert rel(gamma_real(Fraction(1, 3)), GAMMA_THIRD) < 1e-13

    @pytest.mark.parametrize("x", [0, -1, -7, Fraction(-3)])
    def test_poles(self, x):
        with pytest.raises(DomainError):
            gamma_real(x)

    def test_recurrence_grid(self):
        for i in range(1, 51):
            x = i / 10
            assert rel(gamma_real(1 + x), x * gamma_real(x)) < 1e-12

    def test_against_mpmath(self):
        rng = random.Random(1)
        xs = [rng.uniform(0.001, 171.5) for _ in range(500)] + [rng.uniform(-40, 0) for _ in range(200)]
        for x in xs:
            assert rel(gamma_real(x), float(mpmath.gamma(x))) < 1e-12

    def test_reflection_near_pole(self):
        x = -3 + 1e-9
        assert rel(gamma_real(x), float(mpmath.gamma(x))) < 1e-12


class TestBinomial:
    def test_integer(self):
        assert rational_binomial(4, 2) == pytest.approx(6, rel=1e-14)

    @pytest.mark.parametrize("n", [Fraction(1, 3), 7, Fraction(-5, 2)])
    def test_k_zero(self, n):
        assert rational_binomial(n, 0) == pytest.approx(1, rel=1e-14)

    def test_third_half(self):
        assert rel(rational_binomial("1/3", "1/2"), BINOM_THIRD_HALF) < 1e-13

    def test_pole(self):
        with pytest.raises(DomainError):
            rational_binomial(2, 4)


class TestAgm:
    def test_fixed_point(self):
        assert agm(3.5, 3.5) == 3.5

    def test_lemniscatic(self):
        assert rel(agm(1, math.sqrt(2)), AGM_1_SQRT2) < 1e-15

    @pytest.mark.parametrize("a,b", [(0, 1), (-1, 2), (1, 0)])
    def test_domain(self, a, b):
        with pytest.raises(DomainError):
            agm(a, b)

    @given(st.floats(1e-3, 1e3), st.floats(1e-3, 1e3))
    def test_symmetry(self, a, b):
        assert agm(a, b) == pytest.approx(agm(b, a), rel=1e-15)

    @given(st.floats(1e-3, 1e3), st.floats(1e-3, 1e3), st.floats(1e-3, 1e3))
    def test_homogeneity(self, a, b, c):
        assert agm(c * a, c * b) == pytest.approx(c * agm(a, b), rel=1e-12)

    @settings(max_examples=60)
    @given(st.floats(1.0, 50.0), st.floats(0.3, 1.0))
    def test_agm_to_2f1(self, alpha, ratio):
        beta = alpha * ratio
        lhs = math.pi / agm(alpha, beta)
        rhs = math.pi / alpha * hyp2f1(HALF, HALF, 1, 1 - ratio ** 2, rtol=1e-15)
        assert rel(lhs, rhs) < 1e-9

    def test_iteration_count_small(self):
        # quadratic convergence: a handful of steps even for a wide ratio
        assert agm(1e-3, 1e3) == pytest.approx(float(mpmath.agm(1e-3, 1e3)), rel=1e-14)
