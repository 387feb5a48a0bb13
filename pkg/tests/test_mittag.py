import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from fracml.errors import DomainError
from fracml.mittag import (
    MLParameters,
    ReductionCase,
    TwoParamML,
    kml,
    ml2,
    reduction_case,
)
from fracml.specfun import k_gamma, k_pochhammer, recip_gamma

# Brute-force oracle value (tests/oracles.py) for the database parameter set
# k=2, alpha=6, beta=7, gamma=2, q=1 at z=1.
KML_DB_SET_Z1 = 0.053345909834003538544
E_TIMES_ERFC1 = 0.42758357615580700441


def rel(a, b):
    return abs(a - b) / max(abs(b), 1e-300)


class TestParameterValidation:
    def test_two_param_requires_positive_alpha(self):
        with pytest.raises(DomainError):
            TwoParamML(0.0, 1.0)
        with pytest.raises(DomainError):
            TwoParamML(-1.0, 1.0)

    def test_two_param_allows_nonpositive_beta(self):
        TwoParamML(1.0, -2.0)

    def test_ml_parameters_positivity(self):
        for field in ("k", "alpha", "beta", "gamma"):
            kwargs = dict(k=1.0, alpha=1.0, beta=1.0, gamma=1.0, q=1.0)
            kwargs[field] = 0.0
            with pytest.raises(DomainError):
                MLParameters(**kwargs)

    @pytest.mark.parametrize("q", [0.25, 0.999, 1.0, 2.0, 7.0])
    def test_valid_exponent_steps(self, q):
        MLParameters(k=1.0, alpha=1.0, beta=1.0, gamma=1.0, q=q)

    @pytest.mark.parametrize("q", [0.0, -1.0, 1.5, 2.25])
    def test_invalid_exponent_steps(self, q):
        with pytest.raises(DomainError):
            MLParameters(k=1.0, alpha=1.0, beta=1.0, gamma=1.0, q=q)

    def test_tol_must_be_positive(self):
        with pytest.raises(DomainError):
            ml2(TwoParamML(1.0, 1.0), 1.0, tol=0.0)


class TestTwoParamEvaluator:
    def test_exponential(self):
        ev = ml2(TwoParamML(1.0, 1.0), 1.0)
        assert ev.converged
        assert rel(ev.value, math.e) < 1e-12

    def test_shifted_exponential(self):
        ev = ml2(TwoParamML(1.0, 2.0), 1.0)
        assert rel(ev.value, math.e - 1.0) < 1e-12

    def test_cosh_identity(self):
        ev = ml2(TwoParamML(2.0, 1.0), 4.0)
        assert rel(ev.value, math.cosh(2.0)) < 1e-12

    def test_erfc_identity(self):
        # E_{1/2,1}(-1) = e * erfc(1); math.erfc is the independent oracle.
        ev = ml2(TwoParamML(0.5, 1.0), -1.0)
        assert rel(ev.value, math.e * math.erfc(1.0)) < 1e-9
        assert rel(ev.value, E_TIMES_ERFC1) < 1e-9

    def test_at_zero(self):
        assert ml2(TwoParamML(1.7, 2.3), 0.0).value == recip_gamma(2.3)
        ev = ml2(TwoParamML(1.7, 2.3), 0.0)
        assert ev.converged and ev.tail_bound == 0.0

    def test_alternating_cancellation_floor(self):
        # Severe cancellation: the naive sum of |terms| reaches e**20.
        ev = ml2(TwoParamML(1.0, 1.0), -20.0)
        assert ev.converged
        assert abs(ev.value - math.exp(-20.0)) <= 1e-6

    def test_extreme_cancellation(self):
        # At x = -60 the term noise dwarfs the value by ~35 orders of
        # magnitude; the extended-precision path must resolve it and
        # report a tail bound consistent with the returned value.
        ev = ml2(TwoParamML(1.0, 1.0), -60.0)
        assert ev.converged
        assert rel(ev.value, math.exp(-60.0)) < 1e-12
        assert ev.tail_bound <= 1e-12 * max(1.0, abs(ev.value))

    def test_nonpositive_beta_uses_reciprocal_convention(self):
        # E_{1,-1}(x) has its first two gamma factors at poles:
        # sum_{n>=2} x**n/Gamma(n-1) = x**2 e**x.
        ev = ml2(TwoParamML(1.0, -1.0), 0.5)
        assert ev.converged
        assert rel(ev.value, 0.25 * math.exp(0.5)) < 1e-12

    def test_max_terms_exhaustion_is_flagged(self):
        ev = ml2(TwoParamML(1.0, 1.0), 10.0, max_terms=3)
        assert not ev.converged
        assert ev.tail_bound == math.inf

    def test_positivity_and_monotonicity(self):
        p = TwoParamML(0.8, 1.2)
        prev = 0.0
        for i in range(21):
            z = 5.0 * i / 20
            v = ml2(p, z).value
            assert v > 0.0
            assert v > prev or i == 0
            prev = v

    @pytest.mark.parametrize(
        "alpha,beta,x",
        [(1.0, 1.0, 1.0), (0.5, 1.0, 2.0), (2.0, 1.0, 4.0),
         (1.5, 2.5, 3.0), (1.0, 1.0, -3.0), (0.7, 0.9, -2.0)])
    def test_tail_soundness(self, alpha, beta, x):
        # Doubling the term budget moves the value by at most the
        # certified tail bound.
        ev = ml2(TwoParamML(alpha, beta), x)
        assert ev.converged
        longer = ml2(TwoParamML(alpha, beta), x, tol=1e-15,
                     max_terms=2 * ev.terms_used)
        slack = 2e-15 * max(1.0, abs(ev.value))
        assert abs(longer.value - ev.value) <= ev.tail_bound + slack

    @pytest.mark.parametrize(
        "alpha,beta,x",
        [(1.0, 1.0, 1.0), (0.5, 1.0, -1.0), (2.0, 3.0, 5.0), (1.0, 1.0, -5.0)])
    def test_against_brute_force_oracle(self, alpha, beta, x):
        ev = ml2(TwoParamML(alpha, beta), x)
        ref = float(oracles.mp_ml2(alpha, beta, x))
        assert rel(ev.value, ref) < 1e-12


class TestGeneralizedEvaluator:
    def test_at_zero(self):
        p = MLParameters(k=2.0, alpha=6.0, beta=7.0, gamma=2.0, q=1.0)
        ev = kml(p, 0.0)
        assert ev.value == 1.0 / k_gamma(7.0, 2.0)
        assert ev.converged

    def test_database_parameter_set(self):
        p = MLParameters(k=2.0, alpha=6.0, beta=7.0, gamma=2.0, q=1.0)
        assert rel(kml(p, 1.0).value, KML_DB_SET_Z1) < 1e-12

    def test_fractional_q_against_oracle(self):
        p = MLParameters(k=2.0, alpha=1.0, beta=2.0, gamma=1.5, q=0.5)
        for z in (-2.0, 0.3, 1.0, 3.0):
            ref = float(oracles.mp_kml(2.0, 1.0, 2.0, 1.5, 0.5, z))
            assert rel(kml(p, z).value, ref) < 1e-11

    def test_divergent_series_is_flagged(self):
        # q = 2 > 1 + alpha/k: term ratios grow without bound.
        p = MLParameters(k=1.0, alpha=0.5, beta=1.0, gamma=1.0, q=2.0)
        ev = kml(p, 2.0)
        assert not ev.converged

    @settings(max_examples=100)
    @given(alpha=st.floats(0.5, 5.0), beta=st.floats(0.5, 5.0),
           z=st.floats(-3.0, 3.0))
    def test_reduction_to_two_parameter(self, alpha, beta, z):
        # With k = q = gamma = 1 the Pochhammer factor cancels n! exactly.
        p = MLParameters(k=1.0, alpha=alpha, beta=beta, gamma=1.0, q=1.0)
        v1 = kml(p, z).value
        v2 = ml2(TwoParamML(alpha, beta), z).value
        assert rel(v1, v2) < 1e-10

    def test_q_one_matches_direct_product_series(self):
        # Independent route: direct-product step-k Pochhammer coefficients.
        p = MLParameters(k=2.0, alpha=1.5, beta=2.0, gamma=1.7, q=1.0)
        for z in (0.5, -1.5, 2.0):
            direct = 0.0
            for n in range(40):
                direct += (k_pochhammer(1.7, n, 2.0) * z**n
                           / (k_gamma(1.5 * n + 2.0, 2.0) * math.factorial(n)))
            assert rel(kml(p, z).value, direct) < 1e-10


class TestReductionCase:
    def test_classification(self):
        def params(k, q, gamma, beta, alpha=0.7):
            return MLParameters(k=k, alpha=alpha, beta=beta, gamma=gamma, q=q)

        assert reduction_case(params(1.0, 1.0, 1.0, 1.0)) is ReductionCase.ONE_PARAMETER
        assert reduction_case(params(1.0, 1.0, 1.0, 2.0)) is ReductionCase.TWO_PARAMETER
        assert reduction_case(params(1.0, 1.0, 2.0, 2.0)) is ReductionCase.PRABHAKAR
        assert reduction_case(params(1.0, 2.0, 1.5, 2.0)) is ReductionCase.GENERALIZED_ML
        assert reduction_case(params(2.0, 1.0, 2.0, 7.0, alpha=6.0)) is ReductionCase.K_ML
        assert reduction_case(params(3.0, 2.0, 1.5, 2.0, alpha=1.0)) is ReductionCase.GENERAL
