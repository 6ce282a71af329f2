"""Conjecture/lemma checkers: verdict mechanics, determinism, and the
internal cross-validation contract."""

import json

import pytest
from mpmath import mp, mpf

from rstirling.errors import CapacityError, DomainError
from rstirling.specfun import Q_prime
from rstirling.verify import (Verdict, check_nonneg_coeffs,
                              check_q_derivative_bounds,
                              check_scaled_error_bound, scan_zero_free_cone)


class TestNonnegCoeffs:
    def test_sinh_series_all_pass(self):
        report = check_nonneg_coeffs(1, 200)
        assert report.verdict is Verdict.ALL_PASS
        assert report.witness is None

    def test_r2_zero_coefficient_boundary(self):
        # c_3 = 0 exactly: zero must count as non-negative
        report = check_nonneg_coeffs(2, 3)
        assert report.verdict is Verdict.ALL_PASS

    def test_deterministic_and_precision_free(self):
        a = check_nonneg_coeffs(3, 120)
        mp.prec = 31  # exact checkers must not care about ambient precision
        try:
            b = check_nonneg_coeffs(3, 120)
        finally:
            mp.prec = 53
        assert a == b

    def test_capacity(self):
        with pytest.raises(CapacityError):
            check_nonneg_coeffs(1, 100, cap=10)

    def test_json_emission(self):
        report = check_nonneg_coeffs(2, 40)
        payload = json.loads(json.dumps(report.as_dict()))
        assert payload["verdict"] == "AllPass"
        assert payload["name"] == "nonneg-coeffs"
        assert payload["parameters"] == {"r": 2, "N": 40}


class TestScaledErrorBound:
    def test_all_pass_with_headroom(self):
        report = check_scaled_error_bound(1, [30, 60], bound=0.25)
        assert report.verdict is Verdict.ALL_PASS
        assert 0 < report.details["max_scaled_err"] < 0.25

    def test_absurdly_tight_bound_yields_witness(self):
        report = check_scaled_error_bound(2, [20], bound=1e-9)
        assert report.verdict is Verdict.COUNTEREXAMPLE_FOUND
        assert report.witness is not None
        assert abs(report.witness["scaled_err_F"]) > 1e-9

    def test_reproducible(self):
        a = check_scaled_error_bound(2, [24], bound=0.16)
        b = check_scaled_error_bound(2, [24], bound=0.16)
        assert a == b

    def test_empty_p_list(self):
        with pytest.raises(DomainError):
            check_scaled_error_bound(2, [])


class TestZeroFreeCone:
    def test_positive_axis_trivial(self):
        # B_1(x) = e^x - 1 > 0 on the axis
        report = scan_zero_free_cone(1, beta=0.5, y_steps=1)
        assert report.verdict is Verdict.ALL_PASS

    def test_narrow_cone_r2(self):
        report = scan_zero_free_cone(2, beta=0.1)
        assert report.verdict is Verdict.ALL_PASS
        assert report.details["min_normalized_modulus"] > 1e-6

    def test_wide_cone_never_claims_counterexample(self):
        # beta far beyond any valid aperture: sampling can only be
        # inconclusive, not a disproof
        report = scan_zero_free_cone(2, beta=10.0)
        assert report.verdict in (Verdict.ALL_PASS, Verdict.INCONCLUSIVE)

    def test_minimum_monotone_in_beta(self):
        narrow = scan_zero_free_cone(2, beta=0.1)
        wide = scan_zero_free_cone(2, beta=1.0)
        assert wide.details["min_normalized_modulus"] <= \
            narrow.details["min_normalized_modulus"]

    def test_domain(self):
        with pytest.raises(DomainError):
            scan_zero_free_cone(2, beta=0)


class TestQDerivativeBounds:
    def test_r_sweep_all_pass(self):
        report = check_q_derivative_bounds(range(1, 7))
        assert report.verdict is Verdict.ALL_PASS
        assert report.witness is None

    def test_slope_endpoints(self):
        with mp.workprec(128):
            assert abs(Q_prime(1, mpf("1e-6")) - mpf("0.5")) < mpf("1e-5")
            assert abs(Q_prime(3, mpf(500)) - 1) < mpf("1e-100")

    def test_impossible_slack_finds_witness(self):
        # force the lower bound above the true infimum 1/(r+1)
        report = check_q_derivative_bounds([1], slack=-0.3)
        assert report.verdict is Verdict.COUNTEREXAMPLE_FOUND
        assert report.witness["r"] == 1
