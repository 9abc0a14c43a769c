import itertools
import math

import numpy as np
import pytest

from diskapprox.errors import InfeasibleSpaceError, UnsupportedSpaceError
from diskapprox.functions import exp_scale, geometric, lacunary, polynomial, truncate
from diskapprox.integer_approx import (
    GaussianIntPolynomial,
    infimum_probe,
    integer_approx_error,
    lacunary_construct,
    obstruction_lower_bound,
    obstruction_profile,
    round_to_integer_poly,
)
from diskapprox.numerics import NEG_INF
from diskapprox.spaces import (
    BMOA,
    Bergman,
    BlochType,
    Dirichlet,
    DirichletWeights,
    Hardy,
    monomial_norm,
)

H2 = Hardy(2.0)
B2 = Bergman(2.0)


class TestRounding:
    def test_exp_prefix_with_tie(self):
        # c_2 = 0.5 rounds away from zero
        poly = round_to_integer_poly(exp_scale(1.0), 4)
        assert poly.to_json_list() == [[1, 0], [1, 0], [1, 0]]
        assert poly.degree == 2

    def test_integer_polynomial_is_fixed(self):
        poly = round_to_integer_poly(polynomial([2, 0, -3 + 1j]), 3)
        assert poly.to_json_list() == [[2, 0], [0, 0], [-3, 1]]

    def test_geometric_prefix(self):
        poly = round_to_integer_poly(geometric(0.5), 3)
        assert poly.to_json_list() == [[1, 0], [1, 0]]

    def test_negative_tie_rounds_away(self):
        poly = round_to_integer_poly(polynomial([-0.5, 1.5]), 2)
        assert poly.to_json_list() == [[-1, 0], [2, 0]]

    def test_zero_polynomial(self):
        poly = round_to_integer_poly(polynomial([0.2, -0.3]), 2)
        assert poly.degree == -1
        assert poly.coefficients == ()

    def test_residuals_bounded(self):
        rng = np.random.default_rng(9)
        for _ in range(30):
            coeffs = list(rng.normal(scale=4, size=6) + 1j * rng.normal(scale=4, size=6))
            poly = round_to_integer_poly(polynomial(coeffs), 6)
            for k, c in enumerate(coeffs):
                r = c - poly.coeff(k)
                assert abs(r.real) <= 0.5 + 1e-12
                assert abs(r.imag) <= 0.5 + 1e-12
                assert abs(r) <= math.sqrt(2.0) / 2.0 + 1e-12

    def test_leading_zero_rejected(self):
        with pytest.raises(ValueError):
            GaussianIntPolynomial(((1, 0), (0, 0)))


class TestObstruction:
    def test_exp_in_hardy(self):
        # the half-integer coefficient c_2 blocks integer approximation
        got = obstruction_lower_bound(H2, exp_scale(1.0), 5)
        assert got == pytest.approx(math.log(0.5), abs=1e-12)

    def test_integer_polynomial_unobstructed(self):
        assert obstruction_lower_bound(H2, polynomial([1, 2, 3]), 7) == NEG_INF

    def test_exp_in_bergman_picks_largest_term(self):
        got = obstruction_lower_bound(B2, exp_scale(1.0), 5)
        expect = math.log(0.5) + 0.5 * math.log(1 / 3)  # k = 2 dominates
        assert got == pytest.approx(expect, abs=1e-12)
        # runner-up at k = 3 is smaller: (1/6) * ||z^3|| = 1/12
        assert math.exp(got) > 1 / 12

    def test_profile_matches_pointwise(self):
        rows = obstruction_profile(B2, exp_scale(1.0), 30)
        for n in (1, 2, 5, 17, 30):
            assert rows[n - 1] == pytest.approx(
                obstruction_lower_bound(B2, exp_scale(1.0), n), abs=1e-12
            )

    def test_soundness_against_exact_error(self):
        for space in (H2, B2, Dirichlet(2.0, DirichletWeights.power(-1.0))):
            for oracle in (exp_scale(1.0), geometric(0.5), polynomial([0.3, 1.7])):
                for n in (1, 2, 5, 20):
                    lower = obstruction_lower_bound(space, oracle, n)
                    exact = integer_approx_error(space, oracle, n)
                    assert lower <= exact + 1e-9


class TestIntegerError:
    def test_exp_in_hardy_dominated_by_half(self):
        got = integer_approx_error(H2, exp_scale(1.0), 5)
        assert got >= math.log(0.5)
        brute = 0.25 + (1 / 6) ** 2 + (1 / 24) ** 2 + sum(
            math.exp(-2 * math.lgamma(k + 1)) for k in range(5, 80)
        )
        assert got == pytest.approx(0.5 * math.log(brute), abs=1e-10)

    def test_zero_function(self):
        assert integer_approx_error(H2, polynomial([0.0]), 3) == NEG_INF

    def test_non_separable_rejected(self):
        with pytest.raises(UnsupportedSpaceError):
            integer_approx_error(BMOA(), exp_scale(1.0), 3)

    def test_finite_lacunary_tail_vanishes(self):
        orc = lacunary([3, 15, 63])
        assert integer_approx_error(B2, orc, 64) == NEG_INF
        mid = integer_approx_error(B2, orc, 16)
        assert math.exp(mid) == pytest.approx(1.0 / 8.0, rel=1e-12)  # ||z^63|| left


class TestExhaustiveBoxOracle:
    def test_rounding_is_optimal_in_box(self):
        # enumerate every Gaussian-integer polynomial with |re|,|im| <= 2
        # per coefficient, degree < 4, and compare with the rounded one
        oracle = exp_scale(1.0)
        n = 4
        coeffs = [tc.value for tc in truncate(oracle, n)]
        tail = sum(
            math.exp(-2 * math.lgamma(k + 1)) for k in range(n, 120)
        )
        choices = [complex(re, im) for re in range(-2, 3) for im in range(-2, 3)]
        dists = [
            np.array([abs(c - a) ** 2 for a in choices]) for c in coeffs
        ]
        best = min(
            d0 + d1 + d2 + d3
            for d0 in dists[0]
            for d1 in dists[1]
            for d2 in dists[2]
            for d3 in dists[3]
        )
        exhaustive = 0.5 * math.log(best + tail)
        rounded = integer_approx_error(H2, oracle, n)
        assert rounded == pytest.approx(exhaustive, abs=1e-9)


class TestLacunaryConstruction:
    def test_bergman_minimal_exponents(self):
        exponents, oracle = lacunary_construct(B2, 3)
        assert exponents == (3, 15, 63)
        assert oracle.coeff(3) == 1.0 and oracle.coeff(15) == 1.0
        assert oracle.coeff(14) == 0j

    def test_norm_rungs_hold(self):
        exponents, _ = lacunary_construct(B2, 6)
        for k, n_k in enumerate(exponents, start=1):
            assert monomial_norm(B2, n_k).log_upper <= -k * math.log(2.0) + 1e-9

    def test_tail_error_decreases_and_matches_tail_oracle(self):
        errors = []
        for count in range(1, 7):
            exponents, oracle = lacunary_construct(B2, count)
            err = integer_approx_error(B2, oracle, exponents[-1] + 1)
            # brute-force tail over the continued exponent rule n_k = 4^k - 1
            brute = sum(4.0 ** (-k) for k in range(count + 1, 60))
            assert math.exp(err) == pytest.approx(math.sqrt(brute), rel=1e-9)
            errors.append(err)
        assert all(b < a for a, b in zip(errors, errors[1:]))

    def test_infeasible_spaces_raise(self):
        for space in (H2, BMOA(), Dirichlet(2.0, DirichletWeights.ones())):
            with pytest.raises(InfeasibleSpaceError):
                lacunary_construct(space, 1)

    def test_dirichlet_power_weights(self):
        space = Dirichlet(2.0, DirichletWeights.power(-4.0))
        exponents, _ = lacunary_construct(space, 2)
        # (n+1)^(-2) <= 2^(-k) holds first at n = 1 then n = 2
        assert exponents == (1, 2)

    def test_approximable_iff_coefficients_integral(self):
        # once the integer error vanishes along the run, every materialised
        # coefficient sits on the Gaussian lattice
        exponents, oracle = lacunary_construct(B2, 4)
        errs = [
            integer_approx_error(B2, oracle, nk + 1) for nk in exponents
        ]
        assert all(b < a for a, b in zip(errs, errs[1:]))
        for tc in truncate(oracle, exponents[-1] + 1):
            c = tc.value
            assert abs(c.real - round(c.real)) < 1e-9
            assert abs(c.imag - round(c.imag)) < 1e-9


class TestInfimumProbe:
    def test_hardy_bounded_below(self):
        log_inf, trend = infimum_probe(H2, 1000)
        assert log_inf == 0.0
        assert trend == "bounded-below"

    def test_bergman_decreasing(self):
        log_inf, trend = infimum_probe(B2, 1000)
        assert math.exp(log_inf) == pytest.approx(1001 ** -0.5, rel=1e-12)
        assert trend == "decreasing-to-zero"

    def test_bloch_alpha_two_decreasing(self):
        # norms fall like n^(1-alpha) for alpha > 1
        _, trend = infimum_probe(BlochType(2.0), 1000)
        assert trend == "decreasing-to-zero"

    def test_small_window_rejected(self):
        with pytest.raises(ValueError):
            infimum_probe(H2, 50)
