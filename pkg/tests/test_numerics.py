import math

import mpmath
import numpy as np
import pytest

from diskapprox.errors import AccuracyError
from diskapprox.numerics import (
    NEG_INF,
    RunningLogSum,
    integrate_01,
    log_add,
    log_beta,
    log_sum_exp,
    maximize_unimodal,
)


class TestLogSumExp:
    def test_two_ones(self):
        assert log_sum_exp([math.log(1.0), math.log(1.0)]) == pytest.approx(math.log(2.0), abs=1e-15)

    def test_empty_sum_is_zero(self):
        assert log_sum_exp([]) == NEG_INF

    def test_common_scale_factored_out(self):
        # three equal terms: log(3 * e^-1000) = -1000 + log 3
        got = log_sum_exp([-1000.0, -1000.0, -1000.0])
        assert got == pytest.approx(-1000.0 + math.log(3.0), abs=1e-12)

    def test_result_at_least_max(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            terms = list(rng.uniform(-800, 800, size=rng.integers(1, 12)))
            assert log_sum_exp(terms) >= max(terms)

    def test_permutation_invariant(self):
        rng = np.random.default_rng(11)
        terms = list(rng.uniform(-50, 50, size=9))
        base = log_sum_exp(terms)
        for _ in range(10):
            rng.shuffle(terms)
            assert log_sum_exp(terms) == pytest.approx(base, rel=1e-13)

    def test_monotone_in_terms(self):
        rng = np.random.default_rng(13)
        terms = []
        prev = NEG_INF
        for t in rng.uniform(-30, 30, size=40):
            terms.append(float(t))
            cur = log_sum_exp(terms)
            assert cur >= prev - 1e-13
            prev = cur

    def test_neg_inf_terms_ignored(self):
        assert log_sum_exp([NEG_INF, 0.0, NEG_INF]) == pytest.approx(0.0)
        assert log_sum_exp([NEG_INF, NEG_INF]) == NEG_INF

    def test_nan_rejected(self):
        with pytest.raises(ValueError):
            log_sum_exp([0.0, float("nan")])
        acc = RunningLogSum()
        with pytest.raises(ValueError):
            acc.add(float("nan"))

    def test_roundtrip_moderate_range(self):
        for v in [-700.0, -1.5, 0.0, 3.25, 700.0]:
            assert math.log(math.exp(v)) == pytest.approx(v, rel=1e-15, abs=1e-15)

    def test_log_add_matches(self):
        assert log_add(0.0, 0.0) == pytest.approx(math.log(2.0))
        assert log_add(NEG_INF, -3.0) == -3.0
        assert log_add(-3.0, NEG_INF) == -3.0


class TestLogBeta:
    def test_unit(self):
        assert log_beta(1.0, 1.0) == pytest.approx(0.0, abs=1e-15)

    def test_2_3(self):
        assert log_beta(2.0, 3.0) == pytest.approx(math.log(1.0 / 12.0), abs=1e-14)

    def test_4_half_exact_rational(self):
        # B(4, 1/2) = Gamma(4)Gamma(1/2)/Gamma(4.5) = 32/35 by the Gamma recursion
        assert log_beta(4.0, 0.5) == pytest.approx(math.log(32.0 / 35.0), abs=1e-14)

    def test_4_half_vs_quadrature(self):
        # independent route: B(4, 1/2) = int_0^1 t^3 (1-t)^(-1/2) dt
        got = integrate_01(lambda t: t**3 * (1.0 - t) ** -0.5, beta=-0.5, tol=1e-12)
        assert got == pytest.approx(log_beta(4.0, 0.5), abs=1e-10)

    def test_against_mpmath(self):
        mpmath.mp.dps = 40
        pts = [(0.5, 0.5), (1.0, 7.0), (3.0, 3.0), (12.5, 0.75),
               (200.0, 200.0), (1e4, 3.0), (1e6, 1e6), (1e6, 0.5),
               (37.0, 2e6), (9.9, 1e5), (10.0, 10.0)]
        for a, b in pts:
            ref = float(mpmath.log(mpmath.beta(a, b)))
            got = log_beta(a, b)
            assert abs(got - ref) <= 1e-12 * max(1.0, abs(ref))

    def test_symmetry_and_recurrence(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            a, b = rng.uniform(0.1, 1e4, size=2)
            assert log_beta(a, b) == pytest.approx(log_beta(b, a), rel=1e-14, abs=1e-12)
            lhs = log_beta(a + 1.0, b)
            rhs = log_beta(a, b) + math.log(a / (a + b))
            assert abs(lhs - rhs) <= 1e-12 * max(1.0, abs(rhs))

    def test_domain_errors(self):
        for a, b in [(0.0, 1.0), (1.0, 0.0), (-2.0, 3.0)]:
            with pytest.raises(ValueError):
                log_beta(a, b)


class TestIntegrate01:
    def test_polynomial(self):
        assert integrate_01(lambda r: r**3) == pytest.approx(math.log(0.25), abs=1e-12)

    def test_inverse_sqrt_endpoint(self):
        got = integrate_01(lambda r: (1.0 - r) ** -0.5, beta=-0.5)
        assert got == pytest.approx(math.log(2.0), abs=1e-10)

    def test_beta_kernel_matches_log_beta(self):
        got = integrate_01(lambda r: r**10 * (1.0 - r), gamma=10.0, beta=1.0)
        assert got == pytest.approx(log_beta(11.0, 2.0), abs=1e-10)

    def test_randomized_beta_kernels(self):
        rng = np.random.default_rng(20)
        for _ in range(100):
            a, b = rng.uniform(0.5, 50.0, size=2)
            got = integrate_01(
                lambda r, a=a, b=b: r ** (a - 1.0) * (1.0 - r) ** (b - 1.0),
                gamma=a - 1.0,
                beta=b - 1.0,
                tol=1e-10,
                vectorized=True,
            )
            assert abs(got - log_beta(a, b)) <= 1e-9

    def test_zero_integrand(self):
        assert integrate_01(lambda r: 0.0) == NEG_INF

    def test_deterministic(self):
        f = lambda r: math.exp(-10 * r) * (1 + math.sin(20 * r) ** 2)
        assert integrate_01(f) == integrate_01(f)

    def test_budget_exhaustion_carries_estimate(self):
        # near-hard singularity with a budget too small to certify 1e-10
        f = lambda r: r**-0.95
        with pytest.raises(AccuracyError) as exc:
            integrate_01(f, tol=1e-12, node_cap=400)
        err = exc.value
        assert err.best is not None and math.isfinite(err.best)
        assert err.achieved > err.required

    def test_bad_exponents(self):
        with pytest.raises(ValueError):
            integrate_01(lambda r: r, gamma=-1.0)
        with pytest.raises(ValueError):
            integrate_01(lambda r: r, beta=-1.5)


class TestMaximizeUnimodal:
    def test_symmetric_parabola(self):
        x, v = maximize_unimodal(lambda r: r * (1.0 - r), 0.0, 1.0, tol=1e-10)
        assert x == pytest.approx(0.5, abs=1e-8)
        assert v == pytest.approx(0.25, abs=1e-12)

    def test_cubic_weight(self):
        x, v = maximize_unimodal(lambda r: r**3 * (1.0 - r), 0.0, 1.0, tol=1e-10)
        assert x == pytest.approx(0.75, abs=1e-8)
        assert v == pytest.approx(27.0 / 256.0, abs=1e-12)

    def test_constant(self):
        x, v = maximize_unimodal(lambda r: 2.5, 0.0, 1.0)
        assert v == 2.5
        assert 0.0 <= x <= 1.0

    def test_empty_interval_rejected(self):
        with pytest.raises(ValueError):
            maximize_unimodal(lambda r: r, 1.0, 1.0)
        with pytest.raises(ValueError):
            maximize_unimodal(lambda r: r, 2.0, 1.0)

    def test_against_dense_grid(self):
        rng = np.random.default_rng(31)
        grid = np.linspace(1e-9, 1.0 - 1e-9, 100_000)
        for _ in range(25):
            n = int(rng.integers(1, 400))
            b = float(rng.uniform(0.2, 6.0))
            f = lambda r, n=n, b=b: n * math.log(r) + b * math.log1p(-r)
            x, v = maximize_unimodal(f, 1e-9, 1.0 - 1e-9, tol=1e-9)
            dense = n * np.log(grid) + b * np.log1p(-grid)
            k = int(np.argmax(dense))
            assert abs(x - grid[k]) <= 2e-5
            assert v >= dense[k] - 1e-10

    def test_endpoint_maximum(self):
        # strictly increasing: maximum at the right endpoint
        x, v = maximize_unimodal(lambda r: r, 0.0, 1.0, tol=1e-10)
        assert v == pytest.approx(1.0, abs=1e-7)
