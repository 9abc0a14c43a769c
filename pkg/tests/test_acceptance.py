"""End-to-end acceptance checks, one test per criterion.

Every criterion prints a single PASS/FAIL line (run with ``pytest -s`` to
see them) and asserts at its stated tolerance.  Shared grids are built once
per session.

Known red: criterion 1 fixes a 5 percent tolerance on the norm-root
deviation over n in [200, 1000], but for the growth-weighted circle-mean
space with (p, q, lam) = (1, 2, 1) the true deviation at n = 200 is
|B(201, 3)^(1/200) - 1| = 0.0733.  The value follows exactly from the
defining integral (||z^n|| = B(n+1, 3) there), so the bound is not
attainable by any correct implementation; the test states the facts and is
left honestly failing.
"""

import math

import pytest

from diskapprox.approximation import approx_profile, exact_error
from diskapprox.errors import InfeasibleSpaceError
from diskapprox.estimators import build_report, entirety_indicator
from diskapprox.functions import (
    cos_sqrt,
    exp_scale,
    geometric,
    parse_function,
    power_order,
    synthetic,
)
from diskapprox.integer_approx import (
    integer_approx_error,
    lacunary_construct,
    obstruction_profile,
)
from diskapprox.spaces import (
    BMOA,
    Bergman,
    BlochType,
    Dirichlet,
    DirichletWeights,
    Hardy,
    default_catalog,
    monomial_norm,
)

H2 = Hardy(2.0)
B2 = Bergman(2.0)
D_HARMONIC = Dirichlet(2.0, DirichletWeights.power(-1.0))

GRID_SPACES = (H2, B2, D_HARMONIC)
GRID_ORACLES = (
    exp_scale(1.0),
    exp_scale(2.0),
    cos_sqrt(),
    synthetic(1.0, 1.0),
    synthetic(2.0, 1.0),
    power_order(0.5),
    power_order(2.0),
)
SANDWICH_SPACES = (H2, B2, BlochType(1.0), BMOA(), D_HARMONIC)
SANDWICH_ORACLES = (
    exp_scale(1.0),
    exp_scale(2.0),
    cos_sqrt(),
    synthetic(1.0, 1.0),
    geometric(0.5),
)


def _line(criterion, passed, detail):
    print(f"ACCEPTANCE {criterion}: {'PASS' if passed else 'FAIL'} - {detail}")


@pytest.fixture(scope="module")
def growth_grid():
    """The 7-function by 3-space recovery grid at n_max = 2000."""
    grid = {}
    for space in GRID_SPACES:
        for oracle in GRID_ORACLES:
            grid[(space.canonical(), oracle.name)] = (
                build_report(space, oracle, n_max=2000, rho_for_type=oracle.order),
                oracle,
            )
    return grid


def test_criterion_1_norm_root_limit():
    worst = {}
    for space in default_catalog():
        devs = [
            abs(math.exp(monomial_norm(space, n).log_value / n) - 1.0)
            for n in range(200, 1001)
        ]
        worst[space.canonical()] = max(devs)
    failures = {k: v for k, v in worst.items() if v > 0.05}
    detail = "; ".join(f"{k} max|root-1|={v:.4f}" for k, v in sorted(worst.items()))
    _line(1, not failures, detail)
    assert not failures, (
        f"norm-root deviation exceeds 0.05 in: {failures} "
        "(the hl:p=1,q=2,lambda=1 value is exact for its defining integral; "
        "see the module docstring)"
    )


def test_criterion_2_sandwich():
    violations = []
    for space in SANDWICH_SPACES:
        for oracle in SANDWICH_ORACLES:
            profile = approx_profile(space, oracle, 200)
            for e in profile.entries:
                if e.log_lower > e.log_upper + 1e-9:
                    violations.append((space.canonical(), oracle.name, e.n, "l>u"))
                if e.log_exact is not None:
                    if e.log_lower > e.log_exact + 1e-9:
                        violations.append((space.canonical(), oracle.name, e.n, "l>e"))
                    if e.log_exact > e.log_upper + 1e-9:
                        violations.append((space.canonical(), oracle.name, e.n, "e>u"))
    _line(
        2,
        not violations,
        f"{len(SANDWICH_SPACES) * len(SANDWICH_ORACLES)} pairs, n <= 200, "
        f"{len(violations)} violations",
    )
    assert not violations


def test_criterion_3_order_recovery(growth_grid):
    deltas = {}
    for key, (report, oracle) in growth_grid.items():
        assert report.rho_hat is not None, key
        deltas[key] = abs(report.rho_hat - oracle.order) / oracle.order
    worst = max(deltas.values())
    _line(3, worst <= 0.05, f"21 cells, worst order error {worst:.3%} (limit 5%)")
    assert worst <= 0.05, deltas


def test_criterion_4_type_recovery(growth_grid):
    deltas = {}
    for key, (report, oracle) in growth_grid.items():
        assert report.sigma_hat is not None, key
        deltas[key] = abs(report.sigma_hat - oracle.type_) / oracle.type_
    worst = max(deltas.values())
    _line(4, worst <= 0.07, f"21 cells, worst type error {worst:.3%} (limit 7%)")
    assert worst <= 0.07, deltas


def test_criterion_5_entirety_discrimination():
    oracles = list(GRID_ORACLES) + [geometric(0.5), geometric(0.9), geometric(0.99)]
    wrong = []
    inconclusive = []
    for space in GRID_SPACES:
        for oracle in oracles:
            profile = approx_profile(space, oracle, 500)
            _, verdict = entirety_indicator(profile)
            want = "entire" if oracle.entire else "not_entire"
            if verdict == "inconclusive":
                inconclusive.append((space.canonical(), oracle.name))
            elif verdict != want:
                wrong.append((space.canonical(), oracle.name, verdict))
    ok = not wrong and not inconclusive
    _line(
        5,
        ok,
        f"30 cells at n_max=500: {len(wrong)} wrong, {len(inconclusive)} inconclusive",
    )
    assert ok, (wrong, inconclusive)


def test_criterion_6_exact_spot_checks():
    e1 = exact_error(H2, geometric(0.5), 1)
    expect1 = -0.5 * math.log(3.0)
    ok1 = abs(e1 - expect1) <= 1e-9

    brute = sum(math.exp(-2.0 * math.lgamma(k + 1)) for k in range(3, 203))
    e3 = exact_error(H2, exp_scale(1.0), 3)
    expect3 = 0.5 * math.log(brute)
    ok3 = abs(e3 - expect3) <= 1e-9

    z3 = math.exp(monomial_norm(B2, 3).log_value)
    ok_norm = abs(z3 - 0.5) <= 1e-15

    _line(
        6,
        ok1 and ok3 and ok_norm,
        f"E_1(geom 1/2)={math.exp(e1):.12f}, E_3(exp)={math.exp(e3):.12f}, "
        f"||z^3||={z3:.12f}",
    )
    assert ok1 and ok3 and ok_norm


def test_criterion_7_integer_phenomena():
    # (a) the half-integer coefficient keeps the obstruction at 1/2
    rows = obstruction_profile(H2, exp_scale(1.0), 200)
    ok_a = all(rows[n - 1] >= math.log(0.5) - 1e-12 for n in range(3, 201))

    # (b) minimal gap series in the area-integral space, error below the
    # brute-force tail constant and strictly decreasing in the prefix length
    exponents, oracle = lacunary_construct(B2, 3)
    ok_b = exponents == (3, 15, 63)
    tail_constant = math.sqrt(sum(4.0 ** (-k) for k in range(4, 80)))  # 0.07217
    err3 = math.exp(integer_approx_error(B2, oracle, 64))
    ok_b = ok_b and err3 <= tail_constant + 1e-12
    errors = []
    for count in range(1, 7):
        exps, orc = lacunary_construct(B2, count)
        errors.append(integer_approx_error(B2, orc, exps[-1] + 1))
    ok_b = ok_b and all(b < a for a, b in zip(errors, errors[1:]))

    # (c) spaces with unit monomial norms admit no construction
    try:
        lacunary_construct(H2, 1)
        ok_c = False
    except InfeasibleSpaceError:
        ok_c = True

    _line(
        7,
        ok_a and ok_b and ok_c,
        f"obstruction>=0.5 on [3,200]: {ok_a}; exponents {exponents}, "
        f"error {err3:.6f} <= {tail_constant:.6f}, decreasing: {ok_b}; "
        f"infeasible raises: {ok_c}",
    )
    assert ok_a and ok_b and ok_c


def test_criterion_8_bmoa_bracket():
    lo_limit = math.sqrt(2.0 / math.pi) - 1e-6
    hi_limit = 2.0 + 1e-6
    ok = True
    worst_width = 0.0
    for n in range(1, 51):
        v = monomial_norm(BMOA(), n)
        lower, upper = math.exp(v.log_lower), math.exp(v.log_upper)
        width = (upper - lower) / lower
        worst_width = max(worst_width, width)
        if not (lo_limit <= lower <= upper <= hi_limit and width <= 1e-6):
            ok = False
    _line(8, ok, f"n in [1,50], brackets in [{lo_limit:.6f}, {hi_limit:.6f}], "
                 f"worst relative width {worst_width:.2e}")
    assert ok


def test_criterion_9_cross_check_closure(growth_grid):
    worst_rho = worst_sigma = 0.0
    for key, (report, _) in growth_grid.items():
        assert report.rho_coeff is not None and report.sigma_coeff is not None, key
        worst_rho = max(
            worst_rho, abs(report.rho_hat - report.rho_coeff) / report.rho_coeff
        )
        worst_sigma = max(
            worst_sigma, abs(report.sigma_hat - report.sigma_coeff) / report.sigma_coeff
        )
    ok = worst_rho <= 0.02 and worst_sigma <= 0.03
    _line(
        9,
        ok,
        f"route agreement: order {worst_rho:.4%} (limit 2%), "
        f"type {worst_sigma:.4%} (limit 3%)",
    )
    assert ok
