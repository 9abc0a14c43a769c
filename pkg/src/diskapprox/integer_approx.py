"""Approximation by polynomials with Gaussian-integer coefficients.

Whether a function can be approached by integer-coefficient polynomials in
a given space hinges entirely on the monomial norms:

* when ``inf ||z^n|| > 0`` the coefficientwise obstruction
  ``max_k dist(c_k, Z[i]) ||z^k||`` bounds the distance to every
  integer-coefficient polynomial from below, so only integer-coefficient
  polynomials are approximable;
* when ``liminf ||z^n|| = 0`` a gap series ``sum z^(n_k)`` with
  ``||z^(n_k)|| <= 2^(-k)`` lies in the space and its integer partial sums
  converge to it, so nontrivial approximable functions exist.

``lacunary_construct`` finds the minimal such exponent sequence by doubling
and bisection against the monomial norms, and returns the gap-series oracle
whose support keeps extending lazily under the same rule (so tail norms of
the infinite series are computable past the requested prefix).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .approximation import _tail_log_sum, default_tail_budget
from .errors import InfeasibleSpaceError, UnsupportedSpaceError
from .functions import CoefficientOracle, SupportCapped, truncate
from .numerics import NEG_INF, RunningLogSum
from .spaces import Space, monomial_norm, separable_weights

__all__ = [
    "GaussianIntPolynomial",
    "round_to_integer_poly",
    "obstruction_lower_bound",
    "obstruction_profile",
    "integer_approx_error",
    "lacunary_construct",
    "infimum_probe",
    "LACUNARY_SEARCH_CAP",
]

LACUNARY_SEARCH_CAP = 1 << 30
# equality tolerance when a closed-form norm sits exactly on the 2^-k rung
_NORM_EQUALITY_SLACK = 1e-12


@dataclass(frozen=True)
class GaussianIntPolynomial:
    """Polynomial with Gaussian-integer coefficients, stored as (re, im) pairs."""

    coefficients: tuple  # ((re, im), ...) with trailing zeros trimmed

    def __post_init__(self):
        if self.coefficients and self.coefficients[-1] == (0, 0):
            raise ValueError("leading coefficient must be nonzero")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1  # -1 for the zero polynomial

    def coeff(self, k: int) -> complex:
        if 0 <= k < len(self.coefficients):
            re, im = self.coefficients[k]
            return complex(re, im)
        return 0j

    def to_json_list(self) -> list:
        return [[re, im] for re, im in self.coefficients]

    @staticmethod
    def from_pairs(pairs) -> "GaussianIntPolynomial":
        items = [(int(re), int(im)) for re, im in pairs]
        while items and items[-1] == (0, 0):
            items.pop()
        return GaussianIntPolynomial(tuple(items))


def _round_half_away(x: float) -> int:
    # ties round away from zero for cross-platform determinism
    return int(math.floor(x + 0.5)) if x >= 0 else int(math.ceil(x - 0.5))


def round_to_integer_poly(oracle: CoefficientOracle, n: int) -> GaussianIntPolynomial:
    """Componentwise rounding of c_0..c_(n-1) to Gaussian integers.

    In coefficient-separable norms this rounding is the closest point of the
    integer-coefficient polynomial lattice to the partial sum.
    """
    pairs = []
    for tc in truncate(oracle, n):
        if tc.value is None:
            if tc.log_magnitude < 0:
                pairs.append((0, 0))  # underflowed magnitude rounds to zero
                continue
            raise OverflowError(
                f"coefficient {tc.n} of {oracle.name} is not materialisable"
                " in linear scale"
            )
        pairs.append((_round_half_away(tc.value.real), _round_half_away(tc.value.imag)))
    return GaussianIntPolynomial.from_pairs(pairs)


def _log_integer_distance(tc) -> float:
    """log of the distance from one coefficient to the Gaussian integers.

    Coefficients too small to materialise are their own distance (the
    nearest lattice point is 0); too-large ones are skipped by returning
    -inf, which keeps lower bounds built from this sound.
    """
    if tc.log_magnitude == NEG_INF:
        return NEG_INF
    if tc.value is None:
        return tc.log_magnitude if tc.log_magnitude < 0 else NEG_INF
    re = abs(tc.value.real - _round_half_away(tc.value.real))
    im = abs(tc.value.imag - _round_half_away(tc.value.imag))
    d = math.hypot(re, im)
    return math.log(d) if d > 0 else NEG_INF


def obstruction_lower_bound(space: Space, oracle: CoefficientOracle, n: int) -> float:
    """log lower bound on the distance from f to every integer-coefficient
    polynomial of degree below n: ``max_(k<n) dist(c_k, Z[i]) ||z^k||``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    best = NEG_INF
    for tc in truncate(oracle, n):
        d = _log_integer_distance(tc)
        if d == NEG_INF:
            continue
        best = max(best, d + monomial_norm(space, tc.n).log_lower)
    return best


def obstruction_profile(space: Space, oracle: CoefficientOracle, n_max: int) -> list:
    """Obstruction lower bounds for n = 1..n_max in one coefficient scan."""
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    rows = []
    best = NEG_INF
    for tc in truncate(oracle, n_max):
        d = _log_integer_distance(tc)
        if d != NEG_INF:
            best = max(best, d + monomial_norm(space, tc.n).log_lower)
        rows.append(best)
    return rows


def integer_approx_error(
    space: Space,
    oracle: CoefficientOracle,
    n: int,
    tail_budget: int | None = None,
) -> float:
    """log of ``||f - round(S_n f)||`` in a coefficient-separable space.

    Exact: the head sums the p-powers of the rounding residuals, the tail is
    the usual best-approximation tail.
    """
    sep = separable_weights(space)
    if sep is None:
        raise UnsupportedSpaceError(
            f"integer approximation error needs a coefficient-separable norm,"
            f" not {space.canonical()}"
        )
    p, log_alpha = sep
    acc = RunningLogSum()
    for tc in truncate(oracle, n):
        if tc.value is None:
            if tc.log_magnitude < 0:
                # rounds to zero; the whole coefficient is the residual
                acc.add(p * tc.log_magnitude + log_alpha(tc.n))
                continue
            raise OverflowError(
                f"coefficient {tc.n} of {oracle.name} is not materialisable"
            )
        c = tc.value
        residual = abs(
            complex(
                c.real - _round_half_away(c.real), c.imag - _round_half_away(c.imag)
            )
        )
        if residual > 0:
            acc.add(p * math.log(residual) + log_alpha(tc.n))

    budget = tail_budget if tail_budget is not None else default_tail_budget(n)

    def term(k):
        logmag, _ = oracle.log_coeff(k)
        if logmag == NEG_INF:
            return NEG_INF
        return p * logmag + log_alpha(k)

    tail = _tail_log_sum(term, oracle, n, budget)
    acc.add(tail)
    return acc.value / p if acc.value != NEG_INF else NEG_INF


# ---------------------------------------------------------------------------
# Lacunary construction


def _norm_upper(space: Space, n: int) -> float:
    return monomial_norm(space, n).log_upper


def _minimal_exponent(space: Space, threshold_log: float, start: int) -> int:
    """Minimal n >= start with ||z^n|| <= threshold, by doubling + bisection.

    Assumes the norms are eventually nonincreasing past the threshold
    crossing (true of every catalog space whose norms vanish); a final unit
    walk-down keeps the result minimal under mild non-monotonicity.
    """
    limit = threshold_log + _NORM_EQUALITY_SLACK

    def ok(n):
        return _norm_upper(space, n) <= limit

    if ok(start):
        return start
    lo = start
    hi = start
    while True:
        hi = min(2 * hi if hi > 0 else 1, LACUNARY_SEARCH_CAP)
        if ok(hi):
            break
        lo = hi
        if hi >= LACUNARY_SEARCH_CAP:
            raise InfeasibleSpaceError(
                f"no monomial norm below exp({threshold_log:.4g}) found up to"
                f" n = {LACUNARY_SEARCH_CAP} in {space.canonical()}: the infimum"
                " of ||z^n|| appears to be positive, so nontrivial functions"
                " cannot be approximated by integer-coefficient polynomials",
                log_inf=_norm_upper(space, LACUNARY_SEARCH_CAP),
            )
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if ok(mid):
            hi = mid
        else:
            lo = mid
    while hi - 1 >= start and ok(hi - 1):
        hi -= 1
    return hi


class _LacunaryOracleState:
    """Lazily extended exponent list with ||z^(n_k)|| <= 2^(-k)."""

    def __init__(self, space: Space):
        self.space = space
        self.exponents: list = []
        self.members: set = set()
        self.capped = False

    def extend_to_count(self, count: int) -> None:
        while len(self.exponents) < count and not self.capped:
            k = len(self.exponents) + 1
            start = self.exponents[-1] + 1 if self.exponents else 1
            try:
                n_k = _minimal_exponent(self.space, -k * math.log(2.0), start)
            except InfeasibleSpaceError:
                if not self.exponents:
                    raise
                self.capped = True
                return
            self.exponents.append(n_k)
            self.members.add(n_k)

    def extend_past_index(self, n: int) -> None:
        while not self.capped and (not self.exponents or self.exponents[-1] < n):
            self.extend_to_count(len(self.exponents) + 1)


def lacunary_construct(space: Space, count: int):
    """Minimal exponents n_1 < ... < n_count with ``||z^(n_k)|| <= 2^(-k)``,
    plus the unit-coefficient gap-series oracle ``sum_k z^(n_k)``.

    The oracle's support keeps extending past ``count`` under the same rule,
    so tail norms of the infinite series stay computable (enumeration stops
    at the search cap, where tail summation falls back to its certified
    geometric remainder).  Raises InfeasibleSpaceError when the space has no
    vanishing monomial-norm subsequence.
    """
    if count < 1:
        raise ValueError("count must be at least 1")
    state = _LacunaryOracleState(space)
    state.extend_to_count(count)
    if len(state.exponents) < count:
        raise InfeasibleSpaceError(
            f"lacunary search capped after {len(state.exponents)} exponents"
            f" in {space.canonical()}",
            log_inf=None,
        )
    exponents = tuple(state.exponents[:count])

    def fn(n):
        state.extend_past_index(n)
        if n in state.members:
            return 0.0, 0.0
        if state.capped and state.exponents and n > state.exponents[-1]:
            # membership is undecidable past the search cap
            raise SupportCapped(
                f"exponent enumeration capped at {state.exponents[-1]}"
            )
        return NEG_INF, 0.0

    def support(start):
        def gen():
            i = 0
            while True:
                if i >= len(state.exponents):
                    state.extend_to_count(len(state.exponents) + 1)
                    if i >= len(state.exponents):
                        raise SupportCapped(
                            f"exponent enumeration capped after {len(state.exponents)}"
                        )
                e = state.exponents[i]
                if e >= start:
                    yield e
                i += 1

        return gen()

    oracle = CoefficientOracle(
        f"lacunary[{space.canonical()}]",
        fn,
        radius=1.0,
        is_integer=True,
        support_fn=support,
    )
    return exponents, oracle


@lru_cache(maxsize=None)
def infimum_probe(space: Space, n_max: int = 1000):
    """(min log ||z^n|| over n <= n_max, trend classification).

    The trend is the least-squares slope of log ||z^n|| against log n over
    the final decade: below -0.1 reads as decreasing-to-zero, else
    bounded-below.
    """
    if n_max < 100:
        raise ValueError("need n_max >= 100 for a meaningful probe")
    logs = [monomial_norm(space, n).log_value for n in range(n_max + 1)]
    log_inf = min(logs)
    sx = sy = sxx = sxy = 0.0
    count = 0
    for n in range(max(1, n_max // 10), n_max + 1):
        x = math.log(n)
        y = logs[n]
        sx += x
        sy += y
        sxx += x * x
        sxy += x * y
        count += 1
    slope = (count * sxy - sx * sy) / (count * sxx - sx * sx)
    trend = "decreasing-to-zero" if slope < -0.1 else "bounded-below"
    return log_inf, trend
