"""Best polynomial approximation errors E_n(f) = inf over degree < n.

Three quantities are produced per index, all in log scale:

* a lower bound ``|c_n| ||z^n||`` (the coefficient sandwich),
* the exact error in coefficient-separable spaces, where truncation is the
  optimal approximant and ``E_n(f) = (sum_(k>=n) |c_k|^p a_k)^(1/p)``,
* an upper bound ``sum_(k>=n) |c_k| ||z^k||`` from approximating by the
  partial sum.

Tail sums follow a shared stopping rule: terms are accumulated until the
current term drops below 1e-18 of the running sum after at least eight
consecutive decreases, capped at a per-index budget (default ``10 n + 200``
summed indices).  Whenever the last observed term ratios stay below one, a
geometric remainder bound is folded in, which certifies the tail even when
the cap cuts the scan short; otherwise an AccuracyError carrying the partial
sum is raised.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import AccuracyError, UnsupportedSpaceError
from .functions import CoefficientOracle, SupportCapped
from .numerics import NEG_INF, RunningLogSum
from .spaces import Space, monomial_norm, separable_weights

__all__ = [
    "ApproxEntry",
    "ApproxProfile",
    "lower_bound",
    "upper_bound",
    "exact_error",
    "approx_profile",
    "default_tail_budget",
]

_LOG_STOP = math.log(1e-18)
_DECREASE_RUN = 8


def default_tail_budget(n: int) -> int:
    return 10 * n + 200


def _tail_log_sum(term_fn, oracle: CoefficientOracle, start: int, budget: int) -> float:
    """log of ``sum_(k>=start) exp(term_fn(k))`` with a certified remainder.

    Iterates the oracle's support, so gap series cost only their nonzero
    terms.  Raises AccuracyError when neither exhaustion nor a contracting
    tail ratio can certify the remainder within the budget.
    """
    acc = RunningLogSum()
    prev = None
    diffs = []
    streak = 0
    last = NEG_INF
    reason = "exhausted"
    count = 0
    support = oracle.support(start)
    try:
        for k in support:
            if count >= budget:
                reason = "budget"
                break
            count += 1
            t = term_fn(k)
            if t == NEG_INF:
                continue
            acc.add(t)
            if prev is not None:
                d = t - prev
                diffs.append(d)
                if len(diffs) > _DECREASE_RUN:
                    diffs.pop(0)
                streak = streak + 1 if d < 0 else 0
            prev = t
            last = t
            if streak >= _DECREASE_RUN and t < acc.value + _LOG_STOP:
                reason = "threshold"
                break
    except SupportCapped:
        reason = "capped"

    if reason == "exhausted":
        return acc.value
    rbar = max(diffs) if len(diffs) == _DECREASE_RUN else 0.0
    if streak >= _DECREASE_RUN and rbar < 0.0:
        # remaining terms are dominated by last * rbar^j
        acc.add(last + rbar - math.log1p(-math.exp(rbar)))
        return acc.value
    raise AccuracyError(
        f"tail sum from {start} not certified within budget {budget}"
        f" (stopped: {reason})",
        best=acc.value,
    )


def lower_bound(space: Space, oracle: CoefficientOracle, n: int) -> float:
    """log of ``|c_n| ||z^n||``, a lower bound for E_n(f).

    Uses the lower end of bracketed norms so the bound stays valid.
    """
    logmag, _ = oracle.log_coeff(n)
    if logmag == NEG_INF:
        return NEG_INF
    return logmag + monomial_norm(space, n).log_lower


def upper_bound(
    space: Space, oracle: CoefficientOracle, n: int, tail_budget: int | None = None
) -> float:
    """log of ``sum_(k>=n) |c_k| ||z^k||``, an upper bound for E_n(f).

    Bracketed norms contribute their upper ends per term.
    """
    budget = tail_budget if tail_budget is not None else default_tail_budget(n)

    def term(k):
        logmag, _ = oracle.log_coeff(k)
        if logmag == NEG_INF:
            return NEG_INF
        return logmag + monomial_norm(space, k).log_upper

    return _tail_log_sum(term, oracle, n, budget)


def exact_error(
    space: Space, oracle: CoefficientOracle, n: int, tail_budget: int | None = None
) -> float:
    """log E_n(f) in a coefficient-separable space: the p-sum of the tail."""
    sep = separable_weights(space)
    if sep is None:
        raise UnsupportedSpaceError(
            f"exact best approximation needs a coefficient-separable norm,"
            f" not {space.canonical()}"
        )
    p, log_alpha = sep
    budget = tail_budget if tail_budget is not None else default_tail_budget(n)

    def term(k):
        logmag, _ = oracle.log_coeff(k)
        if logmag == NEG_INF:
            return NEG_INF
        return p * logmag + log_alpha(k)

    return _tail_log_sum(term, oracle, n, budget) / p


@dataclass(frozen=True)
class ApproxEntry:
    n: int
    log_lower: float
    log_exact: float | None
    log_upper: float
    flag: str | None = None  # "accuracy" when a tail could not be certified

    def surrogate(self) -> float:
        """The value the growth estimators consume: exact when available."""
        return self.log_exact if self.log_exact is not None else self.log_upper


@dataclass(frozen=True)
class ApproxProfile:
    space: Space
    function_name: str
    entries: tuple
    tail_budget: int | None  # None means the per-index default rule

    @property
    def n_max(self) -> int:
        return len(self.entries) - 1

    def to_csv(self) -> str:
        lines = ["n,lower,exact,upper"]
        for e in self.entries:
            lines.append(
                f"{e.n},{_linear(e.log_lower)},"
                f"{'' if e.log_exact is None else _linear(e.log_exact)},"
                f"{_linear(e.log_upper)}"
            )
        return "\n".join(lines) + "\n"

    def to_json_dict(self) -> dict:
        return {
            "schema": "diskapprox/approx-profile/1",
            "space": self.space.canonical(),
            "function": self.function_name,
            "tail_budget": self.tail_budget,
            "entries": [
                {
                    "n": e.n,
                    "log_lower": _json_log(e.log_lower),
                    "log_exact": _json_log(e.log_exact),
                    "log_upper": _json_log(e.log_upper),
                    "flag": e.flag,
                }
                for e in self.entries
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)


def _linear(log_value: float | None) -> str:
    if log_value is None:
        return ""
    if log_value == NEG_INF:
        return "0"
    return f"{math.exp(log_value):.11e}"


def _json_log(log_value: float | None):
    if log_value is None:
        return None
    if log_value == NEG_INF:
        return "-inf"
    return log_value


def approx_profile(
    space: Space,
    oracle: CoefficientOracle,
    n_max: int,
    tail_budget: int | None = None,
) -> ApproxProfile:
    """Bounds (and exact values where available) for n = 0..n_max.

    Entries whose tail could not be certified carry ``flag='accuracy'`` and
    the best partial estimate instead of aborting the whole profile.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    separable = separable_weights(space) is not None
    entries = []
    for n in range(n_max + 1):
        flag = None
        lo = lower_bound(space, oracle, n)
        exact = None
        if separable:
            try:
                exact = exact_error(space, oracle, n, tail_budget)
            except AccuracyError as err:
                exact = err.best
                flag = "accuracy"
        try:
            up = upper_bound(space, oracle, n, tail_budget)
        except AccuracyError as err:
            up = err.best
            flag = "accuracy"
        entries.append(ApproxEntry(n, lo, exact, up, flag))
    return ApproxProfile(space, oracle.name, tuple(entries), tail_budget)
