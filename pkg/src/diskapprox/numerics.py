"""Log-domain scalar utilities shared by the rest of the package.

Every magnitude that can overflow or underflow in linear scale (norms of
high-degree monomials, factorial-decay Taylor coefficients, approximation
error tails) is carried as a natural logarithm stored in an ordinary float,
with ``-inf`` encoding an exact zero.  Linear values are materialised only at
reporting boundaries.  All routines here are pure functions of their inputs
and are safe to call from any number of workers.
"""

from __future__ import annotations

import heapq
import math
from typing import Callable, Iterable

import numpy as np

from .errors import AccuracyError

NEG_INF = float("-inf")

__all__ = [
    "NEG_INF",
    "RunningLogSum",
    "log_add",
    "log_sum_exp",
    "log_beta",
    "integrate_01",
    "maximize_unimodal",
]


class RunningLogSum:
    """Streaming log-sum-exp accumulator for nonnegative magnitudes.

    Terms are natural logs; ``-inf`` terms are no-ops.  NaN input is
    rejected instead of silently propagating.
    """

    __slots__ = ("_max", "_acc")

    def __init__(self):
        self._max = NEG_INF
        self._acc = 0.0

    def add(self, term: float) -> None:
        if math.isnan(term):
            raise ValueError("NaN term in log-domain sum")
        if term == NEG_INF:
            return
        if term <= self._max:
            self._acc += math.exp(term - self._max)
        else:
            self._acc = self._acc * math.exp(self._max - term) + 1.0
            self._max = term

    @property
    def value(self) -> float:
        if self._max == NEG_INF:
            return NEG_INF
        return self._max + math.log(self._acc)


def log_add(a: float, b: float) -> float:
    """log(e^a + e^b) without leaving the log domain."""
    if math.isnan(a) or math.isnan(b):
        raise ValueError("NaN term in log-domain sum")
    if a < b:
        a, b = b, a
    if b == NEG_INF:
        return a
    return a + math.log1p(math.exp(b - a))


def log_sum_exp(terms: Iterable[float]) -> float:
    """log of the sum of exponentials of ``terms``.

    The empty sum is zero, returned as ``-inf``.  The result never drops
    below the largest term.
    """
    acc = RunningLogSum()
    for t in terms:
        acc.add(t)
    return acc.value


# Stirling series tail: lgamma(x) - ((x-0.5) log x - x + 0.5 log 2pi).
# Truncated after x^-11; error below 1e-15 for x >= 10.
_STIRLING_COEFFS = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
)


def _stirling_tail(x: float) -> float:
    w = 1.0 / (x * x)
    s = 0.0
    for c in reversed(_STIRLING_COEFFS):
        s = s * w + c
    return s / x


def log_beta(a: float, b: float) -> float:
    """log B(a, b) = log Gamma(a) + log Gamma(b) - log Gamma(a+b).

    Both arguments must be positive.  For a large argument the naive lgamma
    difference loses up to half its digits to cancellation, so the difference
    lgamma(max+min) - lgamma(max) is expanded through log1p and the Stirling
    tail instead.
    """
    if not (a > 0 and b > 0):
        raise ValueError(f"log_beta requires positive arguments, got ({a}, {b})")
    lo, hi = (a, b) if a <= b else (b, a)
    if hi < 10.0:
        return math.lgamma(lo) + math.lgamma(hi) - math.lgamma(lo + hi)
    delta = (
        (hi - 0.5) * math.log1p(lo / hi)
        + lo * math.log(hi + lo)
        - lo
        + _stirling_tail(hi + lo)
        - _stirling_tail(hi)
    )
    return math.lgamma(lo) - delta


# ---------------------------------------------------------------------------
# Quadrature on (0, 1)

_GL_LO = np.polynomial.legendre.leggauss(16)
_GL_HI = np.polynomial.legendre.leggauss(32)
_NODES_PER_PANEL = 16 + 32
# Exponents below -15/16 would need an absorbing power beyond this cap; the
# residual endpoint behaviour is then left to adaptive bisection.
_MAX_ABSORB_POWER = 16.0


def _panel(fn, a: float, b: float, vectorized: bool):
    """Gauss-Legendre estimates of int_a^b fn at two orders."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    if vectorized:
        i_lo = half * float(np.dot(_GL_LO[1], fn(mid + half * _GL_LO[0])))
        i_hi = half * float(np.dot(_GL_HI[1], fn(mid + half * _GL_HI[0])))
    else:
        i_lo = half * sum(w * fn(mid + half * x) for x, w in zip(*_GL_LO))
        i_hi = half * sum(w * fn(mid + half * x) for x, w in zip(*_GL_HI))
    return i_lo, i_hi


def integrate_01(
    f: Callable[[float], float],
    gamma: float = 0.0,
    beta: float = 0.0,
    tol: float = 1e-10,
    node_cap: int = 1 << 16,
    vectorized: bool = False,
) -> float:
    """Natural log of ``int_0^1 f(r) dr`` for a nonnegative integrand.

    Parameters
    ----------
    f : callable
        The full integrand, evaluated only at interior points of (0, 1).
        With ``vectorized=True`` it must accept numpy arrays.
    gamma, beta : float
        Declared power behaviour at the endpoints: ``f(r) ~ r**gamma`` near 0
        and ``~ (1-r)**beta`` near 1, each > -1.  Negative exponents are
        absorbed by the substitution ``r = u**s`` with ``s = 1/(1+exponent)``
        so the transformed integrand is smooth; nonnegative exponents need no
        treatment beyond adaptive bisection.
    tol : float
        Target relative error.  Panel errors are measured by comparing
        16- and 32-point Gauss-Legendre rules, refined worst-first.

    Raises
    ------
    AccuracyError
        If the node budget (default 2**16 evaluations) is exhausted before
        the tolerance is met; carries the best estimate and the achieved
        tolerance.
    """
    if not gamma > -1:
        raise ValueError(f"endpoint exponent at 0 must exceed -1, got {gamma}")
    if not beta > -1:
        raise ValueError(f"endpoint exponent at 1 must exceed -1, got {beta}")
    if not tol > 0:
        raise ValueError("tolerance must be positive")

    pieces = []

    if gamma < 0:
        s = min(1.0 / (1.0 + gamma), _MAX_ABSORB_POWER)
        if vectorized:
            def left(u, s=s):
                return s * np.power(u, s - 1.0) * f(np.power(u, s))
        else:
            def left(u, s=s):
                return s * u ** (s - 1.0) * f(u**s)
        pieces.append((left, 0.0, 0.5 ** (1.0 / s)))
    else:
        pieces.append((f, 0.0, 0.5))

    if beta < 0:
        s = min(1.0 / (1.0 + beta), _MAX_ABSORB_POWER)
        if vectorized:
            def right(u, s=s):
                return s * np.power(u, s - 1.0) * f(1.0 - np.power(u, s))
        else:
            def right(u, s=s):
                return s * u ** (s - 1.0) * f(1.0 - u**s)
        pieces.append((right, 0.0, 0.5 ** (1.0 / s)))
    else:
        pieces.append((f, 0.5, 1.0))

    heap = []
    nodes = 0
    for idx, (fn, a, b) in enumerate(pieces):
        i_lo, i_hi = _panel(fn, a, b, vectorized)
        nodes += _NODES_PER_PANEL
        heapq.heappush(heap, (-abs(i_hi - i_lo), idx, a, b, i_hi))

    while True:
        total = sum(item[4] for item in heap)
        err = sum(-item[0] for item in heap)
        if err <= tol * abs(total) or (total == 0.0 and err == 0.0):
            break
        if nodes + 2 * _NODES_PER_PANEL > node_cap:
            best = math.log(total) if total > 0 else NEG_INF
            achieved = err / abs(total) if total != 0 else math.inf
            raise AccuracyError(
                f"quadrature did not reach tol={tol:g} within {node_cap} nodes"
                f" (achieved {achieved:.3g})",
                best=best,
                achieved=achieved,
                required=tol,
            )
        _, idx, a, b, _ = heapq.heappop(heap)
        fn = pieces[idx][0]
        m = 0.5 * (a + b)
        for aa, bb in ((a, m), (m, b)):
            i_lo, i_hi = _panel(fn, aa, bb, vectorized)
            nodes += _NODES_PER_PANEL
            heapq.heappush(heap, (-abs(i_hi - i_lo), idx, aa, bb, i_hi))

    if total <= 0.0:
        return NEG_INF
    return math.log(total)


# ---------------------------------------------------------------------------
# Unimodal maximization

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


def maximize_unimodal(
    g: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-8,
):
    """Locate the maximum of a unimodal function on ``[lo, hi]``.

    A two-sided log-spaced scan (64 interior points plus both endpoints)
    seeds a golden-section refinement of the best cell; the scan doubles as
    a guard against mild departures from unimodality.  Returns
    ``(argmax, g(argmax))``, the argmax within ``tol`` of the true maximizer
    for genuinely unimodal ``g``.
    """
    if not lo < hi:
        raise ValueError(f"require lo < hi, got [{lo}, {hi}]")
    span = hi - lo
    offs = np.geomspace(span * 1e-7, span * 0.5, 32)
    grid = sorted({lo, hi, *(lo + offs), *(hi - offs)})

    best_x = lo
    best_v = -math.inf
    vals = []
    for x in grid:
        v = g(x)
        vals.append(v)
        if v > best_v:
            best_x, best_v = x, v
    i = vals.index(best_v)
    a = grid[max(i - 1, 0)]
    b = grid[min(i + 1, len(grid) - 1)]

    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    gc, gd = g(c), g(d)
    while b - a > tol:
        if gc >= gd:
            b, d, gd = d, c, gc
            c = b - _INV_PHI * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + _INV_PHI * (b - a)
            gd = g(d)
        if gc > best_v:
            best_x, best_v = c, gc
        if gd > best_v:
            best_x, best_v = d, gd
    return best_x, best_v
