"""Catalog of Banach spaces of functions analytic in the unit disk.

Each space knows how to evaluate the norm of the monomial ``z^n`` from its
defining integral or supremum, in natural-log scale:

========================  =====================================================
DiskAlgebra               max over the closed disk; ``||z^n|| = 1``
Hardy(p)                  sup of circle means M_p; ``||z^n|| = 1``
Bergman(p)                normalized area integral; ``(2/(np+2))^(1/p)``
WeightedBergman(p, w)     radial weight; ``(2 int t^(np+1) w(t) dt)^(1/p)``
Ap(p), 0<p<1              ``int (1-r)^(1/p-2) M_1 dr``; ``B(n+1, 1/p-1)``
HardyLittlewood(p,q,lam)  ``B(lam n+1, lam c+1)^(1/lam)`` with c = pq/(q-p);
                          for lam=inf the sup form ``sup r^n (1-r)^c``
MixedNorm(p,q,alpha)      ``B(nq+1, q alpha)^(1/q)``; q=inf -> sup form
BMOA                      sup over arcs of the mean oscillation, computed
                          numerically as a bracket (plus |f(0)| so constants
                          get a genuine norm)
BlochType(alpha)          ``|f(0)| + sup (1-|z|^2)^alpha |f'(z)|``; stationary
                          closed form of ``sup n r^(n-1) (1-r^2)^alpha``
Dynkin(p,q,s,m)           smoothness-modulus seminorm plus sup M_p; quadrature
Dirichlet(p, weights)     coefficient norm ``(sum |c_k|^p a_k)^(1/p)``;
                          ``||z^n|| = a_n^(1/p)``
========================  =====================================================

Monomial norms are exact closed forms or certified quadrature everywhere
except BMOA, whose value is returned as a tight numerical bracket.  Some
spaces are additionally *coefficient separable* (the norm depends only on
``(|c_k|)``), in which case truncation of the Taylor series is the best
polynomial approximant; see :func:`separable_weights`.

All spec objects are immutable and hashable; every operation here is pure,
deterministic, and safe to run from parallel workers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import SpecParseError, UnsupportedSpaceError
from .numerics import (
    NEG_INF,
    RunningLogSum,
    integrate_01,
    log_add,
    log_beta,
    maximize_unimodal,
)

__all__ = [
    "NormValue",
    "RootStats",
    "NormProfile",
    "WeightSpec",
    "DirichletWeights",
    "Space",
    "DiskAlgebra",
    "Hardy",
    "Bergman",
    "WeightedBergman",
    "Ap",
    "HardyLittlewood",
    "MixedNorm",
    "BMOA",
    "BlochType",
    "Dynkin",
    "Dirichlet",
    "monomial_norm",
    "quoted_closed_form",
    "norm_profile",
    "coefficient_norm",
    "separable_weights",
    "convolution_coefficients",
    "trig_poly_l1_norm",
    "parse_space",
    "default_catalog",
]


@dataclass(frozen=True)
class NormValue:
    """A monomial norm in log scale, possibly known only as a bracket."""

    log_value: float
    log_lower: float
    log_upper: float

    @property
    def exact(self) -> bool:
        return self.log_lower == self.log_upper

    @property
    def kind(self) -> str:
        return "exact" if self.exact else "bracketed"

    @staticmethod
    def of(log_value: float) -> "NormValue":
        return NormValue(log_value, log_value, log_value)

    @staticmethod
    def bracket(log_lower: float, log_upper: float) -> "NormValue":
        if not log_lower <= log_upper:
            raise ValueError("bracket lower end exceeds upper end")
        return NormValue(0.5 * (log_lower + log_upper), log_lower, log_upper)


def _fmt(x: float) -> str:
    if x == math.inf:
        return "inf"
    return f"{x:g}"


# ---------------------------------------------------------------------------
# Weight specifications


@dataclass(frozen=True)
class WeightSpec:
    """Radial weight ``t^gamma (1-t)^beta * extra(t)`` on (0, 1).

    ``extra``, when given, must be a smooth positive numpy-aware factor.
    Admissibility (t*w(t) integrable, with positive mass near t=1) holds
    automatically for exponents > -1 and positive ``extra``.
    """

    beta: float = 0.0
    gamma: float = 0.0
    extra: Callable[[np.ndarray], np.ndarray] | None = None

    def __post_init__(self):
        if not self.beta > -1:
            raise ValueError(f"weight exponent beta must exceed -1, got {self.beta}")
        if not self.gamma > -1:
            raise ValueError(f"weight exponent gamma must exceed -1, got {self.gamma}")
        if self.extra is not None:
            probe = self.extra(np.array([0.1, 0.5, 0.9]))
            if not np.all(np.asarray(probe) > 0):
                raise ValueError("weight factor must be positive on (0, 1)")

    def density(self, t):
        out = np.power(t, self.gamma) * np.power(1.0 - t, self.beta)
        if self.extra is not None:
            out = out * self.extra(t)
        return out

    def canonical(self) -> str:
        if self.extra is not None:
            return f"custom(beta={_fmt(self.beta)},gamma={_fmt(self.gamma)})"
        return f"beta={_fmt(self.beta)},gamma={_fmt(self.gamma)}"


@dataclass(frozen=True)
class DirichletWeights:
    """Positive weight sequence ``a_k`` given as a closed-form rule.

    The k-th root of ``a_k`` must stay bounded and have liminf at least 1;
    the built-in rules guarantee this, custom rules declare it.
    """

    kind: str
    param: float | None = None
    fn: Callable[[int], float] | None = None
    root_liminf: float = 1.0
    root_limsup: float = 1.0

    def __post_init__(self):
        if self.kind not in ("ones", "geometric", "power", "custom"):
            raise ValueError(f"unknown weight rule {self.kind!r}")
        if self.kind == "geometric":
            if self.param is None or self.param < 1.0:
                raise ValueError(
                    f"geometric weight base must be >= 1, got {self.param}"
                )
        if self.kind == "power" and self.param is None:
            raise ValueError("power weight needs an exponent")
        if self.kind == "custom":
            if self.fn is None:
                raise ValueError("custom weights need a log-scale rule")
            if self.root_liminf < 1.0 or not math.isfinite(self.root_limsup):
                raise ValueError(
                    "custom weights must declare root_liminf >= 1 and finite root_limsup"
                )

    @classmethod
    def ones(cls) -> "DirichletWeights":
        return cls("ones")

    @classmethod
    def geometric(cls, base: float) -> "DirichletWeights":
        return cls("geometric", float(base), root_liminf=base, root_limsup=base)

    @classmethod
    def power(cls, exponent: float) -> "DirichletWeights":
        return cls("power", float(exponent))

    @classmethod
    def from_log_fn(cls, fn, root_liminf, root_limsup) -> "DirichletWeights":
        return cls("custom", None, fn, root_liminf, root_limsup)

    def log_alpha(self, k: int) -> float:
        if self.kind == "ones":
            return 0.0
        if self.kind == "geometric":
            return k * math.log(self.param)
        if self.kind == "power":
            return self.param * math.log(k + 1.0)
        return self.fn(k)

    def canonical(self) -> str:
        if self.kind == "ones":
            return "ones"
        if self.kind == "custom":
            return "custom"
        return f"{self.kind}({_fmt(self.param)})"


# ---------------------------------------------------------------------------
# The spaces


class Space:
    """Base class; subclasses are frozen dataclasses identifying one space."""

    tag: str = ""

    def canonical(self) -> str:
        raise NotImplementedError

    def _log_norm(self, n: int) -> NormValue:
        raise NotImplementedError

    def __str__(self) -> str:
        return self.canonical()


@dataclass(frozen=True)
class DiskAlgebra(Space):
    """Analytic in the disk, continuous on the closure, uniform norm."""

    tag = "disk"

    def canonical(self):
        return "disk"

    def _log_norm(self, n):
        return NormValue.of(0.0)


@dataclass(frozen=True)
class Hardy(Space):
    p: float = 2.0
    tag = "hardy"

    def __post_init__(self):
        if not self.p >= 1:
            raise ValueError(f"Hardy exponent p must be >= 1, got {self.p}")

    def canonical(self):
        return f"hardy:p={_fmt(self.p)}"

    def _log_norm(self, n):
        return NormValue.of(0.0)


@dataclass(frozen=True)
class Bergman(Space):
    p: float = 2.0
    tag = "bergman"

    def __post_init__(self):
        if not (self.p >= 1 and math.isfinite(self.p)):
            raise ValueError(f"Bergman exponent p must be finite and >= 1, got {self.p}")

    def canonical(self):
        return f"bergman:p={_fmt(self.p)}"

    def _log_norm(self, n):
        # (1/pi) iint |z^n|^p dA = 2/(np+2)
        return NormValue.of((math.log(2.0) - math.log(n * self.p + 2.0)) / self.p)


@dataclass(frozen=True)
class WeightedBergman(Space):
    p: float
    weight: WeightSpec
    tag = "wbergman"

    def __post_init__(self):
        if not (self.p >= 1 and math.isfinite(self.p)):
            raise ValueError(f"Bergman exponent p must be finite and >= 1, got {self.p}")

    def canonical(self):
        return f"wbergman:p={_fmt(self.p)},{self.weight.canonical()}"

    def _log_norm(self, n):
        return NormValue.of((math.log(2.0) + _radial_moment(self, n * self.p)) / self.p)


@lru_cache(maxsize=None)
def _radial_moment(space: WeightedBergman, exponent: float) -> float:
    """log of ``int_0^1 t^(exponent+1) w(t) dt``."""
    w = space.weight

    def f(t):
        return np.power(t, exponent + 1.0) * w.density(t)

    return integrate_01(
        f, gamma=exponent + 1.0 + w.gamma, beta=w.beta, tol=1e-11, vectorized=True
    )


@dataclass(frozen=True)
class Ap(Space):
    """``int_0^1 (1-r)^(1/p-2) M_1(f, r) dr`` with 0 < p < 1."""

    p: float
    tag = "ap"

    def __post_init__(self):
        if not 0 < self.p < 1:
            raise ValueError(f"Ap exponent p must lie in (0, 1), got {self.p}")

    def canonical(self):
        return f"ap:p={_fmt(self.p)}"

    def _log_norm(self, n):
        return NormValue.of(log_beta(n + 1.0, 1.0 / self.p - 1.0))


def _sup_form_log(n: int, c: float) -> float:
    """log of ``sup_(0<r<1) r^n (1-r)^c`` for c > 0."""
    if n == 0:
        return 0.0

    def g(r):
        return n * math.log(r) + c * math.log1p(-r)

    _, v = maximize_unimodal(g, 1e-12, 1.0 - 1e-12, tol=1e-10)
    return v


@dataclass(frozen=True)
class HardyLittlewood(Space):
    """Growth-weighted circle means; parameters 0 < p < q <= inf, lam > 0."""

    p: float
    q: float
    lam: float
    tag = "hl"

    def __post_init__(self):
        if not 0 < self.p:
            raise ValueError(f"need p > 0, got p={self.p}")
        if not self.p < self.q:
            raise ValueError(f"need p < q, got p={self.p}, q={self.q}")
        if not self.lam > 0:
            raise ValueError(f"need lam > 0, got {self.lam}")

    @property
    def weight_exponent(self) -> float:
        # p*q/(q-p), continued as p when q = inf
        if math.isinf(self.q):
            return self.p
        return self.p * self.q / (self.q - self.p)

    def canonical(self):
        return f"hl:p={_fmt(self.p)},q={_fmt(self.q)},lambda={_fmt(self.lam)}"

    def _log_norm(self, n):
        c = self.weight_exponent
        if math.isinf(self.lam):
            return NormValue.of(_sup_form_log(n, c))
        lam = self.lam
        return NormValue.of(log_beta(lam * n + 1.0, lam * c + 1.0) / lam)


@dataclass(frozen=True)
class MixedNorm(Space):
    p: float
    q: float
    alpha: float
    tag = "mixed"

    def __post_init__(self):
        if not self.p >= 1:
            raise ValueError(f"need p >= 1, got {self.p}")
        if not self.q >= 1:
            raise ValueError(f"need q >= 1, got {self.q}")
        if not self.alpha > 0:
            raise ValueError(f"need alpha > 0, got {self.alpha}")

    def canonical(self):
        return f"mixed:p={_fmt(self.p)},q={_fmt(self.q)},alpha={_fmt(self.alpha)}"

    def _log_norm(self, n):
        if math.isinf(self.q):
            return NormValue.of(_sup_form_log(n, self.alpha))
        q = self.q
        return NormValue.of(log_beta(n * q + 1.0, q * self.alpha) / q)


@dataclass(frozen=True)
class BMOA(Space):
    """Bounded mean oscillation on the circle, plus |f(0)|.

    The monomial norm reduces to ``sup_s A(s)`` over arc half-lengths, where
    ``A(s)`` is the mean deviation of ``e^(iu)`` from its average over
    ``[-s, s]``; it is evaluated numerically and reported as a bracket.
    """

    tag = "bmoa"

    def canonical(self):
        return "bmoa"

    def _log_norm(self, n):
        if n == 0:
            return NormValue.of(0.0)
        lo, hi = _bmoa_bracket(min(n, _BMOA_WINDOW_CAP))
        return NormValue.bracket(lo, hi)


_BMOA_GL = np.polynomial.legendre.leggauss(32)
# A(s) tends to 1 with O(1/s) ripples; windows past this many periods cannot
# raise the sup, so the scan range is capped.
_BMOA_WINDOW_CAP = 16


def _bmoa_mean_osc(s: float) -> float:
    """(1/2s) int_(-s)^s |e^(iu) - sin(s)/s| du, by per-period Gauss panels."""
    c = math.sin(s) / s
    panels = max(1, int(math.ceil(s / math.pi)))
    edges = np.linspace(0.0, s, panels + 1)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        half = 0.5 * (b - a)
        u = 0.5 * (a + b) + half * _BMOA_GL[0]
        vals = np.sqrt(1.0 - 2.0 * c * np.cos(u) + c * c)
        total += half * float(np.dot(_BMOA_GL[1], vals))
    return total / s


@lru_cache(maxsize=None)
def _bmoa_bracket(windows: int) -> tuple:
    """Bracketed sup of the mean oscillation over s in (0, windows*pi]."""
    best_x, best_v = 1e-9, 0.0
    for w in range(windows):
        lo = max(1e-9, w * math.pi)
        hi = (w + 1) * math.pi
        x, v = maximize_unimodal(_bmoa_mean_osc, lo, hi, tol=1e-7)
        if v > best_v:
            best_x, best_v = x, v
    # slack from the local curvature at the found maximizer
    h = 1e-4
    left = _bmoa_mean_osc(max(best_x - h, 1e-9))
    right = _bmoa_mean_osc(min(best_x + h, windows * math.pi))
    curvature = abs(left + right - 2.0 * best_v) / (h * h)
    slack = 0.5 * curvature * 1e-14 + 1e-12 * best_v
    # the lower end allows for quadrature rounding in the evaluations
    return math.log(best_v * (1.0 - 1e-13)), math.log(best_v + slack)


@dataclass(frozen=True)
class BlochType(Space):
    alpha: float = 1.0
    tag = "bloch"

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"need alpha > 0, got {self.alpha}")

    def canonical(self):
        return f"bloch:alpha={_fmt(self.alpha)}"

    def _log_norm(self, n):
        if n == 0:
            return NormValue.of(0.0)
        a = self.alpha
        # stationary point of n r^(n-1) (1-r^2)^a at r^2 = (n-1)/(n-1+2a)
        if n == 1:
            mid = 0.0
        else:
            mid = 0.5 * (n - 1.0) * (math.log(n - 1.0) - math.log(n - 1.0 + 2.0 * a))
        return NormValue.of(
            math.log(n) + mid + a * (math.log(2.0 * a) - math.log(n - 1.0 + 2.0 * a))
        )


@dataclass(frozen=True)
class Dynkin(Space):
    """Smoothness-modulus spaces: modulus-of-continuity seminorm plus sup M_p."""

    p: float
    q: float
    s: float
    m: int
    tag = "dynkin"

    def __post_init__(self):
        if not self.p >= 1:
            raise ValueError(f"need p >= 1, got {self.p}")
        if not self.q >= 1:
            raise ValueError(f"need q >= 1, got {self.q}")
        if not self.s > 0:
            raise ValueError(f"need s > 0, got {self.s}")
        if not (isinstance(self.m, int) and self.m > self.s):
            raise ValueError(f"need integer m > s, got m={self.m}, s={self.s}")

    def canonical(self):
        return f"dynkin:p={_fmt(self.p)},q={_fmt(self.q)},s={_fmt(self.s)},m={_fmt(self.m)}"

    def _log_norm(self, n):
        if n == 0:
            return NormValue.of(0.0)
        return NormValue.of(_dynkin_log_norm(self, n))


@lru_cache(maxsize=None)
def _dynkin_log_norm(space: Dynkin, n: int) -> float:
    # the m-th difference of e^(int) has modulus (2 sin(min(nt/2, pi/2)))^m,
    # monotone in t; the circle means of z^n contribute sup M_p = 1
    s, q, m = space.s, space.q, space.m
    t0 = min(1.0, math.pi / n)
    theta0 = 0.5 * n * t0
    if math.isinf(q):
        sup_log = m * math.log(2.0 * math.sin(theta0)) - s * math.log(t0)
        return log_add(sup_log, 0.0)

    def f(x):
        return np.power(2.0 * np.sin(theta0 * x), m * q) * np.power(x, -s * q - 1.0)

    log_i1 = -s * q * math.log(t0) + integrate_01(
        f, gamma=(m - s) * q - 1.0, tol=1e-11, vectorized=True
    )
    log_j = log_i1
    if t0 < 1.0:
        log_i2 = m * q * math.log(2.0) + math.log((t0 ** (-s * q) - 1.0) / (s * q))
        log_j = log_add(log_j, log_i2)
    return log_add(log_j / q, 0.0)


@dataclass(frozen=True)
class Dirichlet(Space):
    p: float
    weights: DirichletWeights
    tag = "dirichlet"

    def __post_init__(self):
        if not self.p >= 1:
            raise ValueError(f"need p >= 1, got {self.p}")

    def canonical(self):
        return f"dirichlet:p={_fmt(self.p)},weights={self.weights.canonical()}"

    def _log_norm(self, n):
        return NormValue.of(self.weights.log_alpha(n) / self.p)


# ---------------------------------------------------------------------------
# Operations


@lru_cache(maxsize=None)
def monomial_norm(space: Space, n: int) -> NormValue:
    """log ||z^n|| in the given space, exact or bracketed (BMOA only)."""
    if not (isinstance(n, int) and n >= 0):
        raise ValueError(f"monomial index must be a nonnegative integer, got {n}")
    return space._log_norm(n)


def quoted_closed_form(space: Space, n: int) -> float | None:
    """Alternative simplified closed forms quoted in the literature.

    For a few spaces a shorter display formula circulates that differs from
    the definition-derived value by a constant factor or a missing root (the
    n-th-root asymptotics agree).  Returned in log scale for side-by-side
    comparison; None when no alternative display is known.
    """
    if isinstance(space, Bergman):
        return -math.log(n * space.p + 2.0) / space.p
    if isinstance(space, Ap):
        p = space.p
        return (math.log(2.0 * math.pi) + log_beta(1.0 / p - 1.0, n * p + 1.0)) / p
    if isinstance(space, HardyLittlewood) and not math.isinf(space.lam):
        lam, c = space.lam, space.weight_exponent
        return log_beta(lam * n + 1.0, lam * c + 1.0)
    if isinstance(space, BlochType) and n >= 1:
        a = space.alpha
        return 0.5 * n * (math.log(n) - math.log(n + a)) + a * (
            math.log(2.0 * a) - math.log(n + 2.0 * a)
        )
    return None


@dataclass(frozen=True)
class RootStats:
    """Running n-th roots of ||z^n|| with liminf/limsup/infimum probes."""

    roots: tuple
    mu_lo: float
    mu_hi: float
    log_inf: float
    arg_inf: int


@dataclass(frozen=True)
class NormProfile:
    space: Space
    values: tuple
    stats: RootStats

    @property
    def n_max(self) -> int:
        return len(self.values) - 1

    def entry(self, n: int) -> NormValue:
        return self.values[n]

    def to_json_dict(self) -> dict:
        return {
            "schema": "diskapprox/norm-profile/1",
            "space": self.space.canonical(),
            "entries": [
                {
                    "n": n,
                    "log_norm": v.log_value,
                    "log_lower": v.log_lower,
                    "log_upper": v.log_upper,
                    "kind": v.kind,
                }
                for n, v in enumerate(self.values)
            ],
            "root_stats": {
                "roots": list(self.stats.roots),
                "mu_lo": self.stats.mu_lo,
                "mu_hi": self.stats.mu_hi,
                "log_inf": self.stats.log_inf,
                "arg_inf": self.stats.arg_inf,
            },
        }


def norm_profile(space: Space, n_max: int) -> NormProfile:
    """Monomial norms for n = 0..n_max with root statistics.

    The liminf/limsup probes are the min/max of ``||z^n||^(1/n)`` over the
    final half of the window; the infimum probe is the smallest norm seen.
    """
    if n_max < 1:
        raise ValueError("n_max must be at least 1")
    values = tuple(monomial_norm(space, n) for n in range(n_max + 1))
    roots = tuple(math.exp(values[n].log_value / n) for n in range(1, n_max + 1))
    half = roots[(n_max - 1) // 2 :]
    log_inf = min(v.log_value for v in values)
    arg_inf = min(n for n, v in enumerate(values) if v.log_value == log_inf)
    stats = RootStats(roots, min(half), max(half), log_inf, arg_inf)
    return NormProfile(space, values, stats)


def separable_weights(space: Space):
    """(p, log_alpha) for coefficient-separable spaces, else None.

    In these spaces the norm is ``(sum |c_k|^p a_k)^(1/p)``, so truncation is
    the optimal polynomial approximant and tails are computable exactly.
    """
    if isinstance(space, Dirichlet):
        return space.p, space.weights.log_alpha
    if isinstance(space, Hardy) and space.p == 2.0:
        return 2.0, lambda k: 0.0
    if isinstance(space, Bergman) and space.p == 2.0:
        return 2.0, lambda k: -math.log(k + 1.0)
    if isinstance(space, WeightedBergman) and space.p == 2.0:
        return 2.0, lambda k: math.log(2.0) + _radial_moment(space, 2.0 * k)
    return None


def coefficient_norm(space: Space, coeffs: Sequence[complex]) -> float:
    """log norm of the polynomial with the given Taylor coefficients.

    Only defined for coefficient-separable spaces; elsewhere raises
    UnsupportedSpaceError naming the space.
    """
    sep = separable_weights(space)
    if sep is None:
        raise UnsupportedSpaceError(
            f"norm of {space.canonical()} is not coefficient-separable"
        )
    p, log_alpha = sep
    acc = RunningLogSum()
    for k, c in enumerate(coeffs):
        mag = abs(c)
        if mag > 0:
            acc.add(p * math.log(mag) + log_alpha(k))
    return acc.value / p if acc.value != NEG_INF else NEG_INF


def convolution_coefficients(
    f_coeffs: Sequence[complex], g_fourier: Mapping[int, complex]
) -> list:
    """Taylor coefficients of the circular convolution of f with kernel g.

    The k-th output is ``c_k * b_(-k)`` where ``b_j`` are the Fourier
    coefficients of the kernel.
    """
    return [c * complex(g_fourier.get(-k, 0.0)) for k, c in enumerate(f_coeffs)]


def trig_poly_l1_norm(g_fourier: Mapping[int, complex], tol: float = 1e-9) -> float:
    """log of the mean absolute value of the trigonometric polynomial g."""
    items = sorted(g_fourier.items())
    js = np.array([j for j, _ in items], dtype=float)
    bs = np.array([complex(b) for _, b in items])

    def f(x):
        t = 2.0 * math.pi * np.asarray(x)
        return np.abs(np.exp(1j * np.outer(t, js)) @ bs)

    return integrate_01(f, tol=tol, vectorized=True)


# ---------------------------------------------------------------------------
# Canonical text forms

_WEIGHT_RULES = ("ones", "geometric", "power")


def _parse_weight_rule(value: str) -> DirichletWeights:
    if value == "ones":
        return DirichletWeights.ones()
    for rule in ("geometric", "power"):
        if value.startswith(rule + "(") and value.endswith(")"):
            inner = value[len(rule) + 1 : -1]
            try:
                param = float(inner)
            except ValueError:
                raise SpecParseError(
                    f"bad weight parameter {inner!r} in {value!r}", parameter="weights"
                ) from None
            try:
                return getattr(DirichletWeights, rule)(param)
            except ValueError as exc:
                raise SpecParseError(str(exc), parameter="weights") from None
    raise SpecParseError(
        f"unknown weight rule {value!r}; expected ones, geometric(b) or power(a)",
        parameter="weights",
    )


_SPACE_PARAMS = {
    "disk": (),
    "hardy": ("p",),
    "bergman": ("p",),
    "wbergman": ("p", "beta", "gamma"),
    "ap": ("p",),
    "hl": ("p", "q", "lambda"),
    "mixed": ("p", "q", "alpha"),
    "bmoa": (),
    "bloch": ("alpha",),
    "dynkin": ("p", "q", "s", "m"),
    "dirichlet": ("p", "weights"),
}


def parse_space(text: str) -> Space:
    """Parse the canonical textual form, e.g. ``bergman:p=2`` or
    ``dirichlet:p=2,weights=geometric(1.5)``."""
    text = text.strip()
    tag, _, rest = text.partition(":")
    tag = tag.lower()
    if tag not in _SPACE_PARAMS:
        raise SpecParseError(f"unknown space {tag!r}", parameter="space")
    allowed = _SPACE_PARAMS[tag]
    params = {}
    if rest:
        for item in rest.split(","):
            key, sep, value = item.partition("=")
            key = key.strip().lower()
            if not sep:
                raise SpecParseError(
                    f"expected key=value in {item!r}", parameter=key or "space"
                )
            if key not in allowed:
                raise SpecParseError(
                    f"space {tag!r} does not take parameter {key!r}", parameter=key
                )
            if key in params:
                raise SpecParseError(f"duplicate parameter {key!r}", parameter=key)
            params[key] = value.strip()

    def need_float(key):
        if key not in params:
            raise SpecParseError(f"space {tag!r} needs parameter {key!r}", parameter=key)
        try:
            return float(params[key])
        except ValueError:
            raise SpecParseError(
                f"parameter {key!r} must be a number, got {params[key]!r}", parameter=key
            ) from None

    def opt_float(key, default):
        if key not in params:
            return default
        try:
            return float(params[key])
        except ValueError:
            raise SpecParseError(
                f"parameter {key!r} must be a number, got {params[key]!r}", parameter=key
            ) from None

    try:
        if tag == "disk":
            return DiskAlgebra()
        if tag == "hardy":
            return Hardy(need_float("p"))
        if tag == "bergman":
            return Bergman(need_float("p"))
        if tag == "wbergman":
            return WeightedBergman(
                need_float("p"),
                WeightSpec(beta=opt_float("beta", 0.0), gamma=opt_float("gamma", 0.0)),
            )
        if tag == "ap":
            return Ap(need_float("p"))
        if tag == "hl":
            return HardyLittlewood(need_float("p"), need_float("q"), need_float("lambda"))
        if tag == "mixed":
            return MixedNorm(need_float("p"), need_float("q"), need_float("alpha"))
        if tag == "bmoa":
            return BMOA()
        if tag == "bloch":
            return BlochType(need_float("alpha"))
        if tag == "dynkin":
            m = need_float("m")
            if m != int(m):
                raise SpecParseError("parameter 'm' must be an integer", parameter="m")
            return Dynkin(need_float("p"), need_float("q"), need_float("s"), int(m))
        if tag == "dirichlet":
            if "weights" not in params:
                raise SpecParseError(
                    "space 'dirichlet' needs parameter 'weights'", parameter="weights"
                )
            return Dirichlet(need_float("p"), _parse_weight_rule(params["weights"]))
    except ValueError as exc:
        if isinstance(exc, SpecParseError):
            raise
        raise SpecParseError(str(exc), parameter="space") from None
    raise AssertionError("unreachable")


def default_catalog() -> list:
    """The nine default-parameter spaces used by the verification grids."""
    return [
        Hardy(2.0),
        Bergman(2.0),
        Ap(0.5),
        HardyLittlewood(1.0, 2.0, 1.0),
        MixedNorm(2.0, 2.0, 1.0),
        BlochType(1.0),
        Dynkin(2.0, 2.0, 0.5, 1),
        BMOA(),
        Dirichlet(2.0, DirichletWeights.ones()),
    ]
