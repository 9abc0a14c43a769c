"""Test functions given by Taylor-coefficient oracles.

Coefficients are stored as (log magnitude, phase) pairs so that indices up
to 10**6 stay queryable without overflow; linear complex values are
materialised only when the magnitude fits in double range.

Built-in catalog (canonical CLI names in brackets):

    exp_scale(lam)      c_n = lam^n / n!            order 1, type lam   [exp:lambda=2]
    cos_sqrt()          c_n = (-1)^n / (2n)!        order 1/2, type 1   [cossqrt]
    synthetic(rho, sig) c_n = (e rho sig / n)^(n/rho), c_0 = 1          [synthetic:rho=1,sigma=1]
    power_order(rho)    c_n = n^(-n/rho), c_0 = 1   type 1/(e rho)      [power:rho=2]
    geometric(r)        c_n = r^n, 0 < r < 1        radius 1/r, not entire [geometric:r=0.9]
    polynomial(coeffs)  finite Taylor series        order 0 convention  [poly:1,0,0.5]
    lacunary(exponents) unit coefficients on the listed exponents       [lacunary:3,15,63]

The synthetic family satisfies ``(n/(e rho)) |c_n|^(rho/n) = sigma``
exactly at every n >= 1, which makes it the sharpest oracle for the growth
estimators.  Polynomials carry the order-0 convention with undefined type.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .errors import SpecParseError
from .numerics import NEG_INF

__all__ = [
    "CoefficientOracle",
    "TruncatedCoeff",
    "SupportCapped",
    "catalog",
    "exp_scale",
    "cos_sqrt",
    "synthetic",
    "power_order",
    "geometric",
    "polynomial",
    "lacunary",
    "truncate",
    "parse_function",
]

# linear materialisation window for double precision
_LOG_LINEAR_MAX = math.log(1e300)


class SupportCapped(Exception):
    """Raised by sparse support iterators whose enumeration hit a search cap."""


class CoefficientOracle:
    """Deterministic map n -> Taylor coefficient, in log-polar form.

    ``log_coeff(n)`` returns ``(log |c_n|, phase)``.  ``support(start)``
    iterates the indices that can carry nonzero coefficients; for sparse
    oracles (polynomials, gap series) this skips the zero runs.
    """

    def __init__(
        self,
        name: str,
        fn: Callable[[int], tuple],
        order: float | None = None,
        type_: float | None = None,
        radius: float | None = None,
        degree: int | None = None,
        is_integer: bool = False,
        support_fn: Callable[[int], Iterator[int]] | None = None,
        linear_fn: Callable[[int], complex | None] | None = None,
    ):
        self.name = name
        self._fn = fn
        self.order = order
        self.type_ = type_
        self.radius = radius
        self.degree = degree
        self.is_integer = is_integer
        self._support_fn = support_fn
        # exact linear-scale values, where the formula admits them; avoids
        # the one-ulp noise of the exp(log) round trip on tie-sensitive paths
        self._linear_fn = linear_fn

    def __repr__(self):
        return f"CoefficientOracle({self.name})"

    @property
    def entire(self) -> bool:
        return self.radius == math.inf

    def log_coeff(self, n: int) -> tuple:
        if n < 0:
            raise ValueError("coefficient index must be nonnegative")
        if self.degree is not None and n > self.degree:
            return NEG_INF, 0.0
        return self._fn(n)

    def coeff(self, n: int) -> complex | None:
        """Linear-scale value, or None when it cannot be materialised."""
        if self._linear_fn is not None:
            exact = self._linear_fn(n)
            if exact is not None:
                return exact
        logmag, phase = self.log_coeff(n)
        if logmag == NEG_INF:
            return 0j
        if abs(logmag) > _LOG_LINEAR_MAX:
            return None
        mag = math.exp(logmag)
        return complex(mag * math.cos(phase), mag * math.sin(phase))

    def support(self, start: int = 0) -> Iterator[int]:
        if self._support_fn is not None:
            return self._support_fn(start)
        if self.degree is not None:
            return iter(range(start, self.degree + 1))

        def dense(k=start):
            while True:
                yield k
                k += 1

        return dense()

    def scaled(self, factor: complex) -> "CoefficientOracle":
        """The oracle of ``factor * f``; growth metadata is unchanged."""
        if factor == 0:
            raise ValueError("scale factor must be nonzero")
        lmag = math.log(abs(factor))
        ph = math.atan2(factor.imag, factor.real) if isinstance(factor, complex) else 0.0

        def fn(n):
            m, p = self.log_coeff(n)
            if m == NEG_INF:
                return NEG_INF, 0.0
            return m + lmag, p + ph

        linear = None
        if self._linear_fn is not None:
            def linear(n, fac=complex(factor)):
                v = self._linear_fn(n)
                return None if v is None else fac * v

        return CoefficientOracle(
            f"scaled({self.name})",
            fn,
            order=self.order,
            type_=self.type_,
            radius=self.radius,
            degree=self.degree,
            is_integer=False,
            support_fn=self._support_fn,
            linear_fn=linear,
        )


@dataclass(frozen=True)
class TruncatedCoeff:
    n: int
    value: complex | None  # None when not materialisable in linear scale
    log_magnitude: float
    phase: float


def truncate(oracle: CoefficientOracle, n: int) -> list:
    """The first n coefficients c_0 .. c_(n-1) of the oracle."""
    out = []
    for k in range(n):
        logmag, phase = oracle.log_coeff(k)
        value = oracle.coeff(k) if logmag == NEG_INF or abs(logmag) <= _LOG_LINEAR_MAX else None
        out.append(TruncatedCoeff(k, value, logmag, phase))
    return out


# ---------------------------------------------------------------------------
# Catalog entries


def exp_scale(lam: float) -> CoefficientOracle:
    """c_n = lam^n / n!; entire of order 1 and type lam."""
    if not lam > 0:
        raise ValueError(f"exp_scale needs lam > 0, got {lam}")
    log_lam = math.log(lam)

    def fn(n):
        return n * log_lam - math.lgamma(n + 1.0), 0.0

    def linear(n):
        if n > 170:
            return None
        try:
            num = lam**n
        except OverflowError:
            return None
        if math.isinf(num):
            return None
        return complex(num / math.factorial(n), 0.0)

    return CoefficientOracle(
        f"exp:lambda={lam:g}", fn, order=1.0, type_=lam, radius=math.inf,
        linear_fn=linear,
    )


def cos_sqrt() -> CoefficientOracle:
    """c_n = (-1)^n / (2n)!; entire of order 1/2 and type 1."""

    def fn(n):
        return -math.lgamma(2.0 * n + 1.0), math.pi if n % 2 else 0.0

    def linear(n):
        if n > 85:
            return None
        return complex((-1.0) ** n / math.factorial(2 * n), 0.0)

    return CoefficientOracle(
        "cossqrt", fn, order=0.5, type_=1.0, radius=math.inf, linear_fn=linear
    )


def synthetic(rho: float, sigma: float) -> CoefficientOracle:
    """c_n = (e rho sigma / n)^(n/rho) with c_0 = 1.

    The growth-type expression ``(n/(e rho)) |c_n|^(rho/n)`` equals sigma
    identically, so declared order and type are exact by construction.
    """
    if not rho > 0:
        raise ValueError(f"synthetic needs rho > 0, got {rho}")
    if not sigma > 0:
        raise ValueError(f"synthetic needs sigma > 0, got {sigma}")
    log_c = math.log(math.e * rho * sigma)

    def fn(n):
        if n == 0:
            return 0.0, 0.0
        return (n / rho) * (log_c - math.log(n)), 0.0

    return CoefficientOracle(
        f"synthetic:rho={rho:g},sigma={sigma:g}",
        fn,
        order=rho,
        type_=sigma,
        radius=math.inf,
    )


def power_order(rho: float) -> CoefficientOracle:
    """c_n = n^(-n/rho) with c_0 = 1; order rho, type 1/(e rho)."""
    if not rho > 0:
        raise ValueError(f"power_order needs rho > 0, got {rho}")

    def fn(n):
        if n == 0:
            return 0.0, 0.0
        return -(n / rho) * math.log(n), 0.0

    return CoefficientOracle(
        f"power:rho={rho:g}",
        fn,
        order=rho,
        type_=1.0 / (math.e * rho),
        radius=math.inf,
    )


def geometric(r: float) -> CoefficientOracle:
    """c_n = r^n with 0 < r < 1; radius of convergence 1/r, not entire."""
    if not 0 < r < 1:
        raise ValueError(f"geometric needs 0 < r < 1, got {r}")
    log_r = math.log(r)

    def fn(n):
        return n * log_r, 0.0

    def linear(n):
        v = r**n
        return complex(v, 0.0) if v > 0 else None

    return CoefficientOracle(
        f"geometric:r={r:g}", fn, radius=1.0 / r, linear_fn=linear
    )


def polynomial(coeffs: Sequence[complex]) -> CoefficientOracle:
    """Finite Taylor series; entire with the order-0 convention."""
    cs = [complex(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    degree = len(cs) - 1 if cs else 0
    is_int = all(
        c.real == int(c.real) and c.imag == int(c.imag) for c in cs
    )

    def fn(n):
        if n >= len(cs) or cs[n] == 0:
            return NEG_INF, 0.0
        c = cs[n]
        return math.log(abs(c)), math.atan2(c.imag, c.real)

    def support(start):
        return iter([k for k in range(start, len(cs)) if cs[k] != 0])

    def linear(n):
        return cs[n] if n < len(cs) else 0j

    label = ",".join(_fmt_complex(c) for c in cs) if cs else "0"
    return CoefficientOracle(
        f"poly:{label}",
        fn,
        order=0.0,
        radius=math.inf,
        degree=degree,
        is_integer=is_int,
        support_fn=support,
        linear_fn=linear,
    )


def lacunary(exponents: Sequence[int]) -> CoefficientOracle:
    """Unit coefficients on the listed (strictly increasing) exponents."""
    exps = [int(e) for e in exponents]
    if not exps or any(b <= a for a, b in zip(exps, exps[1:])) or exps[0] < 0:
        raise ValueError("lacunary needs strictly increasing nonnegative exponents")
    exp_set = set(exps)

    def fn(n):
        return (0.0, 0.0) if n in exp_set else (NEG_INF, 0.0)

    def support(start):
        return iter([e for e in exps if e >= start])

    def linear(n):
        return complex(1.0, 0.0) if n in exp_set else 0j

    return CoefficientOracle(
        "lacunary:" + ",".join(str(e) for e in exps),
        fn,
        order=0.0,
        radius=math.inf,
        degree=exps[-1],
        is_integer=True,
        support_fn=support,
        linear_fn=linear,
    )


def _fmt_complex(c: complex) -> str:
    if c.imag == 0:
        return f"{c.real:g}"
    return f"{c.real:g}{c.imag:+g}j"


_CATALOG = {
    "exp_scale": exp_scale,
    "cos_sqrt": cos_sqrt,
    "synthetic": synthetic,
    "power_order": power_order,
    "geometric": geometric,
    "polynomial": polynomial,
    "lacunary": lacunary,
}


def catalog(name: str, *params) -> CoefficientOracle:
    """Look up a catalog entry by identifier, e.g. ``catalog('exp_scale', 2)``."""
    if name not in _CATALOG:
        raise ValueError(f"unknown function {name!r}; choices: {sorted(_CATALOG)}")
    if name in ("polynomial", "lacunary"):
        return _CATALOG[name](params[0] if len(params) == 1 else list(params))
    return _CATALOG[name](*params)


def parse_function(text: str) -> CoefficientOracle:
    """Parse the canonical CLI form, e.g. ``exp:lambda=2`` or ``poly:1,0,0.5``."""
    text = text.strip()
    tag, _, rest = text.partition(":")
    tag = tag.lower()

    def kv_params(allowed):
        params = {}
        if rest:
            for item in rest.split(","):
                key, sep, value = item.partition("=")
                key = key.strip().lower()
                if not sep or key not in allowed:
                    raise SpecParseError(
                        f"function {tag!r} does not take parameter {key or item!r}",
                        parameter=key or "function",
                    )
                try:
                    params[key] = float(value)
                except ValueError:
                    raise SpecParseError(
                        f"parameter {key!r} must be a number, got {value!r}",
                        parameter=key,
                    ) from None
        return params

    def need(params, key):
        if key not in params:
            raise SpecParseError(
                f"function {tag!r} needs parameter {key!r}", parameter=key
            )
        return params[key]

    try:
        if tag == "exp":
            return exp_scale(need(kv_params({"lambda"}), "lambda"))
        if tag == "cossqrt":
            if rest:
                raise SpecParseError("cossqrt takes no parameters", parameter="function")
            return cos_sqrt()
        if tag == "synthetic":
            p = kv_params({"rho", "sigma"})
            return synthetic(need(p, "rho"), need(p, "sigma"))
        if tag == "power":
            return power_order(need(kv_params({"rho"}), "rho"))
        if tag == "geometric":
            return geometric(need(kv_params({"r"}), "r"))
        if tag == "poly":
            if not rest:
                raise SpecParseError("poly needs coefficients", parameter="poly")
            try:
                coeffs = [complex(tok) for tok in rest.split(",")]
            except ValueError:
                raise SpecParseError(
                    f"bad polynomial coefficients {rest!r}", parameter="poly"
                ) from None
            return polynomial(coeffs)
        if tag == "lacunary":
            if not rest:
                raise SpecParseError("lacunary needs exponents", parameter="lacunary")
            try:
                exps = [int(tok) for tok in rest.split(",")]
            except ValueError:
                raise SpecParseError(
                    f"bad lacunary exponents {rest!r}", parameter="lacunary"
                ) from None
            return lacunary(exps)
    except ValueError as exc:
        if isinstance(exc, SpecParseError):
            raise
        raise SpecParseError(str(exc), parameter="function") from None
    raise SpecParseError(f"unknown function {tag!r}", parameter="function")
