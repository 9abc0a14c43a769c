"""Figure rendering for the report artifacts.

Each builder returns a matplotlib Figure; the CLI saves them as PNG files
next to the delimited output.  Log-scale data is drawn in log10 for
readability.
"""

from __future__ import annotations

import math

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .numerics import NEG_INF

_LOG10 = math.log(10.0)


def _log10(log_value):
    if log_value is None or log_value == NEG_INF:
        return None
    return log_value / _LOG10


def _series(pairs):
    xs = [n for n, v in pairs if v is not None]
    ys = [v for _, v in pairs if v is not None]
    return xs, ys


def plot_norm_profile(profile, quoted=None):
    """Monomial norms and their n-th roots; optionally the quoted variants."""
    fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(10, 4))
    ns = list(range(len(profile.values)))
    ax0.plot(ns, [_log10(v.log_value) for v in profile.values], lw=1.2, label="computed")
    if quoted is not None:
        xs, ys = _series([(n, _log10(q)) for n, q in enumerate(quoted)])
        ax0.plot(xs, ys, lw=1.0, ls="--", label="quoted form")
        ax0.legend(fontsize=8)
    ax0.set_xlabel("n")
    ax0.set_ylabel("log10 ||z^n||")
    ax0.set_title(profile.space.canonical())
    roots_n = list(range(1, len(profile.values)))
    ax1.plot(roots_n, list(profile.stats.roots), lw=1.2)
    ax1.axhline(1.0, color="gray", lw=0.8, ls=":")
    ax1.set_xlabel("n")
    ax1.set_ylabel("||z^n||^(1/n)")
    ax1.set_title("root limit")
    fig.tight_layout()
    return fig


def plot_approx_profile(profile):
    """Lower bound, exact value, and upper bound of E_n(f)."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    entries = profile.entries
    for attr, style, label in (
        ("log_lower", ":", "lower bound"),
        ("log_exact", "-", "exact"),
        ("log_upper", "--", "upper bound"),
    ):
        xs, ys = _series([(e.n, _log10(getattr(e, attr))) for e in entries])
        if xs:
            ax.plot(xs, ys, style, lw=1.2, label=label)
    ax.set_xlabel("n")
    ax.set_ylabel("log10 E_n")
    ax.set_title(f"{profile.function_name} in {profile.space.canonical()}")
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig


def plot_estimate_report(report):
    """Error roots, the raw order sequence, and the raw type sequence."""
    fig, axes = plt.subplots(1, 3, figsize=(13, 4))
    xs, ys = _series([(n, r if r > 0 else None) for n, r in report.roots])
    axes[0].semilogy(xs, ys, lw=1.0)
    axes[0].set_xlabel("n")
    axes[0].set_ylabel("E_n^(1/n)")
    axes[0].set_title(f"verdict: {report.verdict}")

    xs, ys = _series(report.order_raw)
    axes[1].plot(xs, ys, lw=1.0, label="raw")
    if report.rho_hat is not None:
        axes[1].axhline(report.rho_hat, color="C1", lw=1.0, ls="--",
                        label=f"extrapolated {report.rho_hat:.4g}")
    axes[1].set_xlabel("n")
    axes[1].set_ylabel("order sequence")
    axes[1].legend(fontsize=8)

    xs, ys = _series(report.type_raw)
    axes[2].plot(xs, ys, lw=1.0, label="raw")
    if report.sigma_hat is not None:
        axes[2].axhline(report.sigma_hat, color="C1", lw=1.0, ls="--",
                        label=f"estimate {report.sigma_hat:.4g}")
    axes[2].set_xlabel("n")
    axes[2].set_ylabel("type sequence")
    axes[2].legend(fontsize=8)

    fig.suptitle(f"{report.function} in {report.space}", fontsize=10)
    fig.tight_layout()
    return fig


def plot_integer_rows(rows, title):
    """Obstruction bound and exact integer-approximation error against n."""
    fig, ax = plt.subplots(figsize=(7, 4.5))
    xs, ys = _series([(n, _log10(ob)) for n, ob, _ in rows])
    if xs:
        ax.plot(xs, ys, lw=1.2, label="obstruction lower bound")
    xs, ys = _series([(n, _log10(err)) for n, _, err in rows])
    if xs:
        ax.plot(xs, ys, "--", lw=1.2, label="integer approx error")
    ax.set_xlabel("n")
    ax.set_ylabel("log10 value")
    ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig


def plot_matrix_summary(rows):
    """Recovered order and type against the declared values, one dot per cell."""
    fig, (ax0, ax1) = plt.subplots(1, 2, figsize=(9, 4.2))
    for ax, declared_key, got_key, label in (
        (ax0, "rho_declared", "rho_hat", "order"),
        (ax1, "sigma_declared", "sigma_hat", "type"),
    ):
        xs = [r[declared_key] for r in rows if r.get(got_key) is not None]
        ys = [r[got_key] for r in rows if r.get(got_key) is not None]
        if xs:
            lim = (0.0, 1.1 * max(max(xs), max(ys)))
            ax.plot(lim, lim, color="gray", lw=0.8, ls=":")
            ax.plot(xs, ys, "o", ms=4, alpha=0.7)
            ax.set_xlim(lim)
            ax.set_ylim(lim)
        ax.set_xlabel(f"declared {label}")
        ax.set_ylabel(f"recovered {label}")
    fig.tight_layout()
    return fig
