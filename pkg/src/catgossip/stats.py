"""Disagreement and variance functionals, the exact one-step expectation
oracle, log-slope fitting, and cross-trial envelopes.

The variance is (1/N) * sum over unordered agent pairs of d^2; the
disagreement weights each graph edge by 1/deg(v) + 1/deg(w).  For a
positive curvature bound both are transported through
chi(t) = 1 - cos(sqrt(kappa) t).  The one-step oracle enumerates ordered
wake-up pairs with their exact probabilities (1/N)(1/deg v) and recomputes
the functional from scratch after each hypothetical update, so it is
independent of the incremental bookkeeping used by the trial runner.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

import numpy as np

from . import core, network
from .errors import (
    DegenerateSeries,
    DomainError,
    LengthMismatch,
    SizeMismatch,
    UnsupportedSpace,
)
from .modelspace import chi_kappa
from .tolerances import CONSENSUS_DIAMETER_TOL, GUARD_TOL

if TYPE_CHECKING:  # pragma: no cover
    from .engine import Configuration, TrialSeries

_ORACLE_MAX_AGENTS = 64


# ---------------------------------------------------------------------------
# configuration functionals
# ---------------------------------------------------------------------------

def pairwise_distances(c: "Configuration") -> np.ndarray:
    """Symmetric matrix of pairwise distances of a configuration."""
    n = len(c.points)
    pts = list(c.points) if c.space == core.TREE else np.stack(c.points)
    out = np.zeros((n, n))
    for i in range(n - 1):
        row = core.distances_from(c.space, c.points[i], pts[i + 1 :])
        out[i, i + 1 :] = row
        out[i + 1 :, i] = row
    return out


def variance(c: "Configuration") -> float:
    """(1/N) * sum of squared distances over unordered agent pairs."""
    d = pairwise_distances(c)
    return float((d * d).sum() / (2.0 * len(c.points)))


def configuration_diameter(c: "Configuration") -> float:
    return float(pairwise_distances(c).max())


def disagreement(c: "Configuration", g: network.Graph) -> float:
    """Edge sum of (1/deg(v) + 1/deg(w)) d^2(x_v, x_w)."""
    _check_graph(c, g)
    d = pairwise_distances(c)
    eu, ew, wts = g.edge_arrays()
    return float((wts * d[eu, ew] ** 2).sum())


def variance_kappa(c: "Configuration", kappa: float) -> float:
    """(2/N) * sum over unordered pairs of chi(d); needs d <= pi/(2 sqrt(kappa))."""
    d = _checked_kappa_distances(c, kappa)
    chi = chi_kappa(kappa, d)
    return float(chi.sum() / len(c.points))


def disagreement_kappa(c: "Configuration", g: network.Graph, kappa: float) -> float:
    """(1/2) * edge sum of (1/deg(v) + 1/deg(w)) chi(d(x_v, x_w))."""
    _check_graph(c, g)
    d = _checked_kappa_distances(c, kappa)
    eu, ew, wts = g.edge_arrays()
    return float(0.5 * (wts * chi_kappa(kappa, d[eu, ew])).sum())


def euclidean_variance(c: "Configuration") -> float:
    """Variance under the ambient flat metric (vectors, or Frobenius for SPD)."""
    if c.space not in core.LINEAR_SPACES:
        raise UnsupportedSpace(f"{c.space} has no ambient flat metric")
    pts = np.stack(c.points)
    flat = pts.reshape(len(c.points), -1)
    diff = flat[:, None, :] - flat[None, :, :]
    sq = (diff * diff).sum(axis=2)
    return float(sq.sum() / (2.0 * len(c.points)))


def _check_graph(c: "Configuration", g: network.Graph) -> None:
    if len(c.points) != g.n:
        raise SizeMismatch(f"{len(c.points)} agents vs graph of order {g.n}")


def _checked_kappa_distances(c: "Configuration", kappa: float) -> np.ndarray:
    if kappa <= 0.0:
        raise DomainError(f"curved functionals need kappa > 0, got {kappa!r}")
    d = pairwise_distances(c)
    limit = math.pi / (2.0 * math.sqrt(kappa))
    if float(d.max()) > limit + GUARD_TOL:
        raise DomainError(
            f"pairwise distance {d.max():.6g} exceeds pi/(2 sqrt(kappa)) = {limit:.6g}"
        )
    return d


# ---------------------------------------------------------------------------
# exact one-step expectation oracle
# ---------------------------------------------------------------------------

def expected_one_step_change(c: "Configuration", g: network.Graph) -> float:
    """Exact expected variance change of one midpoint tick.

    Sums over ordered pairs (v, w in N(v)) with weight 1/(N deg(v)),
    recomputing the variance from scratch on the updated configuration.
    """
    return _expected_change(c, g, variance)


def expected_one_step_change_kappa(c: "Configuration", g: network.Graph, kappa: float) -> float:
    """Exact expected change of the curved variance for one midpoint tick."""
    r_kappa = core.curvature_bound(kappa).r_kappa
    if configuration_diameter(c) >= r_kappa:
        raise DomainError("configuration diameter reaches the convexity radius")
    return _expected_change(c, g, lambda conf: variance_kappa(conf, kappa))


def _expected_change(c: "Configuration", g: network.Graph, functional) -> float:
    from .engine import Configuration as _Configuration

    _check_graph(c, g)
    n = len(c.points)
    if n > _ORACLE_MAX_AGENTS:
        raise DomainError(f"oracle enumerates ordered pairs; limited to {_ORACLE_MAX_AGENTS} agents")
    base = functional(c)
    total = 0.0
    for v in range(n):
        weight = 1.0 / (n * g.degrees[v])
        for w in g.adjacency[v]:
            m = core.midpoint(c.space, c.points[v], c.points[w])
            pts = list(c.points)
            pts[v] = m
            pts[w] = m
            total += weight * (functional(_Configuration(c.space, tuple(pts))) - base)
    return total


# ---------------------------------------------------------------------------
# slope fitting and envelopes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SlopeFit:
    slope: float
    intercept: float
    r2: float
    n_points: int


def fit_log_slope(iters: Sequence[float], values: Sequence[float], window: float = 0.5) -> SlopeFit:
    """Ordinary least squares of log(values) against the iteration index.

    The fit uses the records whose iteration lies in [window * K, K] where K
    is the last iteration of the series handed in; values must be positive
    there.  A window containing an exact zero (consensus was reached inside
    it) yields the sentinel slope -inf; fewer than 10 usable points raise
    :class:`DegenerateSeries`.
    """
    x = np.asarray(iters, dtype=float)
    y = np.asarray(values, dtype=float)
    if x.shape != y.shape or x.ndim != 1:
        raise LengthMismatch("iteration and value arrays must be equal-length 1-D")
    xs, ys = _fit_window(x, y, window)
    if np.any(ys <= 0.0):
        return SlopeFit(slope=-math.inf, intercept=math.nan, r2=math.nan, n_points=int(xs.size))
    return _ols_on_logs(xs, np.log(ys))


def _fit_window(x: np.ndarray, y: np.ndarray, window: float) -> tuple[np.ndarray, np.ndarray]:
    if x.size == 0:
        raise DegenerateSeries("empty series")
    sel = x >= window * float(x[-1])
    if int(sel.sum()) < 10:
        raise DegenerateSeries(f"only {int(sel.sum())} points in the fit window")
    return x[sel], y[sel]


def _ols_on_logs(xs: np.ndarray, logs: np.ndarray) -> SlopeFit:
    xm = float(xs.mean())
    ym = float(logs.mean())
    sxx = float(((xs - xm) ** 2).sum())
    sxy = float(((xs - xm) * (logs - ym)).sum())
    slope = sxy / sxx
    intercept = ym - slope * xm
    resid = logs - (slope * xs + intercept)
    ss_res = float((resid**2).sum())
    ss_tot = float(((logs - ym) ** 2).sum())
    r2 = 1.0 if ss_tot <= 1e-300 else 1.0 - ss_res / ss_tot
    return SlopeFit(slope=slope, intercept=intercept, r2=r2, n_points=int(xs.size))


def series_metric(series: "TrialSeries", use_kappa: bool) -> np.ndarray:
    if use_kappa:
        if series.sigma2_kappa is None:
            raise DomainError("series carries no curved variance")
        return series.sigma2_kappa
    return series.sigma2


def valid_prefix_length(series: "TrialSeries", use_kappa: bool) -> int:
    """Number of leading records before consensus detection.

    A record is usable for log fitting while the configuration diameter
    stays at or above the consensus threshold and the fitted metric is
    positive.
    """
    values = series_metric(series, use_kappa)
    good = (series.diameter >= CONSENSUS_DIAMETER_TOL) & (values > 0.0)
    if bool(good.all()):
        return int(values.size)
    return int(np.argmin(good))


def mean_log_curve(trials: Sequence["TrialSeries"], use_kappa: bool) -> tuple[np.ndarray, np.ndarray]:
    """Cross-trial mean of log(metric) on the common pre-consensus prefix."""
    if not trials:
        raise LengthMismatch("no trials")
    _check_equal_grids(trials)
    m = min(valid_prefix_length(s, use_kappa) for s in trials)
    if m == 0:
        raise DegenerateSeries("a trial starts at consensus; nothing to fit")
    logs = np.stack([np.log(series_metric(s, use_kappa)[:m]) for s in trials])
    return trials[0].iters[:m].astype(float), logs.mean(axis=0)


def fit_trial(series: "TrialSeries", use_kappa: bool, window: float = 0.5) -> SlopeFit:
    """Log-slope fit of one trial on its own pre-consensus prefix."""
    m = valid_prefix_length(series, use_kappa)
    if m == 0:
        raise DegenerateSeries("trial starts at consensus")
    values = series_metric(series, use_kappa)
    return fit_log_slope(series.iters[:m].astype(float), values[:m], window)


def fit_mean_curve(trials: Sequence["TrialSeries"], use_kappa: bool, window: float = 0.5) -> SlopeFit:
    """Log-slope fit of the cross-trial mean log-variance curve."""
    iters, mean_logs = mean_log_curve(trials, use_kappa)
    xs, logs = _fit_window(iters, mean_logs, window)
    return _ols_on_logs(xs, logs)


@dataclass(frozen=True)
class Envelope:
    lower: np.ndarray
    median: np.ndarray
    upper: np.ndarray


def envelope(trials: Sequence["TrialSeries"], coverage: float, use_kappa: bool = False) -> Envelope:
    """Pointwise quantile band of log(metric) across trials.

    Quantiles interpolate order statistics linearly at plotting positions
    q (n + 1) clamped to the sample range, so two trials give exact min and
    max bands.  Records at or past consensus contribute -inf, which the
    caller serializes as missing.
    """
    if len(trials) < 2:
        raise LengthMismatch("envelope needs at least 2 trials")
    if not 0.0 < coverage < 1.0:
        raise DomainError(f"coverage must lie in (0, 1), got {coverage!r}")
    _check_equal_grids(trials)
    values = np.stack([series_metric(s, use_kappa) for s in trials])
    logs = np.full(values.shape, -np.inf)
    pos = values > 0.0
    logs[pos] = np.log(values[pos])
    q_lo = (1.0 - coverage) / 2.0
    lower = _quantile_weibull(logs, q_lo)
    median = _quantile_weibull(logs, 0.5)
    upper = _quantile_weibull(logs, 1.0 - q_lo)
    return Envelope(lower=lower, median=median, upper=upper)


def _quantile_weibull(rows: np.ndarray, q: float) -> np.ndarray:
    """Quantile over axis 0 at plotting position q (n + 1), clamped."""
    n = rows.shape[0]
    srt = np.sort(rows, axis=0)
    h = q * (n + 1.0) - 1.0  # 0-indexed order-statistic position
    if h <= 0.0:
        return srt[0]
    if h >= n - 1.0:
        return srt[n - 1]
    lo = int(math.floor(h))
    frac = h - lo
    low = srt[lo]
    high = srt[lo + 1]
    with np.errstate(invalid="ignore"):
        interp = low + frac * (high - low)
    # interpolation against a -inf order statistic clamps to -inf
    return np.where(np.isneginf(low), -np.inf, interp)


def _check_equal_grids(trials: Sequence["TrialSeries"]) -> None:
    first = trials[0].iters
    for s in trials[1:]:
        if s.iters.shape != first.shape or not np.array_equal(s.iters, first):
            raise LengthMismatch("trial series disagree on recorded iterations")


# ---------------------------------------------------------------------------
# equivalence constants
# ---------------------------------------------------------------------------

def kappa_equivalence_constant(g: network.Graph) -> float:
    """Upper constant of the curved variance/disagreement sandwich,
    pi^2 times the flat graph constant."""
    return math.pi**2 * network.c_g_constant(g)
