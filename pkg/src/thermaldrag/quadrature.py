"""Adaptive quadrature, numerical differentiation and a discrete Hilbert transform.

The workhorse is a Gauss-Kronrod 7/15 pair with priority-queue interval
bisection.  Integrands receive numpy arrays of nodes and must return an
array of values (real or complex); this keeps the Python overhead per
panel to a single vectorized call.  Results are deterministic for a fixed
configuration: the priority queue breaks ties by insertion order and the
final sums run over intervals sorted by left endpoint.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .core import X_UNDERFLOW, occupation_from_ratio
from .errors import ExtrapolationUnstable, GridTooCoarse, GrowthBoundExceeded

# Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (standard QUADPACK values).
_NODES = np.array([
    -0.991455371120812639206854697526329,
    -0.949107912342758524526189684047851,
    -0.864864423359769072789712788640926,
    -0.741531185599394439863864773280788,
    -0.586087235467691130294144838258730,
    -0.405845151377397166906606412076961,
    -0.207784955007898467600689403773245,
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
])
_WK = np.array([
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
])
_WG = np.array([
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
])
_GAUSS_IDX = np.arange(1, 15, 2)

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and subdivision budget for the adaptive rules."""

    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_subdivisions: int = 200

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be > 0")
        if not self.abs_tol > 0:
            raise ValueError("abs_tol must be > 0")
        if self.max_subdivisions < 1:
            raise ValueError("max_subdivisions must be >= 1")


DEFAULT_CONFIG = QuadratureConfig()


@dataclass
class QuadratureResult:
    """Value, claimed error bound and evaluation count of one integration.

    ``converged`` is False when the subdivision budget ran out before the
    tolerances were met (the value is still the best available estimate).
    """

    value: complex | float
    error_estimate: float
    evaluations: int
    converged: bool = True


def _gk_panel(f, a: float, b: float):
    """One Gauss-Kronrod 7/15 panel on [a, b]; returns (value, error)."""
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    y = np.asarray(f(mid + half * _NODES))
    resk = half * (_WK @ y)
    resg = half * (_WG @ y[_GAUSS_IDX])
    err = abs(resk - resg)
    resabs = abs(half) * (_WK @ np.abs(y))
    if b > a:
        resasc = abs(half) * (_WK @ np.abs(y - resk / (b - a)))
        if resasc != 0.0 and err != 0.0:
            err = resasc * min(1.0, (200.0 * err / resasc) ** 1.5)
    # roundoff floor on the claimed error
    err = max(err, 50.0 * _EPS * resabs)
    return resk, err


def _adaptive(f, breakpoints, cfg: QuadratureConfig) -> QuadratureResult:
    """Adaptive bisection over the initial panels given by ``breakpoints``."""
    heap = []  # (-error, insertion counter, a, b, value, error)
    counter = 0
    evals = 0
    for a, b in zip(breakpoints[:-1], breakpoints[1:]):
        value, err = _gk_panel(f, a, b)
        evals += 15
        heap.append((-err, counter, a, b, value, err))
        counter += 1
    heapq.heapify(heap)
    finished = []  # intervals too narrow to split further

    converged = True
    while True:
        total = sum(item[4] for item in heap) + sum(item[4] for item in finished)
        total_err = sum(item[5] for item in heap) + sum(item[5] for item in finished)
        if total_err <= max(cfg.abs_tol, cfg.rel_tol * abs(total)):
            break
        if not heap:
            converged = False
            break
        if len(heap) + len(finished) >= cfg.max_subdivisions:
            converged = False
            break
        item = heapq.heappop(heap)
        a, b = item[2], item[3]
        mid = 0.5 * (a + b)
        if mid - a < _EPS * max(abs(a), abs(b), 1.0):
            # interval at roundoff width; freeze it
            finished.append(item)
            continue
        for lo, hi in ((a, mid), (mid, b)):
            value, err = _gk_panel(f, lo, hi)
            evals += 15
            heapq.heappush(heap, (-err, counter, lo, hi, value, err))
            counter += 1

    # deterministic final summation: left-to-right over the interval list
    segments = sorted(heap + finished, key=lambda item: item[2])
    total = sum(item[4] for item in segments)
    total_err = sum(item[5] for item in segments)
    return QuadratureResult(total, float(total_err), evals, converged)


def integrate_finite(f, lo: float, hi: float,
                     cfg: QuadratureConfig = DEFAULT_CONFIG) -> QuadratureResult:
    """Integrate a vectorized integrand over the finite range [lo, hi].

    Polynomials up to the Kronrod degree (22) are integrated exactly up to
    roundoff.  The integrand may return complex values.

    Parameters
    ----------
    f : callable
        Maps an ndarray of nodes to an ndarray of values.
    lo, hi : float
        Integration bounds with lo <= hi.
    cfg : QuadratureConfig
        Tolerances and subdivision budget.
    """
    if lo > hi:
        raise ValueError(f"integrate_finite requires lo <= hi, got [{lo}, {hi}]")
    if lo == hi:
        return QuadratureResult(0.0, 0.0, 15, True)
    return _adaptive(f, [lo, hi], cfg)


# breakpoints matched to the Bose weight: panels grow geometrically
_THERMAL_BREAKS = (0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0)
_MAJORANT_SAFETY = 100.0  # sampled |f| may exceed the fitted majorant this much


def integrate_thermal(f, temp: float, cfg: QuadratureConfig = DEFAULT_CONFIG,
                      growth_order: int = 3) -> QuadratureResult:
    """Compute the Bose-weighted integral of f over (0, infinity).

    Evaluates ``int_0^inf f(omega) n_T(omega) domega`` by substituting
    x = omega/T, which makes the exponential decay temperature independent,
    and truncating at an X where the discarded tail (polynomial majorant
    times e^{-X}) is below a tenth of ``abs_tol``.  Any 1/(2 pi) style
    normalization is the caller's responsibility.

    Parameters
    ----------
    f : callable
        Vectorized integrand of the frequency (without the Bose factor);
        locally integrable on (0, inf) with at most polynomial growth.
    temp : float
        Temperature, > 0.
    growth_order : int
        Declared polynomial majorant order p: |f| is assumed to grow no
        faster than (1 + x^p) in x = omega/T.

    Raises
    ------
    GrowthBoundExceeded
        If sampled values of f near the truncation point exceed the
        majorant fitted at moderate x by more than a factor of 100.
    """
    if not temp > 0:
        raise ValueError(f"integrate_thermal requires temp > 0, got {temp}")

    # fit the majorant scale M on moderate arguments
    xs = np.geomspace(1e-3, 60.0, 48)
    fs = np.abs(np.asarray(f(temp * xs)))
    evals = xs.size
    scale = float(np.max(fs / (1.0 + xs**growth_order)))

    # choose the truncation point from the tail bound
    cutoff = 40.0

    def tail_bound(x):
        return 1.6 * temp * scale * (1.0 + 2.0 * x**growth_order) * math.exp(-x)

    while tail_bound(cutoff) > 0.1 * cfg.abs_tol and cutoff < X_UNDERFLOW:
        cutoff *= 1.2
    cutoff = min(cutoff, X_UNDERFLOW)

    # reject integrands that outgrow the declared majorant near the cutoff
    xs_hi = np.array([cutoff, 1.25 * cutoff, 1.5 * cutoff])
    fs_hi = np.abs(np.asarray(f(temp * xs_hi)))
    evals += xs_hi.size
    if np.any(fs_hi > _MAJORANT_SAFETY * scale * (1.0 + xs_hi**growth_order)):
        raise GrowthBoundExceeded(
            f"integrand grows faster than the declared (1 + x^{growth_order}) majorant"
        )

    def weighted(x):
        return temp * np.asarray(f(temp * x)) * occupation_from_ratio(x)

    breaks = [b for b in _THERMAL_BREAKS if b < cutoff] + [cutoff]
    result = _adaptive(weighted, breaks, cfg)
    result.evaluations += evals
    # the claimed error must also cover the discarded tail
    result.error_estimate += tail_bound(cutoff)
    return result


def differentiate(f, x: float, scale: float) -> float:
    """Central difference with one Richardson level; O(h^4) on smooth f.

    The base step is ``scale * 1e-6``, balancing truncation against
    roundoff at double precision.
    """
    h = abs(scale) * 1e-6
    if h == 0.0:
        raise ValueError("differentiate requires a nonzero scale")
    coarse = (f(x + h) - f(x - h)) / (2.0 * h)
    fine = (f(x + 0.5 * h) - f(x - 0.5 * h)) / h
    return (4.0 * fine - coarse) / 3.0


def hilbert_transform_pv(samples, at: int) -> float:
    """Discrete principal-value Hilbert transform on a uniform grid.

    Returns (1/pi) PV int g(w')/(w' - w_at) dw' using the skip-singularity
    trapezoid rule with half weights at the two grid ends.  The grid
    spacing cancels, so only the sample values are needed.  Accuracy is
    O(h^2) for smooth decaying samples, plus the truncation error of the
    finite window.
    """
    g = np.asarray(samples, dtype=float)
    if g.ndim != 1 or g.size < 64:
        raise GridTooCoarse(f"need a 1-D grid of >= 64 samples, got shape {g.shape}")
    n = g.size
    if not 0 <= at < n:
        raise IndexError(f"index {at} outside grid of size {n}")
    weights = np.ones(n)
    weights[0] = weights[-1] = 0.5
    weights[at] = 0.0
    offsets = np.arange(n, dtype=float) - at
    offsets[at] = 1.0  # dummy, weight is zero
    return float(np.sum(weights * g / offsets) / math.pi)


def richardson_extrapolate(values, step_ratio: float = 2.0,
                           first_order: int = 1, order_step: int = 1):
    """Richardson-extrapolate a sequence sampled at steps h0 / step_ratio^k.

    Assumes an error expansion in powers first_order, first_order +
    order_step, ... of the step.  Returns (limit, error_estimate) where the
    estimate is the magnitude of the last diagonal correction.

    Raises
    ------
    ExtrapolationUnstable
        If the final diagonal correction grows instead of contracting.
    """
    seq = [complex(v) if isinstance(v, complex) else float(v) for v in values]
    n = len(seq)
    if n < 3:
        raise ValueError("need at least three samples to extrapolate")
    # contraction check on the raw ladder: an asymptotic sequence must have
    # shrinking successive differences (up to noise at relative 1e-9)
    diffs = [abs(seq[k + 1] - seq[k]) for k in range(n - 1)]
    scale_in = max(abs(v) for v in seq) or 1e-300
    if diffs[-1] > 2.0 * diffs[-2] and diffs[-1] > 1e-9 * scale_in:
        raise ExtrapolationUnstable(
            f"sample differences grew from {diffs[-2]:.3e} to {diffs[-1]:.3e}"
        )
    table = [list(seq)]
    for j in range(1, n):
        factor = step_ratio ** (first_order + (j - 1) * order_step)
        prev = table[j - 1]
        table.append([
            prev[k + 1] + (prev[k + 1] - prev[k]) / (factor - 1.0)
            for k in range(n - j)
        ])
    diagonal = [table[j][-1] for j in range(n)]
    corrections = [abs(diagonal[j] - diagonal[j - 1]) for j in range(1, n)]
    return diagonal[-1], corrections[-1]
