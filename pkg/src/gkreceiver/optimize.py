"""Deterministic scalar optimizers for programming the receiver.

Two objectives are supported for the displacement photon-counting receiver:
channel capacity (joint over prior and displacement) and one-shot error
probability (over displacement at a fixed prior).  The displacement
landscape is not certified unimodal — capacity maxima in particular come in
exact mirror pairs (beta <-> -2*sqrt(n)-beta with the prior flipped), since
relabeling which symbol is nulled relabels the channel inputs — so every
displacement search is a coarse scan followed by local golden-section
refinement, with ties resolved toward the smallest |beta| (the physically
cheapest local oscillator).

All schedules are fixed functions of the configuration: results are
reproducible bit-for-bit across runs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._backend import kernels
from .receivers import ModeEnergy, _beta, _n_bar, _p_plus, homodyne_error

__all__ = [
    "OptimResult",
    "BracketError",
    "capacity_fixed_beta",
    "capacity_fixed_prior",
    "capacity_gk",
    "min_error_beta",
    "find_crossover",
    "estimate_error_exponent",
]

PRIOR_TOL = 1e-12
PRIOR_ITER_CAP = 200
BETA_TOL = 1e-10
BETA_ITER_CAP = 200
SCAN_POINTS = 2401
# Two candidates within TIE_EPS of each other count as a tie; refinement
# must also beat the scan by more than TIE_EPS to displace a tied grid point.
TIE_EPS = 1e-12
CROSSOVER_RESIDUAL = 1e-12


class BracketError(ValueError):
    """A root bracket does not contain exactly one sign change."""


@dataclass(frozen=True)
class OptimResult:
    """Optimizer output: extremum location(s), value, and convergence data."""

    value: float
    arg_beta: float | None = None
    arg_p: float | None = None
    evaluations: int = 0
    converged: bool = True
    tolerance_achieved: float = 0.0


def beta_window(n_bar: float) -> tuple[float, float]:
    """Displacement search window [-(2*sqrt(n) + 6), 6].

    Symmetric about -sqrt(n), so it covers both nulling configurations
    (beta ~ 0 and beta ~ -2*sqrt(n)) with 6 units of slack each side.
    """
    return -(2.0 * math.sqrt(n_bar) + 6.0), 6.0


def _golden_max(f, a, b, tol, iter_cap):
    """Fixed-schedule golden-section maximization; returns (x, fx, width)."""
    dist = b - a
    if dist <= tol:
        x = 0.5 * (a + b)
        return x, f(x), dist
    n = kernels.golden_iterations(dist, tol)
    if n > iter_cap:
        n = iter_cap
    inv = kernels.INV_PHI
    inv2 = kernels.INV_PHI2
    c = a + inv2 * dist
    d = a + inv * dist
    yc = f(c)
    yd = f(d)
    for _ in range(n):
        if yc > yd:
            d = c
            yd = yc
            dist = inv * dist
            c = a + inv2 * dist
            yc = f(c)
        else:
            a = c
            c = d
            yc = yd
            dist = inv * dist
            d = a + inv * dist
            yd = f(d)
    if yc > yd:
        return c, yc, dist
    return d, yd, dist


def _scan_refine_max(f, lo, hi, points, tol, iter_cap):
    """Coarse grid scan + per-cluster golden refinement of a maximum.

    Grid points tied with the best value (within TIE_EPS) are clustered;
    each cluster is refined around its smallest-|x| member, and refinements
    are kept only when they improve by more than TIE_EPS — degenerate flat
    objectives therefore resolve to the smallest-|x| grid point.  Final ties
    between clusters again pick the smallest |x|.

    Returns (x, value, width, converged).
    """
    step = (hi - lo) / (points - 1)
    xs = [lo + k * step for k in range(points)]
    vals = [f(x) for x in xs]
    vbest = max(vals)
    cand = [k for k, v in enumerate(vals) if v >= vbest - TIE_EPS]

    clusters = [[cand[0]]]
    for k in cand[1:]:
        if k == clusters[-1][-1] + 1:
            clusters[-1].append(k)
        else:
            clusters.append([k])

    finalists = []
    for cluster in clusters:
        rep = min(cluster, key=lambda k: (abs(xs[k]), -xs[k]))
        a = max(xs[rep] - step, lo)
        b = min(xs[rep] + step, hi)
        x, y, width = _golden_max(f, a, b, tol, iter_cap)
        if y > vals[rep] + TIE_EPS:
            finalists.append((x, y, width))
        else:
            finalists.append((xs[rep], vals[rep], width))

    ybest = max(y for _, y, _ in finalists)
    winners = [t for t in finalists if t[1] >= ybest - TIE_EPS]
    x, y, width = min(winners, key=lambda t: (abs(t[0]), -t[0]))
    return x, y, width, width <= tol


def capacity_fixed_beta(energy, disp) -> OptimResult:
    """Best prior and attained information for a fixed displacement."""
    n = _n_bar(energy)
    b = _beta(disp)
    p, value, evals, width = kernels.best_prior_mi(n, b, PRIOR_TOL, PRIOR_ITER_CAP)
    return OptimResult(value=value, arg_beta=b, arg_p=p, evaluations=evals,
                       converged=width <= PRIOR_TOL, tolerance_achieved=width)


def capacity_fixed_prior(energy, prior) -> OptimResult:
    """Best displacement and attained information for a fixed prior."""
    n = _n_bar(energy)
    p = _p_plus(prior)
    count = [0]

    def objective(beta):
        count[0] += 1
        return kernels.gk_mi(n, beta, p)

    lo, hi = beta_window(n)
    beta, value, width, converged = _scan_refine_max(
        objective, lo, hi, SCAN_POINTS, BETA_TOL, BETA_ITER_CAP)
    return OptimResult(value=value, arg_beta=beta, arg_p=p, evaluations=count[0],
                       converged=converged, tolerance_achieved=width)


def capacity_gk(energy) -> OptimResult:
    """Joint capacity optimum over prior and displacement.

    Outer scan-then-refine over the displacement; inner golden-section over
    the prior (concave).  Value is the attained capacity in bits per symbol.
    """
    n = _n_bar(energy)
    count = [0]

    def objective(beta):
        _, value, evals, _ = kernels.best_prior_mi(n, beta, PRIOR_TOL, PRIOR_ITER_CAP)
        count[0] += evals
        return value

    lo, hi = beta_window(n)
    beta, _, width, converged = _scan_refine_max(
        objective, lo, hi, SCAN_POINTS, BETA_TOL, BETA_ITER_CAP)
    p, value, evals, pwidth = kernels.best_prior_mi(n, beta, PRIOR_TOL, PRIOR_ITER_CAP)
    count[0] += evals
    return OptimResult(value=value, arg_beta=beta, arg_p=p, evaluations=count[0],
                       converged=converged and pwidth <= PRIOR_TOL,
                       tolerance_achieved=width)


def min_error_beta(energy, prior) -> OptimResult:
    """Displacement minimizing the one-shot error at a fixed prior."""
    n = _n_bar(energy)
    p = _p_plus(prior)
    count = [0]

    def objective(beta):
        count[0] += 1
        return -kernels.gk_error(n, beta, p)

    lo, hi = beta_window(n)
    beta, value, width, converged = _scan_refine_max(
        objective, lo, hi, SCAN_POINTS, BETA_TOL, BETA_ITER_CAP)
    return OptimResult(value=-value, arg_beta=beta, arg_p=p, evaluations=count[0],
                       converged=converged, tolerance_achieved=width)


def _crossover_gap(n_bar: float) -> float:
    # homodyne error minus the exact-nulling receiver's equal-prior error
    return homodyne_error(ModeEnergy(n_bar)) - 0.5 * math.exp(-4.0 * n_bar)


def find_crossover(lo, hi, *, grid_points: int = 129,
                   residual_tol: float = CROSSOVER_RESIDUAL) -> ModeEnergy:
    """Photon number where homodyne and exact-nulling error curves cross.

    Scans a bracketing grid for sign changes of the gap, requires exactly
    one, then bisects it until |gap| <= residual_tol.  Raises BracketError
    for zero or multiple sign changes on the grid.
    """
    n_lo = _n_bar(lo)
    n_hi = _n_bar(hi)
    if not n_lo < n_hi:
        raise ValueError(f"need lo < hi, got [{n_lo}, {n_hi}]")

    xs = [n_lo + k * (n_hi - n_lo) / (grid_points - 1) for k in range(grid_points)]
    gaps = [_crossover_gap(x) for x in xs]

    roots = [k for k, g in enumerate(gaps) if g == 0.0]
    changes = [k for k in range(grid_points - 1)
               if gaps[k] * gaps[k + 1] < 0.0]
    if len(roots) + len(changes) != 1:
        raise BracketError(
            f"expected exactly one crossover in [{n_lo}, {n_hi}], found "
            f"{len(changes)} sign changes and {len(roots)} exact zeros")
    if roots:
        return ModeEnergy(xs[roots[0]])

    a, b = xs[changes[0]], xs[changes[0] + 1]
    ga = gaps[changes[0]]
    for _ in range(200):
        mid = 0.5 * (a + b)
        gm = _crossover_gap(mid)
        if abs(gm) <= residual_tol:
            return ModeEnergy(mid)
        if (ga < 0.0) == (gm < 0.0):
            a, ga = mid, gm
        else:
            b = mid
        if b - a <= 0.0:
            break
    mid = 0.5 * (a + b)
    if abs(_crossover_gap(mid)) <= residual_tol:
        return ModeEnergy(mid)
    raise BracketError(f"bisection stalled before reaching residual {residual_tol}")


def estimate_error_exponent(error_fn, n_lo, n_hi, points) -> float:
    """Least-squares slope magnitude of ln(error) versus photon number.

    Samples `points` uniformly spaced photon numbers on [n_lo, n_hi];
    raises ValueError if any evaluation is non-positive (underflow).
    """
    points = int(points)
    if points < 2:
        raise ValueError(f"need at least 2 sample points, got {points}")
    n_lo = float(n_lo)
    n_hi = float(n_hi)
    if not n_lo < n_hi:
        raise ValueError(f"need n_lo < n_hi, got [{n_lo}, {n_hi}]")

    xs = [n_lo + k * (n_hi - n_lo) / (points - 1) for k in range(points)]
    ys = []
    for x in xs:
        e = error_fn(x)
        if not e > 0.0:
            raise ValueError(f"error probability underflowed to {e!r} at n={x}")
        ys.append(math.log(e))
    xbar = math.fsum(xs) / points
    ybar = math.fsum(ys) / points
    sxy = math.fsum((x - xbar) * (y - ybar) for x, y in zip(xs, ys))
    sxx = math.fsum((x - xbar) ** 2 for x in xs)
    return abs(sxy / sxx)
