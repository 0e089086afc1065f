"""Normal-approximation achievable rates at finite blocklength.

rate(n, eps) = I - sqrt(V/n) * Qinv(eps) + log2(n)/(2n), where I is the
mutual information, V the channel dispersion, and Qinv the inverse of the
standard-normal tail Q(x) = P(Z > x).  The half-log third-order term is
included: it materially affects small-n comparisons for this channel class.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._backend import kernels
from .info import channel_dispersion, mutual_information
from .optimize import (
    BETA_ITER_CAP,
    BETA_TOL,
    PRIOR_ITER_CAP,
    PRIOR_TOL,
    SCAN_POINTS,
    OptimResult,
    _scan_refine_max,
    beta_window,
)
from .receivers import _n_bar

__all__ = [
    "BlocklengthQuery",
    "q_tail",
    "inverse_q_tail",
    "normal_approx_rate",
    "max_rate_over_receiver_params",
]

_SQRT2 = math.sqrt(2.0)

# Coarse prior grid for the rate objective, which unlike the mutual
# information is not certified concave in the prior.
RATE_PRIOR_POINTS = 801


@dataclass(frozen=True)
class BlocklengthQuery:
    """Number of channel uses and target codeword error probability."""

    n: int
    epsilon: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 1:
            raise ValueError(f"blocklength must be a positive integer, got {self.n!r}")
        object.__setattr__(self, "n", int(self.n))
        eps = float(self.epsilon)
        if not (math.isfinite(eps) and 0.0 < eps < 1.0):
            raise ValueError(f"target error must lie in (0, 1), got {self.epsilon!r}")
        object.__setattr__(self, "epsilon", eps)


def q_tail(x) -> float:
    """Standard-normal tail probability Q(x) = P(Z > x)."""
    return 0.5 * math.erfc(float(x) / _SQRT2)


# Wichura's AS 241 rational approximation of the normal quantile (PPND16),
# relative accuracy ~1e-16 across (0, 1).
_A = (3.3871328727963666080e0, 1.3314166789178437745e2, 1.9715909503065514427e3,
      1.3731693765509461125e4, 4.5921953931549871457e4, 6.7265770927008700853e4,
      3.3430575583588128105e4, 2.5090809287301226727e3)
_B = (4.2313330701600911252e1, 6.8718700749205790830e2, 5.3941960214247511077e3,
      2.1213794301586595867e4, 3.9307895800092710610e4, 2.8729085735721942674e4,
      5.2264952788528545610e3)
_C = (1.42343711074968357734e0, 4.63033784615654529590e0, 5.76949722146069140550e0,
      3.64784832476320460504e0, 1.27045825245236838258e0, 2.41780725177450611770e-1,
      2.27238449892691845833e-2, 7.74545014278341407640e-4)
_D = (2.05319162663775882187e0, 1.67638483018380384940e0, 6.89767334985100004550e-1,
      1.48103976427480074590e-1, 1.51986665636164571966e-2, 5.47593808499534494600e-4,
      1.05075007164441684324e-9)
_E = (6.65790464350110377720e0, 5.46378491116411436990e0, 1.78482653991729133580e0,
      2.96560571828504891230e-1, 2.65321895265761230930e-2, 1.24266094738807843860e-3,
      2.71155556874348757815e-5, 2.01033439929228813265e-7)
_F = (5.99832206555887937690e-1, 1.36929880922735805310e-1, 1.48753612908506148525e-2,
      7.86869131145613259100e-4, 1.84631831751005468180e-5, 1.42151175831644588870e-7,
      2.04426310338993978564e-15)


def _poly7(coef, r):
    acc = coef[7]
    for c in reversed(coef[:7]):
        acc = acc * r + c
    return acc


def _poly7_monic(coef, r):
    acc = coef[6]
    for c in reversed(coef[:6]):
        acc = acc * r + c
    return acc * r + 1.0


def _normal_quantile(p: float) -> float:
    q = p - 0.5
    if abs(q) <= 0.425:
        r = 0.180625 - q * q
        return q * _poly7(_A, r) / _poly7_monic(_B, r)
    r = p if q < 0.0 else 1.0 - p
    r = math.sqrt(-math.log(r))
    if r <= 5.0:
        r -= 1.6
        val = _poly7(_C, r) / _poly7_monic(_D, r)
    else:
        r -= 5.0
        val = _poly7(_E, r) / _poly7_monic(_F, r)
    return -val if q < 0.0 else val


def inverse_q_tail(epsilon) -> float:
    """Inverse of the standard-normal tail: Q(inverse_q_tail(eps)) = eps."""
    eps = float(epsilon)
    if not (math.isfinite(eps) and 0.0 < eps < 1.0):
        raise ValueError(f"tail probability must lie in (0, 1), got {epsilon!r}")
    return -_normal_quantile(eps)


def normal_approx_rate(channel, prior, query: BlocklengthQuery) -> float:
    """Normal-approximation rate in bits per channel use (may be negative)."""
    n = float(query.n)
    mi = mutual_information(channel, prior)
    var = channel_dispersion(channel, prior)
    return mi - math.sqrt(var / n) * inverse_q_tail(query.epsilon) \
        + 0.5 * math.log2(n) / n


def max_rate_over_receiver_params(energy, query: BlocklengthQuery) -> OptimResult:
    """Maximize the normal-approximation rate over prior and displacement.

    Same scan-then-refine scheme as the capacity optimizer, with a coarse
    prior grid replacing the concave golden-section inner search.
    """
    n_bar = _n_bar(energy)
    n = float(query.n)
    scale = inverse_q_tail(query.epsilon) / math.sqrt(n)
    offset = 0.5 * math.log2(n) / n
    count = [0]

    def objective(beta):
        _, value, evals, _ = kernels.best_prior_rate(
            n_bar, beta, scale, offset, RATE_PRIOR_POINTS, PRIOR_TOL, PRIOR_ITER_CAP)
        count[0] += evals
        return value

    lo, hi = beta_window(n_bar)
    beta, _, width, converged = _scan_refine_max(
        objective, lo, hi, SCAN_POINTS, BETA_TOL, BETA_ITER_CAP)
    p, value, evals, pwidth = kernels.best_prior_rate(
        n_bar, beta, scale, offset, RATE_PRIOR_POINTS, PRIOR_TOL, PRIOR_ITER_CAP)
    count[0] += evals
    return OptimResult(value=value, arg_beta=beta, arg_p=p, evaluations=count[0],
                       converged=converged and pwidth <= PRIOR_TOL,
                       tolerance_achieved=width)
