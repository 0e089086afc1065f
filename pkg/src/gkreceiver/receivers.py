"""Physical-layer models for coherent-state BPSK receivers.

The displacement photon-counting receiver shifts the two BPSK symbols
|alpha>, |-alpha> to |2*alpha + beta>, |beta> and feeds them to a
shot-noise-limited on/off photon detector; a click decides "+", no click
decides "-".  This module provides the induced binary channel, the one-shot
error probabilities of that receiver and of the standard benchmarks
(homodyne, quantum-optimal), the single-copy and collective-measurement
capacity limits, and a Monte Carlo validator for the analytic channel.

Displacement is modeled ideally (unit-transmissivity limit of the usual
beamsplitter + strong local-oscillator realization); beta is real because
any imaginary component only adds |Im beta|^2 to both click intensities
without improving separation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._backend import kernels

__all__ = [
    "ModeEnergy",
    "Displacement",
    "Prior",
    "BinaryChannel",
    "gk_transition",
    "gk_error",
    "helstrom_error",
    "homodyne_error",
    "homodyne_capacity",
    "c1_capacity",
    "holevo_capacity",
    "simulate_clicks",
]

ROW_SUM_TOL = 1e-12


@dataclass(frozen=True)
class ModeEnergy:
    """Mean photon number per BPSK symbol; the amplitude is sqrt(n_bar)."""

    n_bar: float

    def __post_init__(self):
        n = self.n_bar
        if not (isinstance(n, (int, float)) and math.isfinite(n)) or n < 0:
            raise ValueError(f"mean photon number must be finite and >= 0, got {n!r}")
        object.__setattr__(self, "n_bar", float(n))

    @property
    def alpha(self) -> float:
        return math.sqrt(self.n_bar)


@dataclass(frozen=True)
class Displacement:
    """Real displacement amplitude along the signal axis (sign allowed)."""

    beta: float

    def __post_init__(self):
        b = self.beta
        if not (isinstance(b, (int, float)) and math.isfinite(b)):
            raise ValueError(f"displacement must be a finite real, got {b!r}")
        object.__setattr__(self, "beta", float(b))


@dataclass(frozen=True)
class Prior:
    """Probability of the "+" symbol |alpha>; the "-" symbol has 1 - p_plus."""

    p_plus: float

    def __post_init__(self):
        p = self.p_plus
        if not (isinstance(p, (int, float)) and math.isfinite(p)) or not 0.0 <= p <= 1.0:
            raise ValueError(f"prior must lie in [0, 1], got {p!r}")
        object.__setattr__(self, "p_plus", float(p))


def _n_bar(energy) -> float:
    if isinstance(energy, ModeEnergy):
        return energy.n_bar
    return ModeEnergy(energy).n_bar


def _beta(disp) -> float:
    if isinstance(disp, Displacement):
        return disp.beta
    return Displacement(disp).beta


def _p_plus(prior) -> float:
    if isinstance(prior, Prior):
        return prior.p_plus
    return Prior(prior).p_plus


@dataclass(frozen=True)
class BinaryChannel:
    """Conditional probabilities w[x, y] = P(outcome y | symbol x).

    Inputs are indexed x = 0 for "+", x = 1 for "-"; outcomes y = 0 for
    click, y = 1 for no-click.  Rows must sum to 1 within 1e-12.
    """

    w: np.ndarray

    def __post_init__(self):
        w = np.array(self.w, dtype=float, copy=True)
        if w.shape != (2, 2):
            raise ValueError(f"channel matrix must be 2x2, got shape {w.shape}")
        if not np.all(np.isfinite(w)):
            raise ValueError("channel matrix entries must be finite")
        if np.any(w < 0.0) or np.any(w > 1.0):
            raise ValueError("channel matrix entries must lie in [0, 1]")
        sums = w.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > ROW_SUM_TOL):
            raise ValueError(f"channel rows must sum to 1 within {ROW_SUM_TOL}, got {sums}")
        w.setflags(write=False)
        object.__setattr__(self, "w", w)

    @property
    def rows(self) -> tuple[float, float, float, float]:
        """Entries as (click|+, no-click|+, click|-, no-click|-)."""
        return (float(self.w[0, 0]), float(self.w[0, 1]),
                float(self.w[1, 0]), float(self.w[1, 1]))


def _channel_rows(channel) -> tuple[float, float, float, float]:
    if isinstance(channel, BinaryChannel):
        return channel.rows
    return BinaryChannel(np.asarray(channel, dtype=float)).rows


def gk_transition(energy, disp) -> BinaryChannel:
    """Binary channel induced by ideal displacement plus photon counting.

    P(no-click | -) = exp(-beta^2) and P(no-click | +) =
    exp(-(2*sqrt(n_bar) + beta)^2); beta = 0 is the exact-nulling receiver,
    whose "-" arm is vacuum and never clicks.
    """
    n = _n_bar(energy)
    b = _beta(disp)
    cp, ncp, cm, ncm = kernels.gk_channel(n, b)
    w = np.empty((2, 2))
    w[0, 0] = cp
    w[0, 1] = ncp
    w[1, 0] = cm
    w[1, 1] = ncm
    return BinaryChannel(w)


def gk_error(energy, disp, prior) -> float:
    """Average error of the fixed decision rule (click -> "+", no-click -> "-").

    Equals p*exp(-(2*sqrt(n)+beta)^2) + (1-p)*(1 - exp(-beta^2)).
    """
    return kernels.gk_error(_n_bar(energy), _beta(disp), _p_plus(prior))


def helstrom_error(energy, prior) -> float:
    """Quantum-optimal average error for the two coherent symbols.

    (1 - sqrt(1 - 4p(1-p)e^{-4n}))/2, evaluated in the cancellation-free
    form z / (2(1 + sqrt(1-z))) so the deep-quantum tail (e.g. n = 10,
    error ~ 1e-71) keeps full relative precision.  Attainable with an
    adaptive-feedback receiver; used here as the benchmark value only.
    """
    n = _n_bar(energy)
    p = _p_plus(prior)
    z = 4.0 * p * (1.0 - p) * math.exp(-4.0 * n)
    return z / (2.0 * (1.0 + math.sqrt(1.0 - z)))


def homodyne_error(energy) -> float:
    """Equal-prior error of shot-noise-limited homodyne with a zero threshold.

    0.5*erfc(sqrt(2*n)): Gaussian quadrature statistics of the two symbols.
    """
    return 0.5 * math.erfc(math.sqrt(2.0 * _n_bar(energy)))


def homodyne_capacity(energy) -> float:
    """Hard-decision homodyne capacity 1 - h2(homodyne_error(n)).

    The sign of the quadrature is thresholded before decoding, giving a
    binary symmetric channel; soft-decision (continuous-output) homodyne
    information is not implemented.
    """
    return 1.0 - kernels.entropy_bits(homodyne_error(energy))


def c1_capacity(energy) -> float:
    """Capacity limit over all receivers measuring one symbol at a time.

    1 - h2 of the equal-prior quantum-optimal error: the BSC built from the
    best symbol-by-symbol measurement.
    """
    n = _n_bar(energy)
    return 1.0 - kernels.entropy_bits(helstrom_error(ModeEnergy(n), Prior(0.5)))


def holevo_capacity(energy) -> float:
    """Ultimate BPSK capacity over collective measurements: h2((1 - e^{-2n})/2)."""
    n = _n_bar(energy)
    return kernels.entropy_bits(0.5 * (-math.expm1(-2.0 * n)))


def simulate_clicks(energy, disp, prior, trials, seed) -> np.ndarray:
    """Monte Carlo click counts for the displaced photon-counting receiver.

    Each trial draws a symbol from the prior, then a photon count from a
    Poisson law with the displaced symbol's intensity; a click is count >= 1.
    Returns a 2x2 int64 array indexed [symbol][outcome] with the same
    conventions as BinaryChannel.  Deterministic for a fixed seed.
    """
    n = _n_bar(energy)
    b = _beta(disp)
    p = _p_plus(prior)
    trials = int(trials)
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    mu_plus, mu_minus = kernels.displaced_intensities(n, b)
    rng = np.random.default_rng(seed)
    plus = rng.random(trials) < p
    lam = np.where(plus, mu_plus, mu_minus)
    clicks = rng.poisson(lam) >= 1
    counts = np.zeros((2, 2), dtype=np.int64)
    counts[0, 0] = np.count_nonzero(plus & clicks)
    counts[0, 1] = np.count_nonzero(plus & ~clicks)
    counts[1, 0] = np.count_nonzero(~plus & clicks)
    counts[1, 1] = np.count_nonzero(~plus & ~clicks)
    return counts
