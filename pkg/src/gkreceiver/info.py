"""Classical information measures over binary-input binary-output channels.

All logarithms are base 2; units are bits (and bits^2 for the dispersion).
Zero-probability joint cells contribute nothing to any of the sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ._backend import kernels
from .receivers import _channel_rows, _p_plus

__all__ = [
    "InfoDensitySample",
    "binary_entropy",
    "mutual_information",
    "channel_dispersion",
    "information_density",
]


@dataclass(frozen=True)
class InfoDensitySample:
    """Information density i(x;y) = log2(W(y|x) / sum_x' P(x')W(y|x')) in bits.

    `value` is -inf where W(y|x) = 0; such cells carry zero joint
    probability weight in every moment.
    """

    x: int
    y: int
    value: float


def binary_entropy(q) -> float:
    """h2(q) = -q log2 q - (1-q) log2(1-q), with 0 log 0 = 0."""
    q = float(q)
    if not math.isfinite(q) or not 0.0 <= q <= 1.0:
        raise ValueError(f"entropy argument must lie in [0, 1], got {q!r}")
    return kernels.entropy_bits(q)


def mutual_information(channel, prior) -> float:
    """I(X;Y) = H(Y) - H(Y|X) in bits; the mean of the information density."""
    cp, ncp, cm, ncm = _channel_rows(channel)
    return kernels.mi_rows(cp, ncp, cm, ncm, _p_plus(prior))


def channel_dispersion(channel, prior) -> float:
    """Variance of the information density under the joint law, in bits^2."""
    cp, ncp, cm, ncm = _channel_rows(channel)
    return kernels.mi_var_rows(cp, ncp, cm, ncm, _p_plus(prior))[1]


def information_density(channel, prior) -> list[InfoDensitySample]:
    """The four information-density values i(x;y), input-major order."""
    cp, ncp, cm, ncm = _channel_rows(channel)
    p = _p_plus(prior)
    yc = p * cp + (1.0 - p) * cm
    yn = p * ncp + (1.0 - p) * ncm
    samples = []
    for x, y, w, py in ((0, 0, cp, yc), (0, 1, ncp, yn),
                        (1, 0, cm, yc), (1, 1, ncm, yn)):
        if w > 0.0 and py > 0.0:
            value = math.log2(w / py)
        else:
            value = float("-inf")
        samples.append(InfoDensitySample(x=x, y=y, value=value))
    return samples
