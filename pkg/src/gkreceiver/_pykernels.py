"""Pure-Python scalar kernels.

These are the hot inner-loop primitives: the displaced-BPSK click channel,
binary mutual information / information-density moments, and the
golden-section prior searches that the beta-scan optimizers call thousands
of times per sweep point.  ``gkreceiver._speedups`` is a Cython translation
of this module; ``gkreceiver._backend`` picks whichever is importable.

Both implementations must use the same expressions in the same evaluation
order so that results agree bit-for-bit (the compiled module is built with
-ffp-contract=off for this reason).
"""

from math import ceil, exp, expm1, log, log2, sqrt

IMPL = "python"

INV_PHI = (sqrt(5.0) - 1.0) / 2.0
INV_PHI2 = INV_PHI * INV_PHI
LOG_INV_PHI = log(INV_PHI)

# Degenerate priors are clamped away from {0, 1} to avoid log singularities
# in the capacity searches.
PRIOR_LO = 1e-15
PRIOR_HI = 1.0 - 1e-15


def displaced_intensities(n_bar, beta):
    """Mean photon numbers of the two displaced symbols, ("+", "-").

    The "-" symbol lands on amplitude beta, the "+" symbol on s = 2*sqrt(n)
    + beta.  Near the exact-nulling point the "+" intensity is expanded as
    4n + beta*(4*sqrt(n) + beta) so beta = 0 yields exactly 4n; near the
    mirror point (|s| < |beta|) the direct square s*s avoids the expansion's
    catastrophic cancellation.  The expanded form can round below the
    mathematical square, hence the clamp at 0.
    """
    r = sqrt(n_bar)
    s = 2.0 * r + beta
    if abs(beta) > abs(s):
        mu_plus = s * s
    else:
        mu_plus = 4.0 * n_bar + beta * (4.0 * r + beta)
        if mu_plus < 0.0:
            mu_plus = 0.0
    return mu_plus, beta * beta


def gk_channel(n_bar, beta):
    """Click/no-click channel entries (click|+, no-click|+, click|-, no-click|-)."""
    mu_plus, mu_minus = displaced_intensities(n_bar, beta)
    return (-expm1(-mu_plus), exp(-mu_plus), -expm1(-mu_minus), exp(-mu_minus))


def gk_error(n_bar, beta, p_plus):
    """Average error of the fixed rule click->"+" / no-click->"-"."""
    mu_plus, mu_minus = displaced_intensities(n_bar, beta)
    return p_plus * exp(-mu_plus) + (1.0 - p_plus) * (-expm1(-mu_minus))


def _xlog2(z):
    if z > 0.0:
        return z * log2(z)
    return 0.0


def entropy2(u, v):
    # -u log2 u - v log2 v with the 0 log 0 = 0 convention; u + v = 1 but
    # both are passed so that tiny tail probabilities keep full precision.
    return -(_xlog2(u) + _xlog2(v))


def entropy_bits(q):
    return entropy2(q, 1.0 - q)


def mi_rows(cp, ncp, cm, ncm, p_plus):
    """Mutual information in bits of the 2x2 channel with rows (cp, ncp), (cm, ncm).

    Row x = "+" is (cp, ncp) = (P(click|+), P(no-click|+)); row "-" likewise.
    Clamped to [0, 1]: both bounds hold exactly for a binary-output channel,
    so the clamp only removes last-ulp rounding excursions.
    """
    q = 1.0 - p_plus
    yc = p_plus * cp + q * cm
    yn = p_plus * ncp + q * ncm
    mi = entropy2(yc, yn) - (p_plus * entropy2(cp, ncp) + q * entropy2(cm, ncm))
    if mi < 0.0:
        return 0.0
    if mi > 1.0:
        return 1.0
    return mi


def mi_var_rows(cp, ncp, cm, ncm, p_plus):
    """Mean and variance (bits, bits^2) of the information density.

    Zero-probability joint cells contribute nothing to either moment.
    """
    q = 1.0 - p_plus
    yc = p_plus * cp + q * cm
    yn = p_plus * ncp + q * ncm
    j00 = p_plus * cp
    j01 = p_plus * ncp
    j10 = q * cm
    j11 = q * ncm
    i00 = log2(cp / yc) if j00 > 0.0 else 0.0
    i01 = log2(ncp / yn) if j01 > 0.0 else 0.0
    i10 = log2(cm / yc) if j10 > 0.0 else 0.0
    i11 = log2(ncm / yn) if j11 > 0.0 else 0.0
    mean = j00 * i00 + j01 * i01 + j10 * i10 + j11 * i11
    d00 = i00 - mean
    d01 = i01 - mean
    d10 = i10 - mean
    d11 = i11 - mean
    var = j00 * d00 * d00 + j01 * d01 * d01 + j10 * d10 * d10 + j11 * d11 * d11
    if mean < 0.0:
        mean = 0.0
    if var < 0.0:
        var = 0.0
    return mean, var


def gk_mi(n_bar, beta, p_plus):
    cp, ncp, cm, ncm = gk_channel(n_bar, beta)
    return mi_rows(cp, ncp, cm, ncm, p_plus)


def golden_iterations(width, tol):
    """Iterations needed to shrink a bracket of `width` below `tol`."""
    if width <= tol:
        return 0
    return int(ceil(log(tol / width) / LOG_INV_PHI))


def best_prior_mi(n_bar, beta, tol, max_iter):
    """Golden-section maximization of mutual information over the prior.

    The information is concave in the prior for a fixed channel, so the
    fixed-schedule golden section converges to the bracket width `tol`.
    Returns (p, value, evaluations, final bracket width).
    """
    cp, ncp, cm, ncm = gk_channel(n_bar, beta)
    a = PRIOR_LO
    dist = PRIOR_HI - PRIOR_LO
    n = golden_iterations(dist, tol)
    if n > max_iter:
        n = max_iter
    c = a + INV_PHI2 * dist
    d = a + INV_PHI * dist
    yc = mi_rows(cp, ncp, cm, ncm, c)
    yd = mi_rows(cp, ncp, cm, ncm, d)
    evals = 2
    for _ in range(n):
        if yc > yd:
            d = c
            yd = yc
            dist = INV_PHI * dist
            c = a + INV_PHI2 * dist
            yc = mi_rows(cp, ncp, cm, ncm, c)
        else:
            a = c
            c = d
            yc = yd
            dist = INV_PHI * dist
            d = a + INV_PHI * dist
            yd = mi_rows(cp, ncp, cm, ncm, d)
        evals += 1
    if yc > yd:
        return c, yc, evals, dist
    return d, yd, evals, dist


def best_prior_rate(n_bar, beta, scale, offset, coarse, tol, max_iter):
    """Scan-then-refine maximization of I - scale*sqrt(V) + offset over the prior.

    The dispersion-penalized objective is not certified concave in the
    prior, hence the coarse grid before the golden-section refinement.
    Returns (p, value, evaluations, final bracket width).
    """
    cp, ncp, cm, ncm = gk_channel(n_bar, beta)

    step = (PRIOR_HI - PRIOR_LO) / (coarse - 1)
    best_k = 0
    best_v = float("-inf")
    for k in range(coarse):
        p = PRIOR_LO + k * step
        mean, var = mi_var_rows(cp, ncp, cm, ncm, p)
        v = mean - scale * sqrt(var) + offset
        if v > best_v:
            best_v = v
            best_k = k
    evals = coarse
    best_p = PRIOR_LO + best_k * step

    a = PRIOR_LO + (best_k - 1) * step
    b = PRIOR_LO + (best_k + 1) * step
    if a < PRIOR_LO:
        a = PRIOR_LO
    if b > PRIOR_HI:
        b = PRIOR_HI
    dist = b - a
    n = golden_iterations(dist, tol)
    if n > max_iter:
        n = max_iter
    c = a + INV_PHI2 * dist
    d = a + INV_PHI * dist
    mean, var = mi_var_rows(cp, ncp, cm, ncm, c)
    yc = mean - scale * sqrt(var) + offset
    mean, var = mi_var_rows(cp, ncp, cm, ncm, d)
    yd = mean - scale * sqrt(var) + offset
    evals += 2
    for _ in range(n):
        if yc > yd:
            d = c
            yd = yc
            dist = INV_PHI * dist
            c = a + INV_PHI2 * dist
            mean, var = mi_var_rows(cp, ncp, cm, ncm, c)
            yc = mean - scale * sqrt(var) + offset
        else:
            a = c
            c = d
            yc = yd
            dist = INV_PHI * dist
            d = a + INV_PHI * dist
            mean, var = mi_var_rows(cp, ncp, cm, ncm, d)
            yd = mean - scale * sqrt(var) + offset
        evals += 1
    if yc > yd:
        p, y = c, yc
    else:
        p, y = d, yd
    if best_v > y:
        return best_p, best_v, evals, dist
    return p, y, evals, dist
