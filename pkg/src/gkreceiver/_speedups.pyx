# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
# cython: cdivision=True
"""Compiled scalar kernels.

Cython translation of ``gkreceiver._pykernels`` — same functions, same
expressions, same evaluation order.  Built with -ffp-contract=off so both
backends return bit-identical doubles; ``gkreceiver._backend`` selects this
module when the extension built, the Python module otherwise.
"""

from libc.math cimport INFINITY, ceil, exp, expm1, fabs, log, log2, sqrt

IMPL = "cython"

cdef double C_INV_PHI = (sqrt(5.0) - 1.0) / 2.0
cdef double C_INV_PHI2 = C_INV_PHI * C_INV_PHI
cdef double C_LOG_INV_PHI = log(C_INV_PHI)
cdef double C_PRIOR_LO = 1e-15
cdef double C_PRIOR_HI = 1.0 - 1e-15

INV_PHI = C_INV_PHI
INV_PHI2 = C_INV_PHI2
LOG_INV_PHI = C_LOG_INV_PHI
PRIOR_LO = C_PRIOR_LO
PRIOR_HI = C_PRIOR_HI


cdef inline double _mu_plus(double n_bar, double beta) nogil:
    # expanded form is exact at beta = 0 but cancels catastrophically near
    # the mirror point beta = -2 sqrt(n); the direct square takes over there
    cdef double r = sqrt(n_bar)
    cdef double s = 2.0 * r + beta
    cdef double mu
    if fabs(beta) > fabs(s):
        return s * s
    mu = 4.0 * n_bar + beta * (4.0 * r + beta)
    if mu < 0.0:
        return 0.0
    return mu


def displaced_intensities(double n_bar, double beta):
    """Mean photon numbers of the two displaced symbols, ("+", "-")."""
    return _mu_plus(n_bar, beta), beta * beta


def gk_channel(double n_bar, double beta):
    """Click/no-click channel entries (click|+, no-click|+, click|-, no-click|-)."""
    cdef double mu_plus = _mu_plus(n_bar, beta)
    cdef double mu_minus = beta * beta
    return (-expm1(-mu_plus), exp(-mu_plus), -expm1(-mu_minus), exp(-mu_minus))


cpdef double gk_error(double n_bar, double beta, double p_plus):
    """Average error of the fixed rule click->"+" / no-click->"-"."""
    cdef double mu_plus = _mu_plus(n_bar, beta)
    cdef double mu_minus = beta * beta
    return p_plus * exp(-mu_plus) + (1.0 - p_plus) * (-expm1(-mu_minus))


cdef inline double _xlog2(double z) nogil:
    if z > 0.0:
        return z * log2(z)
    return 0.0


cdef inline double _entropy2(double u, double v) nogil:
    return -(_xlog2(u) + _xlog2(v))


def entropy2(double u, double v):
    return _entropy2(u, v)


cpdef double entropy_bits(double q):
    return _entropy2(q, 1.0 - q)


cdef inline double _mi_rows(double cp, double ncp, double cm, double ncm,
                            double p_plus) nogil:
    cdef double q = 1.0 - p_plus
    cdef double yc = p_plus * cp + q * cm
    cdef double yn = p_plus * ncp + q * ncm
    cdef double mi = _entropy2(yc, yn) - (p_plus * _entropy2(cp, ncp)
                                          + q * _entropy2(cm, ncm))
    if mi < 0.0:
        return 0.0
    if mi > 1.0:
        return 1.0
    return mi


cpdef double mi_rows(double cp, double ncp, double cm, double ncm, double p_plus):
    """Mutual information in bits of the 2x2 channel; clamped to [0, 1]."""
    return _mi_rows(cp, ncp, cm, ncm, p_plus)


cdef inline void _mi_var(double cp, double ncp, double cm, double ncm,
                         double p_plus, double* out_mean, double* out_var) nogil:
    cdef double q = 1.0 - p_plus
    cdef double yc = p_plus * cp + q * cm
    cdef double yn = p_plus * ncp + q * ncm
    cdef double j00 = p_plus * cp
    cdef double j01 = p_plus * ncp
    cdef double j10 = q * cm
    cdef double j11 = q * ncm
    cdef double i00 = log2(cp / yc) if j00 > 0.0 else 0.0
    cdef double i01 = log2(ncp / yn) if j01 > 0.0 else 0.0
    cdef double i10 = log2(cm / yc) if j10 > 0.0 else 0.0
    cdef double i11 = log2(ncm / yn) if j11 > 0.0 else 0.0
    cdef double mean = j00 * i00 + j01 * i01 + j10 * i10 + j11 * i11
    cdef double d00 = i00 - mean
    cdef double d01 = i01 - mean
    cdef double d10 = i10 - mean
    cdef double d11 = i11 - mean
    cdef double var = (j00 * d00 * d00 + j01 * d01 * d01
                       + j10 * d10 * d10 + j11 * d11 * d11)
    if mean < 0.0:
        mean = 0.0
    if var < 0.0:
        var = 0.0
    out_mean[0] = mean
    out_var[0] = var


def mi_var_rows(double cp, double ncp, double cm, double ncm, double p_plus):
    """Mean and variance (bits, bits^2) of the information density."""
    cdef double mean, var
    _mi_var(cp, ncp, cm, ncm, p_plus, &mean, &var)
    return mean, var


cpdef double gk_mi(double n_bar, double beta, double p_plus):
    cdef double mu_plus = _mu_plus(n_bar, beta)
    cdef double mu_minus = beta * beta
    return _mi_rows(-expm1(-mu_plus), exp(-mu_plus),
                    -expm1(-mu_minus), exp(-mu_minus), p_plus)


cpdef int golden_iterations(double width, double tol):
    """Iterations needed to shrink a bracket of `width` below `tol`."""
    if width <= tol:
        return 0
    return <int>ceil(log(tol / width) / C_LOG_INV_PHI)


def best_prior_mi(double n_bar, double beta, double tol, int max_iter):
    """Golden-section maximization of mutual information over the prior.

    Returns (p, value, evaluations, final bracket width); same fixed
    schedule as the pure-Python version.
    """
    cdef double mu_plus = _mu_plus(n_bar, beta)
    cdef double mu_minus = beta * beta
    cdef double cp = -expm1(-mu_plus)
    cdef double ncp = exp(-mu_plus)
    cdef double cm = -expm1(-mu_minus)
    cdef double ncm = exp(-mu_minus)

    cdef double a = C_PRIOR_LO
    cdef double dist = C_PRIOR_HI - C_PRIOR_LO
    cdef int n = golden_iterations(dist, tol)
    if n > max_iter:
        n = max_iter
    cdef double c = a + C_INV_PHI2 * dist
    cdef double d = a + C_INV_PHI * dist
    cdef double yc = _mi_rows(cp, ncp, cm, ncm, c)
    cdef double yd = _mi_rows(cp, ncp, cm, ncm, d)
    cdef int evals = 2
    cdef int k
    for k in range(n):
        if yc > yd:
            d = c
            yd = yc
            dist = C_INV_PHI * dist
            c = a + C_INV_PHI2 * dist
            yc = _mi_rows(cp, ncp, cm, ncm, c)
        else:
            a = c
            c = d
            yc = yd
            dist = C_INV_PHI * dist
            d = a + C_INV_PHI * dist
            yd = _mi_rows(cp, ncp, cm, ncm, d)
        evals += 1
    if yc > yd:
        return c, yc, evals, dist
    return d, yd, evals, dist


def best_prior_rate(double n_bar, double beta, double scale, double offset,
                    int coarse, double tol, int max_iter):
    """Scan-then-refine maximization of I - scale*sqrt(V) + offset over the prior.

    Returns (p, value, evaluations, final bracket width).
    """
    cdef double mu_plus = _mu_plus(n_bar, beta)
    cdef double mu_minus = beta * beta
    cdef double cp = -expm1(-mu_plus)
    cdef double ncp = exp(-mu_plus)
    cdef double cm = -expm1(-mu_minus)
    cdef double ncm = exp(-mu_minus)

    cdef double step = (C_PRIOR_HI - C_PRIOR_LO) / (coarse - 1)
    cdef int best_k = 0
    cdef double best_v = -INFINITY
    cdef double p, v, mean, var
    cdef int k
    for k in range(coarse):
        p = C_PRIOR_LO + k * step
        _mi_var(cp, ncp, cm, ncm, p, &mean, &var)
        v = mean - scale * sqrt(var) + offset
        if v > best_v:
            best_v = v
            best_k = k
    cdef int evals = coarse
    cdef double best_p = C_PRIOR_LO + best_k * step

    cdef double a = C_PRIOR_LO + (best_k - 1) * step
    cdef double b = C_PRIOR_LO + (best_k + 1) * step
    if a < C_PRIOR_LO:
        a = C_PRIOR_LO
    if b > C_PRIOR_HI:
        b = C_PRIOR_HI
    cdef double dist = b - a
    cdef int n = golden_iterations(dist, tol)
    if n > max_iter:
        n = max_iter
    cdef double c = a + C_INV_PHI2 * dist
    cdef double d = a + C_INV_PHI * dist
    _mi_var(cp, ncp, cm, ncm, c, &mean, &var)
    cdef double yc = mean - scale * sqrt(var) + offset
    _mi_var(cp, ncp, cm, ncm, d, &mean, &var)
    cdef double yd = mean - scale * sqrt(var) + offset
    evals += 2
    for k in range(n):
        if yc > yd:
            d = c
            yd = yc
            dist = C_INV_PHI * dist
            c = a + C_INV_PHI2 * dist
            _mi_var(cp, ncp, cm, ncm, c, &mean, &var)
            yc = mean - scale * sqrt(var) + offset
        else:
            a = c
            c = d
            yc = yd
            dist = C_INV_PHI * dist
            d = a + C_INV_PHI * dist
            _mi_var(cp, ncp, cm, ncm, d, &mean, &var)
            yd = mean - scale * sqrt(var) + offset
        evals += 1
    if yc > yd:
        p, v = c, yc
    else:
        p, v = d, yd
    if best_v > v:
        return best_p, best_v, evals, dist
    return p, v, evals, dist
