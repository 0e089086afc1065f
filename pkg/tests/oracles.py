"""Independent brute-force reference computations.

Everything here is exhaustive grid search / direct enumeration built on
numpy and scipy only — no imports from the package under test.  Click
probabilities use the literal (2*sqrt(n) + beta)^2 exponent rather than the
package's expanded form.
"""

import numpy as np
from scipy import stats


def click_probs(n_bar, beta):
    """P(click | +), P(click | -) for displacement beta; beta may be an array."""
    beta = np.asarray(beta, dtype=float)
    a = 1.0 - np.exp(-((2.0 * np.sqrt(n_bar) + beta) ** 2))
    b = 1.0 - np.exp(-(beta * beta))
    return a, b


def h2(q):
    """Binary entropy in bits, elementwise, 0 log 0 = 0."""
    q = np.asarray(q, dtype=float)
    out = np.zeros_like(q)
    m = (q > 0.0) & (q < 1.0)
    qm = q[m]
    out[m] = -(qm * np.log2(qm) + (1.0 - qm) * np.log2(1.0 - qm))
    return out


def mi_bits(w, p):
    """Mutual information of a 2x2 channel (rows = inputs) with prior (p, 1-p)."""
    w = np.asarray(w, dtype=float)
    px = np.array([p, 1.0 - p])
    py = px @ w
    total = 0.0
    for x in range(2):
        for y in range(2):
            j = px[x] * w[x, y]
            if j > 0.0:
                total += j * np.log2(w[x, y] / py[y])
    return max(total, 0.0)


def dispersion_bits2(w, p):
    """Variance of the information density: direct 4-term enumeration."""
    w = np.asarray(w, dtype=float)
    px = np.array([p, 1.0 - p])
    py = px @ w
    mean = mi_bits(w, p)
    total = 0.0
    for x in range(2):
        for y in range(2):
            j = px[x] * w[x, y]
            if j > 0.0:
                total += j * (np.log2(w[x, y] / py[y]) - mean) ** 2
    return total


def _mi_matrix(n_bar, betas, ps):
    """Matrix of mutual information, betas down the rows, priors across."""
    a, b = click_probs(n_bar, betas[:, None])
    pr = ps[None, :]
    pc = b + pr * (a - b)
    return h2(pc) - (pr * h2(a) + (1.0 - pr) * h2(b))


def capacity_2d_bruteforce(n_bar, beta_lo=-6.0, beta_hi=6.0, beta_step=1e-3,
                           p_step=1e-4, chunk=128, refine_rounds=2):
    """Exhaustive (beta, prior) capacity grid with local polish.

    Returns (beta, p, value); the polish rounds zoom 200x around the argmax
    each time, leaving a value quantization error far below 1e-9 bits.
    """
    nb = int(round((beta_hi - beta_lo) / beta_step)) + 1
    betas = beta_lo + np.arange(nb) * beta_step
    ps = np.arange(int(round(1.0 / p_step)) + 1) * p_step
    best_v, best_beta, best_p = -1.0, 0.0, 0.5
    for start in range(0, nb, chunk):
        bs = betas[start:start + chunk]
        mi = _mi_matrix(n_bar, bs, ps)
        i, j = np.unravel_index(np.argmax(mi), mi.shape)
        if mi[i, j] > best_v:
            best_v, best_beta, best_p = float(mi[i, j]), float(bs[i]), float(ps[j])

    db, dp = beta_step, p_step
    for _ in range(refine_rounds):
        bs = best_beta + np.linspace(-db, db, 401)
        pp = np.clip(best_p + np.linspace(-dp, dp, 401), 0.0, 1.0)
        mi = _mi_matrix(n_bar, bs, pp)
        i, j = np.unravel_index(np.argmax(mi), mi.shape)
        best_v, best_beta, best_p = float(mi[i, j]), float(bs[i]), float(pp[j])
        db /= 200.0
        dp /= 200.0
    return best_beta, best_p, best_v


def best_prior_bruteforce(n_bar, beta, points=1_000_001, refine_rounds=1):
    """Exhaustive prior grid for a fixed displacement; returns (p, value)."""
    a, b = click_probs(n_bar, beta)
    a, b = float(a), float(b)

    def mi_of(ps):
        pc = b + ps * (a - b)
        return h2(pc) - (ps * h2(a) + (1.0 - ps) * h2(b))

    ps = np.linspace(0.0, 1.0, points)
    mi = mi_of(ps)
    k = int(np.argmax(mi))
    best_p, best_v = float(ps[k]), float(mi[k])
    step = 1.0 / (points - 1)
    for _ in range(refine_rounds):
        pp = np.clip(best_p + np.linspace(-step, step, 20001), 0.0, 1.0)
        mi = mi_of(pp)
        k = int(np.argmax(mi))
        best_p, best_v = float(pp[k]), float(mi[k])
        step /= 10000.0
    return best_p, best_v


def gk_error_probs(n_bar, betas, p):
    a_miss = np.exp(-((2.0 * np.sqrt(n_bar) + betas) ** 2))
    b_click = 1.0 - np.exp(-(betas * betas))
    return p * a_miss + (1.0 - p) * b_click


def min_error_bruteforce(n_bar, p=0.5, lo=-6.0, hi=6.0, points=10_000_001,
                         chunk=2_000_000, refine_rounds=1):
    """Exhaustive displacement grid for the one-shot error; returns (beta, value)."""
    step = (hi - lo) / (points - 1)
    best_v, best_beta = np.inf, 0.0
    for start in range(0, points, chunk):
        idx = np.arange(start, min(start + chunk, points))
        bs = lo + idx * step
        err = gk_error_probs(n_bar, bs, p)
        k = int(np.argmin(err))
        if err[k] < best_v:
            best_v, best_beta = float(err[k]), float(bs[k])
    for _ in range(refine_rounds):
        bs = best_beta + np.linspace(-step, step, 200_001)
        err = gk_error_probs(n_bar, bs, p)
        k = int(np.argmin(err))
        best_v, best_beta = float(err[k]), float(bs[k])
        step /= 100_000.0
    return best_beta, best_v


def _rate_matrix(n_bar, betas, ps, n, epsilon):
    """Normal-approximation rate over a (beta, prior) grid."""
    betas = betas[:, None]
    # no-click probabilities kept separate: 1 - pyc would round away the
    # tiny no-click mass at large |beta| and poison the logs
    na = np.exp(-((2.0 * np.sqrt(n_bar) + betas) ** 2))
    nb = np.exp(-(betas * betas))
    a = 1.0 - na
    b = 1.0 - nb
    pr = ps[None, :]
    pyc = b + pr * (a - b)
    pyn = nb + pr * (na - nb)
    # cell order: (+, click), (+, no-click), (-, click), (-, no-click)
    cells = [(pr, a, pyc), (pr, na, pyn), (1.0 - pr, b, pyc), (1.0 - pr, nb, pyn)]
    mean = 0.0
    dens = []
    for px, w, py in cells:
        j = px * w
        with np.errstate(divide="ignore", invalid="ignore"):
            d = np.where(j > 0.0, np.log2(np.where(w > 0.0, w, 1.0) / py), 0.0)
        dens.append((j, d))
        mean = mean + j * d
    var = 0.0
    for j, d in dens:
        var = var + j * (d - mean) ** 2
    qinv = stats.norm.isf(epsilon)
    rate = mean - np.sqrt(var / n) * qinv + 0.5 * np.log2(n) / n
    return np.where(np.isnan(rate), -np.inf, rate)


def max_rate_bruteforce(n_bar, n, epsilon, beta_lo=-6.0, beta_hi=6.0,
                        beta_step=2e-3, p_step=2e-4, chunk=64, refine_rounds=2):
    """Exhaustive (beta, prior) grid for the finite-blocklength rate."""
    nb = int(round((beta_hi - beta_lo) / beta_step)) + 1
    betas = beta_lo + np.arange(nb) * beta_step
    ps = np.arange(int(round(1.0 / p_step)) + 1) * p_step
    ps = np.clip(ps, 1e-12, 1.0 - 1e-12)
    best_v, best_beta, best_p = -np.inf, 0.0, 0.5
    for start in range(0, nb, chunk):
        bs = betas[start:start + chunk]
        rate = _rate_matrix(n_bar, bs, ps, n, epsilon)
        i, j = np.unravel_index(np.argmax(rate), rate.shape)
        if rate[i, j] > best_v:
            best_v, best_beta, best_p = float(rate[i, j]), float(bs[i]), float(ps[j])
    db, dp = beta_step, p_step
    for _ in range(refine_rounds):
        bs = best_beta + np.linspace(-db, db, 201)
        pp = np.clip(best_p + np.linspace(-dp, dp, 201), 1e-12, 1.0 - 1e-12)
        rate = _rate_matrix(n_bar, bs, pp, n, epsilon)
        i, j = np.unravel_index(np.argmax(rate), rate.shape)
        best_v, best_beta, best_p = float(rate[i, j]), float(bs[i]), float(pp[j])
        db /= 100.0
        dp /= 100.0
    return best_beta, best_p, best_v
