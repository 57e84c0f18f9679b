"""Reference numpy implementation of the hot kernels.

Mirrors ``_ckernels.pyx`` operation for operation so that both backends take
the same Frank-Wolfe path up to floating-point summation order.
"""

import numpy as np
from scipy.spatial.distance import cdist

NAME = "python"


def pairwise_distances(x):
    x = np.ascontiguousarray(x, dtype=float)
    if x.ndim == 1:
        x = x[:, None]
    return cdist(x, x)


def kernel_matrix(dist, p, diag):
    """Kernel matrix from distances: r^(-p) (p != 0) or -log r (p = 0) off the diagonal."""
    dist = np.asarray(dist, dtype=float)
    n = dist.shape[0]
    off = ~np.eye(n, dtype=bool)
    if n > 1 and np.min(dist[off]) <= 0.0:
        raise ValueError("duplicate nodes: zero off-diagonal distance")
    safe = dist.copy()
    np.fill_diagonal(safe, 1.0)
    if p == 0.0:
        k = -np.log(safe)
    else:
        k = safe ** (-p)
    np.fill_diagonal(k, diag)
    return k


def frank_wolfe(kmat, w0, maximize, max_iters, tol, refresh, record):
    """Away-step Frank-Wolfe with exact line search on the probability simplex.

    Minimizes w^T A w with A = K (or A = -K when ``maximize``).

    Returns
    -------
    w, energy, gap, iterations, history
        ``energy`` and ``gap`` are in terms of K; ``history`` holds the energy
        after every iteration (or None when ``record`` is false).
    """
    sign = -1.0 if maximize else 1.0
    a_mat = sign * np.asarray(kmat, dtype=float)
    w = np.array(w0, dtype=float)
    u = a_mat @ w
    e = float(w @ u)
    hist = [sign * e] if record else None
    gap = np.inf
    it = 0
    since_refresh = 0
    fresh = True
    while True:
        s = int(np.argmin(u))
        masked = np.where(w > 0.0, u, -np.inf)
        a = int(np.argmax(masked))
        g_fw = e - u[s]
        g_aw = u[a] - e
        gap = 2.0 * g_fw
        if gap <= tol * (1.0 + abs(e)):
            if fresh:
                break
            u = a_mat @ w
            e = float(w @ u)
            fresh = True
            since_refresh = 0
            continue
        if it >= max_iters:
            break
        if g_fw >= g_aw:
            b = u[s] - e
            c = a_mat[s, s] - 2.0 * u[s] + e
            gmax = 1.0
        else:
            b = e - u[a]
            c = e - 2.0 * u[a] + a_mat[a, a]
            gmax = w[a] / (1.0 - w[a])
        if c > 0.0:
            gamma = min(max(-b / c, 0.0), gmax)
        else:
            gamma = gmax if 2.0 * gmax * b + gmax * gmax * c < 0.0 else 0.0
        if gamma <= 0.0:
            if fresh:
                break
            u = a_mat @ w
            e = float(w @ u)
            fresh = True
            since_refresh = 0
            continue
        if g_fw >= g_aw:
            w *= 1.0 - gamma
            w[s] += gamma
            u *= 1.0 - gamma
            u += gamma * a_mat[s]
        else:
            w *= 1.0 + gamma
            w[a] -= gamma
            if gamma == gmax:
                w[a] = 0.0
            u *= 1.0 + gamma
            u -= gamma * a_mat[a]
        e = e + 2.0 * gamma * b + gamma * gamma * c
        it += 1
        since_refresh += 1
        fresh = False
        if since_refresh >= refresh:
            w /= w.sum()
            u = a_mat @ w
            e = float(w @ u)
            since_refresh = 0
            fresh = True
        if record:
            hist.append(sign * e)
    history = np.array(hist) if record else None
    return w, sign * e, max(gap, 0.0), it, history
