# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: distance and kernel-matrix assembly, Frank-Wolfe loop.

Same algorithm and tie-breaking as ``_pykernels``.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY, fabs, log, pow, sqrt

cnp.import_array()

NAME = "compiled"


def pairwise_distances(x):
    cdef const double[:, ::1] pts = np.ascontiguousarray(np.atleast_2d(x).reshape(len(x), -1), dtype=np.float64)
    cdef Py_ssize_t n = pts.shape[0], d = pts.shape[1]
    out = np.zeros((n, n), dtype=np.float64)
    cdef double[:, ::1] dist = out
    cdef Py_ssize_t i, j, k
    cdef double acc, t
    for i in range(n):
        for j in range(i + 1, n):
            acc = 0.0
            for k in range(d):
                t = pts[i, k] - pts[j, k]
                acc += t * t
            acc = sqrt(acc)
            dist[i, j] = acc
            dist[j, i] = acc
    return out


def kernel_matrix(dist_in, double p, diag_in):
    cdef const double[:, ::1] dist = np.ascontiguousarray(dist_in, dtype=np.float64)
    cdef Py_ssize_t n = dist.shape[0]
    cdef const double[::1] diag = np.ascontiguousarray(np.broadcast_to(diag_in, (n,)), dtype=np.float64)
    out = np.empty((n, n), dtype=np.float64)
    cdef double[:, ::1] k = out
    cdef Py_ssize_t i, j
    cdef double r, v
    cdef bint bad = False
    with nogil:
        for i in range(n):
            k[i, i] = diag[i]
            for j in range(i + 1, n):
                r = dist[i, j]
                if r <= 0.0:
                    bad = True
                    v = 0.0
                elif p == 0.0:
                    v = -log(r)
                else:
                    v = pow(r, -p)
                k[i, j] = v
                k[j, i] = v
    if bad:
        raise ValueError("duplicate nodes: zero off-diagonal distance")
    return out


cdef void _matvec(double[:, ::1] a, double[::1] w, double[::1] u) noexcept nogil:
    cdef Py_ssize_t n = a.shape[0], i, j
    cdef double acc
    for i in range(n):
        acc = 0.0
        for j in range(n):
            if w[j] != 0.0:
                acc += a[i, j] * w[j]
        u[i] = acc


cdef double _dot(double[::1] x, double[::1] y) noexcept nogil:
    cdef Py_ssize_t i
    cdef double acc = 0.0
    for i in range(x.shape[0]):
        acc += x[i] * y[i]
    return acc


def frank_wolfe(kmat, w0, bint maximize, long max_iters, double tol, long refresh, bint record):
    cdef double sign = -1.0 if maximize else 1.0
    a_arr = np.ascontiguousarray(sign * np.asarray(kmat, dtype=np.float64))
    cdef double[:, ::1] a = a_arr
    w_arr = np.array(w0, dtype=np.float64)
    cdef double[::1] w = w_arr
    cdef Py_ssize_t n = w.shape[0]
    u_arr = np.empty(n, dtype=np.float64)
    cdef double[::1] u = u_arr
    hist_arr = np.empty(max_iters + 1 if record else 1, dtype=np.float64)
    cdef double[::1] hist = hist_arr

    cdef Py_ssize_t i, s, aw
    cdef long it = 0, since_refresh = 0
    cdef bint fresh = True, fw_step
    cdef double e, g_fw, g_aw, gap = INFINITY, b, c, gmax, gamma, best, tot, scale

    _matvec(a, w, u)
    e = _dot(w, u)
    if record:
        hist[0] = sign * e

    with nogil:
        while True:
            s = 0
            best = u[0]
            for i in range(1, n):
                if u[i] < best:
                    best = u[i]
                    s = i
            aw = -1
            best = -INFINITY
            for i in range(n):
                if w[i] > 0.0 and u[i] > best:
                    best = u[i]
                    aw = i
            g_fw = e - u[s]
            g_aw = u[aw] - e
            gap = 2.0 * g_fw
            if gap <= tol * (1.0 + fabs(e)):
                if fresh:
                    break
                _matvec(a, w, u)
                e = _dot(w, u)
                fresh = True
                since_refresh = 0
                continue
            if it >= max_iters:
                break
            fw_step = g_fw >= g_aw
            if fw_step:
                b = u[s] - e
                c = a[s, s] - 2.0 * u[s] + e
                gmax = 1.0
            else:
                b = e - u[aw]
                c = e - 2.0 * u[aw] + a[aw, aw]
                gmax = w[aw] / (1.0 - w[aw])
            if c > 0.0:
                gamma = -b / c
                if gamma < 0.0:
                    gamma = 0.0
                if gamma > gmax:
                    gamma = gmax
            elif 2.0 * gmax * b + gmax * gmax * c < 0.0:
                gamma = gmax
            else:
                gamma = 0.0
            if gamma <= 0.0:
                if fresh:
                    break
                _matvec(a, w, u)
                e = _dot(w, u)
                fresh = True
                since_refresh = 0
                continue
            if fw_step:
                scale = 1.0 - gamma
                for i in range(n):
                    w[i] *= scale
                    u[i] = u[i] * scale + gamma * a[s, i]
                w[s] += gamma
            else:
                scale = 1.0 + gamma
                for i in range(n):
                    w[i] *= scale
                    u[i] = u[i] * scale - gamma * a[aw, i]
                w[aw] -= gamma
                if gamma == gmax:
                    w[aw] = 0.0
            e = e + 2.0 * gamma * b + gamma * gamma * c
            it += 1
            since_refresh += 1
            fresh = False
            if since_refresh >= refresh:
                tot = 0.0
                for i in range(n):
                    tot += w[i]
                for i in range(n):
                    w[i] /= tot
                _matvec(a, w, u)
                e = _dot(w, u)
                since_refresh = 0
                fresh = True
            if record:
                hist[it] = sign * e

    history = hist_arr[: it + 1].copy() if record else None
    return w_arr, sign * e, max(gap, 0.0), it, history
