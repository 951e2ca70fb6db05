"""Pure numpy versions of the compiled kernels, same arithmetic order."""

from __future__ import annotations

import numpy as np


def _neumaier(w, f):
    s = 0.0
    c = 0.0
    for x in (w * f).tolist():
        t = s + x
        if abs(s) >= abs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return s + c


def weighted_sum(w, f):
    w = np.ascontiguousarray(w, dtype=float)
    f = np.ascontiguousarray(f, dtype=float)
    if w.shape[0] != f.shape[0]:
        raise ValueError("weights and values differ in length")
    return _neumaier(w, f)


def weighted_sum_cols(w, f):
    w = np.ascontiguousarray(w, dtype=float)
    f = np.ascontiguousarray(f, dtype=float)
    if f.shape[0] != w.shape[0]:
        raise ValueError("weights and values differ in length")
    return np.array([_neumaier(w, f[:, j]) for j in range(f.shape[1])])


def _src(u, q):
    return np.sign(u) * np.abs(u) ** q


def lane_emden_rk4(alphas, q, n, R, nsteps):
    a = np.array(alphas, dtype=float)
    h = R / nsteps
    nm1 = n - 1.0
    c1 = _src(a, q) / (2.0 * n)
    c2 = q * np.abs(a) ** (q - 1.0) * c1 / (4.0 * (n + 2.0))
    r = h
    u = a - c1 * r * r + c2 * r * r * r * r
    v = -2.0 * c1 * r + 4.0 * c2 * r * r * r
    umin = u.copy()
    for _ in range(1, nsteps):
        rm = r + 0.5 * h
        rn = r + h
        k1u = v
        k1v = -nm1 * v / r - _src(u, q)
        k2u = v + 0.5 * h * k1v
        k2v = -nm1 * k2u / rm - _src(u + 0.5 * h * k1u, q)
        k3u = v + 0.5 * h * k2v
        k3v = -nm1 * k3u / rm - _src(u + 0.5 * h * k2u, q)
        k4u = v + h * k3v
        k4v = -nm1 * k4u / rn - _src(u + h * k3u, q)
        u = u + h * (k1u + 2.0 * k2u + 2.0 * k3u + k4u) / 6.0
        v = v + h * (k1v + 2.0 * k2v + 2.0 * k3v + k4v) / 6.0
        r = rn
        umin = np.minimum(umin, u)
    return u, v, umin
