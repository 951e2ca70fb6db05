# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled inner loops: compensated weighted sums and a batched RK4 shooter."""

from libc.math cimport fabs, pow
import numpy as np


cdef inline double _neumaier(const double* w, const double* f, Py_ssize_t n,
                             Py_ssize_t stride) nogil:
    cdef Py_ssize_t i
    cdef double s = 0.0
    cdef double c = 0.0
    cdef double t, x
    for i in range(n):
        x = w[i] * f[i * stride]
        t = s + x
        if fabs(s) >= fabs(x):
            c += (s - t) + x
        else:
            c += (x - t) + s
        s = t
    return s + c


def weighted_sum(const double[::1] w, const double[::1] f):
    if w.shape[0] != f.shape[0]:
        raise ValueError("weights and values differ in length")
    if w.shape[0] == 0:
        return 0.0
    return _neumaier(&w[0], &f[0], w.shape[0], 1)


def weighted_sum_cols(const double[::1] w, const double[:, ::1] f):
    cdef Py_ssize_t n = w.shape[0]
    cdef Py_ssize_t k = f.shape[1]
    cdef Py_ssize_t j
    if f.shape[0] != n:
        raise ValueError("weights and values differ in length")
    out = np.zeros(k)
    cdef double[::1] o = out
    if n == 0:
        return out
    for j in range(k):
        o[j] = _neumaier(&w[0], &f[0, j], n, k)
    return out


cdef inline double _src(double u, double q) nogil:
    if u >= 0.0:
        return pow(u, q)
    return -pow(-u, q)


def lane_emden_rk4(const double[::1] alphas, double q, int n, double R, int nsteps):
    """Integrate u'' + (n-1)u'/r + |u|^(q-1)u = 0 from r=0 to r=R.

    Returns (u(R), u'(R), min u) per starting value.
    """
    cdef Py_ssize_t m = alphas.shape[0]
    cdef Py_ssize_t i, k
    cdef double h = R / nsteps
    cdef double a, c1, c2, r, u, v, umin
    cdef double k1u, k1v, k2u, k2v, k3u, k3v, k4u, k4v, rm, rn
    cdef double nm1 = n - 1.0
    uR = np.empty(m)
    vR = np.empty(m)
    um = np.empty(m)
    cdef double[::1] ou = uR
    cdef double[::1] ov = vR
    cdef double[::1] omin = um
    with nogil:
        for i in range(m):
            a = alphas[i]
            c1 = _src(a, q) / (2.0 * n)
            c2 = q * pow(fabs(a), q - 1.0) * c1 / (4.0 * (n + 2.0))
            r = h
            u = a - c1 * r * r + c2 * r * r * r * r
            v = -2.0 * c1 * r + 4.0 * c2 * r * r * r
            umin = u
            for k in range(1, nsteps):
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
                if u < umin:
                    umin = u
            ou[i] = u
            ov[i] = v
            omin[i] = umin
    return uR, vR, um
