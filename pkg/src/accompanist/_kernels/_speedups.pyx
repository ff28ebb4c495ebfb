# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled grid evaluation kernels for aggregate sampling and
Center-of-Area sums.  Contract documented in ``_pure``."""

IMPL = "compiled"


cdef inline double _degree(int shape, double a, double b, double c, double d,
                           double x) noexcept nogil:
    cdef double deg
    if shape == 1:
        return 1.0 if x == a else 0.0
    if b <= x <= c:
        return 1.0
    if x < b:
        if x < a:
            return 0.0
        if b > a:
            return (x - a) / (b - a)
        return 1.0 if x == b else 0.0
    if x > d:
        return 0.0
    if d > c:
        return (d - x) / (d - c)
    return 1.0 if x == c else 0.0


def aggregate_grid(int[::1] shapes, double[:, ::1] params,
                   double[::1] strengths, double[::1] xs):
    import numpy as np
    cdef Py_ssize_t n = xs.shape[0]
    cdef Py_ssize_t m = shapes.shape[0]
    out_arr = np.zeros(n, dtype=np.float64)
    cdef double[::1] out = out_arr
    cdef Py_ssize_t i, j
    cdef double deg, s
    with nogil:
        for j in range(n):
            for i in range(m):
                deg = _degree(shapes[i], params[i, 0], params[i, 1],
                              params[i, 2], params[i, 3], xs[j])
                s = strengths[i]
                if deg > s:
                    deg = s
                if deg > out[j]:
                    out[j] = deg
    return out_arr


def coa_sums(int[::1] shapes, double[:, ::1] params, double[::1] strengths,
             double lo, double hi, Py_ssize_t n):
    cdef double h = (hi - lo) / n
    cdef Py_ssize_t m = shapes.shape[0]
    cdef Py_ssize_t i, j
    cdef double x, mu, deg, s
    cdef double num = 0.0
    cdef double den = 0.0
    with nogil:
        for j in range(n):
            x = lo + (j + 0.5) * h
            mu = 0.0
            for i in range(m):
                deg = _degree(shapes[i], params[i, 0], params[i, 1],
                              params[i, 2], params[i, 3], x)
                s = strengths[i]
                if deg > s:
                    deg = s
                if deg > mu:
                    mu = deg
            num += x * mu
            den += mu
    return num, den
