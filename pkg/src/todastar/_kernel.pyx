# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled arithmetic kernel; mirrors ``_kernel_py`` over the same encodings.

Values stay arbitrary-precision Python ints; the speedup comes from static
dispatch, C loop counters and avoiding interpreter overhead in the inner
convolution loops.
"""

from math import gcd

GQ_ZERO = (0, 0, 1)
GQ_ONE = (1, 0, 1)


cpdef tuple gq_make(a, b, d):
    if d == 0:
        raise ZeroDivisionError("gaussian rational with zero denominator")
    if d < 0:
        a, b, d = -a, -b, -d
    if a == 0 and b == 0:
        return GQ_ZERO
    if d == 1:
        return (a, b, 1)
    g = gcd(a, b, d)
    if g > 1:
        return (a // g, b // g, d // g)
    return (a, b, d)


cpdef tuple gq_add(tuple x, tuple y):
    a1, b1, d1 = x
    a2, b2, d2 = y
    if d1 == d2:
        return gq_make(a1 + a2, b1 + b2, d1)
    return gq_make(a1 * d2 + a2 * d1, b1 * d2 + b2 * d1, d1 * d2)


cpdef tuple gq_sub(tuple x, tuple y):
    a1, b1, d1 = x
    a2, b2, d2 = y
    if d1 == d2:
        return gq_make(a1 - a2, b1 - b2, d1)
    return gq_make(a1 * d2 - a2 * d1, b1 * d2 - b2 * d1, d1 * d2)


cpdef tuple gq_mul(tuple x, tuple y):
    a1, b1, d1 = x
    a2, b2, d2 = y
    return gq_make(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2, d1 * d2)


cpdef tuple gq_neg(tuple x):
    a, b, d = x
    return (-a, -b, d)


cpdef tuple gq_conj(tuple x):
    a, b, d = x
    return (a, -b, d)


cpdef tuple gq_mul_rat(tuple x, n, m):
    """Multiply gq x by the rational n/m."""
    a, b, d = x
    return gq_make(a * n, b * n, d * m)


cpdef bint gq_is_zero(tuple x):
    return x[0] == 0 and x[1] == 0


cpdef tuple series_add(tuple xs, tuple ys):
    cdef Py_ssize_t i, n = len(xs)
    out = []
    for i in range(n):
        out.append(gq_add(<tuple>xs[i], <tuple>ys[i]))
    return tuple(out)


cpdef tuple series_sub(tuple xs, tuple ys):
    cdef Py_ssize_t i, n = len(xs)
    out = []
    for i in range(n):
        out.append(gq_sub(<tuple>xs[i], <tuple>ys[i]))
    return tuple(out)


cpdef tuple series_neg(tuple xs):
    cdef Py_ssize_t i, n = len(xs)
    out = []
    for i in range(n):
        a, b, d = <tuple>xs[i]
        out.append((-a, -b, d))
    return tuple(out)


cpdef tuple series_conj(tuple xs):
    cdef Py_ssize_t i, n = len(xs)
    out = []
    for i in range(n):
        a, b, d = <tuple>xs[i]
        out.append((a, -b, d))
    return tuple(out)


cpdef tuple series_mul(tuple xs, tuple ys):
    """Truncated Cauchy product; both inputs must have equal length."""
    cdef Py_ssize_t i, k, n = len(xs)
    cdef tuple x, y, acc
    out = []
    for k in range(n):
        acc = GQ_ZERO
        for i in range(k + 1):
            x = <tuple>xs[i]
            if x[0] == 0 and x[1] == 0:
                continue
            y = <tuple>ys[k - i]
            if y[0] == 0 and y[1] == 0:
                continue
            acc = gq_add(acc, gq_mul(x, y))
        out.append(acc)
    return tuple(out)


cpdef tuple series_scale(tuple xs, tuple g):
    cdef Py_ssize_t i, n = len(xs)
    if g[0] == 0 and g[1] == 0:
        return (GQ_ZERO,) * n
    out = []
    for i in range(n):
        out.append(gq_mul(<tuple>xs[i], g))
    return tuple(out)


cpdef tuple series_scale_rat(tuple xs, n, m):
    cdef Py_ssize_t i, ln = len(xs)
    if n == 0:
        return (GQ_ZERO,) * ln
    out = []
    for i in range(ln):
        out.append(gq_mul_rat(<tuple>xs[i], n, m))
    return tuple(out)


cpdef tuple series_shift(tuple xs, Py_ssize_t k):
    """Multiply by hbar^k, truncating at the stored order."""
    cdef Py_ssize_t n = len(xs)
    if k == 0:
        return xs
    if k >= n:
        return (GQ_ZERO,) * n
    return (GQ_ZERO,) * k + xs[: n - k]


cpdef bint series_is_zero(tuple xs):
    cdef Py_ssize_t i, n = len(xs)
    cdef tuple x
    for i in range(n):
        x = <tuple>xs[i]
        if x[0] != 0 or x[1] != 0:
            return False
    return True
