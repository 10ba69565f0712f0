"""Pure-Python arithmetic kernel for Gaussian rationals and truncated series.

The compiled twin in ``_kernel.pyx`` implements the same functions over the
same plain-tuple encodings, so the two are interchangeable at import time.

Encodings:
  gq     -- triple (a, b, d) of ints with re = a/d, im = b/d, d > 0 and
            gcd(a, b, d) == 1; the canonical zero is (0, 0, 1)
  series -- tuple of N + 1 gq triples, the coefficients of hbar^0 .. hbar^N
"""

from math import gcd

GQ_ZERO = (0, 0, 1)
GQ_ONE = (1, 0, 1)


def gq_make(a, b, d):
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


def gq_add(x, y):
    a1, b1, d1 = x
    a2, b2, d2 = y
    if d1 == d2:
        return gq_make(a1 + a2, b1 + b2, d1)
    return gq_make(a1 * d2 + a2 * d1, b1 * d2 + b2 * d1, d1 * d2)


def gq_sub(x, y):
    a1, b1, d1 = x
    a2, b2, d2 = y
    if d1 == d2:
        return gq_make(a1 - a2, b1 - b2, d1)
    return gq_make(a1 * d2 - a2 * d1, b1 * d2 - b2 * d1, d1 * d2)


def gq_mul(x, y):
    a1, b1, d1 = x
    a2, b2, d2 = y
    return gq_make(a1 * a2 - b1 * b2, a1 * b2 + b1 * a2, d1 * d2)


def gq_neg(x):
    a, b, d = x
    return (-a, -b, d)


def gq_conj(x):
    a, b, d = x
    return (a, -b, d)


def gq_mul_rat(x, n, m):
    """Multiply gq x by the rational n/m."""
    a, b, d = x
    return gq_make(a * n, b * n, d * m)


def gq_is_zero(x):
    return x[0] == 0 and x[1] == 0


def series_add(xs, ys):
    return tuple(gq_add(x, y) for x, y in zip(xs, ys))


def series_sub(xs, ys):
    return tuple(gq_sub(x, y) for x, y in zip(xs, ys))


def series_neg(xs):
    return tuple((-a, -b, d) for a, b, d in xs)


def series_conj(xs):
    return tuple((a, -b, d) for a, b, d in xs)


def series_mul(xs, ys):
    """Truncated Cauchy product; both inputs must have equal length."""
    n = len(xs)
    out = []
    for k in range(n):
        acc = GQ_ZERO
        for i in range(k + 1):
            x = xs[i]
            if x[0] == 0 and x[1] == 0:
                continue
            y = ys[k - i]
            if y[0] == 0 and y[1] == 0:
                continue
            acc = gq_add(acc, gq_mul(x, y))
        out.append(acc)
    return tuple(out)


def series_scale(xs, g):
    if g[0] == 0 and g[1] == 0:
        return ((0, 0, 1),) * len(xs)
    return tuple(gq_mul(x, g) for x in xs)


def series_scale_rat(xs, n, m):
    if n == 0:
        return ((0, 0, 1),) * len(xs)
    return tuple(gq_mul_rat(x, n, m) for x in xs)


def series_shift(xs, k):
    """Multiply by hbar^k, truncating at the stored order."""
    n = len(xs)
    if k == 0:
        return xs
    if k >= n:
        return ((0, 0, 1),) * n
    return ((0, 0, 1),) * k + xs[: n - k]


def series_is_zero(xs):
    for a, b, _ in xs:
        if a != 0 or b != 0:
            return False
    return True
