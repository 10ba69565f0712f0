"""Parity between the compiled kernel and the pure-Python fallback."""

import random

import pytest

from todastar import _kernel_py as pure

try:
    from todastar import _kernel as compiled
except ImportError:
    compiled = None

needs_compiled = pytest.mark.skipif(
    compiled is None, reason="compiled kernel not built"
)


def random_gq(rng):
    return pure.gq_make(rng.randint(-40, 40), rng.randint(-40, 40), rng.randint(1, 24))


def random_series(rng, order=8):
    return tuple(random_gq(rng) for _ in range(order + 1))


def test_pure_kernel_normalization():
    assert pure.gq_make(2, -4, 6) == (1, -2, 3)
    assert pure.gq_make(0, 0, 5) == (0, 0, 1)
    assert pure.gq_make(1, 1, -2) == (-1, -1, 2)
    with pytest.raises(ZeroDivisionError):
        pure.gq_make(1, 0, 0)


def test_pure_kernel_shift_truncates():
    s = tuple((k, 0, 1) for k in range(1, 5))
    assert pure.series_shift(s, 2) == ((0, 0, 1), (0, 0, 1), (1, 0, 1), (2, 0, 1))
    assert pure.series_shift(s, 9) == ((0, 0, 1),) * 4


@needs_compiled
def test_scalar_ops_agree():
    rng = random.Random(1)
    for _ in range(300):
        x, y = random_gq(rng), random_gq(rng)
        assert pure.gq_add(x, y) == compiled.gq_add(x, y)
        assert pure.gq_sub(x, y) == compiled.gq_sub(x, y)
        assert pure.gq_mul(x, y) == compiled.gq_mul(x, y)
        assert pure.gq_neg(x) == compiled.gq_neg(x)
        assert pure.gq_conj(x) == compiled.gq_conj(x)
        n, m = rng.randint(-9, 9), rng.randint(1, 9)
        assert pure.gq_mul_rat(x, n, m) == compiled.gq_mul_rat(x, n, m)
        assert pure.gq_is_zero(x) == compiled.gq_is_zero(x)


@needs_compiled
def test_series_ops_agree():
    rng = random.Random(2)
    for _ in range(100):
        xs, ys = random_series(rng), random_series(rng)
        assert pure.series_add(xs, ys) == compiled.series_add(xs, ys)
        assert pure.series_sub(xs, ys) == compiled.series_sub(xs, ys)
        assert pure.series_mul(xs, ys) == compiled.series_mul(xs, ys)
        assert pure.series_neg(xs) == compiled.series_neg(xs)
        assert pure.series_conj(xs) == compiled.series_conj(xs)
        g = random_gq(rng)
        assert pure.series_scale(xs, g) == compiled.series_scale(xs, g)
        k = rng.randint(0, 10)
        assert pure.series_shift(xs, k) == compiled.series_shift(xs, k)
        assert pure.series_is_zero(xs) == compiled.series_is_zero(xs)
