"""Shared builders for the test suite: compact constructors for terms,
polynomials and wavefunctions over the empty spectral-variable set."""

from fractions import Fraction

import pytest

from todastar.coefficients import (
    DenPoly,
    GaussRational,
    HbarSeries,
    ParamPoly,
    ParamRat,
)
from todastar.phase_algebra import PhasePoly, PhaseTerm
from todastar.representation import WaveFn, WaveTerm

ORDER = 8


@pytest.fixture
def order():
    return ORDER


def rat_const(value, variables=(), order=ORDER) -> ParamRat:
    return ParamRat.constant(value, variables, order)


def obs(coeff=1, qpow=(), ppow=(), plin=(), qlin=(), variables=(), order=ORDER):
    """Single-term observable with a scalar coefficient."""
    c = coeff if isinstance(coeff, ParamRat) else rat_const(coeff, variables, order)
    return PhasePoly.from_terms(
        [PhaseTerm(c, qpow, ppow, plin, qlin)], variables, order
    )


def wave(coeff=1, qpow=(), qlin=(), variables=(), order=ORDER):
    c = coeff if isinstance(coeff, ParamRat) else rat_const(coeff, variables, order)
    return WaveFn.from_terms([WaveTerm(c, qpow, qlin)], variables, order)


def hseries(*coeffs, order=ORDER) -> HbarSeries:
    cs = list(coeffs) + [0] * (order + 1 - len(coeffs))
    return HbarSeries(cs[: order + 1])


def i_over_2() -> GaussRational:
    return GaussRational(0, Fraction(1, 2))


def series_div(num: HbarSeries, den: HbarSeries) -> HbarSeries:
    """Test-only truncated division; denominator needs an invertible constant."""
    order = num.order
    c0 = den.coeff(0)
    if c0.is_zero():
        raise ZeroDivisionError("denominator has no constant term")
    out = []
    for k in range(order + 1):
        acc = num.coeff(k)
        for i in range(k):
            acc = acc - out[i] * den.coeff(k - i)
        out.append(acc / c0)
    return HbarSeries(out)


def den_var(name, variables, power=1) -> DenPoly:
    return DenPoly.variable(name, variables, power)


def rat_frac(num_value, den: DenPoly, variables, order=ORDER) -> ParamRat:
    """num_value / den with num_value a constant or ParamPoly."""
    if not isinstance(num_value, ParamPoly):
        num_value = ParamPoly.constant(num_value, variables, order)
    return ParamRat(num_value, den)
