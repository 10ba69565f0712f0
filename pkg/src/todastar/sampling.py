"""Seeded random generators for property checks.

Everything draws from the closed term classes of the engine with small
rational data, so identities are cheap to verify yet exercise mixed
polynomial-times-exponential structure. All randomness flows through an
explicit random.Random so runs are reproducible from a single seed.
"""

from __future__ import annotations

import random
from fractions import Fraction

from todastar.coefficients import GaussRational, HbarSeries, ParamRat
from todastar.phase_algebra import PhasePoly, PhaseTerm
from todastar.representation import WaveFn, WaveTerm

_SLOPES = (
    Fraction(0),
    Fraction(1),
    Fraction(-1),
    Fraction(2),
    Fraction(1, 2),
    Fraction(-1, 2),
)
_COEFF_POOL = (
    Fraction(1),
    Fraction(-1),
    Fraction(2),
    Fraction(1, 2),
    Fraction(-3),
    Fraction(2, 3),
)


def rng_for(seed: int, label: str) -> random.Random:
    """A deterministic stream per (seed, check label)."""
    return random.Random(f"{seed}:{label}")


def random_fraction(rng: random.Random) -> Fraction:
    return rng.choice(_COEFF_POOL)


def random_gauss(rng: random.Random, allow_zero=False) -> GaussRational:
    while True:
        g = GaussRational(
            rng.choice((Fraction(0),) + _COEFF_POOL),
            rng.choice((Fraction(0),) + _COEFF_POOL),
        )
        if allow_zero or not g.is_zero():
            return g


def random_series(
    rng: random.Random, order: int, zero_const: bool = False
) -> HbarSeries:
    coeffs = []
    for k in range(order + 1):
        if k == 0 and zero_const:
            coeffs.append(GaussRational(0))
        elif rng.random() < 0.5:
            coeffs.append(random_gauss(rng, allow_zero=True))
        else:
            coeffs.append(GaussRational(0))
    if zero_const and all(c.is_zero() for c in coeffs[1:]):
        coeffs[1] = random_gauss(rng)
    return HbarSeries(coeffs)


def random_term(
    rng: random.Random,
    variables,
    order: int,
    particles=(1, 2),
    with_qpow: bool = True,
) -> PhaseTerm:
    coeff = ParamRat.constant(random_gauss(rng), variables, order)
    qpow, ppow, plin, qlin = {}, {}, {}, {}
    for j in particles:
        if rng.random() < 0.35:
            ppow[j] = rng.randint(1, 2)
        if with_qpow and rng.random() < 0.25:
            qpow[j] = 1
        if rng.random() < 0.45:
            plin[j] = rng.choice(_SLOPES)
        if rng.random() < 0.45:
            qlin[j] = rng.choice(_SLOPES)
    return PhaseTerm(coeff, qpow, ppow, plin, qlin)


def random_phase_poly(
    rng: random.Random,
    variables=(),
    order: int = 8,
    particles=(1, 2),
    max_terms: int = 2,
    with_qpow: bool = True,
) -> PhasePoly:
    n_terms = rng.randint(1, max_terms)
    return PhasePoly.from_terms(
        [
            random_term(rng, variables, order, particles, with_qpow)
            for _ in range(n_terms)
        ],
        variables,
        order,
    )


def random_wavefn(
    rng: random.Random,
    variables=(),
    order: int = 8,
    particles=(1, 2),
    max_terms: int = 2,
) -> WaveFn:
    terms = []
    for _ in range(rng.randint(1, max_terms)):
        coeff = ParamRat.constant(random_gauss(rng), variables, order)
        qpow, qlin = {}, {}
        for j in particles:
            if rng.random() < 0.5:
                qpow[j] = rng.randint(1, 2)
            if rng.random() < 0.5:
                qlin[j] = rng.choice(_SLOPES)
        terms.append(WaveTerm(coeff, qpow, qlin))
    return WaveFn.from_terms(terms, variables, order)
