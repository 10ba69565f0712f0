"""Seeded property checks for the algebraic foundations: star-product axioms,
classical limits, ordering intertwining, conjugation and parity behaviour,
and the operator-representation identities.

Each check runs a fixed number of random trials from the closed term classes
and reports the first counterexample as its witness; with a fixed seed the
outcome is reproducible bit for bit.
"""

from __future__ import annotations

import time

from todastar.coefficients import GaussRational
from todastar.integrability import CheckReport
from todastar.phase_algebra import (
    conjugate,
    n_transform,
    parity,
    poisson,
    star_standard,
    star_weyl,
)
from todastar.representation import rho_standard, rho_weyl
from todastar.sampling import random_phase_poly, random_wavefn, rng_for

_I_UNIT = GaussRational(0, 1)


def _run_trials(name, trials, sample, violation) -> CheckReport:
    t0 = time.perf_counter()
    failures = 0
    witness = None
    for i in range(trials):
        args = sample(i)
        bad = violation(*args)
        if bad is not None:
            failures += 1
            if witness is None:
                witness = f"trial {i}: {bad}"
    return CheckReport(
        name=name,
        passed=failures == 0,
        residual_terms=failures,
        witness=witness,
        wall_time_ms=(time.perf_counter() - t0) * 1e3,
    )


def check_associativity(
    product: str = "weyl", trials: int = 50, order: int = 8, seed: int = 0
) -> CheckReport:
    star = star_weyl if product == "weyl" else star_standard
    rng = rng_for(seed, f"assoc.{product}")

    def sample(_):
        return (
            random_phase_poly(rng, order=order),
            random_phase_poly(rng, order=order),
            random_phase_poly(rng, order=order),
        )

    def violation(F, G, H):
        res = star(star(F, G), H) - star(F, star(G, H))
        return None if res.is_zero() else res

    return _run_trials(f"foundations.assoc.{product}", trials, sample, violation)


def check_limits(trials: int = 50, order: int = 8, seed: int = 0) -> CheckReport:
    """Order-zero term is the pointwise product; order-one commutator term is
    i times the Poisson bracket."""
    rng = rng_for(seed, "limits")

    def sample(_):
        return (
            random_phase_poly(rng, order=order),
            random_phase_poly(rng, order=order),
        )

    def violation(F, G):
        prod = star_weyl(F, G)
        if not (prod.hbar_slice(0) - F * G).is_zero():
            return prod.hbar_slice(0) - F * G
        comm = prod - star_weyl(G, F)
        want = poisson(F, G).scale(_I_UNIT)
        got = comm.hbar_slice(1)
        return None if (got - want).is_zero() else got - want

    return _run_trials("foundations.limits", trials, sample, violation)


def check_intertwining(trials: int = 50, order: int = 8, seed: int = 0) -> CheckReport:
    """F * G = N^{-1}((N F) *_S (N G))."""
    rng = rng_for(seed, "intertwine")

    def sample(_):
        return (
            random_phase_poly(rng, order=order),
            random_phase_poly(rng, order=order),
        )

    def violation(F, G):
        lhs = star_weyl(F, G)
        rhs = n_transform(star_standard(n_transform(F, 1), n_transform(G, 1)), -1)
        res = lhs - rhs
        return None if res.is_zero() else res

    return _run_trials("foundations.intertwine", trials, sample, violation)


def check_conjugation(trials: int = 50, order: int = 8, seed: int = 0) -> CheckReport:
    """conj(F * G) = conj(G) * conj(F)."""
    rng = rng_for(seed, "conj")

    def sample(_):
        return (
            random_phase_poly(rng, order=order),
            random_phase_poly(rng, order=order),
        )

    def violation(F, G):
        res = conjugate(star_weyl(F, G)) - star_weyl(conjugate(G), conjugate(F))
        return None if res.is_zero() else res

    return _run_trials("foundations.conjugation", trials, sample, violation)


def check_parity(trials: int = 50, order: int = 8, seed: int = 0) -> CheckReport:
    """Momentum reflection reverses the star product."""
    rng = rng_for(seed, "parity")

    def sample(_):
        return (
            random_phase_poly(rng, order=order),
            random_phase_poly(rng, order=order),
        )

    def violation(F, G):
        res = star_weyl(parity(F), parity(G)) - parity(star_weyl(G, F))
        return None if res.is_zero() else res

    return _run_trials("foundations.parity", trials, sample, violation)


def check_disjoint(trials: int = 50, order: int = 8, seed: int = 0) -> CheckReport:
    """Factors on disjoint particle sets multiply pointwise."""
    rng = rng_for(seed, "disjoint")

    def sample(_):
        return (
            random_phase_poly(rng, order=order, particles=(1, 2)),
            random_phase_poly(rng, order=order, particles=(3, 4)),
        )

    def violation(F, G):
        res = star_weyl(F, G) - F * G
        return None if res.is_zero() else res

    return _run_trials("foundations.disjoint", trials, sample, violation)


def check_representation(
    which: str = "weyl", trials: int = 100, order: int = 8, seed: int = 0
) -> CheckReport:
    """rho(F star G) psi = rho(F)(rho(G) psi) for the matching star product."""
    rho, star = (
        (rho_weyl, star_weyl) if which == "weyl" else (rho_standard, star_standard)
    )
    rng = rng_for(seed, f"repr.{which}")

    def sample(_):
        return (
            random_phase_poly(rng, order=order),
            random_phase_poly(rng, order=order),
            random_wavefn(rng, order=order),
        )

    def violation(F, G, psi):
        res = rho(star(F, G), psi) - rho(F, rho(G, psi))
        return None if res.is_zero() else res

    return _run_trials(f"repr.{which}", trials, sample, violation)


def check_repr_linearity(trials: int = 50, order: int = 8, seed: int = 0) -> CheckReport:
    rng = rng_for(seed, "repr.linearity")

    def sample(_):
        return (
            random_phase_poly(rng, order=order),
            random_phase_poly(rng, order=order),
            random_wavefn(rng, order=order),
            random_wavefn(rng, order=order),
        )

    def violation(F, G, psi, phi):
        for rho in (rho_standard, rho_weyl):
            res = rho(F + G, psi) - rho(F, psi) - rho(G, psi)
            if not res.is_zero():
                return res
            res = rho(F, psi + phi) - rho(F, psi) - rho(F, phi)
            if not res.is_zero():
                return res
        return None

    return _run_trials("repr.linearity", trials, sample, violation)


ALL_FOUNDATIONS = (
    lambda order, seed: check_associativity("weyl", 50, order, seed),
    lambda order, seed: check_associativity("standard", 50, order, seed),
    lambda order, seed: check_limits(50, order, seed),
    lambda order, seed: check_intertwining(50, order, seed),
    lambda order, seed: check_conjugation(50, order, seed),
    lambda order, seed: check_parity(50, order, seed),
    lambda order, seed: check_disjoint(50, order, seed),
)
