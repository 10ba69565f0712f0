"""Observable algebra: normalization, derivatives, both star products, the
ordering intertwiner, conjugation and parity. Closed-form exponential factors
serve as independent oracles for the expansion-based star products."""

import random
from fractions import Fraction

import pytest

from todastar.coefficients import GaussRational, HbarSeries, ParamRat, series_exp
from todastar.phase_algebra import (
    PhasePoly,
    PhaseTerm,
    conjugate,
    n_transform,
    normalize,
    parity,
    partial,
    poisson,
    star_commutator,
    star_standard,
    star_weyl,
)
from todastar.sampling import random_phase_poly, rng_for

from conftest import ORDER, obs, rat_const


def ih(order=ORDER):
    return HbarSeries.term(GaussRational(0, 1), 1, order)


class TestNormalize:
    def test_merge(self):
        t1 = PhaseTerm(rat_const(2), ppow={1: 1})
        t2 = PhaseTerm(rat_const(3), ppow={1: 1})
        merged = normalize([t1, t2], (), ORDER)
        assert merged == obs(5, ppow={1: 1})

    def test_cancellation(self):
        t1 = PhaseTerm(rat_const(1), ppow={1: 1})
        t2 = PhaseTerm(rat_const(-1), ppow={1: 1})
        assert normalize([t1, t2], (), ORDER).is_zero()

    def test_deterministic_order(self):
        t1 = PhaseTerm(rat_const(1), qlin={1: 1})
        t2 = PhaseTerm(rat_const(1), ppow={1: 1})
        a = normalize([t1, t2], (), ORDER)
        b = normalize([t2, t1], (), ORDER)
        assert list(a.terms) == list(b.terms)
        assert str(a) == str(b)

    def test_idempotent_and_additive(self):
        rng = rng_for(3, "normalize")
        for _ in range(20):
            A = random_phase_poly(rng, order=ORDER)
            B = random_phase_poly(rng, order=ORDER)
            again = normalize(A.term_list(), (), ORDER)
            assert again == A
            concat = normalize(A.term_list() + B.term_list(), (), ORDER)
            assert concat == A + B


class TestPartial:
    def test_power_times_exponential(self):
        F = obs(1, ppow={1: 2}, qlin={1: 1})
        assert partial(F, "p", 1) == obs(2, ppow={1: 1}, qlin={1: 1})

    def test_exponential_signs(self):
        F = obs(1, qlin={1: 1, 2: -1})
        assert partial(F, "q", 1) == F
        assert partial(F, "q", 2) == -F

    def test_momentum_exponential_slope(self):
        F = obs(1, plin={1: 2})
        assert partial(F, "p", 1) == obs(2, plin={1: 2})

    def test_bare_q(self):
        F = obs(1, qpow={1: 1})
        assert partial(F, "q", 1) == obs(1)
        assert partial(F, "p", 1).is_zero()


class TestPoisson:
    def test_canonical_pair(self):
        assert poisson(obs(1, qpow={1: 1}), obs(1, ppow={1: 1})) == obs(1)

    def test_momentum_vs_exponential(self):
        got = poisson(obs(1, ppow={1: 1}), obs(1, qlin={1: 1}))
        assert got == obs(-1, qlin={1: 1})

    def test_toda2_momentum_conservation(self):
        H2 = (
            obs(Fraction(1, 2), ppow={1: 2})
            + obs(Fraction(1, 2), ppow={2: 2})
            + obs(1, qlin={1: 1, 2: -1})
        )
        J1 = obs(-1, ppow={1: 1}) + obs(-1, ppow={2: 1})
        assert poisson(H2, J1).is_zero()


class TestStarWeyl:
    def test_canonical_commutator(self):
        q1, p1 = obs(1, qpow={1: 1}), obs(1, ppow={1: 1})
        qp = obs(1, qpow={1: 1}, ppow={1: 1})
        half_i = rat_const(GaussRational(0, Fraction(1, 2)))
        assert star_weyl(q1, p1) == qp + obs(half_i)
        assert star_weyl(p1, q1) == qp - obs(half_i)
        assert star_commutator(q1, p1) == obs(rat_const(1).scale(ih()))

    def test_exponential_closed_form(self):
        # e^{a q} * e^{b p} = exp(i hbar a b / 2) e^{a q + b p}
        rng = random.Random(5)
        slopes = [Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2)]
        for _ in range(10):
            a, b = rng.choice(slopes), rng.choice(slopes)
            lhs = star_weyl(obs(1, qlin={1: a}), obs(1, plin={1: b}))
            factor = series_exp(GaussRational(0, a * b / 2), ORDER)
            rhs = obs(1, qlin={1: a}, plin={1: b}).scale(factor)
            assert lhs == rhs

    def test_disjoint_particles_pointwise(self):
        F = obs(1, ppow={1: 1})
        G = obs(1, qlin={2: 1, 3: -1})
        assert star_weyl(F, G) == F * G

    def test_mixed_power_exponential_vs_oracle(self):
        # p * e^{b p + c q}: expansion must match differentiating the
        # closed-form exponential product in a
        b, c = Fraction(1), Fraction(-2)
        lhs = star_weyl(obs(1, ppow={1: 1}), obs(1, plin={1: b}, qlin={1: c}))
        # oracle: p * F = (p F) + (i hbar / 2) dF/dq with F the exponential
        F = obs(1, plin={1: b}, qlin={1: c})
        half_i = HbarSeries.term(GaussRational(0, Fraction(1, 2)), 1, ORDER)
        rhs = obs(1, ppow={1: 1}) * F + partial(F, "q", 1).scale(half_i)
        assert lhs == rhs


class TestStarStandard:
    def test_pq_ordering(self):
        q1, p1 = obs(1, qpow={1: 1}), obs(1, ppow={1: 1})
        qp = obs(1, qpow={1: 1}, ppow={1: 1})
        assert star_standard(p1, q1) == qp - obs(rat_const(GaussRational(0, 1)).scale(HbarSeries.hbar(ORDER)))
        assert star_standard(q1, p1) == qp

    def test_exponential_closed_form(self):
        lhs = star_standard(obs(1, plin={1: 1}), obs(1, qlin={1: 1}))
        factor = series_exp(GaussRational(0, -1), ORDER)
        assert lhs == obs(1, plin={1: 1}, qlin={1: 1}).scale(factor)


class TestNTransform:
    def test_single_surviving_term(self):
        F = obs(1, ppow={1: 1}, qlin={1: 1})
        got = n_transform(F, 1)
        shift = rat_const(GaussRational(0, Fraction(-1, 2))).scale(HbarSeries.hbar(ORDER))
        assert got == F + obs(shift, qlin={1: 1})

    def test_exponential_closed_form(self):
        a, b = Fraction(2), Fraction(3)
        F = obs(1, qlin={1: a}, plin={1: b})
        factor = series_exp(GaussRational(0, -a * b / 2), ORDER)
        assert n_transform(F, 1) == F.scale(factor)

    def test_inverse(self):
        rng = rng_for(9, "ntrans")
        for _ in range(15):
            F = random_phase_poly(rng, order=ORDER)
            assert n_transform(n_transform(F, 1), -1) == F

    def test_bad_direction(self):
        with pytest.raises(ValueError):
            n_transform(obs(1), 2)


class TestConjugate:
    def test_imaginary_coefficient(self):
        F = obs(rat_const(GaussRational(0, 1)).scale(HbarSeries.hbar(ORDER)), ppow={1: 1})
        assert conjugate(F) == -F

    def test_reverses_star(self):
        q1, p1 = obs(1, qpow={1: 1}), obs(1, ppow={1: 1})
        assert conjugate(star_weyl(p1, q1)) == star_weyl(q1, p1)

    def test_real_function_fixed(self):
        F = obs(1, qlin={1: 1})
        assert conjugate(F) == F


class TestProperties:
    def test_classical_limit(self):
        rng = rng_for(0, "t.classical")
        for _ in range(25):
            F = random_phase_poly(rng, order=ORDER)
            G = random_phase_poly(rng, order=ORDER)
            assert (star_weyl(F, G).hbar_slice(0) - (F * G).hbar_slice(0)).is_zero()

    def test_semiclassical_limit(self):
        i1 = GaussRational(0, 1)
        rng = rng_for(0, "t.semiclassical")
        for _ in range(25):
            F = random_phase_poly(rng, order=ORDER)
            G = random_phase_poly(rng, order=ORDER)
            comm1 = star_commutator(F, G).hbar_slice(1)
            want = poisson(F, G).hbar_slice(0).scale(i1)
            assert (comm1 - want).is_zero()

    def test_associativity_both_products(self):
        rng = rng_for(0, "t.assoc")
        for _ in range(15):
            F = random_phase_poly(rng, order=ORDER)
            G = random_phase_poly(rng, order=ORDER)
            H = random_phase_poly(rng, order=ORDER)
            assert star_weyl(star_weyl(F, G), H) == star_weyl(F, star_weyl(G, H))
            assert star_standard(star_standard(F, G), H) == star_standard(
                F, star_standard(G, H)
            )

    def test_intertwining(self):
        rng = rng_for(0, "t.intertwine")
        for _ in range(15):
            F = random_phase_poly(rng, order=ORDER)
            G = random_phase_poly(rng, order=ORDER)
            lhs = star_weyl(F, G)
            rhs = n_transform(
                star_standard(n_transform(F, 1), n_transform(G, 1)), -1
            )
            assert lhs == rhs

    def test_conjugation_antihomomorphism(self):
        rng = rng_for(0, "t.conj")
        for _ in range(15):
            F = random_phase_poly(rng, order=ORDER)
            G = random_phase_poly(rng, order=ORDER)
            assert conjugate(star_weyl(F, G)) == star_weyl(conjugate(G), conjugate(F))

    def test_parity_antiautomorphism(self):
        rng = rng_for(0, "t.parity")
        for _ in range(15):
            F = random_phase_poly(rng, order=ORDER)
            G = random_phase_poly(rng, order=ORDER)
            assert star_weyl(parity(F), parity(G)) == parity(star_weyl(G, F))

    def test_disjoint_factorization_exact(self):
        rng = rng_for(0, "t.disjoint")
        for _ in range(15):
            F = random_phase_poly(rng, order=ORDER, particles=(1, 2))
            G = random_phase_poly(rng, order=ORDER, particles=(3,))
            assert star_weyl(F, G) == F * G
            assert star_weyl(G, F) == G * F

    def test_scalar_coefficients_pass_through(self):
        rng = rng_for(0, "t.scalar")
        h2 = HbarSeries.term(1, 2, ORDER)
        for _ in range(10):
            F = random_phase_poly(rng, order=ORDER)
            G = random_phase_poly(rng, order=ORDER)
            assert star_weyl(F.scale(h2), G) == star_weyl(F, G).scale(h2)


class TestRendering:
    def test_stable_and_readable(self):
        F = obs(1, ppow={1: 2}, qlin={1: 1, 2: -1}) + obs(
            rat_const(GaussRational(0, Fraction(1, 2))), qpow={1: 1}
        )
        text = str(F)
        assert "p1^2" in text and "exp(q1 - q2)" in text
        assert str(F) == text

    def test_zero(self):
        assert str(PhasePoly.zero((), ORDER)) == "0"
