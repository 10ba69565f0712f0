"""Trace polynomials, characteristic coefficients, the Waring conversion
formulas in both directions, and their star-product reinterpretation.

Replacing every product in the backward Waring formula by the Weyl star
product turns the classical trace polynomials I_k into deformed quantities
that commute by construction; their difference from I_k is the quantum
correction the engine computes and compares against the known closed forms
for k = 4, 5, 6.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from todastar.coefficients import HbarSeries, ParamRat
from todastar.integrability import lambda_split
from todastar.lax_catalog import build_classical_L
from todastar.phase_algebra import PhasePoly, PhaseTerm, star_commutator, star_weyl
from todastar.tensor_matrix import RingMatrix


def multi_indices(k: int):
    """All multi-indices r = (r_1, .., r_k) with sum i * r_i = k."""

    def rec(i, remaining):
        if i > k:
            if remaining == 0:
                yield ()
            return
        for count in range(remaining // i + 1):
            for rest in rec(i + 1, remaining - i * count):
                yield (count,) + rest

    yield from rec(1, k)


def trace_poly(n: int, k: int, order: int = 8) -> PhasePoly:
    """I_k = (1/k) tr L^k with commuting (pointwise) matrix powers."""
    if k < 1:
        raise ValueError("trace polynomials start at k = 1")
    L = build_classical_L(n, order)
    power = L
    for _ in range(k - 1):
        power = power.mul(L)
    return power.trace() * Fraction(1, k)


def char_matrix(n: int, order: int = 8) -> RingMatrix:
    """lam * 1 - L over a single spectral variable."""
    V = ("lam",)
    L = build_classical_L(n, order, V)
    lam = PhasePoly.constant(ParamRat.variable("lam", V, order), V, order)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            e = -L.entries[i][j]
            if i == j:
                e = e + lam
            row.append(e)
        rows.append(tuple(row))
    return RingMatrix(tuple(rows))


def char_coeff(n: int, k: int, order: int = 8) -> PhasePoly:
    """J_k from det(lam * 1 - L) = lam^n + sum_k J_k lam^{n-k}."""
    if not 1 <= k <= n:
        raise ValueError("characteristic coefficients need 1 <= k <= n")
    det = char_matrix(n, order).det()
    lp = lambda_split(det, order)
    c = lp.get(n - k)
    return c if c is not None else PhasePoly.zero((), order)


def _pointwise_power(F: PhasePoly, m: int, one: PhasePoly) -> PhasePoly:
    out = one
    for _ in range(m):
        out = out * F
    return out


def _star_power(F: PhasePoly, m: int, one: PhasePoly) -> PhasePoly:
    out = one
    for _ in range(m):
        out = star_weyl(out, F)
    return out


def waring_forward(I: list, k: int) -> PhasePoly:
    """J_k as the signed multinomial sum over products of trace polynomials."""
    if k < 1 or len(I) < k:
        raise ValueError("need trace polynomials I_1 .. I_k")
    variables, order = I[0].variables, I[0].order
    one = PhasePoly.constant(1, variables, order)
    out = PhasePoly.zero(variables, order)
    for r in multi_indices(k):
        total = sum(r)
        coeff = Fraction((-1) ** total, 1)
        prod = one
        for i, ri in enumerate(r, start=1):
            if ri:
                coeff /= factorial(ri)
                prod = prod * _pointwise_power(I[i - 1], ri, one)
        out = out + prod * coeff
    return out


def waring_backward(J: list, k: int, multiply: str = "pointwise") -> PhasePoly:
    """I_k from the characteristic coefficients; star multiplication gives the
    deformed quantity instead.

    Entries of J beyond the chain length are treated as zero. Star monomials
    are evaluated ascending in the index; the factors mutually star-commute,
    so the order does not matter (tested, not assumed)."""
    if multiply not in ("pointwise", "star_weyl"):
        raise ValueError("multiply must be pointwise or star_weyl")
    if k < 1:
        raise ValueError("trace polynomials start at k = 1")
    if not J:
        raise ValueError("need at least one characteristic coefficient")
    variables, order = J[0].variables, J[0].order
    one = PhasePoly.constant(1, variables, order)
    star = multiply == "star_weyl"
    out = PhasePoly.zero(variables, order)
    for r in multi_indices(k):
        if any(ri for i, ri in enumerate(r, start=1) if i > len(J)):
            continue
        total = sum(r)
        coeff = Fraction((-1) ** total * factorial(total), total)
        prod = one
        for i, ri in enumerate(r, start=1):
            if ri:
                coeff /= factorial(ri)
                if star:
                    prod = star_weyl(prod, _star_power(J[i - 1], ri, one))
                else:
                    prod = prod * _pointwise_power(J[i - 1], ri, one)
        out = out + prod * coeff
    return out


def corrected_trace_poly(n: int, k: int, order: int = 8) -> PhasePoly:
    """The deformed trace polynomial built from the star-Waring formula."""
    J = [char_coeff(n, m, order) for m in range(1, n + 1)]
    return waring_backward(J, k, "star_weyl")


def quantum_correction(n: int, k: int, order: int = 8) -> PhasePoly:
    """Difference between the deformed and the classical trace polynomial."""
    return corrected_trace_poly(n, k, order) - trace_poly(n, k, order)


def correction_formula(n: int, k: int, order: int = 8) -> PhasePoly | None:
    """Closed form of the correction for k in {4, 5, 6} (rho^2 = -hbar^2/4).

    The k = 6 next-to-nearest-neighbour coefficient is (13/3) rho^2, pinned
    by the requirement that the corrected quantity star-commutes with the
    energy; a plain rho^2 there fails that requirement."""
    if k <= 3:
        return PhasePoly.zero((), order)
    if k > 6:
        return None
    one = ParamRat.constant(1, (), order)
    rho2 = ParamRat.constant(
        HbarSeries.term(Fraction(-1, 4), 2, order), (), order
    )
    rho4 = ParamRat.constant(
        HbarSeries.term(Fraction(1, 16), 4, order), (), order
    )
    terms = []
    if k == 4:
        for i in range(1, n):
            terms.append(PhaseTerm(rho2, (), (), (), {i: 1, i + 1: -1}))
    elif k == 5:
        two_rho2 = rho2.scale(2)
        for i in range(1, n):
            terms.append(PhaseTerm(two_rho2, (), {i: 1}, (), {i: 1, i + 1: -1}))
            terms.append(PhaseTerm(two_rho2, (), {i + 1: 1}, (), {i: 1, i + 1: -1}))
    else:
        f83 = rho2.scale(Fraction(8, 3))
        f103 = rho2.scale(Fraction(10, 3))
        for i in range(1, n):
            terms.append(PhaseTerm(f83, (), (), (), {i: 2, i + 1: -2}))
            terms.append(PhaseTerm(f103, (), {i: 2}, (), {i: 1, i + 1: -1}))
            terms.append(
                PhaseTerm(f103, (), {i: 1, i + 1: 1}, (), {i: 1, i + 1: -1})
            )
            terms.append(PhaseTerm(f103, (), {i + 1: 2}, (), {i: 1, i + 1: -1}))
            terms.append(PhaseTerm(rho4, (), (), (), {i: 1, i + 1: -1}))
        nnn = rho2.scale(Fraction(13, 3))
        for i in range(1, n - 1):
            terms.append(PhaseTerm(nnn, (), (), (), {i: 1, i + 2: -1}))
    return PhasePoly.from_terms(terms, (), order)


def find_noncommuting_traces(n_max: int = 5, k_max: int = 6, order: int = 8):
    """First (n, j, k) with a nonzero star-commutator of classical trace
    polynomials, or None. Existence shows the undeformed set fails to commute."""
    for n in range(2, n_max + 1):
        I = [trace_poly(n, k, order) for k in range(1, k_max + 1)]
        for j in range(1, k_max + 1):
            for k in range(j + 1, k_max + 1):
                comm = star_commutator(I[j - 1], I[k - 1])
                if not comm.is_zero():
                    return n, j, k, comm
    return None
