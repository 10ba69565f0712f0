"""Classical r-matrices and quantum R-matrices with spectral parameters.

Two classical families over 2x2 tensor factors: the Casimir-generated
rational one and the trigonometric-type matrix with (lam^2 +- mu^2)
entries. Quantum R-matrices are identity plus an hbar-series multiple of a
classical matrix. Checks return residual matrices rather than booleans so
failures can name the offending entry.
"""

from __future__ import annotations

from fractions import Fraction

from todastar.coefficients import (
    DenPoly,
    HbarSeries,
    ParamPoly,
    ParamRat,
)
from todastar.tensor_matrix import RingMatrix, embed

CASIMIR_RATIONAL = "casimir_rational"
TRIG_TILDE = "trigonometric_tilde"

TRIPLE_VARS = ("lam", "mu", "nu")


def casimir(variables=("lam", "mu"), order: int = 8) -> RingMatrix:
    """The flip operator sum_ij E_ij (x) E_ji on 2x2 factors, as a 4x4 matrix."""
    one = ParamRat.constant(1, variables, order)
    zero = ParamRat.zero(variables, order)
    return RingMatrix(
        (
            (one, zero, zero, zero),
            (zero, zero, one, zero),
            (zero, one, zero, zero),
            (zero, zero, zero, one),
        )
    )


def build_classical_r(kind: str, variables=("lam", "mu"), order: int = 8) -> RingMatrix:
    """One of the two classical r-matrices, exactly as 4x4 over ParamRat."""
    lam, mu = variables[0], variables[1]
    if kind == CASIMIR_RATIONAL:
        den = DenPoly.variable(lam, variables) - DenPoly.variable(mu, variables)
        return casimir(variables, order).map(
            lambda e: ParamRat(e.num, den) if not e.is_zero() else e
        )
    if kind == TRIG_TILDE:
        zero = ParamRat.zero(variables, order)
        half = ParamRat.constant(Fraction(1, 2), variables, order)
        lam2 = DenPoly.variable(lam, variables, 2)
        mu2 = DenPoly.variable(mu, variables, 2)
        den = lam2 - mu2
        sum2 = (lam2 + mu2).to_parampoly(order)
        corner = ParamRat(sum2.scale(Fraction(1, 2)), den)
        lam_mu = ParamPoly.variable(lam, variables, order) * ParamPoly.variable(
            mu, variables, order
        )
        middle = ParamRat(lam_mu, den)
        return RingMatrix(
            (
                (corner, zero, zero, zero),
                (zero, -half, middle, zero),
                (zero, middle, half, zero),
                (zero, zero, zero, corner),
            )
        )
    raise ValueError(f"unknown classical r-matrix kind {kind!r}")


def build_quantum_R(
    kind: str, f_series: HbarSeries, variables=("lam", "mu"), order: int | None = None
) -> RingMatrix:
    """Identity plus f_series times the classical matrix of the given kind."""
    if order is None:
        order = f_series.order
    if f_series.order != order:
        raise ValueError("f-series order differs from the requested order")
    r = build_classical_r(kind, variables, order)
    one = ParamRat.constant(1, variables, order)
    zero = ParamRat.zero(variables, order)
    ident = RingMatrix.identity(4, one, zero)
    return ident + r.scale(f_series)


def _legs_123(m: RingMatrix, variables=TRIPLE_VARS) -> tuple:
    m12 = embed(m, (1, 2), 3, variables)
    m13 = embed(m, (1, 3), 3, variables)
    m23 = embed(m, (2, 3), 3, variables)
    return m12, m13, m23


def check_cybe(r: RingMatrix, variables=TRIPLE_VARS) -> RingMatrix:
    """[r12, r13] + [r12, r23] + [r13, r23] as an 8x8 residual."""
    r12, r13, r23 = _legs_123(r, variables)

    def comm(x, y):
        return x * y - y * x

    return comm(r12, r13) + comm(r12, r23) + comm(r13, r23)


def check_qybe(R: RingMatrix, variables=TRIPLE_VARS) -> RingMatrix:
    """R12 R13 R23 - R23 R13 R12 as an 8x8 residual."""
    r12, r13, r23 = _legs_123(R, variables)
    return r12 * r13 * r23 - r23 * r13 * r12


def qybe_f_order(r: RingMatrix, power: int, variables=TRIPLE_VARS) -> RingMatrix:
    """Isolated f^power coefficient of the QYBE residual for R = 1 + f r.

    power 1 cancels identically; power 2 is the classical Yang-Baxter
    combination; power 3 is the cubic tail that must vanish on its own.
    """
    r12, r13, r23 = _legs_123(r, variables)
    if power == 1:
        return (r12 + r13 + r23) - (r23 + r13 + r12)
    if power == 2:
        return (
            r12 * r13 + r12 * r23 + r13 * r23
            - r23 * r13 - r23 * r12 - r13 * r12
        )
    if power == 3:
        return r12 * r13 * r23 - r23 * r13 * r12
    raise ValueError("f-power must be 1, 2 or 3")


def expected_unitarity_scalar(
    group: str, eps=Fraction(1), order: int = 8, variables=("lam", "mu")
) -> ParamRat:
    """The derived scalar of R12 R21 for each catalog group.

    The rational family squares the flip, giving 1 + hbar^2/(lam-mu)^2; the
    trigonometric family squares to a multiple of the identity, giving
    1 - tanh(eps*i*hbar/2)^2 (lam^2+mu^2)^2 / (lam^2-mu^2)^2."""
    from todastar.coefficients import GaussRational, series_tanh

    lam, mu = variables[0], variables[1]
    if group == "A":
        den = (DenPoly.variable(lam, variables) - DenPoly.variable(mu, variables)) ** 2
        num = den.to_parampoly(order) + ParamPoly.constant(
            HbarSeries.term(1, 2, order), variables, order
        )
        return ParamRat(num, den)
    if group not in ("B", "C"):
        raise ValueError(f"unknown catalog group {group!r}")
    scale = Fraction(1) if group == "B" else eps
    t = series_tanh(GaussRational(0, Fraction(1, 2)) * scale, order)
    lam2 = DenPoly.variable(lam, variables, 2)
    mu2 = DenPoly.variable(mu, variables, 2)
    den = (lam2 - mu2) ** 2
    num = den.to_parampoly(order) + ((lam2 + mu2) ** 2).to_parampoly(order).scale(
        -(t * t)
    )
    return ParamRat(num, den)


def check_unitarity(R: RingMatrix, variables=("lam", "mu")):
    """Return the scalar c with R12 R21 = c * identity, or None if not scalar."""
    r21 = embed(R, (2, 1), 2, variables)
    prod = R * r21
    diag = prod.entries[0][0]
    for i in range(4):
        for j in range(4):
            e = prod.entries[i][j]
            if i == j:
                if not e.eq(diag):
                    return None
            elif not e.is_zero():
                return None
    return diag
