"""The seven 2x2 Lax matrices with their matching quantum R-matrices, plus the
classical tridiagonal Lax matrix and Hamiltonian of the open Toda chain.

Naming: rows of the catalog are A1, A2 (rational R), B1, B2, B3 (trigonometric
R), C1, C2 (trigonometric R with slope eps). Parameters eps, g, delta bind to
exact rationals at construction; g only ever enters squared.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from todastar.coefficients import (
    DenPoly,
    GaussRational,
    HbarSeries,
    ParamRat,
    as_fraction,
    series_tanh,
)
from todastar.phase_algebra import PhasePoly, PhaseTerm
from todastar.r_matrices import (
    CASIMIR_RATIONAL,
    TRIG_TILDE,
    build_quantum_R,
)
from todastar.tensor_matrix import RingMatrix


class SystemId(enum.Enum):
    A1 = "A1"
    A2 = "A2"
    B1 = "B1"
    B2 = "B2"
    B3 = "B3"
    C1 = "C1"
    C2 = "C2"

    @property
    def group(self) -> str:
        return self.value[0]


ALL_SYSTEMS = tuple(SystemId)


@dataclass(frozen=True)
class Params:
    """Exact rational parameters of the catalog; eps and g must be nonzero."""

    eps: Fraction = Fraction(1)
    g: Fraction = Fraction(1)
    delta: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "eps", as_fraction(self.eps))
        object.__setattr__(self, "g", as_fraction(self.g))
        object.__setattr__(self, "delta", as_fraction(self.delta))
        if self.eps == 0:
            raise ValueError("eps must be nonzero")
        if self.g == 0:
            raise ValueError("g must be nonzero")

    @property
    def g2(self) -> Fraction:
        return self.g * self.g


DEFAULT_PARAMS = Params()


def build_U(
    system: SystemId,
    particle: int,
    params: Params = DEFAULT_PARAMS,
    variables=("lam",),
    lam: str = "lam",
    order: int = 8,
) -> RingMatrix:
    """The catalog Lax matrix for one particle, 2x2 over PhasePoly."""
    if particle < 1:
        raise ValueError("particle indices start at 1")
    k = particle
    V, N = tuple(variables), order
    one = ParamRat.constant(1, V, N)
    lam_r = ParamRat.variable(lam, V, N)
    inv_lam = ParamRat(one.num, DenPoly.variable(lam, V))

    def mono(coeff, ppow=(), plin=(), qlin=()):
        return PhasePoly.from_terms(
            [PhaseTerm(coeff, (), ppow, plin, qlin)], V, N
        )

    zero = PhasePoly.zero(V, N)
    p = mono(one, ppow={k: 1})
    e_q = mono(one, qlin={k: 1})
    e_mq = mono(one, qlin={k: -1})

    if system.group == "A":
        upper_left = mono(-lam_r) + p
        if system is SystemId.A1:
            return RingMatrix(((upper_left, -e_mq), (e_q, zero)))
        # A2: the exchange relation forces corner = -(p-coefficient of the
        # lower-left entry); +1 there leaves a constant residual
        lower_left = mono(one, ppow={k: 1}, qlin={k: 1})
        return RingMatrix(
            ((upper_left, -e_mq), (lower_left, PhasePoly.constant(-one, V, N)))
        )

    eps = params.eps if system.group == "C" else Fraction(1)
    e_ep = mono(one, plin={k: eps})
    upper_left = mono(inv_lam) + mono(-lam_r, plin={k: eps})

    if system is SystemId.B1:
        return RingMatrix(((upper_left, -e_mq), (e_q, mono(-lam_r))))
    if system is SystemId.B2:
        corner = mono(-one.scale(params.g2), plin={k: 1}, qlin={k: -1})
        return RingMatrix(((upper_left, corner), (e_q, zero)))
    if system is SystemId.B3:
        g2, d = params.g2, params.delta
        corner = (
            mono(-one.scale(g2), plin={k: 1}, qlin={k: -1})
            + mono(-one.scale(g2 * d), qlin={k: -1})
        )
        lower_right = mono(-lam_r.scale(d * g2)) if d * g2 else zero
        return RingMatrix(((upper_left, corner), (e_q, lower_right)))
    if system is SystemId.C1:
        return RingMatrix(
            (
                (upper_left, e_mq.scale(-eps)),
                (e_q.scale(eps), mono(-lam_r.scale(eps * eps))),
            )
        )
    if system is SystemId.C2:
        corner = mono(-one, plin={k: eps}, qlin={k: -1}) + e_mq
        return RingMatrix(
            ((upper_left, corner), (e_q.scale(eps), mono(lam_r.scale(eps))))
        )
    raise ValueError(f"unknown system {system!r}")


def matching_R(
    system: SystemId,
    params: Params = DEFAULT_PARAMS,
    variables=("lam", "mu"),
    order: int = 8,
) -> RingMatrix:
    """The quantum R-matrix paired with the system in the catalog."""
    half_i = GaussRational(0, Fraction(1, 2))
    if system.group == "A":
        f = HbarSeries.term(GaussRational(0, 1), 1, order)  # 2 rho = i hbar
        return build_quantum_R(CASIMIR_RATIONAL, f, variables, order)
    if system.group == "B":
        f = series_tanh(half_i, order) * Fraction(-2)
        return build_quantum_R(TRIG_TILDE, f, variables, order)
    f = series_tanh(half_i * params.eps, order) * Fraction(-2)
    return build_quantum_R(TRIG_TILDE, f, variables, order)


def build_classical_L(n: int, order: int = 8, variables=()) -> RingMatrix:
    """Tridiagonal open-chain Lax matrix: momenta on the diagonal,
    exp((q_i - q_{i+1})/2) on both off-diagonals."""
    if n < 1:
        raise ValueError("need at least one particle")
    V, N = tuple(variables), order
    one = ParamRat.constant(1, V, N)
    zero = PhasePoly.zero(V, N)
    half = Fraction(1, 2)
    rows = [[zero] * n for _ in range(n)]
    for i in range(1, n + 1):
        rows[i - 1][i - 1] = PhasePoly.from_terms(
            [PhaseTerm(one, (), {i: 1})], V, N
        )
    for i in range(1, n):
        hop = PhasePoly.from_terms(
            [PhaseTerm(one, (), (), (), {i: half, i + 1: -half})], V, N
        )
        rows[i - 1][i] = hop
        rows[i][i - 1] = hop
    return RingMatrix(tuple(tuple(r) for r in rows))


def hamiltonian(n: int, order: int = 8, variables=()) -> PhasePoly:
    """Open Toda chain energy: kinetic term plus nearest-neighbour couplings."""
    if n < 1:
        raise ValueError("need at least one particle")
    V, N = tuple(variables), order
    one = ParamRat.constant(1, V, N)
    half = ParamRat.constant(Fraction(1, 2), V, N)
    terms = [PhaseTerm(half, (), {i: 2}) for i in range(1, n + 1)]
    terms += [
        PhaseTerm(one, (), (), (), {i: 1, i + 1: -1}) for i in range(1, n)
    ]
    return PhasePoly.from_terms(terms, V, N)
