"""Differential-operator representations acting on polynomial-exponential wavefunctions.

The standard-ordered prescription turns an observable into the operator

    sum_m (hbar/i)^|m| / m! * (d^m F / dp^m)(q, 0) * d^m/dq^m

acting on functions of q alone; the Weyl prescription first applies the
ordering intertwiner. Wavefunctions are kept in the smallest class closed
under these operators: q-polynomials times q-exponentials.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial

from todastar._backend import kernel as _k
from todastar.coefficients import HbarSeries, ParamRat, VariableMismatchError
from todastar.phase_algebra import (
    PhasePoly,
    _canon_lin,
    _canon_pow,
    _ipow_table,
    _merge_lin,
    _merge_pow,
    n_transform,
)


class WaveTerm:
    """One canonical wavefunction term coeff * q^qpow * exp(qlin . q)."""

    __slots__ = ("coeff", "qpow", "qlin")

    def __init__(self, coeff: ParamRat, qpow=(), qlin=()):
        self.coeff = coeff
        self.qpow = _canon_pow(qpow)
        self.qlin = _canon_lin(qlin)

    @property
    def key(self):
        return (self.qpow, self.qlin)


class WaveFn:
    """Canonical sum of WaveTerms."""

    __slots__ = ("variables", "order", "terms")

    def __init__(self, variables, order, terms=None):
        self.variables = tuple(variables)
        self.order = order
        acc = {}
        if terms:
            for key, coeff in terms.items():
                cur = acc.get(key)
                acc[key] = coeff if cur is None else cur + coeff
        self.terms = {k: c for k, c in sorted(acc.items()) if not c.is_zero()}

    @classmethod
    def _raw(cls, variables, order, terms):
        self = object.__new__(cls)
        self.variables = variables
        self.order = order
        self.terms = terms
        return self

    @classmethod
    def zero(cls, variables, order):
        return cls._raw(tuple(variables), order, {})

    @classmethod
    def constant(cls, value, variables, order):
        if not isinstance(value, ParamRat):
            value = ParamRat.constant(value, variables, order)
        if value.is_zero():
            return cls.zero(variables, order)
        return cls._raw(tuple(variables), order, {((), ()): value})

    @classmethod
    def from_terms(cls, terms, variables, order):
        variables = tuple(variables)
        acc = {}
        for t in terms:
            if t.coeff.variables != variables or t.coeff.order != order:
                raise VariableMismatchError(
                    "term coefficient over a different ring than the wavefunction"
                )
            cur = acc.get(t.key)
            acc[t.key] = t.coeff if cur is None else cur + t.coeff
        return cls._raw(
            variables,
            order,
            {k: c for k, c in sorted(acc.items()) if not c.is_zero()},
        )

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other):
        if not isinstance(other, WaveFn):
            return NotImplemented
        acc = dict(self.terms)
        for k, c in other.terms.items():
            cur = acc.get(k)
            if cur is None:
                acc[k] = c
            else:
                s = cur + c
                if s.is_zero():
                    del acc[k]
                else:
                    acc[k] = s
        return WaveFn._raw(self.variables, self.order, dict(sorted(acc.items())))

    def __sub__(self, other):
        if not isinstance(other, WaveFn):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return WaveFn._raw(
            self.variables, self.order, {k: -c for k, c in self.terms.items()}
        )

    def scale(self, value) -> "WaveFn":
        out = {}
        for k, c in self.terms.items():
            s = c * value if isinstance(value, ParamRat) else c.scale(value)
            if not s.is_zero():
                out[k] = s
        return WaveFn._raw(self.variables, self.order, out)

    def __eq__(self, other):
        if not isinstance(other, WaveFn):
            return NotImplemented
        return (self - other).is_zero()

    def dq(self, particle: int) -> "WaveFn":
        """Derivative in q_particle."""
        acc = {}

        def add(key, coeff):
            cur = acc.get(key)
            acc[key] = coeff if cur is None else cur + coeff

        for (qp, ql), c in self.terms.items():
            m = dict(qp).get(particle, 0)
            if m:
                reduced = tuple(
                    sorted((j, x) for j, x in (dict(qp) | {particle: m - 1}).items() if x)
                )
                add((reduced, ql), c.scale(m))
            slope = dict(ql).get(particle)
            if slope:
                add((qp, ql), c.scale(slope))
        return WaveFn._raw(
            self.variables,
            self.order,
            {k: c for k, c in sorted(acc.items()) if not c.is_zero()},
        )

    def mul_qfactor(self, coeff: ParamRat, qpow, qlin) -> "WaveFn":
        """Multiply by coeff * q^qpow * exp(qlin . q)."""
        out = {}
        for (qp, ql), c in self.terms.items():
            key = (_merge_pow(qp, qpow), _merge_lin(ql, qlin))
            s = c * coeff
            cur = out.get(key)
            out[key] = s if cur is None else cur + s
        return WaveFn._raw(
            self.variables,
            self.order,
            {k: c for k, c in sorted(out.items()) if not c.is_zero()},
        )

    def __repr__(self):
        return f"WaveFn({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for (qp, ql), c in sorted(self.terms.items()):
            body = []
            for j, a in qp:
                body.append(f"q{j}" if a == 1 else f"q{j}^{a}")
            if ql:
                inner = " + ".join(
                    f"q{j}" if v == 1 else f"{v}*q{j}" for j, v in ql
                )
                body.append(f"exp({inner})")
            cs = str(c)
            if " + " in cs or " - " in cs:
                cs = f"({cs})"
            bits.append("*".join([cs] + body) if body else cs)
        return " + ".join(bits)


def _p_eval_factor(a, u, m):
    """(d/dp)^m of p^a e^{u p} evaluated at p = 0, as a rational factor."""
    if m < a:
        return Fraction(0)
    if u == 0:
        return Fraction(factorial(a)) if m == a else Fraction(0)
    return comb(m, a) * factorial(a) * u ** (m - a)


def _multi_indices(pdata, budget):
    """Multi-indices m over the p-carrying particles with |m| <= budget.

    pdata: list of (particle, power a, slope u). Particles with u == 0 are
    pinned to m = a; the rest range from a upward.
    """
    if not pdata:
        yield (), 0
        return
    (j, a, u), rest = pdata[0], pdata[1:]
    if u == 0:
        if a <= budget:
            for tail, tot in _multi_indices(rest, budget - a):
                yield ((j, a),) + tail, tot + a
        return
    m = a
    while m <= budget:
        for tail, tot in _multi_indices(rest, budget - m):
            yield ((j, m),) + tail, tot + m
        m += 1


def rho_standard(F: PhasePoly, psi: WaveFn) -> WaveFn:
    """Apply the standard-ordered operator of F to psi."""
    if F.variables != psi.variables or F.order != psi.order:
        raise VariableMismatchError("observable and wavefunction rings differ")
    order = F.order
    pows = _ipow_table((0, -1, 1), order)  # (hbar/i)^k
    out = WaveFn.zero(F.variables, order)
    for (qp, pp, pl, ql), c in F.terms.items():
        ppd = dict(pp)
        pld = dict(pl)
        pdata = [
            (j, ppd.get(j, 0), pld.get(j, 0))
            for j in sorted(set(ppd) | set(pld))
        ]
        for m, total in _multi_indices(pdata, order):
            factor = Fraction(1)
            for (j, mj), (_, a, u) in zip(m, pdata):
                factor *= _p_eval_factor(a, u, mj) / factorial(mj)
            if not factor:
                continue
            dpsi = psi
            for j, mj in m:
                for _ in range(mj):
                    dpsi = dpsi.dq(j)
                if dpsi.is_zero():
                    break
            if dpsi.is_zero():
                continue
            scalar = HbarSeries._make(
                tuple(
                    _k.gq_mul_rat(pows[total], factor.numerator, factor.denominator)
                    if k == total
                    else (0, 0, 1)
                    for k in range(order + 1)
                )
            )
            out = out + dpsi.mul_qfactor(c.scale(scalar), qp, ql)
    return out


def rho_weyl(F: PhasePoly, psi: WaveFn) -> WaveFn:
    """Apply the Weyl-ordered operator of F to psi."""
    return rho_standard(n_transform(F, 1), psi)
