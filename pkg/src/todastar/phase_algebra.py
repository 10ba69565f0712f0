"""Observable algebra on flat 2n-dimensional phase space.

Elements are finite sums of terms

    coeff * q^mq * p^mp * exp(sum_j u_j p_j + v_j q_j)

with ParamRat coefficients, integer powers and rational exponent slopes.
This class is closed under pointwise multiplication, partial derivatives,
the Poisson bracket, the Weyl and standard-ordered star products and the
ordering-intertwiner transform, so every identity the engine checks stays
inside it. The Lax-matrix machinery only ever produces q-exponentials; bare
q powers exist so the canonical pairs q_j, p_j are first-class observables.

Star products are evaluated by direct truncated expansion of the exponential
bidifferential operator, multinomially over the commuting directed-derivative
pairs. Closed-form exponential factors are deliberately not used here; the
tests keep them as independent oracles.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from todastar._backend import kernel as _k
from todastar.coefficients import (
    HbarSeries,
    OrderMismatchError,
    ParamRat,
    VariableMismatchError,
    as_fraction,
)


def _canon_pow(entries):
    items = entries.items() if isinstance(entries, dict) else entries
    out = []
    for j, a in items:
        if not isinstance(a, int) or a < 0:
            raise ValueError("monomial powers must be nonnegative integers")
        if j < 1:
            raise ValueError("particle indices start at 1")
        if a:
            out.append((j, a))
    out.sort()
    return tuple(out)


def _canon_lin(entries):
    items = entries.items() if isinstance(entries, dict) else entries
    out = []
    for j, v in items:
        if j < 1:
            raise ValueError("particle indices start at 1")
        v = as_fraction(v)
        if v:
            out.append((j, v))
    out.sort(key=lambda kv: kv[0])
    return tuple(out)


class PhaseTerm:
    """One canonical term coeff * q^qpow * p^ppow * exp(plin . p + qlin . q)."""

    __slots__ = ("coeff", "qpow", "ppow", "plin", "qlin")

    def __init__(self, coeff: ParamRat, qpow=(), ppow=(), plin=(), qlin=()):
        self.coeff = coeff
        self.qpow = _canon_pow(qpow)
        self.ppow = _canon_pow(ppow)
        self.plin = _canon_lin(plin)
        self.qlin = _canon_lin(qlin)

    @property
    def key(self):
        return (self.qpow, self.ppow, self.plin, self.qlin)

    def __repr__(self):
        return (
            f"PhaseTerm({self.coeff!r}, qpow={self.qpow}, ppow={self.ppow}, "
            f"plin={self.plin}, qlin={self.qlin})"
        )


def _render_key(key):
    qpow, ppow, plin, qlin = key
    bits = []
    for j, a in qpow:
        bits.append(f"q{j}" if a == 1 else f"q{j}^{a}")
    for j, a in ppow:
        bits.append(f"p{j}" if a == 1 else f"p{j}^{a}")
    parts = []
    for j, v in qlin:
        parts.append((j, 0, v, f"q{j}"))
    for j, v in plin:
        parts.append((j, 1, v, f"p{j}"))
    parts.sort(key=lambda t: (t[0], t[1]))
    if parts:
        s = ""
        for _, _, v, name in parts:
            if v == 1:
                piece = name
            elif v == -1:
                piece = f"-{name}"
            else:
                piece = f"{v}*{name}"
            if not s:
                s = piece
            else:
                s += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        bits.append(f"exp({s})")
    return "*".join(bits) if bits else "1"


class PhasePoly:
    """Canonical sum of PhaseTerms keyed by (q powers, p powers, exponent slopes)."""

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
        return cls._raw(tuple(variables), order, {((), (), (), ()): value})

    @classmethod
    def from_terms(cls, terms, variables, order):
        variables = tuple(variables)
        acc = {}
        for t in terms:
            if t.coeff.variables != variables or t.coeff.order != order:
                raise VariableMismatchError(
                    "term coefficient over a different ring than the polynomial"
                )
            cur = acc.get(t.key)
            acc[t.key] = t.coeff if cur is None else cur + t.coeff
        return cls._raw(
            variables,
            order,
            {k: c for k, c in sorted(acc.items()) if not c.is_zero()},
        )

    def term_list(self):
        return tuple(
            PhaseTerm(c, *k) for k, c in sorted(self.terms.items())
        )

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other):
        if self.variables != other.variables:
            raise VariableMismatchError(
                f"variable sets differ: {self.variables} vs {other.variables}"
            )
        if self.order != other.order:
            raise OrderMismatchError(
                f"series orders differ: {self.order} vs {other.order}"
            )

    def __add__(self, other):
        if not isinstance(other, PhasePoly):
            return NotImplemented
        self._check(other)
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
        return PhasePoly._raw(self.variables, self.order, dict(sorted(acc.items())))

    def __sub__(self, other):
        if not isinstance(other, PhasePoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return PhasePoly._raw(
            self.variables, self.order, {k: -c for k, c in self.terms.items()}
        )

    def __mul__(self, other):
        """Pointwise (classical) product, or scaling by a coefficient scalar."""
        if isinstance(other, PhasePoly):
            self._check(other)
            acc = {}
            for (qp1, pp1, pl1, ql1), c1 in self.terms.items():
                for (qp2, pp2, pl2, ql2), c2 in other.terms.items():
                    key = (
                        _merge_pow(qp1, qp2),
                        _merge_pow(pp1, pp2),
                        _merge_lin(pl1, pl2),
                        _merge_lin(ql1, ql2),
                    )
                    c = c1 * c2
                    cur = acc.get(key)
                    acc[key] = c if cur is None else cur + c
            return PhasePoly._raw(
                self.variables,
                self.order,
                {k: c for k, c in sorted(acc.items()) if not c.is_zero()},
            )
        if isinstance(other, (ParamRat, HbarSeries, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, value) -> "PhasePoly":
        if isinstance(value, ParamRat):
            out = {}
            for k, c in self.terms.items():
                s = c * value
                if not s.is_zero():
                    out[k] = s
            return PhasePoly._raw(self.variables, self.order, out)
        out = {}
        for k, c in self.terms.items():
            s = c.scale(value)
            if not s.is_zero():
                out[k] = s
        return PhasePoly._raw(self.variables, self.order, out)

    def conjugate(self) -> "PhasePoly":
        return PhasePoly._raw(
            self.variables,
            self.order,
            {k: c.conjugate() for k, c in self.terms.items()},
        )

    def map_variables(self, new_variables, index_map) -> "PhasePoly":
        acc = {}
        for k, c in self.terms.items():
            nc = c.map_variables(new_variables, index_map)
            cur = acc.get(k)
            acc[k] = nc if cur is None else cur + nc
        return PhasePoly._raw(
            tuple(new_variables),
            self.order,
            {k: c for k, c in sorted(acc.items()) if not c.is_zero()},
        )

    def hbar_slice(self, k: int) -> "PhasePoly":
        """The hbar^k part, returned with the coefficient moved to hbar^0."""
        out = {}
        for key, c in self.terms.items():
            num = c.num.hbar_coeff(k)
            if not num.is_zero():
                out[key] = ParamRat(num, c.den)
        return PhasePoly._raw(self.variables, self.order, out)

    def particles(self):
        seen = set()
        for qp, pp, pl, ql in self.terms:
            for part in (qp, pp, pl, ql):
                seen.update(j for j, _ in part)
        return sorted(seen)

    def __eq__(self, other):
        if not isinstance(other, PhasePoly):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self):
        return f"PhasePoly({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for key, c in sorted(self.terms.items()):
            cs = str(c)
            if " + " in cs or " - " in cs:
                cs = f"({cs})"
            body = _render_key(key)
            if body == "1":
                bits.append(cs)
            elif cs == "1":
                bits.append(body)
            else:
                bits.append(f"{cs}*{body}")
        return " + ".join(bits)


def normalize(terms, variables, order) -> PhasePoly:
    """Merge like-key terms, drop zero coefficients, sort keys."""
    return PhasePoly.from_terms(terms, variables, order)


def _merge_pow(a, b):
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for j, v in b:
        d[j] = d.get(j, 0) + v
    return tuple(sorted((j, v) for j, v in d.items() if v))


def _merge_lin(a, b):
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for j, v in b:
        s = d.get(j, 0) + v
        if s:
            d[j] = s
        else:
            del d[j]
    return tuple(sorted(d.items()))


def partial(F: PhasePoly, kind: str, particle: int) -> PhasePoly:
    """Exact partial derivative with respect to q_particle or p_particle."""
    if kind not in ("q", "p"):
        raise ValueError(f"unknown derivative kind {kind!r}")
    acc = {}

    def add(key, coeff):
        cur = acc.get(key)
        acc[key] = coeff if cur is None else cur + coeff

    for (qp, pp, pl, ql), c in F.terms.items():
        if kind == "q":
            mono, lin, other = qp, ql, (pp, pl)
        else:
            mono, lin, other = pp, pl, (qp, ql)
        m = dict(mono).get(particle, 0)
        if m:
            reduced = tuple(
                sorted((j, x) for j, x in (dict(mono) | {particle: m - 1}).items() if x)
            )
            if kind == "q":
                add((reduced, pp, pl, ql), c.scale(m))
            else:
                add((qp, reduced, pl, ql), c.scale(m))
        slope = dict(lin).get(particle)
        if slope:
            add((qp, pp, pl, ql), c.scale(slope))
    return PhasePoly._raw(
        F.variables, F.order, {k: c for k, c in sorted(acc.items()) if not c.is_zero()}
    )


def poisson(F: PhasePoly, G: PhasePoly) -> PhasePoly:
    """Classical Poisson bracket sum_j (dF/dq_j dG/dp_j - dF/dp_j dG/dq_j)."""
    F._check(G)
    out = PhasePoly.zero(F.variables, F.order)
    for j in sorted(set(F.particles()) | set(G.particles())):
        out = out + partial(F, "q", j) * partial(G, "p", j)
        out = out - partial(F, "p", j) * partial(G, "q", j)
    return out


def _d_options(power, slope, m):
    """m-fold derivative of x^power e^{slope x} in x: tuple of (factor, power drop)."""
    if m == 0:
        return ((Fraction(1), 0),)
    if slope == 0:
        if m > power:
            return ()
        f = Fraction(factorial(power) // factorial(power - m))
        return ((f, m),)
    out = []
    spow = [Fraction(1)]
    for _ in range(m):
        spow.append(spow[-1] * slope)
    for i in range(min(power, m) + 1):
        f = comb(m, i) * Fraction(factorial(power) // factorial(power - i)) * spow[m - i]
        out.append((f, i))
    return tuple(out)


def _compositions(n_slots, max_total):
    """All count vectors of given length with total between 0 and max_total."""
    if n_slots == 0:
        yield ()
        return
    for first in range(max_total + 1):
        for rest in _compositions(n_slots - 1, max_total - first):
            yield (first,) + rest


def _ipow_table(base, order):
    pows = [(1, 0, 1)]
    for _ in range(order):
        pows.append(_k.gq_mul(pows[-1], base))
    return pows


# expansion scalars: weyl (i hbar / 2), standard (hbar / i) = -i hbar,
# ntrans+ (hbar / 2i) = -i hbar / 2, ntrans- its negative
_BASES = {
    "weyl": (0, 1, 2),
    "standard": (0, -1, 1),
    "ntrans+": (0, -1, 2),
    "ntrans-": (0, 1, 2),
}


class _Side:
    """Per-term derivative bookkeeping for one factor of a star product."""

    __slots__ = ("qpow", "ppow", "plin", "qlin")

    def __init__(self, key):
        self.qpow = dict(key[0])
        self.ppow = dict(key[1])
        self.plin = dict(key[2])
        self.qlin = dict(key[3])

    def has_q(self, j):
        return self.qpow.get(j, 0) or self.qlin.get(j)

    def has_p(self, j):
        return self.ppow.get(j, 0) or self.plin.get(j)

    def options(self, j, dq, dp):
        """Factor/power-drop options for applying d_q^dq d_p^dp at particle j."""
        qopts = _d_options(self.qpow.get(j, 0), self.qlin.get(j, 0), dq)
        if not qopts:
            return ()
        popts = _d_options(self.ppow.get(j, 0), self.plin.get(j, 0), dp)
        if not popts:
            return ()
        return tuple(
            (fq * fp, iq, ip) for fq, iq in qopts for fp, ip in popts
        )


def _pack_contrib(contrib, kind, order):
    re0, im0, dd = _BASES[kind]
    base = _k.gq_make(re0, im0, dd)
    pows = _ipow_table(base, order)
    result = []
    for okey in sorted(contrib):
        slot = contrib[okey]
        raw = [(0, 0, 1)] * (order + 1)
        nonzero = False
        for k, f in slot.items():
            if f:
                raw[k] = _k.gq_mul_rat(pows[k], f.numerator, f.denominator)
                nonzero = True
        if nonzero:
            result.append((okey, tuple(raw)))
    return tuple(result)


def _reduce_pow(base, drops):
    if not drops:
        return base
    d = dict(base)
    for j, r in drops:
        d[j] -= r
    return tuple(sorted((j, a) for j, a in d.items() if a))


@lru_cache(maxsize=None)
def _star_pairs(kind, order, skey, tkey):
    """Expansion of term (star) term: tuple of (output key, raw series scalar).

    Depends only on the two term keys, never on their coefficients, so the
    table is memoized for the whole run.
    """
    left = _Side(skey)
    right = _Side(tkey)
    out_plin = _merge_lin(skey[2], tkey[2])
    out_qlin = _merge_lin(skey[3], tkey[3])
    base_qp = _merge_pow(skey[0], tkey[0])
    base_pp = _merge_pow(skey[1], tkey[1])

    # directed derivative pairs that act without annihilating either side
    directions = []
    particles = sorted(
        set(left.qpow) | set(left.ppow) | set(left.plin) | set(left.qlin)
        | set(right.qpow) | set(right.ppow) | set(right.plin) | set(right.qlin)
    )
    for j in particles:
        if kind == "weyl":
            if left.has_q(j) and right.has_p(j):
                directions.append((j, "A"))  # d_q (x) d_p
            if left.has_p(j) and right.has_q(j):
                directions.append((j, "B"))  # -d_p (x) d_q
        else:  # standard: left p-derivatives against right q-derivatives
            if left.has_p(j) and right.has_q(j):
                directions.append((j, "S"))

    contrib = {}
    for counts in _compositions(len(directions), order):
        k = sum(counts)
        per = {}
        sign = 1
        denom = 1
        for (j, mode), c in zip(directions, counts):
            if not c:
                continue
            denom *= factorial(c)
            lq, lp, rq, rp = per.get(j, (0, 0, 0, 0))
            if mode == "A":
                lq += c
                rp += c
            else:
                lp += c
                rq += c
                if mode == "B" and c & 1:
                    sign = -sign
            per[j] = (lq, lp, rq, rp)

        combos = [(Fraction(sign, denom), (), ())]
        dead = False
        for j, (lq, lp, rq, rp) in per.items():
            opts_l = left.options(j, lq, lp)
            opts_r = right.options(j, rq, rp)
            if not opts_l or not opts_r:
                dead = True
                break
            merged = []
            for fl, lqi, lpi in opts_l:
                for fr, rqi, rpi in opts_r:
                    merged.append((fl * fr, lqi + rqi, lpi + rpi))
            combos = [
                (
                    f * fo,
                    qred + ((j, qi),) if qi else qred,
                    pred + ((j, pi),) if pi else pred,
                )
                for f, qred, pred in combos
                for fo, qi, pi in merged
            ]
        if dead:
            continue
        for f, qred, pred in combos:
            if not f:
                continue
            okey = (
                _reduce_pow(base_qp, qred),
                _reduce_pow(base_pp, pred),
                out_plin,
                out_qlin,
            )
            slot = contrib.setdefault(okey, {})
            slot[k] = slot.get(k, Fraction(0)) + f

    return _pack_contrib(contrib, kind, order)


@lru_cache(maxsize=None)
def _ntrans_pairs(kind, order, key):
    """Expansion of the ordering intertwiner on a single term key."""
    side = _Side(key)
    directions = [
        j
        for j in sorted(set(side.qpow) | set(side.ppow) | set(side.plin) | set(side.qlin))
        if side.has_q(j) and side.has_p(j)
    ]

    contrib = {}
    for counts in _compositions(len(directions), order):
        k = sum(counts)
        combos = [(Fraction(1), (), ())]
        dead = False
        for j, c in zip(directions, counts):
            if not c:
                continue
            opts = side.options(j, c, c)
            if not opts:
                dead = True
                break
            inv = Fraction(1, factorial(c))
            combos = [
                (
                    f * fo * inv,
                    qred + ((j, qi),) if qi else qred,
                    pred + ((j, pi),) if pi else pred,
                )
                for f, qred, pred in combos
                for fo, qi, pi in opts
            ]
        if dead:
            continue
        for f, qred, pred in combos:
            if not f:
                continue
            okey = (
                _reduce_pow(key[0], qred),
                _reduce_pow(key[1], pred),
                key[2],
                key[3],
            )
            slot = contrib.setdefault(okey, {})
            slot[k] = slot.get(k, Fraction(0)) + f

    return _pack_contrib(contrib, kind, order)


def _star(kind, F: PhasePoly, G: PhasePoly) -> PhasePoly:
    F._check(G)
    order = F.order
    acc = {}
    for skey, sc in F.terms.items():
        for tkey, tc in G.terms.items():
            pairs = _star_pairs(kind, order, skey, tkey)
            if not pairs:
                continue
            cst = sc * tc
            if cst.is_zero():
                continue
            for okey, raw in pairs:
                piece = cst.scale(HbarSeries._make(raw))
                if piece.is_zero():
                    continue
                cur = acc.get(okey)
                acc[okey] = piece if cur is None else cur + piece
    return PhasePoly._raw(
        F.variables, order, {k: c for k, c in sorted(acc.items()) if not c.is_zero()}
    )


def star_weyl(F: PhasePoly, G: PhasePoly) -> PhasePoly:
    """Weyl-type star product, truncated at the shared order."""
    return _star("weyl", F, G)


def star_standard(F: PhasePoly, G: PhasePoly) -> PhasePoly:
    """Standard-ordered star product, truncated at the shared order."""
    return _star("standard", F, G)


def n_transform(F: PhasePoly, direction: int = 1) -> PhasePoly:
    """Ordering intertwiner between standard and Weyl pictures (direction -1 inverts)."""
    if direction not in (1, -1):
        raise ValueError("direction must be +1 or -1")
    kind = "ntrans+" if direction == 1 else "ntrans-"
    acc = {}
    for key, c in F.terms.items():
        for okey, raw in _ntrans_pairs(kind, F.order, key):
            piece = c.scale(HbarSeries._make(raw))
            if piece.is_zero():
                continue
            cur = acc.get(okey)
            acc[okey] = piece if cur is None else cur + piece
    return PhasePoly._raw(
        F.variables, F.order, {k: c for k, c in sorted(acc.items()) if not c.is_zero()}
    )


def conjugate(F: PhasePoly) -> PhasePoly:
    """Complex conjugation of all coefficients; the deformation parameter stays real."""
    return F.conjugate()


def parity(F: PhasePoly) -> PhasePoly:
    """The momentum-reflection pullback (q, p) -> (q, -p)."""
    acc = {}
    for (qp, pp, pl, ql), c in F.terms.items():
        total = sum(a for _, a in pp)
        key = (qp, pp, tuple((j, -u) for j, u in pl), ql)
        acc[key] = c if total % 2 == 0 else -c
    return PhasePoly._raw(F.variables, F.order, dict(sorted(acc.items())))


def star_commutator(F: PhasePoly, G: PhasePoly) -> PhasePoly:
    """F * G - G * F in the Weyl star product."""
    return star_weyl(F, G) - star_weyl(G, F)
