"""Exact scalar arithmetic for the engine.

Four layers, all immutable and exact:

  GaussRational -- rationals extended by the imaginary unit, i^2 = -1
  HbarSeries    -- truncated formal power series in hbar over GaussRational;
                   every quantum object in the engine carries one truncation
                   order N, fixed per run
  ParamPoly     -- polynomials in the spectral parameters with HbarSeries
                   coefficients
  ParamRat      -- fractions of ParamPoly over hbar-free, real-rational
                   denominators (DenPoly); equality by cross-multiplication

Floating point never appears; all identities checked downstream are exact
zero tests over these types.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd

from todastar._backend import kernel as _k

Rational = Fraction


class OrderMismatchError(ValueError):
    """Two series with different truncation orders were combined."""


class VariableMismatchError(ValueError):
    """Two values over different spectral-parameter sets were combined."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected an exact rational, got {type(x).__name__}")


def _triple(re, im=0):
    re = as_fraction(re)
    im = as_fraction(im)
    d = re.denominator * im.denominator // gcd(re.denominator, im.denominator)
    return _k.gq_make(
        re.numerator * (d // re.denominator),
        im.numerator * (d // im.denominator),
        d,
    )


class GaussRational:
    """An element a + b*i of Q(i), stored as a reduced common-denominator triple."""

    __slots__ = ("_t",)

    def __init__(self, re=0, im=0):
        self._t = _triple(re, im)

    @classmethod
    def _raw(cls, t):
        self = object.__new__(cls)
        self._t = t
        return self

    @property
    def re(self) -> Fraction:
        a, _, d = self._t
        return Fraction(a, d)

    @property
    def im(self) -> Fraction:
        _, b, d = self._t
        return Fraction(b, d)

    def conjugate(self) -> "GaussRational":
        return GaussRational._raw(_k.gq_conj(self._t))

    def is_zero(self) -> bool:
        return _k.gq_is_zero(self._t)

    def _coerce(self, other):
        if isinstance(other, GaussRational):
            return other._t
        if isinstance(other, (int, Fraction)):
            return _triple(other)
        return None

    def __add__(self, other):
        t = self._coerce(other)
        if t is None:
            return NotImplemented
        return GaussRational._raw(_k.gq_add(self._t, t))

    __radd__ = __add__

    def __sub__(self, other):
        t = self._coerce(other)
        if t is None:
            return NotImplemented
        return GaussRational._raw(_k.gq_sub(self._t, t))

    def __rsub__(self, other):
        t = self._coerce(other)
        if t is None:
            return NotImplemented
        return GaussRational._raw(_k.gq_sub(t, self._t))

    def __mul__(self, other):
        t = self._coerce(other)
        if t is None:
            return NotImplemented
        return GaussRational._raw(_k.gq_mul(self._t, t))

    __rmul__ = __mul__

    def __neg__(self):
        return GaussRational._raw(_k.gq_neg(self._t))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = as_fraction(other)
            if q == 0:
                raise ZeroDivisionError("division of gaussian rational by zero")
            return GaussRational._raw(
                _k.gq_mul_rat(self._t, q.denominator, q.numerator)
            )
        if isinstance(other, GaussRational):
            a, b, d = other._t
            if a == 0 and b == 0:
                raise ZeroDivisionError("division of gaussian rational by zero")
            # 1/(a+bi) = (a-bi)/(a^2+b^2), denominators handled exactly
            n2 = a * a + b * b
            inv = _k.gq_make((a * d), (-b * d), 1)
            inv = _k.gq_mul_rat(inv, 1, n2)
            return GaussRational._raw(_k.gq_mul(self._t, inv))
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers not supported")
        out = GaussRational(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        t = self._coerce(other)
        if t is None:
            return NotImplemented
        return self._t == t

    def __hash__(self):
        return hash(self._t)

    def __repr__(self):
        return f"GaussRational({self.re!r}, {self.im!r})"

    def __str__(self):
        a, b, d = self._t
        re = Fraction(a, d)
        im = Fraction(b, d)
        if b == 0:
            return str(re)
        if a == 0:
            return f"{im}*i"
        sign = "+" if im > 0 else "-"
        return f"{re} {sign} {abs(im)}*i"


GQ_ZERO = GaussRational(0)
GQ_ONE = GaussRational(1)
GQ_I_UNIT = GaussRational(0, 1)


class HbarSeries:
    """Sum c_0 + c_1*hbar + ... + c_N*hbar^N, exactly N + 1 stored coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs):
        cs = []
        for c in coeffs:
            if isinstance(c, GaussRational):
                cs.append(c._t)
            else:
                cs.append(_triple(c))
        if not cs:
            raise ValueError("a series needs at least the hbar^0 coefficient")
        self._c = tuple(cs)

    @classmethod
    def _make(cls, raw):
        self = object.__new__(cls)
        self._c = raw
        return self

    @classmethod
    def zero(cls, order: int) -> "HbarSeries":
        return cls._make(((0, 0, 1),) * (order + 1))

    @classmethod
    def one(cls, order: int) -> "HbarSeries":
        return cls.constant(1, order)

    @classmethod
    def constant(cls, value, order: int) -> "HbarSeries":
        t = value._t if isinstance(value, GaussRational) else _triple(value)
        return cls._make((t,) + ((0, 0, 1),) * order)

    @classmethod
    def term(cls, value, k: int, order: int) -> "HbarSeries":
        """value * hbar^k, truncated (zero if k exceeds the order)."""
        if k > order:
            return cls.zero(order)
        t = value._t if isinstance(value, GaussRational) else _triple(value)
        raw = [(0, 0, 1)] * (order + 1)
        raw[k] = t
        return cls._make(tuple(raw))

    @classmethod
    def hbar(cls, order: int) -> "HbarSeries":
        return cls.term(1, 1, order)

    @property
    def order(self) -> int:
        return len(self._c) - 1

    def coeff(self, k: int) -> GaussRational:
        return GaussRational._raw(self._c[k])

    def coeffs(self):
        return tuple(GaussRational._raw(t) for t in self._c)

    def is_zero(self) -> bool:
        return _k.series_is_zero(self._c)

    def _check(self, other):
        if len(self._c) != len(other._c):
            raise OrderMismatchError(
                f"series orders differ: {self.order} vs {other.order}"
            )

    def __add__(self, other):
        if not isinstance(other, HbarSeries):
            return NotImplemented
        self._check(other)
        return HbarSeries._make(_k.series_add(self._c, other._c))

    def __sub__(self, other):
        if not isinstance(other, HbarSeries):
            return NotImplemented
        self._check(other)
        return HbarSeries._make(_k.series_sub(self._c, other._c))

    def __mul__(self, other):
        if isinstance(other, HbarSeries):
            self._check(other)
            return HbarSeries._make(_k.series_mul(self._c, other._c))
        if isinstance(other, GaussRational):
            return HbarSeries._make(_k.series_scale(self._c, other._t))
        if isinstance(other, (int, Fraction)):
            q = as_fraction(other)
            return HbarSeries._make(
                _k.series_scale_rat(self._c, q.numerator, q.denominator)
            )
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return HbarSeries._make(_k.series_neg(self._c))

    def shift(self, k: int) -> "HbarSeries":
        """Multiply by hbar^k (truncating)."""
        return HbarSeries._make(_k.series_shift(self._c, k))

    def conjugate(self) -> "HbarSeries":
        """Complex conjugation of the coefficients; hbar is treated as real."""
        return HbarSeries._make(_k.series_conj(self._c))

    def __eq__(self, other):
        if not isinstance(other, HbarSeries):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(self._c)

    def __repr__(self):
        return f"HbarSeries<order {self.order}>({self})"

    def __str__(self):
        parts = []
        for k, t in enumerate(self._c):
            if t[0] == 0 and t[1] == 0:
                continue
            c = GaussRational._raw(t)
            body = str(c) if (c.im == 0 or c.re == 0) else f"({c})"
            if k == 0:
                parts.append(body)
            elif k == 1:
                parts.append(f"{body}*h")
            else:
                parts.append(f"{body}*h^{k}")
        return " + ".join(parts) if parts else "0"


def series_arith(a: HbarSeries, b: HbarSeries, op: str) -> HbarSeries:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown series operation {op!r}")


@lru_cache(maxsize=None)
def _tanh_rationals(order: int):
    # tanh' = 1 - tanh^2 gives (k+1) c_{k+1} = [k == 0] - sum_{i+j=k} c_i c_j
    cs = [Fraction(0)] * (order + 1)
    if order >= 1:
        cs[1] = Fraction(1)
    for k in range(1, order):
        acc = Fraction(0)
        for i in range(k + 1):
            if cs[i] and cs[k - i]:
                acc += cs[i] * cs[k - i]
        cs[k + 1] = -acc / (k + 1)
    return tuple(cs)


def series_exp(scale, order: int) -> HbarSeries:
    """Taylor series of exp(scale * hbar) truncated at the given order."""
    if not isinstance(scale, GaussRational):
        scale = GaussRational(scale)
    coeffs = [GQ_ONE]
    c = GQ_ONE
    for k in range(1, order + 1):
        c = c * scale / k
        coeffs.append(c)
    return HbarSeries(coeffs)


def series_tanh(scale, order: int) -> HbarSeries:
    """Taylor series of tanh(scale * hbar) truncated at the given order."""
    if not isinstance(scale, GaussRational):
        scale = GaussRational(scale)
    ts = _tanh_rationals(order)
    coeffs = []
    p = GQ_ONE
    for k in range(order + 1):
        coeffs.append(p * ts[k])
        p = p * scale
    return HbarSeries(coeffs)


def series_func(kind: str, scale, order: int) -> HbarSeries:
    if kind == "exp":
        return series_exp(scale, order)
    if kind == "tanh":
        return series_tanh(scale, order)
    raise ValueError(f"unknown series function {kind!r}")


def _grlex(exp):
    return (sum(exp), exp)


class ParamPoly:
    """Polynomial in the spectral parameters with HbarSeries coefficients."""

    __slots__ = ("variables", "order", "_mono")

    def __init__(self, variables, order, monomials=None):
        self.variables = tuple(variables)
        self.order = order
        mono = {}
        if monomials:
            for exp, s in monomials.items():
                if not isinstance(s, HbarSeries):
                    s = HbarSeries.constant(s, order)
                if s.order != order:
                    raise OrderMismatchError("coefficient order differs from poly order")
                if len(exp) != len(self.variables):
                    raise VariableMismatchError("exponent length differs from variable count")
                if not s.is_zero():
                    mono[tuple(exp)] = s
        self._mono = mono

    @classmethod
    def _raw(cls, variables, order, mono):
        self = object.__new__(cls)
        self.variables = variables
        self.order = order
        self._mono = mono
        return self

    @classmethod
    def zero(cls, variables, order):
        return cls._raw(tuple(variables), order, {})

    @classmethod
    def constant(cls, value, variables, order):
        variables = tuple(variables)
        if not isinstance(value, HbarSeries):
            value = HbarSeries.constant(value, order)
        if value.is_zero():
            return cls._raw(variables, order, {})
        return cls._raw(variables, order, {(0,) * len(variables): value})

    @classmethod
    def variable(cls, name, variables, order):
        variables = tuple(variables)
        exp = [0] * len(variables)
        exp[variables.index(name)] = 1
        return cls._raw(
            variables, order, {tuple(exp): HbarSeries.one(order)}
        )

    def monomials(self):
        """Monomials in graded-lexicographic order."""
        return tuple(
            (exp, self._mono[exp]) for exp in sorted(self._mono, key=_grlex)
        )

    def is_zero(self) -> bool:
        return not self._mono

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
        if not isinstance(other, ParamPoly):
            return NotImplemented
        self._check(other)
        mono = dict(self._mono)
        for exp, s in other._mono.items():
            cur = mono.get(exp)
            if cur is None:
                mono[exp] = s
            else:
                t = cur + s
                if t.is_zero():
                    del mono[exp]
                else:
                    mono[exp] = t
        return ParamPoly._raw(self.variables, self.order, mono)

    def __sub__(self, other):
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return ParamPoly._raw(
            self.variables, self.order, {e: -s for e, s in self._mono.items()}
        )

    def __mul__(self, other):
        if isinstance(other, ParamPoly):
            self._check(other)
            mono = {}
            for e1, s1 in self._mono.items():
                raw1 = s1._c
                for e2, s2 in other._mono.items():
                    e = tuple(a + b for a, b in zip(e1, e2))
                    raw = _k.series_mul(raw1, s2._c)
                    cur = mono.get(e)
                    if cur is None:
                        mono[e] = raw
                    else:
                        mono[e] = _k.series_add(cur, raw)
            return ParamPoly._raw(
                self.variables,
                self.order,
                {
                    e: HbarSeries._make(raw)
                    for e, raw in mono.items()
                    if not _k.series_is_zero(raw)
                },
            )
        if isinstance(other, (HbarSeries, GaussRational, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, value):
        if isinstance(value, HbarSeries):
            if value.is_zero():
                return ParamPoly.zero(self.variables, self.order)
            mono = {}
            for e, s in self._mono.items():
                t = s * value
                if not t.is_zero():
                    mono[e] = t
            return ParamPoly._raw(self.variables, self.order, mono)
        if isinstance(value, (GaussRational, int, Fraction)):
            if isinstance(value, GaussRational):
                if value.is_zero():
                    return ParamPoly.zero(self.variables, self.order)
            elif value == 0:
                return ParamPoly.zero(self.variables, self.order)
            return ParamPoly._raw(
                self.variables,
                self.order,
                {e: s * value for e, s in self._mono.items()},
            )
        raise TypeError(f"cannot scale by {type(value).__name__}")

    def mul_den(self, den: "DenPoly") -> "ParamPoly":
        """Multiply by an hbar-free denominator polynomial."""
        if self.variables != den.variables:
            raise VariableMismatchError("denominator over a different variable set")
        out = {}
        for de, dc in den.coeffs.items():
            n, m = dc.numerator, dc.denominator
            for e, s in self._mono.items():
                key = tuple(a + b for a, b in zip(e, de))
                raw = _k.series_scale_rat(s._c, n, m)
                cur = out.get(key)
                out[key] = raw if cur is None else _k.series_add(cur, raw)
        return ParamPoly._raw(
            self.variables,
            self.order,
            {
                e: HbarSeries._make(raw)
                for e, raw in out.items()
                if not _k.series_is_zero(raw)
            },
        )

    def conjugate(self) -> "ParamPoly":
        return ParamPoly._raw(
            self.variables,
            self.order,
            {e: s.conjugate() for e, s in self._mono.items()},
        )

    def hbar_coeff(self, k: int) -> "ParamPoly":
        """The hbar^k coefficient as an hbar-free ParamPoly."""
        mono = {}
        for e, s in self._mono.items():
            c = s.coeff(k)
            if not c.is_zero():
                mono[e] = HbarSeries.constant(c, self.order)
        return ParamPoly._raw(self.variables, self.order, mono)

    def map_variables(self, new_variables, index_map) -> "ParamPoly":
        """Reinterpret over a new variable tuple; index_map sends old positions to new."""
        new_variables = tuple(new_variables)
        n = len(new_variables)
        mono = {}
        for e, s in self._mono.items():
            ne = [0] * n
            for old, power in enumerate(e):
                if power:
                    ne[index_map[old]] += power
            key = tuple(ne)
            cur = mono.get(key)
            if cur is None:
                mono[key] = s
            else:
                t = cur + s
                if t.is_zero():
                    del mono[key]
                else:
                    mono[key] = t
        return ParamPoly._raw(new_variables, self.order, mono)

    def __eq__(self, other):
        if not isinstance(other, ParamPoly):
            return NotImplemented
        return (
            self.variables == other.variables
            and self.order == other.order
            and self._mono == other._mono
        )

    def __repr__(self):
        return f"ParamPoly({self})"

    def __str__(self):
        if not self._mono:
            return "0"
        parts = []
        for exp, s in sorted(self._mono.items(), key=lambda kv: _grlex(kv[0]), reverse=True):
            names = [
                v if p == 1 else f"{v}^{p}"
                for v, p in zip(self.variables, exp)
                if p
            ]
            body = str(s)
            if " + " in body or body.startswith("-"):
                body = f"({body})"
            parts.append("*".join([body] + names) if names else body)
        return " + ".join(parts)


class DenPoly:
    """hbar-free polynomial with rational coefficients; the denominator ring."""

    __slots__ = ("variables", "coeffs")

    def __init__(self, variables, coeffs):
        self.variables = tuple(variables)
        self.coeffs = {
            tuple(e): as_fraction(c) for e, c in coeffs.items() if c != 0
        }
        for e in self.coeffs:
            if len(e) != len(self.variables):
                raise VariableMismatchError("exponent length differs from variable count")

    @classmethod
    def one(cls, variables):
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): Fraction(1)})

    @classmethod
    def constant(cls, value, variables):
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): as_fraction(value)})

    @classmethod
    def variable(cls, name, variables, power=1):
        variables = tuple(variables)
        exp = [0] * len(variables)
        exp[variables.index(name)] = power
        return cls(variables, {tuple(exp): Fraction(1)})

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        z = (0,) * len(self.variables)
        return self.coeffs == {z: Fraction(1)}

    def __add__(self, other):
        if not isinstance(other, DenPoly):
            return NotImplemented
        if self.variables != other.variables:
            raise VariableMismatchError("denominators over different variable sets")
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return DenPoly(self.variables, out)

    def __sub__(self, other):
        if not isinstance(other, DenPoly):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        return DenPoly(self.variables, {e: -c for e, c in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, DenPoly):
            return NotImplemented
        if self.variables != other.variables:
            raise VariableMismatchError("denominators over different variable sets")
        out = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return DenPoly(self.variables, out)

    def __pow__(self, k: int):
        out = DenPoly.one(self.variables)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def primitive(self):
        """Split into (integer-primitive poly with positive leading coeff, scale)."""
        if not self.coeffs:
            raise ZeroDivisionError("zero denominator")
        denom_lcm = 1
        for c in self.coeffs.values():
            denom_lcm = denom_lcm * c.denominator // gcd(denom_lcm, c.denominator)
        num_gcd = 0
        for c in self.coeffs.values():
            num_gcd = gcd(num_gcd, c.numerator * (denom_lcm // c.denominator))
        scale = Fraction(num_gcd, denom_lcm)
        lead = max(self.coeffs, key=_grlex)
        if self.coeffs[lead] < 0:
            scale = -scale
        prim = DenPoly(
            self.variables, {e: c / scale for e, c in self.coeffs.items()}
        )
        return prim, scale

    def to_parampoly(self, order: int) -> ParamPoly:
        return ParamPoly(
            self.variables,
            order,
            {e: HbarSeries.constant(c, order) for e, c in self.coeffs.items()},
        )

    def map_variables(self, new_variables, index_map) -> "DenPoly":
        new_variables = tuple(new_variables)
        n = len(new_variables)
        out = {}
        for e, c in self.coeffs.items():
            ne = [0] * n
            for old, power in enumerate(e):
                if power:
                    ne[index_map[old]] += power
            key = tuple(ne)
            out[key] = out.get(key, Fraction(0)) + c
        return DenPoly(new_variables, out)

    def __eq__(self, other):
        if not isinstance(other, DenPoly):
            return NotImplemented
        return self.variables == other.variables and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.variables, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        return f"DenPoly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for exp in sorted(self.coeffs, key=_grlex, reverse=True):
            c = self.coeffs[exp]
            names = [
                v if p == 1 else f"{v}^{p}"
                for v, p in zip(self.variables, exp)
                if p
            ]
            if not names:
                parts.append(str(c))
            elif c == 1:
                parts.append("*".join(names))
            elif c == -1:
                parts.append("-" + "*".join(names))
            else:
                parts.append("*".join([str(c)] + names))
        return " + ".join(parts)


class ParamRat:
    """num/den with den an hbar-free DenPoly, kept integer-primitive and monic-signed."""

    __slots__ = ("num", "den")

    def __init__(self, num: ParamPoly, den: DenPoly | None = None):
        if den is None:
            den = DenPoly.one(num.variables)
        if num.variables != den.variables:
            raise VariableMismatchError("numerator and denominator variable sets differ")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator polynomial")
        if num.is_zero():
            self.num = num
            self.den = DenPoly.one(num.variables)
            return
        num, den = _cancel_monomial(num, den)
        prim, scale = den.primitive()
        if scale != 1:
            num = num.scale(1 / scale)
        self.num = num
        self.den = prim

    @classmethod
    def constant(cls, value, variables, order):
        return cls(ParamPoly.constant(value, variables, order))

    @classmethod
    def variable(cls, name, variables, order):
        return cls(ParamPoly.variable(name, variables, order))

    @classmethod
    def zero(cls, variables, order):
        return cls(ParamPoly.zero(variables, order))

    @property
    def variables(self):
        return self.num.variables

    @property
    def order(self):
        return self.num.order

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other):
        if not isinstance(other, ParamRat):
            return NotImplemented
        if self.den == other.den:
            return ParamRat(self.num + other.num, self.den)
        return ParamRat(
            self.num.mul_den(other.den) + other.num.mul_den(self.den),
            self.den * other.den,
        )

    def __sub__(self, other):
        if not isinstance(other, ParamRat):
            return NotImplemented
        return self + (-other)

    def __neg__(self):
        out = object.__new__(ParamRat)
        out.num = -self.num
        out.den = self.den
        return out

    def __mul__(self, other):
        if isinstance(other, ParamRat):
            return ParamRat(self.num * other.num, self.den * other.den)
        if isinstance(other, (HbarSeries, GaussRational, int, Fraction)):
            return self.scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def scale(self, value) -> "ParamRat":
        num = self.num.scale(value)
        if num.is_zero():
            return ParamRat.zero(self.variables, self.order)
        out = object.__new__(ParamRat)
        out.num = num
        out.den = self.den
        return out

    def conjugate(self) -> "ParamRat":
        out = object.__new__(ParamRat)
        out.num = self.num.conjugate()
        out.den = self.den
        return out

    def map_variables(self, new_variables, index_map) -> "ParamRat":
        return ParamRat(
            self.num.map_variables(new_variables, index_map),
            self.den.map_variables(new_variables, index_map),
        )

    def eq(self, other: "ParamRat") -> bool:
        """Exact equality by cross-multiplication; no gcd needed."""
        if self.variables != other.variables:
            raise VariableMismatchError("comparing over different variable sets")
        if self.den == other.den:
            return (self.num - other.num).is_zero()
        return (self.num.mul_den(other.den) - other.num.mul_den(self.den)).is_zero()

    def __eq__(self, other):
        if not isinstance(other, ParamRat):
            return NotImplemented
        return self.eq(other)

    def __repr__(self):
        return f"ParamRat({self})"

    def __str__(self):
        num = str(self.num)
        if self.den.is_one():
            return num
        if " + " in num:
            num = f"({num})"
        return f"{num}/({self.den})"


def _cancel_monomial(num: ParamPoly, den: DenPoly):
    """Cancel a common monomial factor when the denominator is a single monomial."""
    if len(den.coeffs) != 1:
        return num, den
    (dexp, dc), = den.coeffs.items()
    if not any(dexp):
        return num, den
    low = None
    for e in num._mono:
        low = e if low is None else tuple(min(a, b) for a, b in zip(low, e))
    common = tuple(min(a, b) for a, b in zip(low, dexp))
    if not any(common):
        return num, den
    num = ParamPoly._raw(
        num.variables,
        num.order,
        {
            tuple(a - b for a, b in zip(e, common)): s
            for e, s in num._mono.items()
        },
    )
    den = DenPoly(
        den.variables,
        {tuple(a - b for a, b in zip(dexp, common)): dc},
    )
    return num, den


def ratfun_arith(a: ParamRat, b: ParamRat, op: str) -> ParamRat:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown rational-function operation {op!r}")


def ratfun_eq(a: ParamRat, b: ParamRat) -> bool:
    return a.eq(b)
