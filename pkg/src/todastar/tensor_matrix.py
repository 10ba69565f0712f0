"""Square matrices over the engine's rings: Kronecker products, tensor-leg
embeddings with spectral-parameter renaming, traces, and star matrix products.

Entries are duck-typed; anything with ring arithmetic and is_zero works
(ParamRat for spectral matrices, PhasePoly for Lax matrices).
"""

from __future__ import annotations

from itertools import permutations


class RingMatrix:
    """A dim x dim matrix over a shared entry ring."""

    __slots__ = ("dim", "entries")

    def __init__(self, rows):
        rows = tuple(tuple(r) for r in rows)
        dim = len(rows)
        for r in rows:
            if len(r) != dim:
                raise ValueError("matrix must be square")
        self.dim = dim
        self.entries = rows

    @classmethod
    def identity(cls, dim, one, zero):
        return cls(
            tuple(
                tuple(one if i == j else zero for j in range(dim))
                for i in range(dim)
            )
        )

    @classmethod
    def filled(cls, dim, zero):
        return cls(tuple((zero,) * dim for _ in range(dim)))

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __add__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return RingMatrix(
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            )
        )

    def __sub__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return RingMatrix(
            tuple(
                tuple(a - b for a, b in zip(ra, rb))
                for ra, rb in zip(self.entries, other.entries)
            )
        )

    def __neg__(self):
        return RingMatrix(tuple(tuple(-a for a in r) for r in self.entries))

    def scale(self, value):
        return RingMatrix(
            tuple(tuple(a.scale(value) for a in r) for r in self.entries)
        )

    def map(self, fn):
        return RingMatrix(tuple(tuple(fn(a) for a in r) for r in self.entries))

    def mul(self, other: "RingMatrix", product=None) -> "RingMatrix":
        """Matrix product with a chosen entry multiplication (default: ring *)."""
        if self.dim != other.dim:
            raise ValueError("matrix dimensions differ")
        mult = product if product is not None else (lambda a, b: a * b)
        rows = []
        for i in range(self.dim):
            row = []
            for k in range(self.dim):
                acc = None
                for j in range(self.dim):
                    a = self.entries[i][j]
                    b = other.entries[j][k]
                    if a.is_zero() or b.is_zero():
                        continue
                    term = mult(a, b)
                    acc = term if acc is None else acc + term
                if acc is None:
                    acc = _zero_like(self.entries[i][i])
                row.append(acc)
            rows.append(tuple(row))
        return RingMatrix(tuple(rows))

    def __mul__(self, other):
        if isinstance(other, RingMatrix):
            return self.mul(other)
        return NotImplemented

    def kron(self, other: "RingMatrix") -> "RingMatrix":
        """Kronecker product in the block convention (a_ij * B)."""
        d1, d2 = self.dim, other.dim
        rows = []
        for i in range(d1):
            for k in range(d2):
                row = []
                for j in range(d1):
                    a = self.entries[i][j]
                    for l in range(d2):
                        row.append(a * other.entries[k][l])
                rows.append(tuple(row))
        return RingMatrix(tuple(rows))

    def trace(self):
        acc = self.entries[0][0]
        for i in range(1, self.dim):
            acc = acc + self.entries[i][i]
        return acc

    def det(self):
        """Leibniz-expansion determinant; entries must commute."""
        acc = None
        for perm in permutations(range(self.dim)):
            sign = _perm_sign(perm)
            prod = None
            zero_hit = False
            for i, j in enumerate(perm):
                e = self.entries[i][j]
                if e.is_zero():
                    zero_hit = True
                    break
                prod = e if prod is None else prod * e
            if zero_hit:
                continue
            if sign < 0:
                prod = -prod
            acc = prod if acc is None else acc + prod
        if acc is None:
            return _zero_like(self.entries[0][0])
        return acc

    def is_zero(self) -> bool:
        return all(e.is_zero() for r in self.entries for e in r)

    def nonzero_count(self) -> int:
        return sum(0 if e.is_zero() else 1 for r in self.entries for e in r)

    def first_nonzero(self):
        """(i, j, entry) of the first nonzero entry in row-major order, or None."""
        for i, r in enumerate(self.entries):
            for j, e in enumerate(r):
                if not e.is_zero():
                    return i, j, e
        return None

    def __eq__(self, other):
        if not isinstance(other, RingMatrix):
            return NotImplemented
        return (self - other).is_zero()

    def __repr__(self):
        return f"RingMatrix(dim={self.dim})"

    def __str__(self):
        rows = []
        for r in self.entries:
            rows.append("[" + ", ".join(str(e) for e in r) + "]")
        return "[" + ",\n ".join(rows) + "]"


def _zero_like(entry):
    return entry - entry


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j = i
        clen = 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            clen += 1
        if clen % 2 == 0:
            sign = -sign
    return sign


def kron(a: RingMatrix, b: RingMatrix) -> RingMatrix:
    return a.kron(b)


def mat_mul(a: RingMatrix, b: RingMatrix, product=None) -> RingMatrix:
    return a.mul(b, product)


def trace(m: RingMatrix):
    return m.trace()


def embed(m: RingMatrix, legs, total: int, variables, src_vars=("lam", "mu")) -> RingMatrix:
    """Place a 4x4 two-leg matrix at tensor slots legs=(a, b) of a 2^total space.

    The first tensor factor of m goes to slot a with its spectral parameter
    renamed to variables[a-1], the second to slot b with variables[b-1]; all
    other legs carry the identity. Entries must be ParamRat over src_vars.
    """
    a, b = legs
    if a == b:
        raise ValueError("tensor legs must be distinct")
    if not (1 <= a <= total and 1 <= b <= total):
        raise ValueError("tensor legs out of range")
    if m.dim != 4:
        raise ValueError("embedding expects a 4x4 two-leg matrix")
    if len(src_vars) != 2:
        raise ValueError("source matrix must carry exactly two spectral parameters")
    variables = tuple(variables)
    index_map = {0: a - 1, 1: b - 1}
    renamed = m.map(lambda e: e.map_variables(variables, index_map))

    dim = 1 << total
    sample = renamed.entries[0][0]
    zero = _zero_like(sample)
    rows = []
    for r in range(dim):
        xs = [(r >> (total - 1 - t)) & 1 for t in range(total)]
        row = []
        for c in range(dim):
            ys = [(c >> (total - 1 - t)) & 1 for t in range(total)]
            if any(
                xs[t] != ys[t]
                for t in range(total)
                if t != a - 1 and t != b - 1
            ):
                row.append(zero)
                continue
            i, j = xs[a - 1], ys[a - 1]
            k, l = xs[b - 1], ys[b - 1]
            row.append(renamed.entries[2 * i + k][2 * j + l])
        rows.append(tuple(row))
    return RingMatrix(tuple(rows))
