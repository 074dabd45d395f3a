"""
Truncated formal power series in q with exact integer coefficients.

A series of order N stores the coefficients of q^0 .. q^N (inclusive).
Binary operations on series of different orders truncate to the smaller
order, so expressions can be composed without bookkeeping.
"""

from __future__ import annotations

from typing import Iterable, Sequence

__all__ = [
    "NonUnitConstantTerm",
    "TruncatedSeries",
    "add",
    "mul",
    "mul_schoolbook",
    "pow",
    "invert",
    "euler_product",
    "pentagonal_exponents",
]

# Dense products with both operands longer than this go through Kronecker
# substitution; shorter or sparse ones use the schoolbook loop.
KRONECKER_THRESHOLD = 64


class NonUnitConstantTerm(ValueError):
    """Raised when inverting a series whose constant term is not +1 or -1."""


class TruncatedSeries:
    """Immutable q-expansion truncated at ``order`` (inclusive)."""

    __slots__ = ("_coeffs",)

    def __init__(self, coeffs: Iterable[int], order: int | None = None):
        c = [int(x) for x in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError("order must be non-negative, got %d" % order)
            if len(c) > order + 1:
                del c[order + 1:]
            else:
                c.extend([0] * (order + 1 - len(c)))
        elif not c:
            raise ValueError("empty coefficient list needs an explicit order")
        self._coeffs = tuple(c)

    @classmethod
    def zero(cls, order: int) -> TruncatedSeries:
        return cls((), order)

    @classmethod
    def one(cls, order: int) -> TruncatedSeries:
        return cls((1,), order)

    @classmethod
    def monomial(cls, exponent: int, order: int, coeff: int = 1) -> TruncatedSeries:
        c = [0] * (order + 1)
        if exponent <= order:
            c[exponent] = coeff
        return cls(c)

    @property
    def order(self) -> int:
        return len(self._coeffs) - 1

    @property
    def coeffs(self) -> tuple[int, ...]:
        return self._coeffs

    def __len__(self) -> int:
        return len(self._coeffs)

    def __iter__(self):
        return iter(self._coeffs)

    def __getitem__(self, n):
        return self._coeffs[n]

    def __eq__(self, other):
        if isinstance(other, TruncatedSeries):
            return self._coeffs == other._coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self._coeffs)

    def __repr__(self):
        head = ", ".join(str(x) for x in self._coeffs[:8])
        tail = ", ..." if len(self._coeffs) > 8 else ""
        return "TruncatedSeries([%s%s], order=%d)" % (head, tail, self.order)

    def nonzero(self) -> list[tuple[int, int]]:
        """(exponent, coefficient) pairs with nonzero coefficient."""
        return [(i, c) for i, c in enumerate(self._coeffs) if c]

    def truncate(self, order: int) -> TruncatedSeries:
        if order >= self.order:
            return self
        return TruncatedSeries(self._coeffs[: order + 1])

    def dilate(self, m: int, order: int | None = None) -> TruncatedSeries:
        """Substitute q -> q^m. The result has ``order`` (default m * self.order)."""
        if m < 1:
            raise ValueError("dilation factor must be positive")
        if order is None:
            order = m * self.order
        c = [0] * (order + 1)
        for i, x in enumerate(self._coeffs[: order // m + 1]):
            c[i * m] = x
        return TruncatedSeries(c)

    def shift(self, s: int, order: int | None = None) -> TruncatedSeries:
        """Multiply by q^s (s >= 0); the order is kept unless given."""
        if s < 0:
            raise ValueError("negative shifts would need Laurent series")
        if order is None:
            order = self.order
        return TruncatedSeries([0] * s + list(self._coeffs), order)

    def __neg__(self):
        return TruncatedSeries(-x for x in self._coeffs)

    def __add__(self, other):
        if isinstance(other, TruncatedSeries):
            return add(self, other)
        if isinstance(other, int):
            return add(self, TruncatedSeries((other,), self.order))
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = TruncatedSeries((other,), self.order)
        if isinstance(other, TruncatedSeries):
            return add(self, -other)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            return mul(self, other)
        if isinstance(other, int):
            return TruncatedSeries(other * x for x in self._coeffs)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, k):
        return pow(self, k)


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    n = min(a.order, b.order) + 1
    return TruncatedSeries(x + y for x, y in zip(a.coeffs[:n], b.coeffs[:n]))


def mul_schoolbook(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Reference Cauchy product; iterates over the nonzero terms of the sparser operand."""
    order = min(a.order, b.order)
    ac = a.coeffs[: order + 1]
    bc = b.coeffs[: order + 1]
    sa = [(i, x) for i, x in enumerate(ac) if x]
    sb = [(i, x) for i, x in enumerate(bc) if x]
    if len(sb) < len(sa):
        sa, bc = sb, ac
    out = [0] * (order + 1)
    for i, x in sa:
        for j in range(order + 1 - i):
            y = bc[j]
            if y:
                out[i + j] += x * y
    return TruncatedSeries(out)


def _pack(coeffs: Sequence[int], nbytes: int) -> int:
    """Evaluate sum c_i * 256^(nbytes*i) for a signed coefficient list."""
    pos = b"".join((c if c > 0 else 0).to_bytes(nbytes, "little") for c in coeffs)
    neg = b"".join((-c if c < 0 else 0).to_bytes(nbytes, "little") for c in coeffs)
    return int.from_bytes(pos, "little") - int.from_bytes(neg, "little")


def _mul_kronecker(ac: Sequence[int], bc: Sequence[int], order: int) -> list[int]:
    bound = max(map(abs, ac)) * max(map(abs, bc)) * min(len(ac), len(bc))
    # one spare bit for the sign offset
    nbytes = (bound.bit_length() + 2 + 7) // 8
    length = len(ac) + len(bc) - 1
    half = 1 << (8 * nbytes - 1)
    offset = int.from_bytes(half.to_bytes(nbytes, "little") * length, "little")
    product = _pack(ac, nbytes) * _pack(bc, nbytes) + offset
    raw = product.to_bytes(nbytes * length, "little")
    return [
        int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half
        for i in range(min(order + 1, length))
    ]


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product truncated at min(a.order, b.order).

    Dense operands are multiplied by packing them into single big integers
    (Kronecker substitution); the result is identical to ``mul_schoolbook``.
    """
    order = min(a.order, b.order)
    ac = a.coeffs[: order + 1]
    bc = b.coeffs[: order + 1]
    # strip trailing zero blocks; they contribute nothing
    la = len(ac)
    while la and not ac[la - 1]:
        la -= 1
    lb = len(bc)
    while lb and not bc[lb - 1]:
        lb -= 1
    if not la or not lb:
        return TruncatedSeries.zero(order)
    ac, bc = ac[:la], bc[:lb]
    nza = la - ac.count(0)
    nzb = lb - bc.count(0)
    if min(nza, nzb) <= KRONECKER_THRESHOLD or min(la, lb) <= KRONECKER_THRESHOLD:
        return mul_schoolbook(a.truncate(order), b.truncate(order))
    return TruncatedSeries(_mul_kronecker(ac, bc, order), order)


def pow(a: TruncatedSeries, k: int) -> TruncatedSeries:
    """k-th power by binary exponentiation, k >= 1."""
    if not isinstance(k, int) or k < 1:
        raise ValueError("exponent must be a positive integer, got %r" % (k,))
    result = None
    base = a
    while True:
        if k & 1:
            result = base if result is None else mul(result, base)
        k >>= 1
        if not k:
            return result
        base = mul(base, base)


def invert(a: TruncatedSeries) -> TruncatedSeries:
    """Multiplicative inverse of a series with constant term +1 or -1."""
    a0 = a[0]
    if a0 not in (1, -1):
        raise NonUnitConstantTerm("constant term must be +1 or -1, got %d" % a0)
    order = a.order
    terms = [(j, x) for j, x in enumerate(a.coeffs) if j and x]
    b = [0] * (order + 1)
    b[0] = a0
    for n in range(1, order + 1):
        s = 0
        for j, x in terms:
            if j > n:
                break
            s += x * b[n - j]
        # 1/a0 == a0 for a unit
        b[n] = -a0 * s
    return TruncatedSeries(b)


def pentagonal_exponents(order: int) -> list[tuple[int, int]]:
    """(exponent, sign) pairs of prod_{n>=1} (1 - q^n) through q^order."""
    out = [(0, 1)]
    j = 1
    while True:
        sign = -1 if j & 1 else 1
        e1 = j * (3 * j - 1) // 2
        if e1 > order:
            break
        out.append((e1, sign))
        e2 = j * (3 * j + 1) // 2
        if e2 <= order:
            out.append((e2, sign))
        j += 1
    return out


def euler_product(m: int, order: int) -> TruncatedSeries:
    """Expansion of (q^m; q^m)_inf = prod_{n>=1} (1 - q^(mn)) through q^order."""
    if m < 1:
        raise ValueError("m must be a positive integer, got %r" % (m,))
    if order < 0:
        raise ValueError("order must be non-negative")
    c = [0] * (order + 1)
    for e, sign in pentagonal_exponents(order // m):
        c[m * e] = sign
    return TruncatedSeries(c)
