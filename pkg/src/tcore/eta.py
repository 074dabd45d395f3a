"""
Eta quotients prod eta(m tau)^r_m and their exact q-expansions.

Every eta quotient is q^(P/24) times an integer power series ("Euler part")
with P = sum m * r_m. Series handed to the rest of the package always use
integer exponents; the fractional prefactor is only carried as metadata.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from .series import TruncatedSeries, euler_product, invert, mul, pow

__all__ = [
    "EtaQuotient",
    "NamedForm",
    "FractionalPrefactor",
    "EtaParseError",
    "UnknownForm",
    "FORMS",
    "get_form",
    "parse",
    "expand",
    "phi_quotient",
    "phi",
    "phi_power",
]


class FractionalPrefactor(ValueError):
    """A full q-expansion was requested but q^(P/24) is not an integral power."""


class UnknownForm(KeyError):
    pass


class EtaParseError(ValueError):
    def __init__(self, text: str, pos: int, msg: str):
        self.text = text
        self.pos = pos
        super().__init__("%s at position %d\n  %s\n  %s^" % (msg, pos, text, " " * pos))


@dataclass(frozen=True)
class EtaQuotient:
    """Formal product of eta(m tau)^r over multiplier -> exponent pairs."""

    factors: Mapping[int, int]

    def __post_init__(self):
        clean = {}
        for m, r in self.factors.items():
            m, r = int(m), int(r)
            if m < 1:
                raise ValueError("eta multiplier must be positive, got %d" % m)
            if r:
                clean[m] = clean.get(m, 0) + r
        clean = {m: r for m, r in sorted(clean.items()) if r}
        object.__setattr__(self, "factors", MappingProxyType(clean))

    @property
    def prefactor24(self) -> int:
        return sum(m * r for m, r in self.factors.items())

    @property
    def weight2(self) -> int:
        """Twice the modular weight, sum of exponents."""
        return sum(self.factors.values())

    def canonical(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(
            "eta(%d)" % m if r == 1 else "eta(%d)^%d" % (m, r)
            for m, r in self.factors.items()
        )

    def __mul__(self, other: EtaQuotient) -> EtaQuotient:
        f = dict(self.factors)
        for m, r in other.factors.items():
            f[m] = f.get(m, 0) + r
        return EtaQuotient(f)

    def __pow__(self, k: int) -> EtaQuotient:
        return EtaQuotient({m: k * r for m, r in self.factors.items()})

    def __hash__(self):
        return hash(tuple(self.factors.items()))

    def __eq__(self, other):
        if isinstance(other, EtaQuotient):
            return dict(self.factors) == dict(other.factors)
        return NotImplemented

    def __str__(self):
        return self.canonical()


@dataclass(frozen=True)
class NamedForm:
    id: str
    quotient: EtaQuotient
    first_exponent: int
    description: str = field(default="", compare=False)


def _euler_part(e: EtaQuotient, order: int) -> TruncatedSeries:
    result = TruncatedSeries.one(order)
    # positive factors first: repeated multiplication by sparse pentagonal series
    for m, r in e.factors.items():
        if r > 0:
            factor = euler_product(m, order)
            for _ in range(r):
                result = mul(result, factor)
    for m, r in e.factors.items():
        if r < 0:
            inner = order // m
            part = pow(invert(euler_product(1, inner)), -r)
            result = mul(result, part.dilate(m, order))
    return result


def expand(e: EtaQuotient, order: int, full: bool | None = None, cache=None) -> TruncatedSeries:
    """Exact expansion of ``e`` through q^order.

    With ``full=None`` the q^(P/24) prefactor is applied whenever it is a
    non-negative integral power of q, and the Euler part is returned
    otherwise. ``full=True`` demands the prefactor (raising
    FractionalPrefactor if impossible); ``full=False`` always gives the
    Euler part.

    ``cache``, if given, needs ``lookup(key, order)`` and ``store(key, series)``.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    p = e.prefactor24
    integral = p % 24 == 0 and p >= 0
    if full is None:
        full = integral
    elif full and not integral:
        raise FractionalPrefactor(
            "%s has prefactor q^(%d/24), not a non-negative integral power" % (e, p)
        )
    key = e.canonical() + ("|full" if full else "|euler")
    if cache is not None:
        hit = cache.lookup(key, order)
        if hit is not None:
            return hit
    if full:
        s = p // 24
        if s > order:
            out = TruncatedSeries.zero(order)
        else:
            out = _euler_part(e, order - s).shift(s, order)
    else:
        out = _euler_part(e, order)
    if cache is not None:
        cache.store(key, out)
    return out


_TERM = re.compile(r"\s*eta\s*\(\s*(\d+)\s*\)\s*")
_EXPONENT = re.compile(r"\^\s*([+-]?)\s*(\d+)\s*")


def parse(text: str) -> EtaQuotient:
    """Parse e.g. ``eta(1)^6*eta(3)^6`` or ``eta(4)^4/eta(1)``."""
    factors: dict[int, int] = {}
    pos = 0
    sign = 1
    if not text.strip():
        raise EtaParseError(text, 0, "empty eta expression")
    while True:
        mt = _TERM.match(text, pos)
        if not mt:
            raise EtaParseError(text, pos, "expected eta(m)")
        m = int(mt.group(1))
        if m < 1:
            raise EtaParseError(text, mt.start(1), "eta multiplier must be positive")
        pos = mt.end()
        r = 1
        if text.startswith("^", pos):
            me = _EXPONENT.match(text, pos)
            if not me:
                raise EtaParseError(text, pos + 1, "expected an integer exponent after '^'")
            r = -int(me.group(2)) if me.group(1) == "-" else int(me.group(2))
            pos = me.end()
        factors[m] = factors.get(m, 0) + sign * r
        if pos == len(text):
            break
        op = text[pos]
        if op == "*":
            sign = 1
        elif op == "/":
            sign = -1
        else:
            raise EtaParseError(text, pos, "expected '*' or '/'")
        pos += 1
    return EtaQuotient(factors)


def _form(id, spec, description):
    return NamedForm(id, parse(spec), 1, description)


FORMS: Mapping[str, NamedForm] = MappingProxyType({
    f.id: f
    for f in (
        _form("eta8_3", "eta(3)^8", "weight 4 cusp form on Gamma0(9)"),
        _form("eta6_1_6_3", "eta(1)^6*eta(3)^6", "weight 6 cusp form on Gamma0(3)"),
        _form("eta6_4", "eta(4)^6", "weight 3 cusp form on Gamma0(16), character (-4|n)"),
        _form("eta4_1_4_5", "eta(1)^4*eta(5)^4", "weight 4 cusp form on Gamma0(5)"),
        _form("eta3_1_3_7", "eta(1)^3*eta(7)^3", "weight 3 cusp form on Gamma0(7), character (-7|n)"),
    )
})


def get_form(form_id: str) -> NamedForm:
    try:
        return FORMS[form_id]
    except KeyError:
        raise UnknownForm(form_id) from None


def phi_quotient(t: int, k: int = 1) -> EtaQuotient:
    """eta(t tau)^(kt) / eta(tau)^k, whose Euler part generates A_{t,k}(n)."""
    return EtaQuotient({t: k * t, 1: -k})


def phi_power(t: int, k: int, order: int, cache=None) -> TruncatedSeries:
    """Series whose q^n coefficient is the number of t-core k-tuples of n."""
    if t < 2:
        raise ValueError("t must be at least 2, got %r" % (t,))
    if k < 1:
        raise ValueError("k must be at least 1, got %r" % (k,))
    return expand(phi_quotient(t, k), order, full=False, cache=cache)


def phi(t: int, order: int, cache=None) -> TruncatedSeries:
    """Generating function of t-core partitions."""
    return phi_power(t, 1, order, cache=cache)
