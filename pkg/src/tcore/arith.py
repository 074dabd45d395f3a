"""
Real Dirichlet characters of small modulus and twisted divisor sums.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

__all__ = [
    "ZeroInput",
    "EvenModulus",
    "UnsupportedPair",
    "DirichletCharacter",
    "CHI3",
    "CHI4",
    "CHI5",
    "CHI7",
    "CHARACTERS",
    "jacobi",
    "kronecker_character",
    "valuation",
    "divisors",
    "sigma",
    "sigma_twisted_d",
    "sigma_twisted_q",
    "sigma_sharp",
]


class ZeroInput(ValueError):
    pass


class EvenModulus(ValueError):
    pass


class UnsupportedPair(ValueError):
    pass


@dataclass(frozen=True)
class DirichletCharacter:
    name: str
    modulus: int
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != self.modulus:
            raise ValueError("value table must have one entry per residue")
        for r, v in enumerate(self.values):
            if v not in (-1, 0, 1):
                raise ValueError("character values must be -1, 0 or 1")
            if (v == 0) != (gcd(r, self.modulus) > 1):
                raise ValueError("chi(%d) = 0 must hold exactly when gcd(%d, %d) > 1"
                                 % (r, r, self.modulus))

    def __call__(self, n: int) -> int:
        return self.values[n % self.modulus]


# tables as case lists: residue 0, 1, 2, ...
CHI3 = DirichletCharacter("chi3", 3, (0, 1, -1))
CHI4 = DirichletCharacter("chi4_2", 4, (0, 1, 0, -1))
CHI5 = DirichletCharacter("chi5_3", 5, (0, 1, -1, -1, 1))
CHI7 = DirichletCharacter("chi7_4", 7, (0, 1, 1, -1, 1, -1, -1))

CHARACTERS = {c.name: c for c in (CHI3, CHI4, CHI5, CHI7)}


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol (a|n) for odd positive n."""
    if n < 1 or n % 2 == 0:
        raise EvenModulus("Jacobi symbol needs an odd positive modulus, got %d" % n)
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker_character(d: int, modulus: int) -> tuple[int, ...]:
    """Value table of the Kronecker symbol (d|.) mod ``modulus``.

    Each residue is evaluated at an odd positive representative, where the
    Kronecker symbol coincides with the Jacobi symbol. Only meaningful when
    (d|.) is periodic mod ``modulus`` (d a fundamental discriminant, |d| | modulus).
    """
    table = []
    for r in range(modulus):
        if gcd(r, modulus) > 1:
            table.append(0)
            continue
        rep = r if r % 2 else r + modulus
        table.append(jacobi(d, rep))
    return tuple(table)


def valuation(p: int, n: int) -> int:
    """Exponent of the prime p in n."""
    if n == 0:
        raise ZeroInput("valuation of 0 is undefined")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def divisors(n: int) -> list[int]:
    """Positive divisors of n in increasing order (trial division to sqrt n)."""
    if n < 1:
        raise ZeroInput("divisors need n >= 1, got %d" % n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def sigma(j: int, n: int) -> int:
    """sum_{d | n} d^j."""
    return sum(d ** j for d in divisors(n))


def sigma_twisted_d(chi: DirichletCharacter, j: int, n: int) -> int:
    """sum_{d | n} chi(d) d^j."""
    return sum(chi(d) * d ** j for d in divisors(n))


def sigma_twisted_q(chi: DirichletCharacter, j: int, n: int) -> int:
    """sum_{d | n} chi(n/d) d^j, the twist sitting on the co-divisor."""
    return sum(chi(n // d) * d ** j for d in divisors(n))


_SHARP_PAIRS = {(3, 5), (5, 3)}


def sigma_sharp(p: int, j: int, n: int) -> int:
    """p^(j v_p(n)) * sum of d^j over divisors d of n prime to p."""
    if (p, j) not in _SHARP_PAIRS:
        raise UnsupportedPair("sigma_sharp is defined for (p, j) in %s, got (%d, %d)"
                              % (sorted(_SHARP_PAIRS), p, j))
    if n < 1:
        raise ZeroInput("sigma_sharp needs n >= 1, got %d" % n)
    e = valuation(p, n)
    return p ** (j * e) * sum(d ** j for d in divisors(n) if d % p)
