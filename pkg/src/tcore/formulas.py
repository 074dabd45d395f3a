"""
Closed formulas for A_{t,k}(n) and the machinery that checks them.

Each formula has the shape

    A_{t,k}(n) = (E(m) - a(m)) / c,    m = alpha * n + beta,

where E(m) is a (twisted) divisor sum, a(m) the m-th coefficient of an
eta-product cusp form (absent for some entries) and c a positive integer.
The entries live in ``registry.json`` next to this module.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Sequence

from . import arith
from .cores import tuple_counts
from .eta import expand, get_form, phi_power
from .series import TruncatedSeries

__all__ = [
    "NonIntegralResult",
    "UnknownTheorem",
    "FormulaSpec",
    "VerificationReport",
    "Mismatch",
    "load_registry",
    "dump_registry",
    "REGISTRY",
    "get_spec",
    "find_spec",
    "eisenstein_coefficient",
    "cusp_coefficients",
    "closed_form",
    "verify",
    "gamma0_index",
    "sturm_bound",
    "lambert_a51",
    "nonzero_density",
    "lacunarity_density",
]


class NonIntegralResult(ArithmeticError):
    def __init__(self, spec_id, n, numerator, divisor):
        self.value = Fraction(numerator, divisor)
        super().__init__(
            "theorem %s at n=%d: %d is not divisible by %d" % (spec_id, n, numerator, divisor)
        )


class UnknownTheorem(KeyError):
    pass


_EISENSTEIN = {
    "sigma": lambda p, m: arith.sigma(p["j"], m),
    "sigma_twisted_d": lambda p, m: arith.sigma_twisted_d(arith.CHARACTERS[p["chi"]], p["j"], m),
    "sigma_twisted_q": lambda p, m: arith.sigma_twisted_q(arith.CHARACTERS[p["chi"]], p["j"], m),
    "sigma_sharp": lambda p, m: arith.sigma_sharp(p["p"], p["j"], m),
}


@dataclass(frozen=True)
class FormulaSpec:
    id: str
    t: int
    k: int
    index_map: tuple[int, int]
    eisenstein: dict
    cusp: str | None
    divisor: int
    level: int
    weight: int
    nebentypus: str = ""

    def __post_init__(self):
        alpha, beta = self.index_map
        if alpha < 1 or beta < 0:
            raise ValueError("%s: index map needs alpha >= 1, beta >= 0" % self.id)
        if self.divisor < 1:
            raise ValueError("%s: divisor must be positive" % self.id)
        if self.eisenstein.get("function") not in _EISENSTEIN:
            raise ValueError("%s: unknown Eisenstein function %r"
                             % (self.id, self.eisenstein.get("function")))
        if self.cusp is not None:
            get_form(self.cusp)
        object.__setattr__(self, "index_map", (int(alpha), int(beta)))

    def __hash__(self):
        return hash(self.id)

    def exponent(self, n: int) -> int:
        alpha, beta = self.index_map
        return alpha * n + beta

    def describe(self) -> str:
        alpha, beta = self.index_map
        m = "%dn+%d" % (alpha, beta) if alpha != 1 else "n+%d" % beta
        e = self.eisenstein
        args = ", ".join("%s=%s" % (k, v) for k, v in e.items() if k != "function")
        rhs = "%s[%s](%s)" % (e["function"], args, m)
        if self.cusp:
            rhs = "(%s - a_%s(%s))" % (rhs, self.cusp, m)
        if self.divisor != 1:
            rhs = "%s / %d" % (rhs, self.divisor)
        return "A_{%d,%d}(n) = %s" % (self.t, self.k, rhs)


def load_registry(source: str | Path | None = None) -> list[FormulaSpec]:
    """Read theorem records from a JSON manifest (the bundled one by default)."""
    if source is None:
        text = resources.files(__package__).joinpath("registry.json").read_text()
    else:
        text = Path(source).read_text()
    return [FormulaSpec(**{**rec, "index_map": tuple(rec["index_map"])})
            for rec in json.loads(text)]


def dump_registry(specs: Sequence[FormulaSpec]) -> str:
    recs = []
    for s in specs:
        d = asdict(s)
        d["index_map"] = list(s.index_map)
        recs.append(d)
    return json.dumps(recs, indent=2) + "\n"


REGISTRY: tuple[FormulaSpec, ...] = tuple(load_registry())


def get_spec(theorem_id: str, registry: Sequence[FormulaSpec] = REGISTRY) -> FormulaSpec:
    key = theorem_id.replace(" ", "").lstrip("Aa")
    for s in registry:
        if s.id == key:
            return s
    raise UnknownTheorem(theorem_id)


def find_spec(t: int, k: int, registry: Sequence[FormulaSpec] = REGISTRY) -> FormulaSpec | None:
    for s in registry:
        if (s.t, s.k) == (t, k):
            return s
    return None


def eisenstein_coefficient(spec: FormulaSpec, m: int) -> int:
    return _EISENSTEIN[spec.eisenstein["function"]](spec.eisenstein, m)


def cusp_coefficients(form_id: str, order: int, cache=None) -> TruncatedSeries:
    return expand(get_form(form_id).quotient, order, full=True, cache=cache)


def closed_form(spec: FormulaSpec, n: int, cusp: TruncatedSeries | None = None) -> int:
    """A_{t,k}(n) from the divisor-sum formula.

    ``cusp`` may carry a precomputed expansion of the cusp form reaching
    at least q^m; otherwise it is expanded on demand.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    m = spec.exponent(n)
    num = eisenstein_coefficient(spec, m)
    if spec.cusp is not None:
        if cusp is None or cusp.order < m:
            cusp = cusp_coefficients(spec.cusp, m)
        num -= cusp[m]
    q, r = divmod(num, spec.divisor)
    if r:
        raise NonIntegralResult(spec.id, n, num, spec.divisor)
    return q


@dataclass
class Mismatch:
    n: int
    formula: int | Fraction
    series: int
    oracle: int | None


@dataclass
class VerificationReport:
    theorem: str
    terms_checked: int
    sturm_bound: int
    max_exponent: int
    oracle_checked: int
    first_mismatch: Mismatch | None = None
    elapsed: float = 0.0
    notes: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.first_mismatch is None

    @property
    def sturm_covered(self) -> bool:
        return self.max_exponent >= self.sturm_bound


def verify(
    spec: FormulaSpec,
    terms: int,
    oracle_cap: int = 25,
    cache=None,
    enumeration_cap: int | None = None,
) -> VerificationReport:
    """Three-way check of a registry entry for n = 0 .. terms-1.

    Compares the closed formula with the eta-quotient series coefficient,
    and, for n <= oracle_cap, with the brute-force core count. Mismatches
    are reported, never raised.
    """
    if terms < 1:
        raise ValueError("terms must be at least 1")
    start = time.perf_counter()
    last = terms - 1
    max_m = spec.exponent(last)
    cusp = cusp_coefficients(spec.cusp, max_m, cache) if spec.cusp else None
    series = phi_power(spec.t, spec.k, last, cache=cache)
    n_oracle = min(oracle_cap, last)
    oracle = tuple_counts(n_oracle, spec.t, spec.k, enumeration_cap) if n_oracle >= 0 else []
    report = VerificationReport(
        theorem=spec.id,
        terms_checked=terms,
        sturm_bound=sturm_bound(spec.level, spec.weight),
        max_exponent=max_m,
        oracle_checked=len(oracle),
    )
    for n in range(terms):
        try:
            f = closed_form(spec, n, cusp)
        except NonIntegralResult as exc:
            f = exc.value
        s = series[n]
        o = oracle[n] if n < len(oracle) else None
        if f != s or (o is not None and o != s):
            report.first_mismatch = Mismatch(n, f, s, o)
            break
    if report.sturm_covered:
        report.notes.append(
            "checked exponents up to q^%d, past the Sturm bound %d for level %d weight %d"
            % (max_m, report.sturm_bound, spec.level, spec.weight)
        )
    else:
        report.notes.append(
            "only exponents up to q^%d checked, below the Sturm bound %d"
            % (max_m, report.sturm_bound)
        )
    report.elapsed = time.perf_counter() - start
    return report


def _prime_divisors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def gamma0_index(level: int) -> int:
    """[SL2(Z) : Gamma0(N)] = N prod_{p | N} (1 + 1/p)."""
    if level < 1:
        raise ValueError("level must be positive")
    index = level
    for p in _prime_divisors(level):
        index = index // p * (p + 1)
    return index


def sturm_bound(level: int, weight: int) -> int:
    """Number of leading coefficients that determine a form of this level and weight."""
    if weight < 1:
        raise ValueError("weight must be positive")
    return -(-weight * gamma0_index(level) // 12)


def lambert_a51(order: int) -> TruncatedSeries:
    """Expand sum over a = +-1, +-2 mod 5 of chi(a) q^a / (1 - q^a)^2.

    Uses q^a / (1 - q^a)^2 = sum_{d >= 1} d q^(ad). The result should be
    q times the 5-core generating function.
    """
    c = [0] * (order + 1)
    signs = (0, 1, -1, -1, 1)
    for a in range(1, order + 1):
        s = signs[a % 5]
        if not s:
            continue
        for d in range(1, order // a + 1):
            c[a * d] += s * d
    return TruncatedSeries(c)


def nonzero_density(series: TruncatedSeries | Sequence[int], order: int) -> Fraction:
    """Fraction of n in 1..order with a nonzero q^n coefficient."""
    if order < 1:
        raise ValueError("order must be positive")
    return Fraction(sum(1 for n in range(1, order + 1) if series[n]), order)


def lacunarity_density(form_id: str, order: int, cache=None) -> Fraction:
    return nonzero_density(cusp_coefficients(form_id, order, cache), order)
