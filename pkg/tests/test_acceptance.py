"""Exit criteria. Each test records one PASS/FAIL line, printed at the end of the run."""

import random
import time
from collections import Counter
from fractions import Fraction
from math import gcd

import pytest

from tcore import cli
from tcore.arith import (
    CHARACTERS,
    jacobi,
    kronecker_character,
    sigma,
    sigma_sharp,
    sigma_twisted_d,
    sigma_twisted_q,
    valuation,
)
from tcore.cores import Partition, hook_numbers, partitions, tuple_counts
from tcore.eta import expand, get_form, phi, phi_power
from tcore.formulas import (
    REGISTRY,
    closed_form,
    cusp_coefficients,
    eisenstein_coefficient,
    get_spec,
    lambert_a51,
    nonzero_density,
    sturm_bound,
)
from tcore.series import TruncatedSeries, add, euler_product, invert, mul

RESULTS = []


def record(number, title, ok, detail=""):
    RESULTS.append("[%s] criterion %d: %s%s" % ("PASS" if ok else "FAIL", number, title,
                                                  " (%s)" % detail if detail else ""))
    assert ok, detail


GOLDEN = {
    "3,1": [1, 1, 2, 0, 2, 1],
    "3,2": [1, 2, 5, 4, 8],
    "3,3": [1, 3, 9, 13, 24],
    "3,4": [1, 4, 14, 28, 57],
    "3,6": [1, 6, 27, 80, 207],
    "4,2": [1, 2, 5, 10, 12],
    "5,1": [1, 1, 2, 3, 5],
    "5,2": [1, 2, 5, 10, 20],
    "7,1": [1, 1, 2, 3, 5],
}

CUSP_GOLDEN = {
    "eta8_3": [(1, 1), (4, -8), (7, 20), (13, -70), (16, 64)],
    "eta6_1_6_3": [(1, 1), (2, -6), (3, 9), (4, 4), (5, 6)],
    "eta6_4": [(1, 1), (5, -6), (9, 9), (13, 10), (17, -30)],
    "eta4_1_4_5": [(1, 1), (2, -4), (3, 2), (4, 8), (5, -5)],
    "eta3_1_3_7": [(1, 1), (2, -3), (4, 5), (7, -7), (8, -3)],
}

LACUNARITY_BASELINE = Fraction(1469, 10000)


def test_1_golden_prefixes():
    start = time.perf_counter()
    bad = []
    for spec in REGISTRY:
        want = GOLDEN[spec.id]
        top = len(want) - 1
        routes = {
            "formula": [closed_form(spec, n) for n in range(top + 1)],
            "series": list(phi_power(spec.t, spec.k, top)),
            "oracle": tuple_counts(top, spec.t, spec.k),
        }
        bad += ["%s/%s=%s" % (spec.id, r, v) for r, v in routes.items() if v != want]
    elapsed = time.perf_counter() - start
    record(1, "golden Fourier prefixes for all nine theorems, all three routes",
           not bad and elapsed < 1.0, "; ".join(bad) or "%.3fs" % elapsed)


def test_2_cusp_prefixes():
    bad = []
    for form_id, want in CUSP_GOLDEN.items():
        top = want[-1][0]
        got = expand(get_form(form_id).quotient, top, full=True).nonzero()
        if got != want:
            bad.append("%s: %s" % (form_id, got))
    record(2, "cusp-form eta-product prefixes", not bad, "; ".join(bad))


def test_3_three_way_verification(capsys):
    start = time.perf_counter()
    code = cli.main(["verify", "all", "--terms", "500", "--oracle-cap", "25"])
    elapsed = time.perf_counter() - start
    out = capsys.readouterr().out
    lines = out.strip().splitlines()
    record(3, "verify all --terms 500 --oracle-cap 25 exits 0",
           code == 0 and len(lines) == 9 and elapsed < 30,
           "exit %d, %d reports, %.2fs" % (code, len(lines), elapsed))


def test_4_exact_divisibility():
    bad = []
    checked = 0
    for spec in REGISTRY:
        if spec.divisor == 1:
            continue
        top = spec.exponent(499)
        cusp = cusp_coefficients(spec.cusp, top) if spec.cusp else TruncatedSeries.zero(top)
        for n in range(500):
            m = spec.exponent(n)
            checked += 1
            if (eisenstein_coefficient(spec, m) - cusp[m]) % spec.divisor:
                bad.append("%s at m=%d" % (spec.id, m))
                break
    record(4, "c | E(m) - a(m) with zero remainder", not bad,
           "; ".join(bad) or "%d values" % checked)


def test_5_lambert_equivalence():
    start = time.perf_counter()
    lam = lambert_a51(2000)
    target = phi(5, 1999).shift(1, 2000)
    elapsed = time.perf_counter() - start
    record(5, "Lambert series equals q * phi_5 through q^2000",
           lam == target and elapsed < 5, "%.2fs" % elapsed)


def test_6_sturm_values():
    pairs = [(9, 4), (3, 6), (16, 3), (5, 2), (7, 3)]
    got = [sturm_bound(n, w) for n, w in pairs]
    record(6, "Sturm bounds 4, 2, 6, 1, 2", got == [4, 2, 6, 1, 2], str(got))


def test_7_lacunarity_probe():
    s = cusp_coefficients("eta8_3", 10 ** 4)
    d = nonzero_density(s, 10 ** 4)
    record(7, "eta^8(3 tau) nonzero density up to 10^4 <= 1/3, baseline 1469/10000",
           d <= Fraction(1, 3) and d == LACUNARITY_BASELINE, "measured %s = %.4f" % (d, d))


def _ring_laws(rng):
    def rand_series(order=15):
        return TruncatedSeries([rng.randint(-30, 30) for _ in range(order + 1)])

    for _ in range(100):
        a, b, c = rand_series(), rand_series(), rand_series()
        if mul(a, b) != mul(b, a) or mul(mul(a, b), c) != mul(a, mul(b, c)):
            return False
        if mul(a, add(b, c)) != add(mul(a, b), mul(a, c)):
            return False
    return True


def _invert_round_trip(rng):
    for _ in range(100):
        a = TruncatedSeries([rng.choice((1, -1))] + [rng.randint(-20, 20) for _ in range(30)])
        if mul(a, invert(a)) != TruncatedSeries.one(30):
            return False
    return True


def _pentagonal_sparsity():
    for m in (1, 2, 3, 4, 5, 7):
        pent = {m * j * (3 * j - 1) // 2 for j in range(-80, 81)}
        if any(n not in pent or c not in (1, -1) for n, c in euler_product(m, 3000).nonzero()):
            return False
    return True


def _hook_symmetry(rng):
    for _ in range(200):
        parts = sorted((rng.randint(1, 10) for _ in range(rng.randint(0, 9))), reverse=True)
        p = Partition(parts)
        if hook_numbers(p) != hook_numbers(p.conjugate()):
            return False
    return all(sum(hook_numbers(p).values()) == 12 for p in partitions(12))


def _character_multiplicativity():
    expected = {"chi3": kronecker_character(-3, 3), "chi4_2": kronecker_character(-4, 4),
                "chi5_3": tuple(jacobi(r, 5) for r in range(5)),
                "chi7_4": kronecker_character(-7, 7)}
    for name, chi in CHARACTERS.items():
        m = chi.modulus
        if chi.values != expected[name]:
            return False
        for a in range(m):
            if (chi.values[a] == 0) != (gcd(a, m) > 1):
                return False
            for b in range(m):
                if chi.values[a * b % m] != chi.values[a] * chi.values[b]:
                    return False
    return True


def _divisor_sums(limit=10 ** 4):
    divs = [[] for _ in range(limit + 1)]
    for d in range(1, limit + 1):
        for m in range(d, limit + 1, d):
            divs[m].append(d)
    c3, c4, c5, c7 = (CHARACTERS[k] for k in ("chi3", "chi4_2", "chi5_3", "chi7_4"))
    for n in range(1, limit + 1):
        ds = divs[n]
        checks = (
            sigma(1, n) == sum(ds),
            sigma(3, n) == sum(d ** 3 for d in ds),
            sigma_twisted_d(c3, 0, n) == sum(c3(d) for d in ds),
            sigma_twisted_d(c4, 2, n) == sum(c4(d) * d * d for d in ds),
            sigma_twisted_q(c3, 2, n) == sum(c3(n // d) * d * d for d in ds),
            sigma_twisted_q(c5, 1, n) == sum(c5(n // d) * d for d in ds),
            sigma_twisted_q(c7, 2, n) == sum(c7(n // d) * d * d for d in ds),
            sigma_sharp(3, 5, n) == 3 ** (5 * valuation(3, n)) * sum(d ** 5 for d in ds if d % 3),
            sigma_sharp(5, 3, n) == 5 ** (3 * valuation(5, n)) * sum(d ** 3 for d in ds if d % 5),
        )
        if not all(checks):
            return False
    return True


def test_8_property_suites():
    rng = random.Random(20160140)
    outcomes = {
        "ring laws": _ring_laws(rng),
        "invert round trip": _invert_round_trip(rng),
        "pentagonal sparsity": _pentagonal_sparsity(),
        "hook/conjugate symmetry": _hook_symmetry(rng),
        "character multiplicativity": _character_multiplicativity(),
        "divisor sums vs enumeration, n <= 10^4": _divisor_sums(),
    }
    failed = [k for k, v in outcomes.items() if not v]
    record(8, "randomized property suites (fixed seed)", not failed,
           "failed: " + ", ".join(failed) if failed else "%d suites" % len(outcomes))
