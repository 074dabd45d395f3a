import dataclasses
import json
from fractions import Fraction

import pytest

from tcore import formulas
from tcore.arith import sigma, sigma_sharp
from tcore.eta import phi, phi_power
from tcore.formulas import (
    REGISTRY,
    FormulaSpec,
    NonIntegralResult,
    UnknownTheorem,
    closed_form,
    cusp_coefficients,
    dump_registry,
    eisenstein_coefficient,
    gamma0_index,
    get_spec,
    lacunarity_density,
    lambert_a51,
    load_registry,
    nonzero_density,
    sturm_bound,
    verify,
)
from tcore.series import TruncatedSeries

INDEX_MAPS = {
    "3,1": (3, 1), "3,2": (3, 2), "3,3": (1, 1), "3,4": (3, 4), "3,6": (1, 2),
    "4,2": (4, 5), "5,1": (1, 1), "5,2": (1, 2), "7,1": (1, 2),
}

# density of eta^8(3 tau) at checkpoints, measured once and frozen
DENSITY_BASELINE = {
    1000: Fraction(173, 1000), 2000: Fraction(329, 2000), 3000: Fraction(79, 500),
    4000: Fraction(623, 4000), 5000: Fraction(96, 625), 6000: Fraction(227, 1500),
    7000: Fraction(263, 1750), 8000: Fraction(149, 1000), 9000: Fraction(166, 1125),
    10000: Fraction(1469, 10000),
}


def test_registry_contents():
    assert [s.id for s in REGISTRY] == list(INDEX_MAPS)
    for s in REGISTRY:
        assert s.index_map == INDEX_MAPS[s.id]
        assert s.id == "%d,%d" % (s.t, s.k)
    divisors = {s.id: s.divisor for s in REGISTRY}
    assert divisors == {"3,1": 1, "3,2": 3, "3,3": 1, "3,4": 81, "3,6": 39,
                        "4,2": 32, "5,1": 1, "5,2": 13, "7,1": 8}
    assert {s.id for s in REGISTRY if s.cusp is None} == {"3,1", "3,2", "3,3", "5,1"}


def test_registry_round_trip(tmp_path):
    path = tmp_path / "reg.json"
    path.write_text(dump_registry(REGISTRY))
    assert tuple(load_registry(path)) == REGISTRY
    manifest = json.loads(path.read_text())
    assert set(manifest[0]) >= {"id", "t", "k", "index_map", "eisenstein", "cusp",
                                "divisor", "level", "weight"}


def test_get_spec():
    assert get_spec("3,4").divisor == 81
    assert get_spec("A5,2").t == 5
    with pytest.raises(UnknownTheorem):
        get_spec("9,9")


def test_spec_validation():
    base = dataclasses.asdict(get_spec("3,4"))
    with pytest.raises(ValueError):
        FormulaSpec(**{**base, "index_map": (0, 1)})
    with pytest.raises(ValueError):
        FormulaSpec(**{**base, "eisenstein": {"function": "zeta"}})
    with pytest.raises(KeyError):
        FormulaSpec(**{**base, "cusp": "nope"})


def test_closed_form_examples():
    s34 = get_spec("3,4")
    assert sigma(3, 16) == 4681
    assert cusp_coefficients("eta8_3", 16)[16] == 64
    assert closed_form(s34, 4) == (4681 - 64) // 81 == 57

    s52 = get_spec("5,2")
    a6 = cusp_coefficients("eta4_1_4_5", 6)[6]
    assert a6 == -8
    assert sigma_sharp(5, 3, 6) - a6 == 260
    assert closed_form(s52, 4) == 20

    assert closed_form(get_spec("3,1"), 3) == 0


def test_no_cusp_entries_reduce_to_eisenstein():
    s = get_spec("3,2")
    for n in range(50):
        assert closed_form(s, n) * 3 == sigma(1, 3 * n + 2)


@pytest.mark.parametrize("spec", REGISTRY, ids=lambda s: s.id)
def test_closed_form_matches_series(spec):
    ser = phi_power(spec.t, spec.k, 120)
    cusp = cusp_coefficients(spec.cusp, spec.exponent(120)) if spec.cusp else None
    assert [closed_form(spec, n, cusp) for n in range(121)] == list(ser)


@pytest.mark.parametrize("spec", [s for s in REGISTRY if s.divisor > 1], ids=lambda s: s.id)
def test_exact_divisibility(spec):
    top = spec.exponent(300)
    cusp = cusp_coefficients(spec.cusp, top) if spec.cusp else TruncatedSeries.zero(top)
    for n in range(301):
        m = spec.exponent(n)
        assert (eisenstein_coefficient(spec, m) - cusp[m]) % spec.divisor == 0


def test_non_integral_raises():
    bad = dataclasses.replace(get_spec("3,2"), divisor=4)
    with pytest.raises(NonIntegralResult) as exc:
        closed_form(bad, 0)
    assert exc.value.value == Fraction(3, 4)


def test_verify_a32():
    r = verify(get_spec("3,2"), 100, 20)
    assert r.ok and r.first_mismatch is None
    assert r.sturm_bound == 2
    assert r.terms_checked == 100 and r.oracle_checked == 21
    assert r.sturm_covered


def test_verify_corrupted_divisor():
    bad = dataclasses.replace(get_spec("3,2"), divisor=4)
    r = verify(bad, 50, 10)
    assert not r.ok
    mm = r.first_mismatch
    assert mm.n == 0 and mm.formula == Fraction(3, 4) and mm.series == 1 and mm.oracle == 1


@pytest.mark.parametrize("spec", [s for s in REGISTRY if s.cusp], ids=lambda s: s.id)
def test_verify_catches_flipped_cusp_sign(spec, monkeypatch):
    real = formulas.cusp_coefficients
    monkeypatch.setattr(formulas, "cusp_coefficients", lambda *a, **kw: -real(*a, **kw))
    r = verify(spec, 20, 5)
    assert not r.ok
    assert r.first_mismatch.formula != r.first_mismatch.series


def test_verify_a71():
    r = verify(get_spec("7,1"), 500, 25)
    assert r.ok
    assert r.oracle_checked == 26
    assert r.sturm_bound == 2


def test_verify_oracle_disagreement_is_data(monkeypatch):
    monkeypatch.setattr(formulas, "tuple_counts", lambda n, t, k, cap=None: [1, 7] + [0] * (n - 1))
    r = verify(get_spec("5,1"), 10, 5)
    assert r.first_mismatch == formulas.Mismatch(1, 1, 1, 7)


@pytest.mark.parametrize("level, weight, index, bound", [
    (9, 4, 12, 4), (3, 6, 4, 2), (16, 3, 24, 6), (5, 2, 6, 1), (7, 3, 8, 2),
    (1, 12, 1, 1), (9, 2, 12, 2), (30, 2, 72, 12),
])
def test_sturm(level, weight, index, bound):
    assert gamma0_index(level) == index
    assert sturm_bound(level, weight) == bound


def test_lambert_examples():
    s = lambert_a51(40)
    assert s[0] == 0 and s[1] == 1 and s[5] == 5
    assert list(s)[1:6] == [1, 1, 2, 3, 5]


def test_lambert_matches_phi5():
    assert lambert_a51(2000) == phi(5, 1999).shift(1, 2000)


def test_lacunarity_support_bound():
    s = cusp_coefficients("eta8_3", 3000)
    assert all(s[n] == 0 for n in range(3001) if n % 3 != 1)
    for N in (10, 100, 1000, 3000):
        assert lacunarity_density("eta8_3", N) <= Fraction(1, 3)


def test_lacunarity_baseline():
    s = cusp_coefficients("eta8_3", 10 ** 4)
    measured = {N: nonzero_density(s, N) for N in DENSITY_BASELINE}
    assert measured == DENSITY_BASELINE
    checkpoints = sorted(measured)
    assert all(measured[a] >= measured[b] for a, b in zip(checkpoints, checkpoints[1:]))


def test_density_of_all_ones():
    assert nonzero_density(TruncatedSeries([1] * 51), 50) == 1


def test_lacunarity_unknown_form():
    with pytest.raises(KeyError):
        lacunarity_density("nope", 10)
