import random
from math import lcm

import pytest

from gbent import (
    CycInt,
    ExactDivisionError,
    GBFunction,
    PAryFunction,
    Spectrum,
    all_points,
    compose,
    gamma_general,
    gamma_product,
    gamma_sum,
    gamma_table,
    inverse_wht,
    root,
    spectrum_records,
    wht_composed,
    wht_naive,
    wht_pary_fast,
)
from conftest import rank_vector, random_pary, random_tuple


def zeta_q(modulus, q, e):
    return root(modulus, (e * (modulus // q)) % modulus)


def assert_parseval(s: Spectrum):
    total = sum((v.norm_sq() for v in s.values), CycInt.zero(s.modulus))
    assert total == s.p ** (2 * s.n)


def test_naive_constant_zero():
    s = wht_naive(GBFunction(3, 1, 9, (0, 0, 0)))
    assert s.values[0] == 3
    assert s.values[1].is_zero() and s.values[2].is_zero()
    assert_parseval(s)


def test_naive_linear_multiple():
    # f(x) = 3x into Z_9 collapses to a zeta_3 character: S(u) = 3 [u = 1].
    s = wht_naive(GBFunction(3, 1, 9, (0, 3, 6)))
    assert s.values[0].is_zero()
    assert s.values[1] == 3
    assert s.values[2].is_zero()


def test_fast_constant_zero():
    s = wht_pary_fast(PAryFunction(3, 2, (0,) * 9))
    assert s.values[0] == 9
    assert all(v.is_zero() for v in s.values[1:])


def test_fast_quadratic_magnitude():
    s = wht_pary_fast(PAryFunction(3, 1, (0, 1, 1)))
    for v in s.values:
        assert v.norm_sq() == 3


def test_fast_equals_naive_oracle(rng):
    for p, n in ((3, 1), (3, 2), (3, 3), (5, 1), (5, 3)):
        for _ in range(4):
            g = random_pary(rng, p, n)
            fast = wht_pary_fast(g)
            naive = wht_naive(g.as_gbfunction())
            assert fast.values == naive.values
            assert_parseval(fast)


def test_fast_modulus_embedding(rng):
    g = random_pary(rng, 3, 2)
    small = wht_pary_fast(g)
    large = wht_pary_fast(g, modulus=108)
    for a, b in zip(small.values, large.values):
        assert a.promote(108) == b


def test_inverse_round_trip(rng):
    for q in (9, 21):
        for _ in range(5):
            f = GBFunction(3, 2, q, tuple(rng.randrange(q) for _ in range(9)))
            s = wht_naive(f)
            recovered = inverse_wht(s)
            for x in range(9):
                assert recovered[x] == zeta_q(s.modulus, q, f.table[x])


def test_inverse_of_point_mass():
    # S(0) = p^n and 0 elsewhere is the spectrum of the constant zero.
    modulus = lcm(4, 9)
    values = [CycInt.integer(modulus, 9)] + [CycInt.zero(modulus)] * 8
    t = inverse_wht(Spectrum(3, 2, 9, modulus, tuple(values)))
    assert all(v == 1 for v in t)


def test_inverse_rejects_invalid_spectrum():
    modulus = lcm(4, 9)
    values = [CycInt.integer(modulus, 1)] + [CycInt.zero(modulus)] * 8
    with pytest.raises(ExactDivisionError):
        inverse_wht(Spectrum(3, 2, 9, modulus, tuple(values)))


def test_gamma_trivial_cases():
    assert gamma_sum(3, 1, ()) == 1
    assert gamma_product(3, 1, ()) == 1
    assert gamma_general(3, 1, 3, ()) == 1
    g0 = gamma_sum(3, 2, (0,))
    assert g0 == root(36, 0) + root(36, 4) + root(36, 8)  # 1 + z9 + z9^2


@pytest.mark.parametrize("p,k", [(3, 2), (3, 3), (5, 2), (5, 3)])
def test_gamma_product_equals_sum(p, k):
    for rank in range(p ** (k - 1)):
        a = rank_vector(p, k - 1, rank)
        assert gamma_product(p, k, a) == gamma_sum(p, k, a)


def test_gamma_general_matches_definition():
    # Direct instantiation at p=3, k=3, q=21, a=(0,0): sum of zeta_21^(3v1+v2).
    modulus = lcm(4, 21)
    expected = CycInt.zero(modulus)
    for v1 in range(3):
        for v2 in range(3):
            expected = expected + zeta_q(modulus, 21, 3 * v1 + v2)
    assert gamma_general(3, 3, 21, (0, 0)) == expected

    # a = (1,2): definitional sum with the character weights.
    expected = CycInt.zero(modulus)
    for v1 in range(3):
        for v2 in range(3):
            phase = (-(v1 + 2 * v2)) % 3
            expected = expected + root(modulus, phase * (modulus // 3)) * zeta_q(
                modulus, 21, 3 * v1 + v2
            )
    assert gamma_general(3, 3, 21, (1, 2)) == expected


def test_gamma_general_prime_power_boundary():
    for rank in range(9):
        a = rank_vector(3, 2, rank)
        assert gamma_general(3, 3, 27, a) == gamma_sum(3, 3, a)


def test_gamma_general_rejects_bad_parameters():
    with pytest.raises(ValueError):
        gamma_general(3, 3, 22, (0, 0))  # p does not divide q
    with pytest.raises(ValueError):
        gamma_general(3, 3, 9, (0, 0))  # q <= p^(k-1)


def test_gamma_table_entries():
    table = gamma_table(3, 3, 27)
    assert len(table.entries) == 9
    assert table.entries[(0, 0)] == sum(
        (root(table.modulus, e * (table.modulus // 27)) for e in range(9)),
        CycInt.zero(table.modulus),
    )


def test_root_reconstruction_from_gammas():
    # p^(k-1) zeta_(p^k)^e = sum_a zeta_p^(a.u) gamma_a for e = rank(u).
    for p, k in ((3, 2), (3, 3), (5, 2), (5, 3)):
        modulus = lcm(4, p**k)
        table = gamma_table(p, k, p**k)
        for e in range(p ** (k - 1)):
            u = rank_vector(p, k - 1, e)
            acc = CycInt.zero(modulus)
            for a, gamma in table.entries.items():
                dot = sum(ai * ui for ai, ui in zip(a, u)) % p
                acc = acc + root(modulus, dot * (modulus // p)) * gamma
            assert acc == p ** (k - 1) * zeta_q(modulus, p**k, e)


def test_composed_k1_is_single_spectrum(rng):
    t = random_tuple(rng, 3, 2, 3, 1)
    composed = wht_composed(t)
    fast = wht_pary_fast(t.components[0])
    assert composed.values == fast.values


def test_composed_equals_naive_oracle(rng):
    cases = [(3, 2, 9, 2), (3, 2, 27, 3), (3, 2, 21, 3), (5, 2, 25, 2), (3, 2, 15, 3)]
    for p, n, q, k in cases:
        for _ in range(4):
            t = random_tuple(rng, p, n, q, k)
            composed = wht_composed(t)
            naive = wht_naive(compose(t))
            assert composed.values == naive.values
            assert_parseval(composed)


def test_spectrum_records_are_ordered():
    f = GBFunction(3, 1, 9, (0, 0, 0))
    recs = spectrum_records(wht_naive(f))
    assert [r[0] for r in recs] == list(all_points(3, 1))
    assert recs[0][1] == "(mod 36) 3"
    assert [r[2] for r in recs] == ["9", "0", "0"]


def test_spectrum_records_irrational_norm():
    # a non-gbent function whose norms leave the rational integers: the
    # record falls back to the canonical polynomial text
    f = GBFunction(3, 1, 9, (0, 1, 0))
    recs = spectrum_records(wht_naive(f))
    assert any(r[2].startswith("(mod 36)") for r in recs)


def test_naive_jobs_deterministic():
    rng = random.Random(5)
    f = GBFunction(3, 4, 27, tuple(rng.randrange(27) for _ in range(81)))
    serial = wht_naive(f, jobs=1)
    parallel = wht_naive(f, jobs=2)
    assert serial.values == parallel.values
