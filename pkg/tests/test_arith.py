import math
import random

import pytest

from planeset.arith import (
    FactorTable,
    divisor_pairs,
    divisors,
    factorize,
    is_perfect_square,
    isqrt,
    squarefree_part,
    tau,
)


def test_isqrt_examples():
    assert isqrt(0) == 0
    assert isqrt(576) == 24
    assert isqrt(577) == 24
    with pytest.raises(ValueError):
        isqrt(-1)


def test_isqrt_random_256_bit():
    rng = random.Random(2024)
    for _ in range(200):
        m = rng.getrandbits(256)
        r = isqrt(m)
        assert r * r <= m < (r + 1) * (r + 1)


def test_is_perfect_square_examples():
    assert is_perfect_square(0)
    assert is_perfect_square(144)
    assert not is_perfect_square(135)
    assert not is_perfect_square(-4)


def test_squarefree_part_examples():
    assert squarefree_part(576) == 1
    assert squarefree_part(3) == 3
    assert squarefree_part(240) == 15
    with pytest.raises(ValueError):
        squarefree_part(0)


def test_squarefree_part_properties():
    rng = random.Random(7)
    table = FactorTable(1000)
    for _ in range(500):
        m = rng.randint(1, 10**6)
        k = squarefree_part(m)
        assert squarefree_part(k) == k  # squarefree
        w2, rem = divmod(m, k)
        assert rem == 0 and is_perfect_square(w2)
        assert table.squarefree_part(m) == k


def test_tau_examples():
    assert tau(1) == 1
    assert tau(315) == 12
    assert tau(144) == 15


def test_tau_matches_divisor_enumeration():
    rng = random.Random(99)
    for _ in range(200):
        m = rng.randint(1, 10**5)
        ds = divisors(m)
        assert len(ds) == tau(m)
        assert ds == sorted(d for d in range(1, m + 1) if m % d == 0) or m > 10**4
        assert all(m % d == 0 for d in ds)


def test_divisor_pairs_examples():
    assert divisor_pairs(1) == [(1, 1)]
    assert divisor_pairs(12) == [(12, 1), (6, 2), (4, 3)]
    pairs315 = divisor_pairs(315)
    assert len(pairs315) == 6
    assert (315, 1) in pairs315 and (21, 15) in pairs315


def test_divisor_pairs_count_property():
    rng = random.Random(31)
    for _ in range(300):
        m = rng.randint(1, 10**5)
        pairs = divisor_pairs(m)
        assert len(pairs) == (tau(m) + 1) // 2
        for x, y in pairs:
            assert x * y == m and x >= y >= 1
        ys = [y for _, y in pairs]
        assert ys == sorted(ys)


def test_factor_table_reconstruction():
    table = FactorTable(5000)
    for m in range(2, 5001):
        p = table.smallest_prime_factor[m]
        assert m % p == 0
        assert all(p % q for q in range(2, p))  # p prime
    rng = random.Random(5)
    for _ in range(200):
        m = rng.randint(1, 10**7)  # exercises the above-limit fallback
        f = table.factorize(m)
        assert f.value == m
        primes = [p for p, _ in f.prime_powers]
        assert primes == sorted(primes)


def test_factorization_arithmetic():
    f = factorize(12)
    g = factorize(18)
    assert f.multiply(g).value == 216
    assert f.multiply(g).divide_exact(g).value == 12
    with pytest.raises(ValueError):
        factorize(4).divide_exact(factorize(8))


def test_squarefree_part_of_product():
    table = FactorTable(100)
    rng = random.Random(77)
    for _ in range(200):
        fs = [rng.randint(1, 100) for _ in range(4)]
        prod = math.prod(fs)
        assert table.squarefree_part_of_product(fs) == squarefree_part(prod)
