import random

import pytest

from diograph.numtheory import (
    Factorization,
    count_unit_roots,
    crt_combine,
    factorize,
    is_prime,
    is_square,
    same_square_free_part,
    square_free_part,
    unit_roots_mod,
)


def brute_unit_roots(a):
    return [x for x in range(a) if (x * x - 1) % a == 0] if a > 1 else [0]


def brute_factorize(n):
    out = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def test_is_square_examples():
    assert is_square(3 * 8 + 1)
    assert is_square(0)
    assert not is_square(1 * 2 + 1)
    with pytest.raises(ValueError):
        is_square(-1)


def test_factorize_examples():
    assert factorize(24).factors == {2: 3, 3: 1}
    assert factorize(24).omega == 2
    assert factorize(1).factors == {}
    assert factorize(1).omega == 0
    assert factorize(840).factors == brute_factorize(840) == {2: 3, 3: 1, 5: 1, 7: 1}
    with pytest.raises(ValueError):
        factorize(0)


def test_factorize_invariants_random():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randrange(1, 10**6)
        f = factorize(n)
        assert f.factors == brute_factorize(n)
        prod = 1
        for p, e in f.factors.items():
            assert is_prime(p)
            prod *= p**e
        assert prod == n
        assert list(f.factors) == sorted(f.factors)


def test_factorize_above_sieve_bound():
    n = 10_000_019 * 4  # prime just above the default sieve bound
    assert factorize(n).factors == {2: 2, 10_000_019: 1}
    big = 10_000_019 * 10_000_079
    assert factorize(big).factors == {10_000_019: 1, 10_000_079: 1}


def test_square_free_part_examples():
    assert square_free_part(16) == 1
    assert square_free_part(12) == 3
    assert square_free_part(7) == 7


def test_square_free_part_invariants():
    for n in range(1, 10_001):
        s = square_free_part(n)
        assert n % s == 0
        assert is_square(n // s)
        assert all(e == 1 for e in factorize(s).factors.values())


def test_same_square_free_part_matches_direct():
    rng = random.Random(11)
    for _ in range(300):
        a = rng.randrange(1, 5000)
        b = rng.randrange(1, 5000)
        assert same_square_free_part(a, b) == (
            square_free_part(a) == square_free_part(b)
        )


def test_unit_roots_examples():
    assert unit_roots_mod(24).roots == (1, 5, 7, 11, 13, 17, 19, 23)
    assert unit_roots_mod(24).count == 8
    assert unit_roots_mod(2).roots == (1,)
    assert unit_roots_mod(2).count == 1
    assert unit_roots_mod(1).roots == (0,)
    assert unit_roots_mod(1).count == 1


def test_count_unit_roots_examples():
    assert count_unit_roots(24) == 8
    assert count_unit_roots(15) == 4
    assert count_unit_roots(4) == 2
    assert count_unit_roots(1) == 1


def test_unit_roots_against_brute_force_small():
    for a in range(1, 2001):
        enum = unit_roots_mod(a)
        assert list(enum.roots) == brute_unit_roots(a)
        assert enum.count == count_unit_roots(a) == len(enum.roots)


def test_root_count_headline_bound():
    for a in range(1, 5001):
        assert count_unit_roots(a) <= 2 ** (factorize(a).omega + 1)


def test_crt_combine():
    x, m = crt_combine([(1, 4), (3, 9)])
    assert (x, m) == (21, 36)
    with pytest.raises(ValueError):
        crt_combine([(0, 4), (1, 6)])


def test_factorization_type_invariants():
    f = factorize(360)
    assert isinstance(f, Factorization)
    assert f.n == 360
    assert f.factors == {2: 3, 3: 2, 5: 1}
