from fractions import Fraction
from math import gcd

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lacasse.exact import binomial, factorial, ipow00, multinomial


def _factorial_oracle(n: int) -> int:
    # repeated multiplication, no library calls
    acc = 1
    for i in range(2, n + 1):
        acc *= i
    return acc


def test_factorial_examples():
    assert factorial(0) == 1
    assert factorial(5) == 120
    assert factorial(20) == 2432902008176640000 == _factorial_oracle(20)


def test_factorial_matches_repeated_multiplication():
    for n in range(60):
        assert factorial(n) == _factorial_oracle(n)


def test_factorial_rejects_negative():
    with pytest.raises(ValueError):
        factorial(-1)


def test_binomial_examples():
    assert binomial(4, 2) == 6
    assert binomial(7, 0) == 1
    assert binomial(5, 9) == 0
    assert binomial(5, -1) == 0


def test_binomial_rejects_negative_n():
    with pytest.raises(ValueError):
        binomial(-2, 1)


def test_binomial_factorial_identity_exhaustive():
    # C(n,k) k! (n-k)! == n! for all 0 <= k <= n <= 50
    for n in range(51):
        fn = factorial(n)
        for k in range(n + 1):
            assert binomial(n, k) * factorial(k) * factorial(n - k) == fn


def test_multinomial_examples():
    assert multinomial([1, 1, 1]) == 6
    assert multinomial([3, 0, 0]) == 1
    assert multinomial([2, 2, 1]) == 30  # 5!/(2! 2! 1!)


def test_multinomial_rejects_negative_part():
    with pytest.raises(ValueError):
        multinomial([2, -1, 3])


def _iterated_binomial_oracle(parts: list[int]) -> int:
    # peel parts off one at a time: C(total, p0) C(total-p0, p1) ...
    total = sum(parts)
    acc = 1
    for p in parts:
        acc *= binomial(total, p)
        total -= p
    return acc


@given(st.lists(st.integers(min_value=0, max_value=9), min_size=1, max_size=5))
def test_multinomial_equals_iterated_binomials(parts):
    assert multinomial(parts) == _iterated_binomial_oracle(parts)


def test_ipow00_examples():
    assert ipow00(0, 0) == 1  # the k = 0 summand of alpha must equal n^n
    assert ipow00(3, 3) == 27
    assert ipow00(2, 10) == 1024
    assert ipow00(0, 5) == 0


def test_ipow00_rejects_negative():
    with pytest.raises(ValueError):
        ipow00(-1, 2)
    with pytest.raises(ValueError):
        ipow00(2, -1)


@given(
    st.integers(min_value=-10**6, max_value=10**6),
    st.integers(min_value=-10**6, max_value=10**6).filter(lambda v: v != 0),
)
def test_rational_lowest_terms_positive_denominator(p, q):
    f = Fraction(p, q)
    assert f.denominator > 0
    assert gcd(f.numerator, f.denominator) == 1


@given(
    st.integers(min_value=-10**6, max_value=10**6),
    st.integers(min_value=1, max_value=10**6),
    st.integers(min_value=1, max_value=1000),
)
def test_rational_scaling_invariance(p, q, m):
    assert Fraction(p, q) == Fraction(p * m, q * m)


@given(
    st.fractions(min_value=-100, max_value=100, max_denominator=999),
    st.fractions(min_value=-100, max_value=100, max_denominator=999),
)
def test_rational_sum_is_normalized(a, b):
    s = a + b
    assert gcd(s.numerator, s.denominator) == 1
    assert s.denominator > 0
