import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from thuemeasure.exactnum import (
    DomainError,
    FactorizationBudgetExceeded,
    QuadElement,
    SurdScalar,
    core,
    factorint,
    fnt_coefficients,
    fnt_eval,
    is_prime,
    is_squarefree,
    quad_pow,
    squarefree_split,
    totient,
    vp,
)


def naive_factor(n):
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


@given(st.integers(min_value=1, max_value=10**7))
def test_factorint_matches_trial_division(n):
    assert factorint(n).factors == naive_factor(n)


@given(st.integers(min_value=-(10**30), max_value=10**30).filter(lambda v: v != 0))
def test_factorint_recomposes(n):
    f = factorint(n)
    assert f.value() == n
    assert all(is_prime(p) for p in f.factors)


def test_factorint_semiprime_beyond_sieve():
    p, q = 1000000007, 998244353
    assert factorint(p * q).factors == {q: 1, p: 1}


def test_factorint_zero_rejected():
    with pytest.raises(DomainError):
        factorint(0)


def test_factorization_budget_is_enforced():
    # product of two 20-digit primes needs far more than 10 rho steps
    n = 10000000000000000051 * 10000000000000000087
    with pytest.raises(FactorizationBudgetExceeded):
        factorint(n, rho_budget=10)


def test_is_prime_small_range():
    sieve = [i for i in range(2, 5000) if all(i % d for d in range(2, math.isqrt(i) + 1))]
    assert [i for i in range(5000) if is_prime(i)] == sieve


def test_is_prime_carmichael_and_large():
    assert not is_prime(561)
    assert not is_prime(3215031751)  # strong pseudoprime to 2, 3, 5, 7
    assert is_prime(2**61 - 1)
    assert not is_prime(2**61 + 1)


@given(st.integers(min_value=1, max_value=10**9))
def test_squarefree_split(n):
    a1, a2 = squarefree_split(n)
    assert a1 * a2 * a2 == n
    assert is_squarefree(a1)


@given(st.integers(min_value=-(10**9), max_value=10**9).filter(lambda v: v != 0))
def test_core_sign_and_square_quotient(n):
    d = core(n)
    assert (d > 0) == (n > 0)
    r = math.isqrt(n // d)
    assert r * r * d == n


def test_core_examples():
    assert core(-19) == -19
    assert core(-77 * 4) == -77
    assert core(72) == 2


@given(st.integers(min_value=1, max_value=3000))
def test_totient_matches_gcd_count(n):
    assert totient(n) == sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def test_totient_examples():
    assert (totient(7), totient(13), totient(6)) == (6, 12, 2)


def test_vp():
    assert vp(2, 48) == 4
    assert vp(3, Fraction(5, 27)) == -3
    with pytest.raises(DomainError):
        vp(4, 8)


quad_t = st.integers(min_value=-200, max_value=200).filter(lambda t: t not in (0, 1) and core(t) == t)
small_q = st.fractions(min_value=-50, max_value=50, max_denominator=12)


@given(quad_t, small_q, small_q, small_q, small_q)
def test_norm_is_multiplicative(t, a, b, c, d):
    x, y = QuadElement(a, b, t), QuadElement(c, d, t)
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x * y).conj() == x.conj() * y.conj()
    assert x.norm() == (x * x.conj()).re


@given(quad_t, st.integers(-20, 20), st.integers(0, 12))
def test_quad_pow_matches_repeated_product(t, x, e):
    z = QuadElement(Fraction(x), Fraction(1), t)
    acc = QuadElement.rational(1, t)
    for _ in range(e):
        acc = acc * z
    assert quad_pow(z, e) == acc


def test_algebraic_integers_in_one_mod_four():
    h = Fraction(1, 2)
    assert QuadElement(h, h, -3).is_algebraic_integer()
    assert not QuadElement(h, h, -1).is_algebraic_integer()
    assert QuadElement(h, h, 5).is_algebraic_integer()


@given(st.integers(3, 15), quad_t, st.integers(-30, 30))
def test_fnt_eval_matches_coefficients_and_quadratic_powers(n, t, x):
    coeffs = fnt_coefficients(n, t)
    assert fnt_eval(n, t, x) == sum(c * x**i for i, c in enumerate(coeffs))
    s = QuadElement.sqrt_t(t)
    v = quad_pow(QuadElement.rational(x, t) - s, n) + quad_pow(QuadElement.rational(x, t) + s, n)
    assert v.co == 0 and v.re == fnt_eval(n, t, x)


def test_surd_scalar_normalisation():
    g = SurdScalar.of(2**7 * 19**3, -19)
    assert (g.q, g.d) == (877952, -19)
    assert SurdScalar.of(10648, Fraction(-11, 2)) == SurdScalar.of(5324, -22)
    assert SurdScalar.of(3, 12) == SurdScalar(6, 3)
    with pytest.raises(DomainError):
        SurdScalar(1, 12)


@given(small_q.filter(lambda q: q != 0), quad_t, small_q.filter(lambda q: q != 0), quad_t)
def test_surd_abs_squared_multiplicative(q1, d1, q2, d2):
    a, b = SurdScalar.of(q1, d1), SurdScalar.of(q2, d2)
    assert (a * b).abs_squared() == a.abs_squared() * b.abs_squared()
    assert ((a * b) / b) == a


def test_surd_products_follow_principal_roots():
    i = SurdScalar(1, -1)
    assert i * i == SurdScalar(-1, 1)
    assert SurdScalar(1, -2) * SurdScalar(1, -3) == SurdScalar(-1, 6)
    assert SurdScalar(1, 1) / i == SurdScalar(-1, -1)
