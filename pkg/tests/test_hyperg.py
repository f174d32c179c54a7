import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from thuemeasure.exactnum import DomainError
from thuemeasure.hyperg import (
    BUILTIN_CD,
    CDConstants,
    PrimePowerValue,
    admissible_log_d_floor,
    builtin_cd,
    dnr,
    gamma_ratios,
    lhs_value,
    nmnr,
    parse_cd,
    script_nmn,
    validate_cd,
    xnr,
)


def test_small_hypergeometric_polynomials():
    assert xnr(4, 0).coeffs == (1,)
    assert xnr(4, 1).coeffs == (1, Fraction(5, 3))
    assert dnr(4, 1) == 3
    assert dnr(7, 3) == 13
    assert nmnr(1, 4, 1) == 1
    assert nmnr(2, 4, 2) == 4


@given(st.integers(3, 13), st.integers(0, 12), st.fractions(min_value=-2, max_value=2, max_denominator=50))
def test_xnr_matches_mpmath_hyp2f1(n, r, x):
    got = xnr(n, r)(x)
    assert xnr(n, r).degree == r
    with mpmath.workdps(50):
        ref = mpmath.hyp2f1(-r, -r - mpmath.mpf(1) / n, 1 - mpmath.mpf(1) / n, mpmath.mpf(x.numerator) / x.denominator)
        assert abs(mpmath.mpf(got.numerator) / got.denominator - ref) <= mpmath.mpf(10) ** -35 * max(1, abs(ref))


@given(st.integers(3, 13), st.integers(0, 15))
def test_dnr_clears_denominators(n, r):
    d = dnr(n, r)
    assert all((c * d).denominator == 1 for c in xnr(n, r).coeffs)
    # minimality: no proper divisor works
    for p in set(_primes(d)):
        assert not all((c * (d // p)).denominator == 1 for c in xnr(n, r).coeffs)


def _primes(v):
    p = 2
    while p * p <= v:
        while v % p == 0:
            yield p
            v //= p
        p += 1
    if v > 1:
        yield v


@given(st.integers(1, 30), st.integers(3, 9), st.integers(0, 8))
def test_nmnr_is_content_of_shifted_polynomial(m, n, r):
    poly = xnr(n, r).compose_linear(Fraction(1), Fraction(-m))
    g = nmnr(m, n, r)
    direct = 0
    for c in poly.coeffs:
        direct = math.gcd(direct, abs(c.numerator))
    assert g == (direct or 1)


def test_script_nmn():
    assert script_nmn(25, 5) == PrimePowerValue({5: Fraction(5, 4)})
    assert script_nmn(1, 7) == PrimePowerValue.of(1)
    assert script_nmn(7, 7) == PrimePowerValue.of(7)
    assert script_nmn(8, 4) == PrimePowerValue.of(8)
    assert script_nmn(64, 4) == PrimePowerValue.of(8)  # capped at v_2(4) + 1
    with pytest.raises(DomainError):
        script_nmn(0, 4)


def test_gamma_ratios_against_mpmath():
    assert gamma_ratios(4, 1) == (Fraction(4, 3), Fraction(5, 4))
    for n in (4, 5, 7, 13):
        for r in (0, 3, 10):
            a, b = gamma_ratios(n, r)
            with mpmath.workdps(40):
                inv = mpmath.mpf(1) / n
                ra = mpmath.gamma(1 - inv) * mpmath.factorial(r) / mpmath.gamma(r + 1 - inv)
                rb = n * mpmath.gamma(r + 1 + inv) / (mpmath.factorial(r) * mpmath.gamma(inv))
                assert abs(mpmath.mpf(a.numerator) / a.denominator - ra) < mpmath.mpf(10) ** -30
                assert abs(mpmath.mpf(b.numerator) / b.denominator - rb) < mpmath.mpf(10) ** -30


@pytest.mark.parametrize("n", [4, 5, 7, 13])
def test_builtin_constants_are_admissible(n):
    rep = validate_cd(BUILTIN_CD[n], r_max=50)
    assert rep.passed and rep.r_checked == 51 and rep.failed_at is None


def test_trivial_constants_fail_at_first_step():
    rep = validate_cd(CDConstants(4, Fraction(1), D_value=Fraction(1)), r_max=50)
    assert not rep.passed and rep.failed_at == 0


def test_too_small_d_fails_later():
    rep = validate_cd(CDConstants(7, Fraction(64000), D_log=Fraction(1)), r_max=50)
    assert not rep.passed and rep.failed_at > 0


def test_parse_cd_and_lookup():
    cd = parse_cd(7, "64000, exp(1.66)")
    assert cd == CDConstants(7, Fraction(64000), D_log=Fraction("1.66"), source="user")
    assert parse_cd(4, "10,3").D_value == 3
    assert builtin_cd(13).C == 390000
    with pytest.raises(DomainError):
        builtin_cd(6)
    with pytest.raises(DomainError):
        CDConstants(4, Fraction(1), D_log=Fraction(1), D_value=Fraction(3))
    with pytest.raises(DomainError):
        CDConstants(4, Fraction(1), D_value=Fraction(1, 2))


def test_admissible_floor_is_below_builtin_d():
    for n in (4, 5, 7, 13):
        floor = admissible_log_d_floor(n, 1, 50, BUILTIN_CD[n].C)
        assert floor.certainly_lt(BUILTIN_CD[n].log_D())


def test_lhs_value_positive():
    assert lhs_value(4, 1, 0) == 1
    assert all(lhs_value(7, 1, r) >= 1 for r in range(10))


pos = st.fractions(min_value=Fraction(1, 10**4), max_value=10**4, max_denominator=10**4)


@given(pos, pos, st.fractions(min_value=-3, max_value=3, max_denominator=6))
def test_prime_power_value_ordering_matches_floats(a, b, e):
    x = PrimePowerValue.of(a) ** e
    y = PrimePowerValue.of(b)
    fx = float(a) ** float(e)
    if abs(fx - float(b)) > 1e-9 * max(fx, float(b)):
        assert (x < y) == (fx < float(b))
    assert (x * y) / y == x
    v = x.value(128)
    assert float(v.lower) <= fx * (1 + 1e-12) and fx * (1 - 1e-12) <= float(v.upper)


def test_prime_power_composite_atoms_compare_exactly():
    six = PrimePowerValue({6: Fraction(1)})
    assert six.compare(6) == 0
    assert six ** Fraction(1, 2) < PrimePowerValue.of(3)
    assert (six * 5).as_fraction() == 30
    with pytest.raises(DomainError):
        PrimePowerValue.of(2).sqrt().as_fraction()
