from fractions import Fraction

import mpmath
import pytest

from thuemeasure.exactnum import DomainError, is_squarefree
from thuemeasure.families import (
    conservativity,
    enumerate_from_convergents,
    family_angle,
    family_instance,
    gcd_lower_bound_check,
    liouville_exponent,
    quintic_gap,
    script_n_case,
    sextic_convergents,
)
from thuemeasure.hyperg import PrimePowerValue


def test_eps_reference_value():
    fc = family_instance(4, 1, 9)
    # 9 tan^2(pi/8) = 1.5442...; nearest integer 2 = 2 * 1^2
    assert (fc.a1, fc.a2) == (2, 1)
    with mpmath.workdps(40):
        ref = 2 - 9 * mpmath.tan(mpmath.pi / 8) ** 2
    assert abs(float(fc.eps.upper) - float(ref)) < 1e-12
    assert abs(float(fc.eps.upper) - 0.4558) < 1e-3
    assert fc.hypotheses_ok
    # b this small gives no measure from either the closed form or the direct route
    assert not fc.theorem_applicable and not fc.crosscheck.applicable


def test_eps_can_be_negative():
    fc = family_instance(4, 1, 6)
    # 6 tan^2(pi/8) = 1.029...; nearest integer 1 (floor and nearest agree, eps < 0)
    assert fc.eps.certainly_lt(0)


@pytest.mark.parametrize("n,k", [(4, 1), (4, 3), (5, 1), (5, 2)])
def test_family_theorems_are_conservative(n, k):
    count = 0
    for b in range(1, 201):
        try:
            fc = family_instance(n, k, b)
        except DomainError:
            continue
        assert is_squarefree(fc.a1)
        if not fc.theorem_applicable:
            continue
        count += 1
        kap_ok, c_ok = conservativity(fc)
        assert kap_ok and c_ok, b
        assert gcd_lower_bound_check(fc), b
        assert fc.root_matches, b
        assert fc.c_sharper.upper <= fc.c_thm.upper or (n, k) == (4, 3)
    assert count > 0


def test_script_n_cases():
    assert script_n_case(4, 1, 2, 1, 9)[0] == PrimePowerValue.of(1)
    assert script_n_case(4, 1, 3, 1, 7)[0] == PrimePowerValue.of(4)
    assert script_n_case(4, 1, 3, 1, 5)[0] == PrimePowerValue.of(8)
    n, parts = script_n_case(5, 1, 5, 1, 3)
    assert parts == (PrimePowerValue.of(5), PrimePowerValue.of(32))
    n, parts = script_n_case(5, 1, 1, 5, 9)
    assert parts[0] == PrimePowerValue({5: Fraction(5, 4)})
    assert parts[1] == PrimePowerValue({2: Fraction(5, 2)})
    assert script_n_case(5, 1, 1, 5, 7)[1][1] == PrimePowerValue.of(32)


def test_angles_and_liouville_exponents():
    assert family_angle(4, 3) == Fraction(3, 8)
    assert family_angle(5, 2) == Fraction(4, 5)
    with pytest.raises(DomainError):
        family_angle(4, 2)
    assert (liouville_exponent(4), liouville_exponent(5), liouville_exponent(7)) == (4, 4, 6)


def test_quintic_gap_is_nonzero_for_integers():
    # 5 (p - b)^2 = 4 b^2 would make sqrt(5) rational
    for b in range(1, 300):
        for p in range(0, 3 * b):
            assert quintic_gap(p, b) != 0


def test_convergent_members_improve_on_liouville():
    rows = enumerate_from_convergents(4, 1, 6)
    assert len(rows) == 6
    for fc in rows:
        v = fc.verdict()
        assert v is not None and v.improves


def test_sextic_rows_exceed_three():
    rows = sextic_convergents(10)
    assert len(rows) == 10
    for r in rows:
        assert r.exceeds_three
        assert r.a1 * r.a2**2 == r.p
        if r.kappa_at_floor is not None:
            assert r.kappa_at_floor.certainly_gt(3)
