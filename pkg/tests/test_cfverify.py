import math
from fractions import Fraction

import pytest

from thuemeasure.cfverify import (
    PUBLISHED_TARGETS,
    RefinementFailure,
    gap_check,
    refine,
    small_q_scan,
    tail_threshold,
)
from thuemeasure.exactnum import DomainError
from thuemeasure.realengine import AlphaSpec, CertifiedReal, QuadraticSurd, cf_expand
from thuemeasure.thue_core import certify_standard


@pytest.fixture(scope="module")
def first_instance():
    return certify_standard(7, -19, 19)


def test_tail_threshold_minimal_exponents():
    want = {(7, -19, 19): 6946, (7, -39, 3): 2579, (7, -77, 11): 3956, (13, -7, 7): 3829}
    for key, k in want.items():
        cert = certify_standard(*key)
        c_star, K = PUBLISHED_TARGETS[key]
        assert tail_threshold(cert.c_prop, cert.kappa, c_star, K) == k


def test_tail_threshold_is_tight():
    # q^(K - kappa - 1) >= c c* holds at 10^k and fails just below 10^(k-1)
    cert = certify_standard(7, -39, 3)
    c_star, K = PUBLISHED_TARGETS[(7, -39, 3)]
    k = tail_threshold(cert.c_prop, cert.kappa, c_star, K)
    e = float(K - 1) - float(cert.kappa.upper)
    need = math.log10(float(cert.c_prop.upper) * float(c_star))
    assert k * e >= need > (k - 1) * e


def test_tail_threshold_rejects_unreachable_target(first_instance):
    with pytest.raises(RefinementFailure):
        tail_threshold(first_instance.c_prop, first_instance.kappa, Fraction(1), Fraction(4))


def test_tail_threshold_trivial_when_constant_small():
    one = CertifiedReal.exact(1, 128)
    assert tail_threshold(one, CertifiedReal.exact(1, 128), Fraction(1, 2), Fraction(3)) == 0


def test_gap_threshold_on_a_quadratic_surd():
    # sqrt(2) = [1; 2, 2, ...], a_max = 2
    cf = cf_expand(QuadraticSurd(Fraction(0), Fraction(1), 2), 40)
    T, first, (idx, a_max) = gap_check(cf, Fraction(1, 10), Fraction(3), 6)
    assert a_max == 2 and idx == 1
    assert T.contains(Fraction(4, 10))
    assert first == 0
    with pytest.raises(RefinementFailure):
        gap_check(cf, Fraction(1, 10), Fraction(2), 6)
    with pytest.raises(RefinementFailure):
        gap_check(cf, Fraction(1, 10), Fraction(3), 40)


def test_small_q_scan_passes_and_detects_counterexamples():
    alpha = AlphaSpec.for_root(7, -19, 5)
    ok = small_q_scan(alpha, Fraction("0.09"), Fraction("4.6"), 18)
    assert ok.passed and ok.method == "direct"
    # |alpha - p| <= 1/2 at q = 1, so a constant of 1 must fail there
    bad = small_q_scan(alpha, Fraction(1), Fraction("2.01"), 50)
    assert not bad.passed and bad.counterexample[1] == 1
    wide = small_q_scan(alpha, Fraction("0.09"), Fraction("4.6"), 20000)
    assert wide.passed and wide.method == "convergents+legendre"
    with pytest.raises(DomainError):
        small_q_scan(alpha, Fraction(1), Fraction(3), 10**7)


def test_refine_with_minimal_tail(first_instance):
    out = refine(first_instance, Fraction("0.09"), Fraction("4.6"))
    assert out.verified and out.failed_stage is None
    assert out.tail_exponent == 6946
    assert out.small_scan.passed
    assert out.first_safe_index is not None


def test_refine_rejects_tail_below_minimum(first_instance):
    out = refine(first_instance, Fraction("0.09"), Fraction("4.6"), check_bounds=False, tail_exponent=100)
    assert not out.verified and out.failed_stage == "tail"


def test_refine_rejects_too_strong_target(first_instance):
    out = refine(first_instance, Fraction(10), Fraction("4.6"), check_bounds=False)
    assert not out.verified and out.failed_stage == "scan"
    assert out.small_scan.counterexample is not None


def test_refine_needs_applicable_certificate():
    with pytest.raises(DomainError):
        refine(certify_standard(4, -6, 100), Fraction(1), Fraction(3))
