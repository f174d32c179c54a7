"""Trade a little exponent for a much smaller constant.

A raw measure |alpha - p/q| > 1/(c q^(kappa+1)) with a huge c is turned
into |alpha - p/q| > c*/q^K for a target pair (c*, K):

* q >= B: the raw measure implies the target once q^(K - kappa - 1) >= c c*;
* T < q < B: for convergents, |alpha - p_i/q_i| > 1/((a_{i+1}+2) q_i^2),
  which implies the target once q_i^(K-2) >= c* (a_max+2); any other p/q has
  |alpha - p/q| >= 1/(2q^2) (Legendre), which is weaker still;
* q <= T: checked one q at a time.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional, Tuple

from .exactnum import DomainError
from .realengine import CertifiedReal, CFExpansion, Target, cf_expand, check_cf_invariants
from .thue_core import MeasureCertificate

BITS = 192
LOG10_DIGITS_PER_QUOTIENT = 0.515  # Levy: log10 q_i ~ 0.515 i
DIRECT_SCAN_LIMIT = 10**4


class RefinementFailure(RuntimeError):
    def __init__(self, stage: str, message: str):
        super().__init__(f"{stage}: {message}")
        self.stage = stage


@dataclass(frozen=True)
class SmallScanRecord:
    q_max: int
    method: str  # "direct" or "convergents+legendre"
    passed: bool
    counterexample: Optional[Tuple[int, int]] = None


@dataclass
class RefinedCertificate:
    alpha: Target
    raw: Tuple[CertifiedReal, CertifiedReal]  # (c_prop, kappa)
    target: Tuple[Fraction, Fraction]  # (c_star, kappa_star_plus_one)
    tail_exponent: int  # B = 10**tail_exponent
    cf_used: Optional[CFExpansion] = None
    max_quotient: Optional[Tuple[int, int]] = None  # (0-based index, value)
    gap_bound: Optional[CertifiedReal] = None
    first_safe_index: Optional[int] = None
    small_scan: Optional[SmallScanRecord] = None
    verified: bool = False
    failed_stage: Optional[str] = None
    transcript: List[str] = field(default_factory=list)

    @property
    def tail_bound(self) -> int:
        return 10**self.tail_exponent

    @property
    def max_quotient_position(self) -> Optional[int]:
        """1-based position of the largest quotient, counting the integer part as a_1."""
        return None if self.max_quotient is None else self.max_quotient[0] + 1


def _log10(x: CertifiedReal) -> CertifiedReal:
    return x.log() / CertifiedReal.exact(10, x.bits).log()


def tail_threshold(c_prop: CertifiedReal, kappa_raw: CertifiedReal, c_star: Fraction,
                   kappa_star_plus_one: Fraction) -> int:
    """Least k with q^(K - kappa - 1) >= c_prop c* for all q >= 10^k.

    Returns the exponent k; B = 10**k.
    """
    c_star = Fraction(c_star)
    e = CertifiedReal.exact(Fraction(kappa_star_plus_one) - 1, kappa_raw.bits) - kappa_raw
    if not e.certainly_gt(0):
        raise RefinementFailure("tail", "target exponent does not exceed the raw exponent")
    prod = c_prop * c_star
    if prod.certainly_le(1):
        return 0
    need = _log10(prod)
    k = math.ceil(need.upper / e.lower)
    return max(k, 0)


def _covering_expansion(alpha: Target, tail_exponent: int) -> CFExpansion:
    count = int(tail_exponent / LOG10_DIGITS_PER_QUOTIENT * 1.05) + 50
    B = 10**tail_exponent
    while True:
        cf = cf_expand(alpha, count)
        if cf.certified_count < count:
            raise RefinementFailure("expand", f"only {cf.certified_count} quotients certified")
        q_last = 0
        for _, q in cf.iter_convergents():
            q_last = q
        if q_last > B:
            return cf
        count *= 2


def _split_exponent(k: Fraction) -> Tuple[int, int]:
    k = Fraction(k)
    return k.numerator, k.denominator


def gap_check(cf: CFExpansion, c_star: Fraction, kappa_star_plus_one: Fraction,
              tail_exponent: int) -> Tuple[CertifiedReal, int, Tuple[int, int]]:
    """Threshold T = (c* (a_max + 2))^(1/(K-2)) over convergents up to B.

    Returns (T, index of the first convergent with q_i > T, (index, a_max)).
    Every convergent from that index on satisfies the target through the
    partial-quotient bound; this is verified exactly for the first one and
    follows for the rest because q_i increases.
    """
    c_star = Fraction(c_star)
    K = Fraction(kappa_star_plus_one)
    if K <= 2:
        raise RefinementFailure("gap", "target exponent must exceed 2")
    B = 10**tail_exponent
    qs = cf.quotients
    last = None
    for i, (_, q) in enumerate(cf.iter_convergents()):
        if q > B:
            last = i
            break
    if last is None:
        raise RefinementFailure("gap", "expansion does not reach the tail bound")
    # indices i <= last - 1 have q_i <= B and use a_{i+1} with i+1 <= last
    idx, a_max = max(((i, qs[i]) for i in range(1, last + 1)), key=lambda p: (p[1], -p[0]))
    base = c_star * (a_max + 2)
    T = CertifiedReal.exact(base, BITS) ** CertifiedReal.exact(1 / (K - 2), BITS)
    num, den = _split_exponent(K - 2)
    first = None
    for i, (_, q) in enumerate(cf.iter_convergents()):
        if q > T.upper:
            first = i
            break
    if first is None:
        raise RefinementFailure("gap", "no convergent exceeds the threshold")
    q0 = list(cf.iter_convergents())[first][1]
    # q0^(K-2) >= c* (a_max+2), exactly: q0^num * c_den^den >= (c_num (a_max+2))^den
    lhs = q0**num * c_star.denominator**den
    rhs = (c_star.numerator * (a_max + 2)) ** den
    if lhs < rhs:
        raise RefinementFailure("gap", f"convergent {first} fails the partial-quotient bound")
    return T, first, (idx, a_max)


def _direct_check(alpha_iv: CertifiedReal, q: int, c_star: Fraction, K: Fraction) -> Tuple[Optional[bool], int]:
    """Is |alpha - p/q| > c*/q^K for the nearest p?  None if undecided."""
    qa = alpha_iv * q
    p = qa.nearest()
    if p is None:
        return None, 0
    lhs = abs(qa - p)  # |q alpha - p|
    rhs = CertifiedReal.exact(c_star, alpha_iv.bits) * CertifiedReal.exact(q, alpha_iv.bits) ** CertifiedReal.exact(1 - K, alpha_iv.bits)
    if lhs.certainly_gt(rhs):
        return True, p
    if lhs.certainly_le(rhs):
        return False, p
    return None, p


def small_q_scan(alpha: Target, c_star: Fraction, kappa_star_plus_one: Fraction, q_max: int) -> SmallScanRecord:
    c_star = Fraction(c_star)
    K = Fraction(kappa_star_plus_one)
    if q_max > 10**6:
        raise DomainError("small_q_scan is meant for q_max <= 10**6")

    def check(qrange) -> Optional[Tuple[int, int]]:
        bits = BITS
        for q in qrange:
            while True:
                ok, p = _direct_check(alpha.interval(bits), q, c_star, K)
                if ok is not None:
                    break
                bits *= 2
                if bits > 1 << 16:
                    return (p, q)
            if not ok:
                return (p, q)
        return None

    if q_max <= DIRECT_SCAN_LIMIT:
        bad = check(range(1, q_max + 1))
        return SmallScanRecord(q_max, "direct", bad is None, bad)
    # beyond the direct limit: non-convergents satisfy |alpha - p/q| >= 1/(2q^2),
    # enough once q^(K-2) >= 2c*; below that point scan directly
    num, den = _split_exponent(K - 2) if K > 2 else (0, 1)
    legendre_from = 1
    if num > 0:
        while legendre_from**num * c_star.denominator**den < (2 * c_star.numerator) ** den:
            legendre_from += 1
    else:
        legendre_from = q_max + 1
    bad = check(range(1, min(legendre_from, q_max + 1)))
    if bad is None:
        cf = cf_expand(alpha, 64)
        qs = [q for _, q in cf.iter_convergents() if legendre_from <= q <= q_max]
        bad = check(qs)
    return SmallScanRecord(q_max, "convergents+legendre", bad is None, bad)


def refine(cert: MeasureCertificate, c_star: Fraction, kappa_star_plus_one: Fraction,
           check_bounds: bool = True, tail_exponent: Optional[int] = None) -> RefinedCertificate:
    """Run the tail, gap and scan stages.

    ``tail_exponent`` may raise B above the least admissible value; a larger B
    is still valid but pulls more partial quotients into the gap stage.
    """
    if not cert.applicable or cert.root is None:
        raise DomainError("refinement needs an applicable certificate with an identified root")
    c_star = Fraction(c_star)
    K = Fraction(kappa_star_plus_one)
    alpha = cert.root.alpha
    out = RefinedCertificate(alpha, (cert.c_prop, cert.kappa), (c_star, K), 0)
    log = out.transcript
    try:
        k = tail_threshold(cert.c_prop, cert.kappa, c_star, K)
        log.append(f"tail: raw measure implies target for q >= 10^{k}")
        if tail_exponent is not None:
            if tail_exponent < k:
                raise RefinementFailure("tail", f"requested 10^{tail_exponent} is below the admissible 10^{k}")
            k = tail_exponent
            log.append(f"tail: using the larger bound 10^{k}")
        out.tail_exponent = k
        cf = _covering_expansion(alpha, k)
        out.cf_used = cf
        log.append(f"expansion: {cf.certified_count} quotients certified at {cf.precision_used} bits")
        if check_bounds:
            check_cf_invariants(cf)
            log.append("convergent bounds 1/((a+2)q^2) < |alpha - p/q| < 1/(a q^2) verified")
        T, first, mq = gap_check(cf, c_star, K, k)
        out.gap_bound, out.first_safe_index, out.max_quotient = T, first, mq
        log.append(f"gap: a_max = {mq[1]} at position {mq[0] + 1}; convergents with q > {T.decimal_bounds(4)[1]} pass")
        log.append("non-convergents above the gap threshold pass by Legendre's bound")
        q_scan = math.floor(T.upper)
        scan = small_q_scan(alpha, c_star, K, max(q_scan, 1))
        out.small_scan = scan
        if not scan.passed:
            raise RefinementFailure("scan", f"counterexample p/q = {scan.counterexample}")
        log.append(f"scan: every q <= {scan.q_max} checked ({scan.method})")
        # coverage: [1, q_scan] direct, (q_scan, 10^k) gap argument, [10^k, oo) raw
        if not q_scan + 1 > T.upper:
            raise RefinementFailure("coverage", "scan range does not reach the gap threshold")
        out.verified = True
    except RefinementFailure as exc:
        out.failed_stage = exc.stage
        log.append(f"FAILED at {exc.stage}: {exc}")
    return out


# Targets published for the four worked instances, keyed by (n, t, x).
PUBLISHED_TARGETS = {
    (7, -19, 19): (Fraction("0.09"), Fraction("4.6")),
    (7, -39, 3): (Fraction("0.007"), Fraction("3.28")),
    (7, -77, 11): (Fraction("0.003"), Fraction("3.49")),
    (13, -7, 7): (Fraction("0.02"), Fraction("5.68")),
}
