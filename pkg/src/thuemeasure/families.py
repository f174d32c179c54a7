"""Parametric families for n = 4 and n = 5.

For an angle theta (k*pi/8 or 2k*pi/5) and a positive integer b, write the
integer nearest b*tan^2(theta) as a1*a2^2 with a1 squarefree.  The number
sqrt(a1*b)*tan(theta) is then a root of F_{n,-a1*b} and x = a1*a2 is a
good starting point; closed-form bounds for kappa and c follow.  Each
instance is cross-checked against the direct certificate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .exactnum import DomainError, squarefree_split
from .hyperg import CDConstants, PrimePowerValue, admissible_log_d_floor
from .realengine import CertifiedReal, TanSquared, cf_expand, tan_pi
from .thue_core import (InstanceInput, MeasureCertificate, abs_g_times_n, certify, compute_uz,
                        gcd_ladder, min_max)

BITS = 160

# (numerator constant, numerator b-exponent, denominator constant, denominator b-exponent)
KAPPA_FORMS = {
    (4, 1): (Fraction("14.76"), Fraction(2), Fraction("64.39"), Fraction(0)),
    (4, 3): (Fraction("468.3"), Fraction(2), Fraction("1.705"), Fraction(0)),
    (5, 1): (Fraction(5690), Fraction(5, 2), Fraction("8.47"), Fraction(1, 2)),
    (5, 2): (Fraction("51.27"), Fraction(5, 2), Fraction("57.75"), Fraction(1, 2)),
}

# c < A b^e / N * (B b^3)^kappa
C_STATEMENT = {
    4: (Fraction(2 * 10**11), Fraction(5), Fraction(21 * 10**7)),
    5: (Fraction(34 * 10**11), Fraction(9, 2), Fraction(23 * 10**8)),
}
C_SHARPER = {
    (4, 1): (Fraction(24 * 10**6), Fraction(4), Fraction(400000)),
    (4, 3): (Fraction(2 * 10**11), Fraction(5), Fraction(208 * 10**6)),
    (5, 1): (Fraction(34 * 10**11), Fraction(9, 2), Fraction(23 * 10**8)),
    (5, 2): (Fraction(7 * 10**8), Fraction(9, 2), Fraction(48 * 10**5)),
}

B_FLOOR = {4: 6, 5: 13}


def family_angle(n: int, k: int) -> Fraction:
    """The angle as a multiple of pi."""
    if n == 4 and k in (1, 3):
        return Fraction(k, 8)
    if n == 5 and k in (1, 2):
        return Fraction(2 * k, 5)
    raise DomainError(f"no family for (n, k) = ({n}, {k})")


def liouville_exponent(n: int) -> int:
    """Degree of a generic root: n for even n, n - 1 for odd n (F is divisible by x)."""
    return n if n % 2 == 0 else n - 1


@dataclass(frozen=True)
class ImprovementVerdict:
    kappa_plus_one: Fraction  # upper bound
    liouville_exponent: int
    improves: bool


@dataclass(frozen=True)
class FamilyCertificate:
    n: int
    k: int
    b: int
    a1: int
    a2: int
    eps: CertifiedReal  # a1*a2^2 - b*tan^2(angle)
    script_n: PrimePowerValue
    script_n_parts: Tuple[PrimePowerValue, ...]
    kappa_thm: Optional[CertifiedReal]
    c_thm: Optional[CertifiedReal]
    c_sharper: Optional[CertifiedReal]
    hyp_b: bool
    hyp_gcd: bool
    hyp_eps: bool
    crosscheck: Optional[MeasureCertificate]
    root_matches: bool
    note: str = ""

    @property
    def hypotheses_ok(self) -> bool:
        return self.hyp_b and self.hyp_gcd and self.hyp_eps

    @property
    def theorem_applicable(self) -> bool:
        return self.hypotheses_ok and self.kappa_thm is not None

    def verdict(self) -> Optional[ImprovementVerdict]:
        """Improvement over Liouville from the direct certificate."""
        cc = self.crosscheck
        if cc is None or not cc.applicable:
            return None
        kp1 = cc.kappa.upper + 1
        deg = liouville_exponent(self.n)
        return ImprovementVerdict(kp1, deg, kp1 < deg)


def script_n_case(n: int, k: int, a1: int, a2: int, b: int) -> Tuple[PrimePowerValue, Tuple[PrimePowerValue, ...]]:
    """The N of the family theorems, with its factors (one for n = 4, two for n = 5)."""
    family_angle(n, k)
    odd = (a1 * a2 * b) % 2 == 1
    same = (a1 - b) % 4 == 0
    if n == 4:
        v = 1 if not odd else (4 if same else 8)
        part = PrimePowerValue.of(v)
        return part, (part,)
    if math.gcd(5, a1 * a2) == 1:
        n1 = PrimePowerValue.of(1)
    elif a1 % 5 == 0:
        n1 = PrimePowerValue.of(5)
    else:
        n1 = PrimePowerValue({5: Fraction(5, 4)})
    if not odd:
        n2 = PrimePowerValue.of(1)
    elif same:
        n2 = PrimePowerValue({2: Fraction(5, 2)})  # 4*sqrt(2)
    else:
        n2 = PrimePowerValue.of(32)
    return n1 * n2, (n1, n2)


def _nearest_multiple(b: int, angle: Fraction) -> Tuple[int, CertifiedReal]:
    bits = BITS
    while True:
        tn = tan_pi(angle, bits)
        v = tn * tn * b
        p = v.nearest()
        if p is not None:
            return p, v
        if bits > 1 << 16:
            raise ArithmeticError("b*tan^2 sits on a half-integer")
        bits *= 2


def _bounded_power(base: CertifiedReal, e: Fraction, bits: int) -> CertifiedReal:
    return base ** CertifiedReal.exact(e, bits) if e else CertifiedReal.exact(1, bits)


def _theorem_kappa(n, k, b, N: PrimePowerValue, eps_abs_up: Fraction, bits: int) -> Optional[CertifiedReal]:
    a, ea, d, ed = KAPPA_FORMS[(n, k)]
    bb = CertifiedReal.exact(b, bits)
    Nv = N.value(bits)
    num = _bounded_power(bb, ea, bits) * a / Nv
    den = Nv / (_bounded_power(bb, ed, bits) * d * eps_abs_up**2) if eps_abs_up else None
    if den is None or not den.certainly_gt(1) or not num.certainly_gt(1):
        return None
    kap = num.log() / den.log()
    return CertifiedReal((kap.iv[1], kap.iv[1]), bits)


def _theorem_c(form, b: int, N: PrimePowerValue, kappa: CertifiedReal, bits: int) -> CertifiedReal:
    a, e, base = form
    bb = CertifiedReal.exact(b, bits)
    c = _bounded_power(bb, e, bits) * a / N.value(bits) * (bb ** 3 * base) ** kappa
    return CertifiedReal((c.iv[1], c.iv[1]), bits)


def family_instance(n: int, k: int, b: int, cd: Optional[CDConstants] = None,
                    crosscheck: bool = True) -> FamilyCertificate:
    angle = family_angle(n, k)
    if b < 1:
        raise DomainError("b must be positive")
    p, v = _nearest_multiple(b, angle)
    if p < 1:
        raise DomainError(f"b*tan^2 rounds to {p}; no family member for b={b}")
    a1, a2 = squarefree_split(p)
    eps = -(v - p)
    hyp_b = b >= B_FLOOR[n]
    hyp_gcd = math.gcd(p, b) == 1
    hyp_eps = abs(eps).certainly_lt(Fraction(1, 2))
    N, parts = script_n_case(n, k, a1, a2, b)
    eps_up = abs(eps).upper
    kappa = c_thm = c_sharp = None
    note = ""
    if hyp_b and hyp_gcd and hyp_eps:
        kappa = _theorem_kappa(n, k, b, N, eps_up, BITS)
        if kappa is None:
            note = "theorem inapplicable: use the direct certificate"
        else:
            c_thm = _theorem_c(C_STATEMENT[n], b, N, kappa, BITS)
            c_sharp = _theorem_c(C_SHARPER[(n, k)], b, N, kappa, BITS)
    cc = None
    root_ok = False
    if crosscheck:
        cc = certify(InstanceInput(n, -a1 * b, a1 * a2, cd=cd))
        if cc.root is not None:
            # tan is odd, so the root at -angle carries the same measure
            root_ok = cc.root.alpha.angle % 1 in (angle % 1, -angle % 1)
    return FamilyCertificate(n, k, b, a1, a2, eps, N, parts, kappa, c_thm, c_sharp,
                             hyp_b, hyp_gcd, hyp_eps, cc, root_ok, note)


def gcd_lower_bound_check(cert: FamilyCertificate) -> bool:
    """|g| N_{m,4} >= 2 N a1^2 (n = 4) or |g| N_{m,5} >= N a1^(5/2) (n = 5), exactly."""
    if cert.crosscheck is None:
        raise DomainError("the gcd bound check needs the crosscheck certificate")
    lhs = abs_g_times_n(cert.crosscheck.ladder)
    if cert.n == 4:
        rhs = cert.script_n * (2 * cert.a1**2)
    else:
        rhs = cert.script_n * PrimePowerValue.of(cert.a1) ** Fraction(5, 2)
    return lhs >= rhs


def conservativity(cert: FamilyCertificate) -> Tuple[bool, bool]:
    """(kappa_thm >= direct kappa, c_thm >= direct c); both on published upper bounds."""
    cc = cert.crosscheck
    if cert.kappa_thm is None or cc is None:
        raise DomainError("needs an applicable theorem and a crosscheck")
    if not cc.applicable:
        return False, False
    return cert.kappa_thm.upper >= cc.kappa.upper, cert.c_thm.upper >= cc.c_prop.upper


def enumerate_from_convergents(n: int, k: int, max_terms: int) -> List[FamilyCertificate]:
    """Family members whose b is a convergent denominator of tan^2(angle)."""
    angle = family_angle(n, k)
    cf = cf_expand(TanSquared(angle), max_terms + 2)
    out = []
    for i, (p, q) in enumerate(cf.iter_convergents()):
        if len(out) >= max_terms:
            break
        if q < B_FLOOR[n] or p < 1:
            continue
        out.append(family_instance(n, k, q))
    return out


def quintic_gap(p: int, b: int) -> int:
    """5(p - b)^2 - 4b^2 for a candidate p = a1*a2^2 in the n = 5, k = 2 family."""
    return 5 * (p - b) ** 2 - 4 * b * b


# ---------------------------------------------------------------------------
# n = 6: quadratic irrational, so kappa stays above 3
# ---------------------------------------------------------------------------

# placeholder pair; only the exact part of the pipeline is used with it
UNIT_CD_6 = CDConstants(6, Fraction(1), D_value=Fraction(1), source="user")


@dataclass(frozen=True)
class SexticRow:
    b: int
    p: int
    a1: int
    a2: int
    m: int
    log_d_needed: Optional[CertifiedReal]  # kappa > 3 iff log D exceeds this
    log_d_floor: CertifiedReal  # every admissible pair with C <= c_max has log D above this
    kappa_at_floor: Optional[CertifiedReal]  # None when E <= 1 there
    exceeds_three: bool


def sextic_convergents(count: int = 10, r_probe: int = 200, c_max: Fraction = Fraction(10) ** 60,
                       bits: int = BITS) -> List[SexticRow]:
    """kappa for the n = 6 analogue at convergents p/b of tan^2(pi/12).

    No (C_6, D_6) pair is tabulated.  kappa = (log D + L1)/(L2 - log D)
    increases with D, and any admissible pair obeys lhs(r) < C (D/N)^r at
    every r, so one probe r with C <= c_max bounds log D from below.  If
    that bound already forces kappa > 3 (or E <= 1), the instance cannot
    beat the Liouville exponent 4 = deg for any such pair.
    """
    cf = cf_expand(TanSquared(Fraction(1, 12)), count + 4)
    rows: List[SexticRow] = []
    for p, q in cf.iter_convergents():
        if len(rows) >= count:
            break
        if p < 1:
            continue
        a1, a2 = squarefree_split(p)
        t, x = -a1 * q, a1 * a2
        u1, u2 = compute_uz(InstanceInput(6, t, x, cd=UNIT_CD_6))
        ladder = gcd_ladder(u1, u2, t, 6)
        lo, hi = min_max(u1, u2, t, bits)
        G = abs_g_times_n(ladder).value(bits)
        L1, L2 = (hi / G).log(), (G / lo).log()
        floor = admissible_log_d_floor(6, ladder.m, r_probe, c_max, bits)
        needed = (L2 * 3 - L1) / 4
        if floor.certainly_ge(L2):
            kap = None
            exceeds = True  # E <= 1: no measure at all
        else:
            kap = (floor + L1) / (L2 - floor)
            exceeds = floor.certainly_gt(needed)
        rows.append(SexticRow(q, p, a1, a2, ladder.m, needed, floor, kap, exceeds))
    return rows
