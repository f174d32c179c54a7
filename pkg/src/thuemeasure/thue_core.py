"""Effective irrationality measures for roots of F_{n,t} from one integer x.

Given n, t, x (and optionally beta_1, gamma_1) this computes U, Z, the
coordinates u1, u2, the gcd ladder g1..g4, g, m, N_{m,n}, then E, Q, kappa
and c, identifies which root A(x) the data approximates, and decides
whether the measure applies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple

import mpmath

from .exactnum import DomainError, QuadElement, SurdScalar, core, quad_pow
from .hyperg import CDConstants, PrimePowerValue, builtin_cd, script_nmn
from .realengine import AlphaSpec, CertifiedReal

DEFAULT_BITS = 160
ROOT_DPS = 100


class DegenerateInput(DomainError):
    """U(x) = 0 or u2 = 0: the approximated root is undefined."""


@dataclass(frozen=True)
class InstanceInput:
    n: int
    t: int
    x: int
    beta1: Optional[QuadElement] = None  # defaults to sqrt(t)
    gamma1: Optional[QuadElement] = None  # defaults to 1
    cd: Optional[CDConstants] = None  # defaults to the built-in table

    def __post_init__(self):
        if self.n < 3:
            raise DomainError("n must be at least 3")
        if self.t == 0:
            raise DomainError("t must be nonzero")
        if self.beta1 is None:
            object.__setattr__(self, "beta1", QuadElement.sqrt_t(self.t))
        if self.gamma1 is None:
            object.__setattr__(self, "gamma1", QuadElement.rational(1, self.t))
        if self.beta1.t != self.t or self.gamma1.t != self.t:
            raise DomainError("beta1 and gamma1 must live in Q(sqrt t)")
        if self.beta1.co == 0:
            raise DomainError("beta1 must be irrational")
        if not self.beta1.is_algebraic_integer():
            raise DomainError("beta1 must be an algebraic integer")
        if self.gamma1.is_zero() or not self.gamma1.is_algebraic_integer():
            raise DomainError("gamma1 must be a nonzero algebraic integer")

    @property
    def is_standard(self) -> bool:
        """beta1 = sqrt(t) and gamma1 = 1, the setting of root identification."""
        b, g = self.beta1, self.gamma1
        return b.re == 0 and b.co == 1 and g.re == 1 and g.co == 0

    def constants(self) -> CDConstants:
        cd = self.cd if self.cd is not None else builtin_cd(self.n)
        if cd.n != self.n:
            raise DomainError(f"constants are for n={cd.n}, instance has n={self.n}")
        return cd


@dataclass(frozen=True)
class GcdLadder:
    g1: int
    g2: int
    g3: int
    g4: int
    g: SurdScalar
    m: int
    script_n: PrimePowerValue
    naive_m_differs: bool = False  # ring-of-integers m vs plain content of u1/g


@dataclass(frozen=True)
class RootId:
    branch_k: int  # odd k with (Z/U)^(1/n) = r e^(k pi i/n)
    alpha: AlphaSpec
    numeric_ok: bool  # argmin over all roots agrees


@dataclass(frozen=True)
class MeasureCertificate:
    input: InstanceInput
    u1: int
    u2: int
    zu: QuadElement
    zu_abs2: Optional[Fraction]
    ladder: GcdLadder
    E: CertifiedReal
    Q: CertifiedReal
    kappa: Optional[CertifiedReal]
    c_prop: Optional[CertifiedReal]
    root: Optional[RootId]
    e_gt_1: bool
    zu_ok: bool
    root_certified: bool = True
    notes: Tuple[str, ...] = ()

    @property
    def applicable(self) -> bool:
        return self.e_gt_1 and self.zu_ok

    @property
    def exponent(self) -> Optional[Fraction]:
        """Certified upper bound for the measure exponent kappa + 1."""
        return None if self.kappa is None else self.kappa.upper + 1

    def statement(self) -> str:
        if not self.applicable:
            return "not applicable"
        lhs = self.root.alpha.canonical() if self.root else f"A({self.input.x})"
        c = self.c_prop.upper_sci(6)
        k = self.kappa.decimal_bounds(6)[1]
        return f"|{lhs} - p/q| > 1/({c} * |q|^({k} + 1))"


# ---------------------------------------------------------------------------
# exact part
# ---------------------------------------------------------------------------

def _uz(inp: InstanceInput) -> Tuple[QuadElement, QuadElement]:
    beta2 = inp.beta1.conj()
    gamma2 = inp.gamma1.conj()
    U = -gamma2 * quad_pow(inp.x - beta2, inp.n)
    Z = inp.gamma1 * quad_pow(inp.x - inp.beta1, inp.n)
    return U, Z


def compute_uz(inp: InstanceInput) -> Tuple[int, int]:
    U, Z = _uz(inp)
    if U.is_zero():
        raise DegenerateInput("U(x) = 0")
    two_u = U * 2
    if two_u.re.denominator != 1 or two_u.co.denominator != 1:
        raise DomainError("2U(x) does not have integer coordinates")
    u1, u2 = int(two_u.re), int(two_u.co)
    if u2 == 0:
        raise DegenerateInput("u2 = 0")
    # Z is minus the conjugate of U
    assert Z * 2 == QuadElement(-u1, u2, inp.t)
    return u1, u2


def zu_ratio(inp: InstanceInput) -> Tuple[QuadElement, Optional[Fraction]]:
    """Z/U exactly, with |Z/U|^2 when t < 0 (then it is the norm).

    For t > 0 the ratio is a real element of Q(sqrt t) and its square is
    generally irrational, so None is returned in its place.
    """
    U, Z = _uz(inp)
    if U.is_zero():
        raise DegenerateInput("U(x) = 0")
    r = Z / U
    return r, (r.norm() if inp.t < 0 else None)


def _real_sign(a: Fraction, b: Fraction, t: int) -> int:
    """Sign of a + b sqrt(t) for t > 0, exactly."""
    sa = (a > 0) - (a < 0)
    sb = (b > 0) - (b < 0)
    if sb == 0 or sa == sb:
        return sa or sb
    if sa == 0:
        return sb
    # opposite signs: compare a^2 with b^2 t
    d = a * a - b * b * t
    return sa if d > 0 else (sb if d < 0 else 0)


def zu_condition(zu: QuadElement, t: int) -> bool:
    """0 < Z/U < 1, or |Z/U| = 1 with Z/U != -1."""
    if t < 0:
        if zu.co == 0:
            return 0 < zu.re < 1 or zu.re == 1
        return zu.norm() == 1
    # t > 0: Z/U is real
    val = (zu.re, zu.co)
    pos = _real_sign(*val, t) > 0
    below_one = _real_sign(val[0] - 1, val[1], t) < 0
    return (pos and below_one) or (zu.re == 1 and zu.co == 0)


def gcd_ladder(u1: int, u2: int, t: int, n: int) -> GcdLadder:
    if u1 == 0 and u2 == 0:
        raise DegenerateInput("u1 = u2 = 0")
    if u1 == 0:
        raise DegenerateInput("u1 = 0: the two moduli coincide")
    g1 = math.gcd(u1, u2)
    v = u1 // g1
    g2 = (1 if t > 0 else -1) * math.gcd(v, t)
    w = (u1 - u2) // g1
    if t % 4 == 1 and w % 2 == 0:
        g3 = 1
    elif t % 4 == 3 and w % 2 == 0:
        g3 = 2
    else:
        g3 = 4
    e = math.gcd(2, n) * n
    g4 = math.gcd(core(g2 * g3), e // math.gcd(v, e))
    g = SurdScalar.of(g1, Fraction(g2, g3 * g4))
    quotient = SurdScalar.of(u1) / g
    if quotient.q.denominator != 1:
        raise DomainError("u1/g is not an algebraic integer")
    # (q/m) sqrt(d) with d squarefree is integral iff q/m is an integer,
    # so the ring-of-integers m coincides with the content |q|
    m = abs(quotient.q.numerator)
    return GcdLadder(g1, g2, g3, g4, g, m, script_nmn(m, n), naive_m_differs=False)


# ---------------------------------------------------------------------------
# certified part
# ---------------------------------------------------------------------------

def min_max(u1: int, u2: int, t: int, bits: int = DEFAULT_BITS) -> Tuple[CertifiedReal, CertifiedReal]:
    """min and max of |u2 sqrt t +- sqrt(u2^2 t - u1^2)|; their product is u1^2."""
    one = CertifiedReal.exact(1, bits)
    u1sq = u1 * u1
    if t < 0:
        big = (one * (u1sq + u2 * u2 * -t)).sqrt() + (one * -t).sqrt() * abs(u2)
        return u1sq / big, big
    w = u2 * u2 * t - u1sq
    if w < 0:
        v = CertifiedReal.exact(abs(u1), bits)
        return v, v
    big = (one * t).sqrt() * abs(u2) + (one * w).sqrt()
    return u1sq / big, big


def abs_g_times_n(ladder: GcdLadder) -> PrimePowerValue:
    g = ladder.g
    return PrimePowerValue.of(abs(g.q)) * PrimePowerValue.of(abs(g.d)).sqrt() * ladder.script_n


def eq_quantities(u1: int, u2: int, t: int, ladder: GcdLadder, cd: CDConstants,
                  bits: int = DEFAULT_BITS) -> Tuple[CertifiedReal, CertifiedReal]:
    lo, hi = min_max(u1, u2, t, bits)
    gn = abs_g_times_n(ladder).value(bits)
    D = cd.D(bits)
    return gn / (D * lo), (D * hi) / gn


def _branch_root(n: int, t: int, k: int) -> AlphaSpec:
    """Map the branch index k to a root of F_{n,t}."""
    if n % 2 == 0:
        j = (n - k - 1) // 2
    elif (n - k) % 4 == 0:
        j = (n - k) // 4
    else:
        j = (3 * n - k) // 4
    return AlphaSpec.for_root(n, t, j)


def _principal_nth_root(zu: QuadElement, t: int, n: int):
    sq = mpmath.sqrt(mpmath.mpf(t)) if t > 0 else mpmath.mpc(0, mpmath.sqrt(-t))
    z = mpmath.mpf(zu.re.numerator) / zu.re.denominator + sq * (mpmath.mpf(zu.co.numerator) / zu.co.denominator)
    z = mpmath.mpc(z)
    s, phi = abs(z), mpmath.arg(z)
    if zu.co == 0 and zu.re < 0:
        phi = +mpmath.pi  # exactly on the branch cut: principal argument is pi
    return s ** (mpmath.mpf(1) / n) * mpmath.expj(phi / n), phi, sq


def numeric_A(inp: InstanceInput, dps: int = ROOT_DPS):
    """A(x) from its defining formula, as an mpmath number at ``dps`` digits."""
    zu, _ = zu_ratio(inp)
    with mpmath.workdps(dps + 20):
        R, _, sq = _principal_nth_root(zu, inp.t, inp.n)
        b1 = mpmath.mpf(inp.beta1.re.numerator) / inp.beta1.re.denominator + sq * (
            mpmath.mpf(inp.beta1.co.numerator) / inp.beta1.co.denominator)
        b2 = mpmath.mpf(inp.beta1.re.numerator) / inp.beta1.re.denominator - sq * (
            mpmath.mpf(inp.beta1.co.numerator) / inp.beta1.co.denominator)
        x = inp.x
        A = (b1 * (x - b2) * R - b2 * (x - b1)) / ((x - b2) * R - (x - b1))
        return +A


def identify_root(inp: InstanceInput, dps: int = ROOT_DPS) -> RootId:
    if not inp.is_standard:
        raise DomainError("root identification needs beta1 = sqrt(t), gamma1 = 1")
    if inp.t > 0:
        raise DomainError("root identification is for t < 0")
    n, t, x = inp.n, inp.t, inp.x
    zu, _ = zu_ratio(inp)
    if zu.co == 0 and zu.re == -1:
        raise DomainError("Z/U = -1")
    for extra in (0, 100, 400):
        with mpmath.workdps(dps + extra + 20):
            _, phi, sq = _principal_nth_root(zu, t, n)
            r = (x - sq) / (x + sq)
            kf = (phi - n * mpmath.arg(r)) / mpmath.pi
            k = int(mpmath.nint(kf))
            if abs(kf - k) < mpmath.mpf(10) ** (-(dps // 2)):
                break
    else:
        raise ArithmeticError("branch index undetermined")
    k %= 2 * n
    if k % 2 == 0:
        raise ArithmeticError(f"branch index {k} is even")
    alpha = _branch_root(n, t, k)
    # cross-check: the root of F_{n,t} nearest to A(x)
    with mpmath.workdps(dps):
        A = numeric_A(inp, dps)
        roots = [mpmath.sqrt(-t) * mpmath.tan(AlphaSpec.for_root(n, t, j).angle * mpmath.pi) for j in range(n)]
        best = min(range(n), key=lambda j: abs(A - roots[j]))
    return RootId(k, alpha, best == alpha.k)


def kappa_c(inp: InstanceInput, E: CertifiedReal, Q: CertifiedReal, A: CertifiedReal,
            bits: int = DEFAULT_BITS) -> Tuple[CertifiedReal, CertifiedReal]:
    """Upper bounds for kappa and c; needs E > 1."""
    if not E.certainly_gt(1):
        raise DomainError("kappa needs E > 1")
    t, x = inp.t, inp.x
    cd = inp.constants()
    kappa = Q.log() / E.log()
    kappa = CertifiedReal((kappa.iv[1], kappa.iv[1]), kappa.bits)  # publish the upper end
    one = CertifiedReal.exact(1, bits)
    b = inp.beta1
    sqrt_abs_t = (one * abs(t)).sqrt()
    if t < 0:
        # |x - beta_1| = |x - beta_2|
        dx1 = (one * ((x - b.re) ** 2 + b.co ** 2 * -t)).sqrt()
        dx2 = dx1
        dA1 = ((A - b.re) * (A - b.re) + b.co ** 2 * -t).sqrt()
    else:
        sq = (one * t).sqrt()
        dx1 = abs(x - b.re - sq * b.co)
        dx2 = abs(x - b.re + sq * b.co)
        dA1 = abs(A - b.re - sq * b.co)
    inner = sqrt_abs_t * dx2 * dA1 * (3 * cd.C)
    base = inner if inner.certainly_gt(1) else (one if inner.certainly_lt(1) else _hull_max1(inner))
    c = sqrt_abs_t * (dx1 + dx2) * (4 * cd.C) * Q * base ** kappa
    c = CertifiedReal((c.iv[1], c.iv[1]), c.bits)
    return kappa, c


def _hull_max1(v: CertifiedReal) -> CertifiedReal:
    return CertifiedReal((CertifiedReal.exact(1, v.bits).iv[0], v.iv[1]), v.bits)


def _A_interval(inp: InstanceInput, root: Optional[RootId], bits: int) -> Tuple[CertifiedReal, bool]:
    if root is not None:
        return root.alpha.interval(bits), True
    A = numeric_A(inp)
    a = mpmath.re(A)
    # numeric value only; widen by far more than the working error
    err = Fraction(1, 10 ** (ROOT_DPS - 10))
    mid = Fraction(mpmath.nstr(a, ROOT_DPS, strip_zeros=False).replace(" ", ""))
    return CertifiedReal((CertifiedReal.exact(mid - err, bits).iv[0], CertifiedReal.exact(mid + err, bits).iv[1]), bits), False


def certify(inp: InstanceInput, bits: int = DEFAULT_BITS) -> MeasureCertificate:
    cd = inp.constants()
    u1, u2 = compute_uz(inp)
    zu, abs2 = zu_ratio(inp)
    ladder = gcd_ladder(u1, u2, inp.t, inp.n)
    zu_ok = zu_condition(zu, inp.t)
    notes = []

    b = bits
    while True:
        E, Q = eq_quantities(u1, u2, inp.t, ladder, cd, b)
        if E.certainly_gt(1) or E.certainly_le(1) or b >= 8 * bits:
            break
        b *= 2
    e_gt_1 = E.certainly_gt(1)
    if not e_gt_1 and not E.certainly_le(1):
        notes.append("E = 1 could not be excluded")

    root = None
    if inp.is_standard and inp.t < 0 and not (zu.co == 0 and zu.re == -1):
        root = identify_root(inp)
        if not root.numeric_ok:
            notes.append("numeric nearest root disagrees with the branch-index mapping")
    kappa = c = None
    root_certified = True
    if e_gt_1:
        A, root_certified = _A_interval(inp, root, b)
        kappa, c = kappa_c(inp, E, Q, A, b)
    return MeasureCertificate(
        inp, u1, u2, zu, abs2, ladder, E, Q, kappa, c, root,
        e_gt_1, zu_ok, root_certified, tuple(notes),
    )


def certify_standard(n: int, t: int, x: int, cd: Optional[CDConstants] = None,
                     bits: int = DEFAULT_BITS) -> MeasureCertificate:
    return certify(InstanceInput(n, t, x, cd=cd), bits)
