"""Certified real arithmetic and certified continued fractions.

Intervals are pairs of raw mpmath floats with outward rounding, driven
through the ``mpi_*`` primitives of :mod:`mpmath.libmp` with an explicit
precision on every call (no global context is touched).
"""

from __future__ import annotations

import hashlib
import math
import os
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterator, List, Optional, Sequence, Tuple, Union

import mpmath
from mpmath.libmp import (
    from_int,
    from_rational,
    mpf_pi,
    mpi_add,
    mpi_cos_sin,
    mpi_div,
    mpi_exp,
    mpi_log,
    mpi_mul,
    mpi_neg,
    mpi_pow,
    mpi_pow_int,
    mpi_sqrt,
    mpi_sub,
    mpf_cmp,
    mpf_neg,
    mpf_pos,
    round_ceiling,
    round_floor,
)

from .exactnum import DomainError

GUARD_BITS = 24
START_BITS = 256
MAX_BITS = 2**24

Number = Union[int, Fraction, "CertifiedReal"]


def _mpf_to_fraction(m) -> Fraction:
    sign, man, exp, _ = m
    man = int(man)
    if not man:
        if m != (0, 0, 0, 0):
            raise DomainError("non-finite interval endpoint")
        return Fraction(0)
    v = Fraction(man << exp) if exp >= 0 else Fraction(man, 1 << -exp)
    return -v if sign else v


_ZERO = (0, 0, 0, 0)


def _rational_iv(q: Fraction, bits: int):
    q = Fraction(q)
    return (
        from_rational(q.numerator, q.denominator, bits, round_floor),
        from_rational(q.numerator, q.denominator, bits, round_ceiling),
    )


@dataclass(frozen=True)
class CertifiedReal:
    """A closed interval [lo, hi] certain to contain the true value."""

    iv: tuple
    bits: int

    # construction -----------------------------------------------------------
    @classmethod
    def exact(cls, q: Union[int, Fraction, str], bits: int) -> "CertifiedReal":
        return cls(_rational_iv(Fraction(q), bits), bits)

    def _lift(self, other) -> "CertifiedReal":
        if isinstance(other, CertifiedReal):
            return other
        if isinstance(other, (int, Fraction)):
            return CertifiedReal.exact(other, self.bits)
        return NotImplemented

    # arithmetic -------------------------------------------------------------
    def __add__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        b = min(self.bits, o.bits)
        return CertifiedReal(mpi_add(self.iv, o.iv, b), b)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        b = min(self.bits, o.bits)
        return CertifiedReal(mpi_sub(self.iv, o.iv, b), b)

    def __rsub__(self, other):
        return self._lift(other) - self

    def __neg__(self):
        return CertifiedReal(mpi_neg(self.iv), self.bits)

    def __mul__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        b = min(self.bits, o.bits)
        return CertifiedReal(mpi_mul(self.iv, o.iv, b), b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is NotImplemented:
            return o
        if o.contains(0):
            raise ZeroDivisionError("divisor interval contains zero")
        b = min(self.bits, o.bits)
        return CertifiedReal(mpi_div(self.iv, o.iv, b), b)

    def __rtruediv__(self, other):
        return self._lift(other) / self

    def __pow__(self, e):
        if isinstance(e, int):
            return CertifiedReal(mpi_pow_int(self.iv, e, self.bits), self.bits)
        o = self._lift(e)
        if not self.certainly_gt(0):
            raise DomainError("real power needs a positive base")
        b = min(self.bits, o.bits)
        return CertifiedReal(mpi_pow(self.iv, o.iv, b), b)

    def sqrt(self) -> "CertifiedReal":
        if self.certainly_lt(0):
            raise DomainError("sqrt of a negative interval")
        return CertifiedReal(mpi_sqrt(self.iv, self.bits), self.bits)

    def log(self) -> "CertifiedReal":
        if not self.certainly_gt(0):
            raise DomainError("log needs a positive interval")
        return CertifiedReal(mpi_log(self.iv, self.bits), self.bits)

    def exp(self) -> "CertifiedReal":
        return CertifiedReal(mpi_exp(self.iv, self.bits), self.bits)

    def __abs__(self):
        lo, hi = self.iv
        if mpf_cmp(lo, _ZERO) >= 0:
            return self
        if mpf_cmp(hi, _ZERO) <= 0:
            return -self
        top = hi if mpf_cmp(hi, mpf_neg(lo)) >= 0 else mpf_neg(lo)
        return CertifiedReal((_ZERO, top), self.bits)

    # inspection -------------------------------------------------------------
    @property
    def lower(self) -> Fraction:
        return _mpf_to_fraction(self.iv[0])

    @property
    def upper(self) -> Fraction:
        return _mpf_to_fraction(self.iv[1])

    @property
    def lo(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(self.iv[0])

    @property
    def hi(self) -> mpmath.mpf:
        return mpmath.mp.make_mpf(self.iv[1])

    def width(self) -> Fraction:
        return self.upper - self.lower

    def mid(self) -> float:
        return float((self.lower + self.upper) / 2)

    __float__ = mid

    def _other(self, x):
        if isinstance(x, CertifiedReal):
            return x.iv
        return _rational_iv(Fraction(x), max(self.bits, 64))

    def contains(self, x) -> bool:
        x = Fraction(x)
        return self.lower <= x <= self.upper

    def certainly_gt(self, x) -> bool:
        return mpf_cmp(self.iv[0], self._other(x)[1]) > 0

    def certainly_ge(self, x) -> bool:
        return mpf_cmp(self.iv[0], self._other(x)[1]) >= 0

    def certainly_lt(self, x) -> bool:
        return mpf_cmp(self.iv[1], self._other(x)[0]) < 0

    def certainly_le(self, x) -> bool:
        return mpf_cmp(self.iv[1], self._other(x)[0]) <= 0

    def floor(self) -> Optional[int]:
        """The common floor of every point in the interval, or None."""
        a = math.floor(self.lower)
        return a if math.floor(self.upper) == a else None

    def nearest(self) -> Optional[int]:
        """The nearest integer shared by the whole interval, or None."""
        a = math.floor(self.lower + Fraction(1, 2))
        b = math.floor(self.upper + Fraction(1, 2))
        return a if a == b else None

    def decimal_bounds(self, digits: int = 10) -> Tuple[str, str]:
        """Decimal strings rounded down (lower) and up (upper); six guard
        digits beyond ``digits`` significant places."""
        return _decimal(self.lower, digits + 6, math.floor), _decimal(self.upper, digits + 6, math.ceil)

    def upper_sci(self, digits: int = 6) -> str:
        """Upper bound as d.ddddde+N, rounded up."""
        return _sci(self.upper, digits, math.ceil)

    def lower_sci(self, digits: int = 6) -> str:
        return _sci(self.lower, digits, math.floor)

    def __repr__(self) -> str:
        lo, hi = self.decimal_bounds(8)
        return f"CertifiedReal([{lo}, {hi}], bits={self.bits})"


def _decimal(q: Fraction, sig: int, rounder) -> str:
    if q == 0:
        return "0"
    e = math.floor(math.log10(abs(q))) if abs(q) < 10**300 else len(str(abs(q.numerator) // q.denominator)) - 1
    scale = sig - 1 - e
    m = rounder(q * Fraction(10) ** scale)
    # rounding can carry into a new digit; that is harmless for a bound
    s = str(abs(m))
    sign = "-" if m < 0 else ""
    if scale <= 0:
        return f"{sign}{s}{'0' * (-scale)}"
    if len(s) <= scale:
        s = "0" * (scale - len(s) + 1) + s
    out = f"{s[:-scale]}.{s[-scale:]}".rstrip("0").rstrip(".")
    return sign + out


def _sci(q: Fraction, sig: int, rounder) -> str:
    if q == 0:
        return "0"
    e = len(str(abs(q.numerator) // q.denominator)) - 1 if abs(q) >= 1 else math.floor(math.log10(abs(q)))
    m = rounder(q * Fraction(10) ** (sig - 1 - e))
    if abs(m) >= 10**sig:  # carry into a new digit
        m = rounder(Fraction(m, 10))
        e += 1
    s = str(abs(m))
    sign = "-" if m < 0 else ""
    return f"{sign}{s[0]}.{s[1:]}e{e:+d}" if sig > 1 else f"{sign}{s}e{e:+d}"


# ---------------------------------------------------------------------------
# elementary functions at rational multiples of pi
# ---------------------------------------------------------------------------

def pi_interval(bits: int) -> CertifiedReal:
    return CertifiedReal((mpf_pi(bits, round_floor), mpf_pi(bits, round_ceiling)), bits)


def cos_sin_pi(angle: Fraction, bits: int) -> Tuple[CertifiedReal, CertifiedReal]:
    """(cos, sin) of angle*pi."""
    angle = Fraction(angle)
    # reduce mod 2 exactly so the interval argument stays small
    angle -= 2 * math.floor(angle / 2)
    w = bits + GUARD_BITS
    x = mpi_mul(pi_interval(w).iv, _rational_iv(angle, w), w)
    c, s = mpi_cos_sin(x, w)
    return CertifiedReal(c, bits), CertifiedReal(s, bits)


def tan_pi(angle: Fraction, bits: int) -> CertifiedReal:
    c, s = cos_sin_pi(angle, bits + GUARD_BITS)
    if c.contains(0):
        raise DomainError(f"tan has a pole at {angle}*pi")
    r = s / c
    return CertifiedReal(r.iv, bits)


def sec_pi(angle: Fraction, bits: int) -> CertifiedReal:
    c, _ = cos_sin_pi(angle, bits + GUARD_BITS)
    if c.contains(0):
        raise DomainError(f"sec has a pole at {angle}*pi")
    return CertifiedReal((1 / c).iv, bits)


def sqrt_int(n: int, bits: int) -> CertifiedReal:
    return CertifiedReal.exact(n, bits).sqrt()


# ---------------------------------------------------------------------------
# targets for continued-fraction expansion
# ---------------------------------------------------------------------------

class Target:
    """A real number that can be enclosed to any precision."""

    def canonical(self) -> str:
        raise NotImplementedError

    def interval(self, bits: int) -> CertifiedReal:
        raise NotImplementedError

    def exact_rational(self) -> Optional[Fraction]:
        return None


@dataclass(frozen=True)
class AlphaSpec(Target):
    """sqrt|t| * tan(angle) where the angle is a root angle of F_{n,t}:
    ``odd``: 2k*pi/n, ``even``: (2k+1)*pi/(2n)."""

    t: int
    n: int
    angle_kind: str
    k: int

    def __post_init__(self):
        if self.t == 0:
            raise DomainError("t must be nonzero")
        if self.angle_kind not in ("odd", "even"):
            raise DomainError("angle_kind is 'odd' or 'even'")

    @classmethod
    def for_root(cls, n: int, t: int, k: int) -> "AlphaSpec":
        return cls(t, n, "odd" if n % 2 else "even", k % n)

    @property
    def angle(self) -> Fraction:
        """The angle as a multiple of pi."""
        if self.angle_kind == "odd":
            return Fraction(2 * self.k, self.n)
        return Fraction(2 * self.k + 1, 2 * self.n)

    def canonical(self) -> str:
        a = self.angle
        return f"sqrt({abs(self.t)})*tan({a.numerator}*pi/{a.denominator})"

    def interval(self, bits: int) -> CertifiedReal:
        w = bits + GUARD_BITS
        v = sqrt_int(abs(self.t), w) * tan_pi(self.angle, w)
        return CertifiedReal(v.iv, bits)


def eval_alpha(spec: AlphaSpec, bits: int) -> CertifiedReal:
    return spec.interval(bits)


@dataclass(frozen=True)
class TanSquared(Target):
    """tan^2(angle*pi)."""

    angle: Fraction

    def canonical(self) -> str:
        a = Fraction(self.angle)
        return f"tan({a.numerator}*pi/{a.denominator})^2"

    def interval(self, bits: int) -> CertifiedReal:
        v = tan_pi(Fraction(self.angle), bits + GUARD_BITS)
        return CertifiedReal((v * v).iv, bits)


@dataclass(frozen=True)
class QuadraticSurd(Target):
    """a + b*sqrt(d) with rational a, b and positive integer d."""

    a: Fraction
    b: Fraction
    d: int

    def canonical(self) -> str:
        return f"{Fraction(self.a)}+({Fraction(self.b)})*sqrt({self.d})"

    def interval(self, bits: int) -> CertifiedReal:
        w = bits + GUARD_BITS
        v = CertifiedReal.exact(Fraction(self.a), w) + sqrt_int(self.d, w) * Fraction(self.b)
        return CertifiedReal(v.iv, bits)

    def exact_rational(self) -> Optional[Fraction]:
        r = math.isqrt(self.d)
        if r * r == self.d:
            return Fraction(self.a) + Fraction(self.b) * r
        return None


@dataclass(frozen=True)
class RationalTarget(Target):
    value: Fraction

    def canonical(self) -> str:
        return f"rational({Fraction(self.value)})"

    def interval(self, bits: int) -> CertifiedReal:
        return CertifiedReal.exact(Fraction(self.value), bits)

    def exact_rational(self) -> Optional[Fraction]:
        return Fraction(self.value)


# ---------------------------------------------------------------------------
# continued fractions
# ---------------------------------------------------------------------------

def rational_cf(q: Fraction) -> List[int]:
    """Euclidean algorithm; the expansion of a rational is finite."""
    q = Fraction(q)
    a, b = q.numerator, q.denominator
    out = []
    while b:
        d, r = divmod(a, b)
        out.append(d)
        a, b = b, r
    return out


def interval_cf(lo: Fraction, hi: Fraction, limit: int) -> List[int]:
    """Partial quotients shared by every real number in [lo, hi].

    Runs the Euclidean algorithm on both endpoints in lockstep and stops at
    the first disagreement, so every returned quotient is certified for any
    point of the interval.
    """
    a_lo, b_lo = lo.numerator, lo.denominator
    a_hi, b_hi = hi.numerator, hi.denominator
    out: List[int] = []
    while len(out) < limit:
        q = a_lo // b_lo
        if a_hi // b_hi != q:
            break
        r_lo = a_lo - q * b_lo
        r_hi = a_hi - q * b_hi
        if r_lo == 0 or r_hi == 0:
            # an endpoint is exactly q: the next quotient is unbounded
            if r_lo == 0 and r_hi == 0:
                out.append(q)
            break
        out.append(q)
        # x -> 1/(x - q) reverses the order of the endpoints
        a_lo, b_lo, a_hi, b_hi = b_hi, r_hi, b_lo, r_lo
    return out


def convergents(quotients: Sequence[int]) -> Iterator[Tuple[int, int]]:
    p0, q0, p1, q1 = 1, 0, 0, 1
    for a in quotients:
        p0, p1 = a * p0 + p1, p0
        q0, q1 = a * q0 + q1, q0
        yield p0, q0


class CFIncomplete(RuntimeError):
    pass


@dataclass(frozen=True)
class CFExpansion:
    alpha: Target
    quotients: Tuple[int, ...]
    certified_count: int
    precision_used: int
    terminated: bool = False  # the expansion of a rational ended

    @property
    def convergents(self) -> List[Tuple[int, int]]:
        return list(convergents(self.quotients))

    def iter_convergents(self) -> Iterator[Tuple[int, int]]:
        return convergents(self.quotients)

    def term(self, position: int) -> int:
        """Quotient at a 1-based position (position 1 is the integer part)."""
        return self.quotients[position - 1]

    def max_quotient(self, start: int = 1, stop: Optional[int] = None) -> Tuple[int, int]:
        """(index, value) of the largest a_i with start <= i < stop (0-based)."""
        stop = len(self.quotients) if stop is None else stop
        idx = max(range(start, stop), key=lambda i: (self.quotients[i], -i))
        return idx, self.quotients[idx]


def _expand_at(alpha: Target, bits: int, count: int) -> List[int]:
    iv = alpha.interval(bits)
    return interval_cf(iv.lower, iv.upper, count)


def cf_expand(
    alpha: Target,
    count: int,
    *,
    start_bits: int = START_BITS,
    max_bits: int = MAX_BITS,
    double_check: bool = True,
    cache: Optional["CFCache"] = None,
) -> CFExpansion:
    """At least ``count`` certified partial quotients of ``alpha``.

    Precision starts at ``start_bits`` and doubles while the enclosure is too
    wide to fix ``count`` quotients.  With ``double_check`` the expansion is
    recomputed at twice the final precision and must agree term for term.
    If ``max_bits`` is reached first, the result carries
    ``certified_count < count``.
    """
    exact = alpha.exact_rational()
    if exact is not None:
        qs = rational_cf(exact)
        return CFExpansion(alpha, tuple(qs[:count]), min(count, len(qs)), 0, terminated=len(qs) <= count)

    if cache is not None:
        hit = cache.load(alpha, count)
        if hit is not None:
            return hit

    bits = start_bits
    while True:
        qs = _expand_at(alpha, bits, count)
        if len(qs) >= count or bits >= max_bits:
            break
        bits = min(2 * bits, max_bits)
    if double_check:
        again = _expand_at(alpha, 2 * bits, count)
        if again[: len(qs)] != qs:
            raise ArithmeticError(f"expansion of {alpha.canonical()} changed at doubled precision")
    cf = CFExpansion(alpha, tuple(int(a) for a in qs), len(qs), bits)
    if cache is not None and cf.certified_count >= count:
        cache.store(cf)
    return cf


def _rounded(x: CertifiedReal, bits: int) -> CertifiedReal:
    """x enclosed at a lower working precision."""
    if bits >= x.bits:
        return x
    return CertifiedReal((mpf_pos(x.iv[0], bits, round_floor), mpf_pos(x.iv[1], bits, round_ceiling)), bits)


def check_cf_invariants(cf: CFExpansion, upto: Optional[int] = None) -> None:
    """Determinant identity, increasing denominators and the two-sided
    bound 1/((a_{i+1}+2) q_i^2) < |alpha - p_i/q_i| < 1/(a_{i+1} q_i^2).

    The bounds are checked with interval arithmetic; alpha is enclosed
    once at twice the expansion precision and rounded down to what each
    index needs.  Raises AssertionError on the first violation.
    """
    qs = cf.quotients
    n = len(qs) if upto is None else min(upto, len(qs))
    full_bits = max(2 * cf.precision_used, 128)
    alpha = cf.alpha.interval(full_bits)
    p_prev, q_prev = 1, 0
    for i, (p, q) in enumerate(convergents(qs[:n])):
        if p * q_prev - p_prev * q != (1 if i % 2 else -1):
            raise AssertionError(f"determinant identity fails at {i}")
        if i >= 2 and q <= q_prev:
            raise AssertionError(f"denominators not increasing at {i}")
        if i + 1 < n:
            a_next = qs[i + 1]
            q_next = a_next * q + q_prev
            bits = 2 * q_next.bit_length() + abs(p).bit_length() + 64
            for work in (_rounded(alpha, bits), alpha):
                err = abs(work * q - p)  # |q alpha - p|
                lower = err * ((a_next + 2) * q)
                upper = err * (a_next * q)
                if lower.certainly_gt(1) and upper.certainly_lt(1):
                    break
            else:
                raise AssertionError(f"convergent bound fails at {i}")
        p_prev, q_prev = p, q


# ---------------------------------------------------------------------------
# on-disk cache
# ---------------------------------------------------------------------------

class CFCache:
    """Line-oriented cache: ``alpha=...``, ``precision=...``, then one
    quotient per line.  Loads are re-verified against a fresh enclosure of
    alpha before use."""

    VERIFY_TAIL = 5

    def __init__(self, directory: Union[str, os.PathLike]):
        self.directory = Path(directory)

    def path_for(self, alpha: Target) -> Path:
        h = hashlib.sha256(alpha.canonical().encode()).hexdigest()[:24]
        return self.directory / f"{h}.cf"

    def store(self, cf: CFExpansion) -> Path:
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self.path_for(cf.alpha)
        lines = [f"alpha={cf.alpha.canonical()}", f"precision={cf.precision_used}"]
        lines += [str(a) for a in cf.quotients]
        tmp = path.with_suffix(".tmp")
        tmp.write_text("\n".join(lines) + "\n")
        tmp.replace(path)
        return path

    def read_raw(self, alpha: Target) -> Optional[Tuple[int, List[int]]]:
        path = self.path_for(alpha)
        if not path.exists():
            return None
        try:
            lines = path.read_text().splitlines()
            if len(lines) < 2 or lines[0] != f"alpha={alpha.canonical()}" or not lines[1].startswith("precision="):
                return None
            bits = int(lines[1].split("=", 1)[1])
            qs = [int(s) for s in lines[2:]]
        except (ValueError, OSError):
            return None
        return bits, qs

    def load(self, alpha: Target, count: int) -> Optional[CFExpansion]:
        raw = self.read_raw(alpha)
        if raw is None:
            return None
        bits, qs = raw
        if len(qs) < count or bits < 64:
            return None
        if not verify_prefix(alpha, qs, bits, tail=self.VERIFY_TAIL):
            return None
        return CFExpansion(alpha, tuple(qs[:count]), count, bits)


def verify_prefix(alpha: Target, qs: Sequence[int], bits: int, tail: int = 5) -> bool:
    """True when alpha provably lies in the cylinder of each of the last
    ``tail`` prefixes of ``qs`` (which pins down the whole prefix)."""
    if not qs:
        return True
    iv = alpha.interval(2 * bits)
    cv = list(convergents(qs))
    start = max(0, len(qs) - tail)
    for n in range(start, len(qs)):
        p, q = cv[n]
        pp, qq = cv[n - 1] if n > 0 else (1, 0)
        # all continuations of [a0;...,a_n] lie strictly between p/q and (p+pp)/(q+qq)
        e1 = Fraction(p, q)
        e2 = Fraction(p + pp, q + qq) if n > 0 else Fraction(p + 1)
        lo, hi = min(e1, e2), max(e1, e2)
        if not (iv.lower > lo and iv.upper < hi):
            return False
        if n > 0 and qs[n] < 1:
            return False
    return True


# ---------------------------------------------------------------------------
# polynomial square-root bounds and trigonometric identities
# ---------------------------------------------------------------------------

SQRT_RANGE = (Fraction(-516, 1000), Fraction(1))


def sqrt_lower_poly(z: Fraction) -> Fraction:
    return 1 + z / 2 - z**2 / 8 + z**3 / 16 - z**4 / 16


def sqrt_upper_poly(z: Fraction) -> Fraction:
    return 1 + z / 2 - z**2 / 8 + z**3 / 16


def lower_square_gap(z) -> Fraction:
    """lower(z)^2 - (1+z); nonpositive where the lower bound holds."""
    z = Fraction(z)
    return sqrt_lower_poly(z) ** 2 - (1 + z)


def upper_square_gap(z) -> Fraction:
    """upper(z)^2 - (1+z); nonnegative where the upper bound holds."""
    z = Fraction(z)
    return sqrt_upper_poly(z) ** 2 - (1 + z)


def sqrt_bounds_check(z) -> Tuple[bool, bool]:
    """Check lower(z) <= sqrt(1+z) <= upper(z) exactly, by squaring."""
    z = Fraction(z)
    if not SQRT_RANGE[0] < z < SQRT_RANGE[1]:
        raise DomainError(f"z={z} outside (-0.516, 1)")
    lo, up = sqrt_lower_poly(z), sqrt_upper_poly(z)
    lower_ok = lo <= 0 or lo * lo <= 1 + z
    upper_ok = up >= 0 and up * up >= 1 + z
    return lower_ok, upper_ok


def trig_identity_residuals(n: int, k: int, bits: int = 160) -> List[CertifiedReal]:
    """Residuals of the trigonometric identities used for the n = 4 and
    n = 5 families; each should enclose zero."""
    if n == 4 and k in (1, 3):
        a = Fraction(k, 8)
        tn, sc = tan_pi(a, bits), sec_pi(a, bits)
        sign = -1 if k == 1 else 1
        return [
            sign * (4 * tn**3 - 4 * tn) - sc**4,
            sign * ((3 * tn**2 - 1) / tn) - sc**2,
        ]
    if n == 5 and k in (1, 2):
        a = Fraction(2 * k, 5)
        tn, sc = tan_pi(a, bits), sec_pi(a, bits)
        return [
            5 * tn**4 - 10 * tn**2 + 1 - sc**5,
            20 * (tn**2 - 1) - 5 * sc**3,
        ]
    raise DomainError(f"no identities recorded for (n, k) = ({n}, {k})")
