"""Hypergeometric polynomials X_{n,r}, their denominators and numerators,
the quantity N_{m,n}, and finite-range validation of (C_n, D_n) pairs."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Dict, List, Optional, Tuple, Union

from .exactnum import DomainError, FactorizationBudgetExceeded, factorint, vp
from .realengine import CertifiedReal


@dataclass(frozen=True)
class RationalPoly:
    coeffs: Tuple[Fraction, ...]  # ascending degree

    def __post_init__(self):
        c = [Fraction(a) for a in self.coeffs]
        while len(c) > 1 and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c) if c else (Fraction(0),))

    @property
    def degree(self) -> int:
        return -1 if self.coeffs == (0,) else len(self.coeffs) - 1

    def __call__(self, x):
        acc = Fraction(0)
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def compose_linear(self, a: Fraction, b: Fraction) -> "RationalPoly":
        """P(a + b x)."""
        out = [Fraction(0)] * len(self.coeffs)
        for j, cj in enumerate(self.coeffs):
            if not cj:
                continue
            for i in range(j + 1):
                out[i] += cj * math.comb(j, i) * Fraction(a) ** (j - i) * Fraction(b) ** i
        return RationalPoly(tuple(out))


# ---------------------------------------------------------------------------
# products of rational prime powers
# ---------------------------------------------------------------------------

def _factor_or_atom(n: int) -> Dict[int, int]:
    # an integer that resists factoring stays whole; values and comparisons
    # only need some multiplicative representation, not a prime one
    try:
        return factorint(n).factors
    except FactorizationBudgetExceeded:
        return {n: 1}


def _factor_rational(q: Fraction) -> Dict[int, Fraction]:
    q = Fraction(q)
    if q <= 0:
        raise DomainError("prime-power values are positive")
    out: Dict[int, Fraction] = {}
    for p, e in _factor_or_atom(q.numerator).items():
        out[p] = out.get(p, 0) + Fraction(e)
    if q.denominator > 1:
        for p, e in _factor_or_atom(q.denominator).items():
            out[p] = out.get(p, 0) - Fraction(e)
    return {p: e for p, e in out.items() if e}


@dataclass(frozen=True)
class PrimePowerValue:
    """A positive real of the form prod p**e_p with rational exponents.

    Bases are primes except for integers that exceeded the factorization
    budget, which are kept whole.
    """

    factors: Dict[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(p): Fraction(e) for p, e in self.factors.items() if e}
        object.__setattr__(self, "factors", dict(sorted(clean.items())))

    @classmethod
    def of(cls, q: Union[int, Fraction]) -> "PrimePowerValue":
        return cls(_factor_rational(Fraction(q)))

    def __hash__(self):
        return hash(tuple(self.factors.items()))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PrimePowerValue.of(other)
        if not isinstance(other, PrimePowerValue):
            return NotImplemented
        out = dict(self.factors)
        for p, e in other.factors.items():
            out[p] = out.get(p, 0) + e
        return PrimePowerValue(out)

    __rmul__ = __mul__

    def __pow__(self, e):
        e = Fraction(e)
        return PrimePowerValue({p: f * e for p, f in self.factors.items()})

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PrimePowerValue.of(other)
        return self * other ** -1

    def __rtruediv__(self, other):
        return PrimePowerValue.of(other) * self ** -1

    def sqrt(self) -> "PrimePowerValue":
        return self ** Fraction(1, 2)

    def is_rational(self) -> bool:
        return all(e.denominator == 1 for e in self.factors.values())

    def as_fraction(self) -> Fraction:
        if not self.is_rational():
            raise DomainError("value is irrational")
        v = Fraction(1)
        for p, e in self.factors.items():
            v *= Fraction(p) ** int(e)
        return v

    def _cmp_one(self) -> int:
        """Sign of log(self), decided exactly."""
        if not self.factors:
            return 0
        L = reduce(lambda a, b: a * b // math.gcd(a, b), (e.denominator for e in self.factors.values()), 1)
        num = den = 1
        for p, e in self.factors.items():
            k = int(e * L)
            if k > 0:
                num *= p**k
            else:
                den *= p ** (-k)
        return (num > den) - (num < den)

    def compare(self, other) -> int:
        """-1, 0, 1 as self <, ==, > other, exactly."""
        if isinstance(other, (int, Fraction)):
            other = PrimePowerValue.of(other)
        return (self / other)._cmp_one()

    def __lt__(self, other):
        return self.compare(other) < 0

    def __le__(self, other):
        return self.compare(other) <= 0

    def __gt__(self, other):
        return self.compare(other) > 0

    def __ge__(self, other):
        return self.compare(other) >= 0

    def value(self, bits: int = 128) -> CertifiedReal:
        acc = CertifiedReal.exact(1, bits)
        for p, e in self.factors.items():
            if e.denominator == 1:
                acc = acc * CertifiedReal.exact(Fraction(p) ** int(e), bits)
            else:
                acc = acc * (CertifiedReal.exact(p, bits) ** CertifiedReal.exact(e, bits))
        return acc

    def log(self, bits: int = 128) -> CertifiedReal:
        acc = CertifiedReal.exact(0, bits)
        for p, e in self.factors.items():
            acc = acc + CertifiedReal.exact(p, bits).log() * e
        return acc

    def __float__(self):
        return math.prod(p ** float(e) for p, e in self.factors.items())

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        parts = []
        for p, e in self.factors.items():
            parts.append(f"{p}" if e == 1 else f"{p}^({e})")
        return "*".join(parts)


# ---------------------------------------------------------------------------
# X_{n,r}, D_{n,r}, N_{m,n,r}, N_{m,n}
# ---------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def xnr(n: int, r: int) -> RationalPoly:
    """2F1(-r, -r-1/n; 1-1/n; x), a polynomial of degree r."""
    if n < 1 or r < 0:
        raise DomainError("need n >= 1 and r >= 0")
    a, b, c = Fraction(-r), Fraction(-r) - Fraction(1, n), 1 - Fraction(1, n)
    coeffs = [Fraction(1)]
    term = Fraction(1)
    for i in range(r):
        term = term * (a + i) * (b + i) / ((c + i) * (i + 1))
        coeffs.append(term)
    return RationalPoly(tuple(coeffs))


def _lcm(*xs: int) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), xs, 1)


@lru_cache(maxsize=4096)
def dnr(n: int, r: int) -> int:
    return _lcm(*(c.denominator for c in xnr(n, r).coeffs))


@lru_cache(maxsize=4096)
def nmnr(m: int, n: int, r: int) -> int:
    if m < 1:
        raise DomainError("m must be positive")
    poly = xnr(n, r).compose_linear(Fraction(1), Fraction(-m))
    return reduce(math.gcd, (abs(c.numerator) for c in poly.coeffs), 0) or 1


def script_nmn(m: int, n: int) -> PrimePowerValue:
    """prod_{p | n} p^min(v_p(m), v_p(n) + 1/(p-1))."""
    if m < 1 or n < 1:
        raise DomainError("m and n must be positive")
    out = {}
    for p in factorint(n).factors:
        out[p] = min(Fraction(vp(p, m)), vp(p, n) + Fraction(1, p - 1))
    return PrimePowerValue(out)


def gamma_ratios(n: int, r: int) -> Tuple[Fraction, Fraction]:
    """Gamma(1-1/n) r!/Gamma(r+1-1/n) and n Gamma(r+1+1/n)/(r! Gamma(1/n))."""
    inv = Fraction(1, n)
    first = Fraction(math.factorial(r))
    for j in range(1, r + 1):
        first /= j - inv
    second = Fraction(n, math.factorial(r))
    for j in range(r + 1):
        second *= j + inv
    return first, second


# ---------------------------------------------------------------------------
# (C_n, D_n)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CDConstants:
    """C_n and D_n; D is given either as exp(D_log) or directly as D_value."""

    n: int
    C: Fraction
    D_log: Optional[Fraction] = None
    D_value: Optional[Fraction] = None
    source: str = "builtin"

    def __post_init__(self):
        object.__setattr__(self, "C", Fraction(self.C))
        if (self.D_log is None) == (self.D_value is None):
            raise DomainError("give exactly one of D_log, D_value")
        if self.D_log is not None:
            object.__setattr__(self, "D_log", Fraction(self.D_log))
            if self.D_log < 0:
                raise DomainError("D must be >= 1")
        else:
            object.__setattr__(self, "D_value", Fraction(self.D_value))
            if self.D_value < 1:
                raise DomainError("D must be >= 1")
        if self.C < 1:
            raise DomainError("C must be >= 1")

    def D(self, bits: int = 128) -> CertifiedReal:
        if self.D_log is not None:
            return CertifiedReal.exact(self.D_log, bits).exp()
        return CertifiedReal.exact(self.D_value, bits)

    def log_D(self, bits: int = 128) -> CertifiedReal:
        if self.D_log is not None:
            return CertifiedReal.exact(self.D_log, bits)
        return CertifiedReal.exact(self.D_value, bits).log() if self.D_value != 1 else CertifiedReal.exact(0, bits)

    def describe(self) -> str:
        d = f"exp({self.D_log})" if self.D_log is not None else str(self.D_value)
        return f"C_{self.n}={self.C}, D_{self.n}={d}"


BUILTIN_CD: Dict[int, CDConstants] = {
    4: CDConstants(4, Fraction(700000), D_log=Fraction("1.6")),
    5: CDConstants(5, Fraction(2400000), D_log=Fraction("1.37")),
    7: CDConstants(7, Fraction(64000), D_log=Fraction("1.66")),
    13: CDConstants(13, Fraction(390000), D_log=Fraction("2.21")),
}


def builtin_cd(n: int) -> CDConstants:
    try:
        return BUILTIN_CD[n]
    except KeyError:
        raise DomainError(f"no built-in (C_n, D_n) for n={n}; supply them explicitly") from None


def parse_cd(n: int, text: str) -> CDConstants:
    """'C,D' where D is a decimal or 'exp(x)'."""
    c, d = (s.strip() for s in text.split(","))
    if d.startswith("exp(") and d.endswith(")"):
        return CDConstants(n, Fraction(c), D_log=Fraction(d[4:-1]), source="user")
    return CDConstants(n, Fraction(c), D_value=Fraction(d), source="user")


@dataclass
class CDReport:
    passed: bool
    r_checked: int
    failed_at: Optional[int]
    max_ratio: float  # largest left/right ratio observed
    details: List[str] = field(default_factory=list)


def _flog(q: Fraction) -> float:
    return math.log(q.numerator) - math.log(q.denominator)


def lhs_value(n: int, m: int, r: int) -> Fraction:
    """max(1, gamma ratios) * D_{n,r} / N_{m,n,r}, the left side of the (C, D) inequality."""
    g1, g2 = gamma_ratios(n, r)
    return max(Fraction(1), g1, g2) * Fraction(dnr(n, r), nmnr(m, n, r))


def admissible_log_d_floor(n: int, m: int, r: int, c_max: Fraction, bits: int = 128) -> CertifiedReal:
    """A lower bound for log D valid for every admissible pair with C <= c_max.

    From lhs(r) < C (D/N_{m,n})^r at this single r.
    """
    lhs = CertifiedReal.exact(lhs_value(n, m, r), bits)
    return (lhs / c_max).log() / r + script_nmn(m, n).log(bits)


def validate_cd(cd: CDConstants, m: int = 1, r_max: int = 50, bits: int = 192) -> CDReport:
    """Check the defining inequality of (C_n, D_n) for 0 <= r <= r_max.

    The left side is exact; the right side is a certified enclosure.  The
    inequality is strict, so a tie or an undecidable comparison fails.
    """
    n = cd.n
    nm = script_nmn(m, n)
    exact_rhs = cd.D_value is not None and nm.is_rational()
    log_base = cd.log_D(bits) - nm.log(bits)
    worst = 0.0
    for r in range(r_max + 1):
        lhs = lhs_value(n, m, r)
        if exact_rhs:
            rhs_exact = cd.C * (cd.D_value / nm.as_fraction()) ** r
            ok = lhs < rhs_exact
            ratio = math.exp(_flog(lhs) - _flog(rhs_exact))
        else:
            rhs = (log_base * r).exp() * cd.C
            ok = rhs.certainly_gt(lhs)
            ratio = math.exp(_flog(lhs) - _flog(rhs.lower))
        worst = max(worst, ratio)
        if not ok:
            return CDReport(False, r + 1, r, worst, [f"inequality fails at r={r}"])
    return CDReport(True, r_max + 1, None, worst)
