"""Exact arithmetic: factorization, squarefree parts, p-adic valuations and
elements of Q(sqrt t).

Everything here works on Python integers and :class:`fractions.Fraction`;
nothing touches floating point.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Tuple, Union

Rational = Union[int, Fraction]

SIEVE_LIMIT = 10**6
DEFAULT_RHO_BUDGET = 2_000_000


class DomainError(ValueError):
    """Raised when an argument lies outside an operation's domain."""


class FactorizationBudgetExceeded(RuntimeError):
    """Pollard rho gave up before splitting a composite cofactor."""


# ---------------------------------------------------------------------------
# primes
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _sieve(limit: int = SIEVE_LIMIT) -> Tuple[int, ...]:
    flags = bytearray(b"\x01") * (limit + 1)
    flags[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = bytearray(len(range(p * p, limit + 1, p)))
    return tuple(i for i, v in enumerate(flags) if v)


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Miller-Rabin with the first 13 prime bases.

    Deterministic below 3.3e24; beyond that a composite passing all 13 bases
    is not known to exist.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, budget: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    spent = 0
    while spent < budget:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
            spent += r
            if spent > budget:
                break
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    raise FactorizationBudgetExceeded(f"rho budget {budget} exhausted on {n}")


@dataclass(frozen=True)
class IntFactorization:
    sign: int
    factors: Dict[int, int] = field(default_factory=dict)

    def value(self) -> int:
        v = self.sign
        for p, e in self.factors.items():
            v *= p**e
        return v


def factorint(n: int, rho_budget: int = DEFAULT_RHO_BUDGET) -> IntFactorization:
    """Factor a nonzero integer: sieve trial division to 10**6, then
    Pollard-Brent rho on whatever cofactor survives."""
    if n == 0:
        raise DomainError("cannot factor 0")
    sign = -1 if n < 0 else 1
    n = abs(n)
    factors: Dict[int, int] = {}
    for p in _sieve():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            factors[p] = e
    if n > 1:
        rng = random.Random(n)  # deterministic per input
        stack = [n]
        while stack:
            m = stack.pop()
            if m == 1:
                continue
            if is_prime(m):
                factors[m] = factors.get(m, 0) + 1
                continue
            r = math.isqrt(m)
            if r * r == m:
                stack += [r, r]
                continue
            d = _pollard_brent(m, rho_budget, rng)
            stack += [d, m // d]
    return IntFactorization(sign, dict(sorted(factors.items())))


# ---------------------------------------------------------------------------
# squarefree parts and valuations
# ---------------------------------------------------------------------------

def core(n: int) -> int:
    """Squarefree d with n/d a perfect square and sign(d) == sign(n)."""
    if n == 0:
        raise DomainError("core(0) is undefined")
    f = factorint(n)
    d = f.sign
    for p, e in f.factors.items():
        if e % 2:
            d *= p
    return d


def squarefree_split(n: int) -> Tuple[int, int]:
    """Return (a1, a2) with n == a1 * a2**2 and a1 squarefree."""
    if n < 1:
        raise DomainError("squarefree_split needs a positive integer")
    a1 = a2 = 1
    for p, e in factorint(n).factors.items():
        a2 *= p ** (e // 2)
        if e % 2:
            a1 *= p
    return a1, a2


def is_squarefree(n: int) -> bool:
    if n == 0:
        return False
    return all(e == 1 for e in factorint(n).factors.values())


def vp(p: int, x: Rational) -> int:
    """Exponent of the prime p in the nonzero rational x."""
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    x = Fraction(x)
    if x == 0:
        raise DomainError("vp(0) is infinite")

    def _v(m: int) -> int:
        m = abs(m)
        k = 0
        while m % p == 0:
            m //= p
            k += 1
        return k

    return _v(x.numerator) - _v(x.denominator)


def totient(n: int) -> int:
    if n < 1:
        raise DomainError("totient needs n >= 1")
    out = n
    for p in factorint(n).factors:
        out = out // p * (p - 1)
    return out


# ---------------------------------------------------------------------------
# Q(sqrt t)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadElement:
    """re + co*sqrt(t) with rational coordinates; t need not be squarefree."""

    re: Fraction
    co: Fraction
    t: int

    def __post_init__(self):
        if self.t == 0:
            raise DomainError("t must be nonzero")
        object.__setattr__(self, "re", Fraction(self.re))
        object.__setattr__(self, "co", Fraction(self.co))

    @classmethod
    def rational(cls, r: Rational, t: int) -> "QuadElement":
        return cls(Fraction(r), Fraction(0), t)

    @classmethod
    def sqrt_t(cls, t: int) -> "QuadElement":
        return cls(Fraction(0), Fraction(1), t)

    def _coerce(self, other) -> "QuadElement":
        if isinstance(other, QuadElement):
            if other.t != self.t:
                raise DomainError(f"mismatched fields: t={self.t} vs t={other.t}")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElement(Fraction(other), Fraction(0), self.t)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElement(self.re + o.re, self.co + o.co, self.t)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(-self.re, -self.co, self.t)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElement(self.re - o.re, self.co - o.co, self.t)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElement(
            self.re * o.re + self.t * self.co * o.co,
            self.re * o.co + self.co * o.re,
            self.t,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt t)")
        num = self * o.conj()
        return QuadElement(num.re / n, num.co / n, self.t)

    def __pow__(self, e: int):
        return quad_pow(self, e)

    def conj(self) -> "QuadElement":
        return QuadElement(self.re, -self.co, self.t)

    def norm(self) -> Fraction:
        return self.re * self.re - self.t * self.co * self.co

    def trace(self) -> Fraction:
        return 2 * self.re

    def is_zero(self) -> bool:
        return self.re == 0 and self.co == 0

    def is_algebraic_integer(self) -> bool:
        """Membership in the ring of integers of Q(sqrt t).

        Decided through the minimal polynomial X^2 - trace X + norm, which
        handles non-squarefree t (and half-integer coordinates when
        core(t) = 1 mod 4) without special cases.
        """
        if self.co == 0:
            return self.re.denominator == 1
        return self.trace().denominator == 1 and self.norm().denominator == 1

    def __str__(self) -> str:
        return f"{self.re} + {self.co}*sqrt({self.t})"


def quad_pow(z: QuadElement, e: int) -> QuadElement:
    """z**e by binary powering; e >= 0."""
    if e < 0:
        raise DomainError("quad_pow needs a nonnegative exponent")
    result = QuadElement(Fraction(1), Fraction(0), z.t)
    base = z
    while e:
        if e & 1:
            result = result * base
        e >>= 1
        if e:
            base = base * base
    return result


def fnt_eval(n: int, t: int, x: int) -> int:
    """F_{n,t}(x) = (x - sqrt t)^n + (x + sqrt t)^n as an exact integer."""
    # only even powers of sqrt(t) survive
    return 2 * sum(math.comb(n, j) * x ** (n - j) * t ** (j // 2) for j in range(0, n + 1, 2))


def fnt_coefficients(n: int, t: int) -> List[int]:
    """Integer coefficients of F_{n,t}, ascending degree."""
    coeffs = [0] * (n + 1)
    for j in range(0, n + 1, 2):
        coeffs[n - j] = 2 * math.comb(n, j) * t ** (j // 2)
    return coeffs


@dataclass(frozen=True)
class SurdScalar:
    """q * sqrt(d) with d squarefree (possibly negative); zero is (0, 1)."""

    q: Fraction
    d: int = 1

    def __post_init__(self):
        q = Fraction(self.q)
        d = self.d
        if d == 0:
            raise DomainError("SurdScalar radicand must be nonzero")
        if q == 0:
            q, d = Fraction(0), 1
        elif not is_squarefree(d):
            raise DomainError(f"radicand {d} is not squarefree; use SurdScalar.of")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "d", d)

    @classmethod
    def of(cls, q: Rational, radicand: Rational = 1) -> "SurdScalar":
        """Normalize q * sqrt(radicand) for any nonzero rational radicand."""
        q = Fraction(q)
        r = Fraction(radicand)
        if q == 0:
            return cls(Fraction(0), 1)
        if r == 0:
            raise DomainError("radicand must be nonzero")
        # sqrt(a/b) = sqrt(a*b)/b
        num = r.numerator * r.denominator
        q /= r.denominator
        d = core(num)
        s = math.isqrt(num // d)
        return cls(q * s, d)

    def abs_squared(self) -> Fraction:
        return self.q * self.q * abs(self.d)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return SurdScalar.of(self.q * other, self.d)
        if isinstance(other, SurdScalar):
            # principal roots: sqrt(a) sqrt(b) = -sqrt(ab) when a, b < 0
            sign = -1 if self.d < 0 and other.d < 0 else 1
            return SurdScalar.of(sign * self.q * other.q, self.d * other.d)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return SurdScalar.of(self.q / other, self.d)
        if isinstance(other, SurdScalar):
            if other.q == 0:
                raise ZeroDivisionError("division by zero surd")
            # 1/(q sqrt b) = sqrt(b)/(q b)
            return self * SurdScalar(1 / (other.q * other.d), other.d)
        return NotImplemented

    def __rtruediv__(self, other):
        return SurdScalar.of(other, 1) / self

    def is_algebraic_integer(self) -> bool:
        # root of X^2 - q^2 d; d squarefree forces q integral
        return self.q.denominator == 1

    def __str__(self) -> str:
        return f"{self.q}" if self.d == 1 else f"{self.q}*sqrt({self.d})"
