"""Search for instances whose exponent beats the Liouville-type threshold.

Two generators:

* window_scan: every squarefree t <= t_max and every integer x within
  ``window`` of a root sqrt(t) tan(theta) of F_{n,-t};
* convergent_scan: x^2/t close to tan^2(theta), taken from the convergents
  p/q of tan^2(theta) with p = p1 p2^2, x = p1 p2, t = p1 q.

In both, t is the positive search parameter and the certified instance is
F_{n,-t}, i.e. beta1 = sqrt(-t).  F_{n,-t}(-x) = -+F_{n,-t}(x) and the
certificate at -x approximates the negated root with the same kappa, so
only x >= 0 is scanned.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Tuple

from .exactnum import (
    DomainError,
    FactorizationBudgetExceeded,
    is_squarefree,
    squarefree_split,
    totient,
)
from .hyperg import BUILTIN_CD, CDConstants, admissible_log_d_floor
from .realengine import AlphaSpec, CertifiedReal, TanSquared, cf_expand, tan_pi
from .screen import DEGENERATE, SURVIVE, log_script_n_max, screen_range
from .thue_core import (
    DegenerateInput,
    InstanceInput,
    MeasureCertificate,
    abs_g_times_n,
    certify,
    compute_uz,
    gcd_ladder,
    min_max,
)

log = logging.getLogger(__name__)

BITS = 160
NEAR_MISS = Fraction(1)
# probe used to bound D from below when no (C_n, D_n) pair is known
FLOOR_R = 200
FLOOR_C_MAX = Fraction(10) ** 60

__all__ = [
    "SearchConfig",
    "Finding",
    "ScanSummary",
    "totient",
    "threshold_for",
    "root_window",
    "root_classes",
    "window_scan",
    "window_scan_summary",
    "convergent_scan",
]


@dataclass(frozen=True)
class SearchConfig:
    n_range: Tuple[int, ...]
    t_max: int
    window: int = 10
    convergent_count: int = 20
    threshold_mode: str = "totient"  # "totient": kappa < phi(n)-1, "degree": kappa+1 < deg
    workers: int = 1
    near_miss: Fraction = NEAR_MISS  # also report findings with margin > -near_miss
    cd_overrides: Tuple[CDConstants, ...] = ()

    def __post_init__(self):
        if self.window < 1:
            raise DomainError("window must be at least 1")
        if self.t_max < 1:
            raise DomainError("t_max must be at least 1")
        if self.threshold_mode not in ("totient", "degree"):
            raise DomainError("threshold_mode is 'totient' or 'degree'")
        object.__setattr__(self, "n_range", tuple(sorted(set(self.n_range))))

    def constants(self, n: int) -> Optional[CDConstants]:
        for cd in self.cd_overrides:
            if cd.n == n:
                return cd
        return BUILTIN_CD.get(n)


@dataclass(frozen=True)
class Finding:
    n: int
    t: int  # positive search parameter; the certified instance has -t
    x: int
    kappa: CertifiedReal
    threshold: Fraction
    margin: CertifiedReal  # threshold - kappa
    certificate: Optional[MeasureCertificate]
    # True when D_n is unknown and kappa is only a lower bound (from a D floor)
    kappa_is_lower_bound: bool = False
    note: str = ""

    @property
    def status(self) -> str:
        if self.margin.certainly_gt(0):
            return "undecided" if self.kappa_is_lower_bound else "hit"
        if self.margin.certainly_le(0):
            return "miss"
        return "undecided"

    @property
    def is_hit(self) -> bool:
        return self.status == "hit"

    def sort_key(self):
        return (-self.margin.mid(), self.n, self.t, self.x)


@dataclass
class ScanSummary:
    scanned: int = 0
    screened_out: int = 0
    inapplicable: int = 0
    degenerate: int = 0
    certified: int = 0
    skipped: List[str] = field(default_factory=list)

    def merge(self, other: "ScanSummary") -> None:
        self.scanned += other.scanned
        self.screened_out += other.screened_out
        self.inapplicable += other.inapplicable
        self.degenerate += other.degenerate
        self.certified += other.certified
        self.skipped.extend(other.skipped)


# ---------------------------------------------------------------------------
# thresholds and windows
# ---------------------------------------------------------------------------

def _alpha_degree(n: int, t: int, k: int) -> int:
    """Degree of sqrt|t| tan(angle_k) over Q, via the factor of F_{n,t} it annihilates."""
    import sympy

    from .exactnum import fnt_coefficients

    x = sympy.Symbol("x")
    coeffs = fnt_coefficients(n, t)  # lowest degree first
    poly = sympy.Poly(list(reversed(coeffs)), x)
    alpha = AlphaSpec.for_root(n, t, k).interval(BITS)
    for fac, _ in poly.factor_list()[1]:
        vals = [sympy.Rational(c) for c in fac.all_coeffs()]
        v = CertifiedReal.exact(0, BITS)
        for c in vals:
            v = v * alpha + Fraction(int(c.p), int(c.q))
        if v.contains(0):
            return fac.degree()
    raise DomainError("no rational factor of F_{n,t} vanishes at the root")


def threshold_for(n: int, mode: str = "totient", t: Optional[int] = None, k: Optional[int] = None) -> Fraction:
    """Largest kappa that still counts as an improvement (strict inequality)."""
    if mode == "totient":
        return Fraction(totient(n) - 1)
    if t is None or k is None:
        raise DomainError("degree mode needs the root (t, k)")
    return Fraction(_alpha_degree(n, t, k) - 1)


def _root_angles(n: int) -> List[Fraction]:
    if n % 2:
        return [Fraction(2 * k, n) for k in range(n)]
    return [Fraction(2 * k + 1, 2 * n) for k in range(n)]


def root_window(n: int, t: int, window: int) -> Tuple[int, int]:
    """[0, x_hi] covering every x >= 0 within ``window`` of a root of F_{n,-t}.

    The largest root sqrt(t) |tan| is taken from a certified enclosure and
    the endpoint is rounded outward.
    """
    top = max(abs(tan_pi(a, 64)).upper for a in _root_angles(n))
    r = CertifiedReal.exact(t, 64).sqrt() * top
    return 0, math.ceil(r.upper) + window


def root_classes(n: int) -> List[int]:
    """Root indices k with distinct nonzero tan^2 of the root angle."""
    seen = set()
    out = []
    for k in range(n):
        a = AlphaSpec.for_root(n, 1, k).angle % 1
        key = min(a, 1 - a)
        if key == 0 or key in seen:
            continue
        seen.add(key)
        out.append(k)
    return out


# ---------------------------------------------------------------------------
# evaluation of one instance
# ---------------------------------------------------------------------------

def _finding_from_cert(n: int, t: int, x: int, cert: MeasureCertificate, mode: str) -> Finding:
    k = cert.root.alpha.k if cert.root else None
    thr = threshold_for(n, mode, -t, k) if mode == "degree" else threshold_for(n)
    margin = CertifiedReal.exact(thr, cert.kappa.bits) - cert.kappa
    note = ""
    if mode == "degree":
        alt = threshold_for(n)
        if (cert.kappa.upper < alt) != (cert.kappa.upper < thr):
            note = f"totient threshold {alt} and degree threshold {thr} disagree"
    return Finding(n, t, x, cert.kappa, thr, margin, cert, False, note)


def _floor_finding(n: int, t: int, x: int, mode: str) -> Optional[Finding]:
    """kappa lower bound from the admissible D floor when D_n is unknown."""
    inp = InstanceInput(n, -t, x, cd=CDConstants(n, Fraction(1), D_value=Fraction(1), source="placeholder"))
    u1, u2 = compute_uz(inp)
    ladder = gcd_ladder(u1, u2, -t, n)
    lo, hi = min_max(u1, u2, -t, BITS)
    G = abs_g_times_n(ladder).value(BITS)
    L1, L2 = (hi / G).log(), (G / lo).log()
    floor = admissible_log_d_floor(n, ladder.m, FLOOR_R, FLOOR_C_MAX, BITS)
    if floor.certainly_ge(L2):
        return None  # E <= 1 for every admissible pair
    if not (L2 - floor).certainly_gt(0):
        return None
    kap = (floor + L1) / (L2 - floor)
    thr = threshold_for(n, mode, -t, _root_index(inp)) if mode == "degree" else threshold_for(n)
    margin = CertifiedReal.exact(thr, BITS) - kap
    return Finding(n, t, x, kap, thr, margin, None, True, "D_n unknown; kappa from the admissible D floor")


def _root_index(inp: InstanceInput) -> Optional[int]:
    from .thue_core import identify_root

    return identify_root(inp).alpha.k


def _evaluate(n: int, t: int, x: int, cd: Optional[CDConstants], mode: str,
              summary: ScanSummary) -> Optional[Finding]:
    try:
        if cd is None:
            f = _floor_finding(n, t, x, mode)
            if f is None:
                summary.inapplicable += 1
            else:
                summary.certified += 1
            return f
        cert = certify(InstanceInput(n, -t, x, cd=cd), BITS)
    except DegenerateInput:
        summary.degenerate += 1
        return None
    except FactorizationBudgetExceeded as exc:
        summary.skipped.append(f"(n, t, x) = ({n}, {t}, {x}): {exc}")
        log.info("(n, t, x) = (%d, %d, %d) skipped: %s", n, t, x, exc)
        return None
    if not cert.applicable or cert.kappa is None:
        summary.inapplicable += 1
        return None
    summary.certified += 1
    return _finding_from_cert(n, t, x, cert, mode)


# ---------------------------------------------------------------------------
# window scan
# ---------------------------------------------------------------------------

def _screen_log_d(n: int, cd: Optional[CDConstants]) -> float:
    if cd is not None:
        # slightly low: kappa increases with D, so a smaller D is conservative
        return float(cd.log_D(64).lower) - 1e-9
    # the floor is smallest when N_{m,n} = 1
    return float(admissible_log_d_floor(n, 1, FLOOR_R, FLOOR_C_MAX, 64).lower) - 1e-9


def _scan_one_t(args) -> Tuple[List[Finding], ScanSummary]:
    n, t, window, cd, mode, near_miss = args
    summary = ScanSummary()
    x_lo, x_hi = root_window(n, t, window)
    if mode == "totient":
        thr = threshold_for(n)
    else:
        # deg(alpha) <= n - 1 for odd n (x = 0 is a root of F) and <= n for even n
        thr = Fraction(n - 2 if n % 2 else n - 1)
    limit = float(thr + near_miss)
    codes = screen_range(n, -t, x_lo, x_hi, _screen_log_d(n, cd), log_script_n_max(n), limit)
    summary.scanned += len(codes)
    out: List[Finding] = []
    for i, code in enumerate(codes):
        if code != SURVIVE:
            if code == DEGENERATE:
                summary.degenerate += 1
            else:
                summary.screened_out += 1
            continue
        f = _evaluate(n, t, x_lo + i, cd, mode, summary)
        if f is not None and f.margin.upper > -near_miss:
            out.append(f)
    return out, summary


def _work_items(config: SearchConfig, summary: ScanSummary):
    for n in config.n_range:
        cd = config.constants(n)
        if cd is None:
            summary.skipped.append(f"n={n}: no (C_n, D_n); kappa bounded below via the D floor")
        for t in range(1, config.t_max + 1):
            if is_squarefree(t):
                yield (n, t, config.window, cd, config.threshold_mode, config.near_miss)


def window_scan_summary(config: SearchConfig) -> Tuple[List[Finding], ScanSummary]:
    summary = ScanSummary()
    items = list(_work_items(config, summary))
    findings: List[Finding] = []
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_scan_one_t, items, chunksize=8))
    else:
        results = [_scan_one_t(it) for it in items]
    for fs, s in results:
        findings.extend(fs)
        summary.merge(s)
    findings.sort(key=Finding.sort_key)
    return findings, summary


def window_scan(config: SearchConfig) -> List[Finding]:
    """Hits and near misses, sorted by decreasing margin."""
    return window_scan_summary(config)[0]


# ---------------------------------------------------------------------------
# convergent scan
# ---------------------------------------------------------------------------

def convergent_scan(n: int, k: int, count: int, threshold_mode: str = "totient",
                    cd: Optional[CDConstants] = None) -> List[Finding]:
    """One finding per usable convergent among the first ``count`` of tan^2(theta_k).

    Convergents with p = 0, oversized numerators and inapplicable instances
    are skipped and logged.  Output keeps convergent order.
    """
    if count <= 0:
        return []
    if cd is None:
        cd = BUILTIN_CD.get(n)
    angle = AlphaSpec.for_root(n, 1, k).angle
    cf = cf_expand(TanSquared(angle), count)
    out: List[Finding] = []
    summary = ScanSummary()
    for i, (p, q) in enumerate(cf.iter_convergents()):
        if i >= count:
            break
        if p < 1:
            continue
        try:
            p1, p2 = squarefree_split(p)
        except FactorizationBudgetExceeded:
            log.info("convergent %d: numerator %d not factored within budget; skipped", i, p)
            continue
        t, x = p1 * q, p1 * p2
        f = _evaluate(n, t, x, cd, threshold_mode, summary)
        if f is None:
            log.info("convergent %d: (t, x) = (%d, %d) inapplicable; skipped", i, t, x)
            continue
        out.append(f)
    return out


def convergent_scan_all(n: int, count: int, threshold_mode: str = "totient",
                        cd: Optional[CDConstants] = None) -> Dict[int, List[Finding]]:
    """convergent_scan over every root class of n."""
    return {k: convergent_scan(n, k, count, threshold_mode, cd) for k in root_classes(n)}
