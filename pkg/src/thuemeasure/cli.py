"""Command-line interface: certify, family, search, cf, refine, verify-paper."""

import argparse
import logging
import sys
from fractions import Fraction
from typing import List, Optional

from . import serialize
from .config import RunConfig, load_config
from .exactnum import DomainError
from .realengine import AlphaSpec, CFCache, QuadraticSurd, RationalTarget, TanSquared, cf_expand

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INAPPLICABLE = 2

log = logging.getLogger("thuemeasure")


def _parse_n_list(text: str) -> List[int]:
    """'7', '7,13' or '3-20'."""
    out: List[int] = []
    for part in text.split(","):
        part = part.strip()
        if "-" in part:
            a, b = part.split("-", 1)
            out.extend(range(int(a), int(b) + 1))
        elif part:
            out.append(int(part))
    return out


def _emit(cfg: RunConfig, args, obj, text: str) -> None:
    if getattr(args, "out", None):
        serialize.write(obj, args.out)
    if cfg.output_format == "json":
        sys.stdout.write(serialize.dumps(obj))
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _yn(flag: bool) -> str:
    return "yes" if flag else "no"


def _real(x, digits=12) -> str:
    lo, hi = x.decimal_bounds(digits)
    return f"[{lo}, {hi}]"


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_certify(args, cfg: RunConfig) -> int:
    from .thue_core import certify_standard

    cd = cfg.cd_for(args.n)
    cert = certify_standard(args.n, args.t, args.x, cd=cd, bits=cfg.precision_floor)
    L = cert.ladder
    lines = [
        f"instance     n={args.n} t={args.t} x={args.x}",
        f"u1, u2       {cert.u1}, {cert.u2}",
        f"Z/U          {cert.zu}",
        f"gcd ladder   g1={L.g1} g2={L.g2} g3={L.g3} g4={L.g4} g={L.g} m={L.m} N={L.script_n}",
        f"E            {_real(cert.E)}",
        f"Q            {_real(cert.Q)}",
        f"E > 1        {cert.e_gt_1}",
        f"Z/U ok       {cert.zu_ok}",
    ]
    if cert.root is not None:
        lines.append(f"root         {cert.root.alpha.canonical()} (branch {cert.root.branch_k})")
    if cert.applicable:
        lines.append(f"kappa <      {cert.kappa.decimal_bounds(8)[1]}")
        lines.append(f"c <          {cert.c_prop.upper_sci(6)}")
        lines.append(f"measure      {cert.statement()}")
    else:
        lines.append("measure      not applicable")
    for note in cert.notes:
        lines.append(f"note         {note}")
    _emit(cfg, args, cert, "\n".join(lines))
    return EXIT_OK if cert.applicable else EXIT_INAPPLICABLE


def cmd_family(args, cfg: RunConfig) -> int:
    from .families import conservativity, family_instance, gcd_lower_bound_check

    fc = family_instance(args.n, args.k, args.b, cd=cfg.cd_for(args.n), crosscheck=not args.no_crosscheck)
    lines = [
        f"family       n={fc.n} k={fc.k} b={fc.b}",
        f"a1, a2       {fc.a1}, {fc.a2}",
        f"eps          {_real(fc.eps)}",
        f"N            {fc.script_n}",
        f"hypotheses   b large enough={_yn(fc.hyp_b)} gcd(p, b)=1={_yn(fc.hyp_gcd)} |eps|<1/2={_yn(fc.hyp_eps)}",
    ]
    if fc.theorem_applicable:
        lines.append(f"kappa <      {fc.kappa_thm.decimal_bounds(8)[1]}")
        lines.append(f"c <          {fc.c_thm.upper_sci(6)}  (sharper {fc.c_sharper.upper_sci(6)})")
    elif fc.note:
        lines.append(f"note         {fc.note}")
    if fc.crosscheck is not None and fc.crosscheck.applicable:
        cc = fc.crosscheck
        lines.append(f"direct kappa {cc.kappa.decimal_bounds(8)[1]}  root {cc.root.alpha.canonical() if cc.root else '?'}")
        if fc.theorem_applicable:
            k_ok, c_ok = conservativity(fc)
            lines.append(f"checks       conservative kappa={k_ok} c={c_ok} gcd_bound={gcd_lower_bound_check(fc)} root={fc.root_matches}")
        v = fc.verdict()
        if v is not None:
            lines.append(f"verdict      exponent {float(v.kappa_plus_one):.6f} vs Liouville {v.liouville_exponent}: "
                         f"{'improves' if v.improves else 'no improvement'}")
    _emit(cfg, args, fc, "\n".join(lines))
    return EXIT_OK if fc.theorem_applicable else EXIT_INAPPLICABLE


def cmd_search(args, cfg: RunConfig) -> int:
    from .search import SearchConfig, convergent_scan_all, window_scan_summary

    ns = _parse_n_list(args.n)
    sc = SearchConfig(tuple(ns), args.t_max, args.window, args.convergents, args.threshold,
                      args.workers, Fraction(args.near_miss), cfg.cd_overrides)
    findings, summary = window_scan_summary(sc)
    conv = []
    if args.convergents > 0:
        for n in sc.n_range:
            for k, fs in convergent_scan_all(n, args.convergents, args.threshold, sc.constants(n)).items():
                conv.extend(fs)
    lines = [f"window scan  scanned={summary.scanned} screened_out={summary.screened_out} "
             f"certified={summary.certified} inapplicable={summary.inapplicable} degenerate={summary.degenerate}"]
    for s in summary.skipped:
        lines.append(f"skipped      {s}")
    for f in findings:
        lines.append(f"{f.status:9s}    n={f.n} t={f.t} x={f.x} kappa={_real(f.kappa, 8)} threshold={f.threshold}")
    for f in conv:
        lines.append(f"convergent   {f.status:9s} n={f.n} t={f.t} x={f.x} kappa+1={(f.kappa + 1).decimal_bounds(6)[1]}")
    _emit(cfg, args, {"window": findings, "convergent": conv, "summary": summary}, "\n".join(lines))
    return EXIT_OK


def _target_from_args(args):
    if args.tan2 is not None:
        return TanSquared(Fraction(args.tan2))
    if args.surd is not None:
        a, b, d = args.surd.split(",")
        return QuadraticSurd(Fraction(a), Fraction(b), int(d))
    if args.rational is not None:
        return RationalTarget(Fraction(args.rational))
    if args.n is None or args.t is None or args.k is None:
        raise DomainError("give --n/--t/--k, --tan2, --surd or --rational")
    return AlphaSpec.for_root(args.n, args.t, args.k)


def cmd_cf(args, cfg: RunConfig) -> int:
    alpha = _target_from_args(args)
    cache = None if args.no_cache or cfg.cache_dir is None else CFCache(cfg.cache_dir)
    cf = cf_expand(alpha, args.count, cache=cache)
    lines = [f"alpha        {alpha.canonical()}",
             f"certified    {cf.certified_count} quotients at {cf.precision_used} bits"]
    if cf.quotients:
        idx, val = cf.max_quotient()
        lines.append(f"largest      a_{idx + 1} = {val}  (a_1 is the integer part)")
    lines.append("quotients    " + " ".join(str(a) for a in cf.quotients))
    _emit(cfg, args, cf, "\n".join(lines))
    return EXIT_OK if cf.certified_count >= args.count or cf.terminated else EXIT_ERROR


def cmd_refine(args, cfg: RunConfig) -> int:
    from .cfverify import refine
    from .thue_core import certify_standard

    cert = certify_standard(args.n, args.t, args.x, cd=cfg.cd_for(args.n), bits=cfg.precision_floor)
    if not cert.applicable:
        sys.stderr.write("raw measure not applicable\n")
        return EXIT_INAPPLICABLE
    out = refine(cert, Fraction(args.c_star), Fraction(args.exponent),
                 check_bounds=not args.skip_bounds_check, tail_exponent=args.tail_exponent)
    lines = [f"alpha        {out.alpha.canonical()}",
             f"target       |alpha - p/q| > {float(out.target[0]):g}/|q|^{float(out.target[1]):g}"]
    lines += [f"step         {s}" for s in out.transcript]
    lines.append(f"result       {'verified' if out.verified else 'FAILED'}")
    _emit(cfg, args, out, "\n".join(lines))
    return EXIT_OK if out.verified else EXIT_ERROR


def cmd_verify_paper(args, cfg: RunConfig) -> int:
    from .replay import replay_claims

    only = None
    if args.only:
        only = [g for item in args.only for g in item.split(",") if g]
    table = {cd.n: cd for cd in cfg.cd_overrides} or None
    report = replay_claims(only, cd_table=table)
    _emit(cfg, args, report, report.text())
    if not report.passed:
        for e in report.failures():
            sys.stderr.write(f"failed claim: {e.group}: {e.claim}\n")
        return EXIT_ERROR
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="key = value config file")
    common.add_argument("--format", choices=["json", "text"], default=None, dest="output_format")
    common.add_argument("--precision", type=int, default=None, help="working precision floor in bits")
    common.add_argument("--cache-dir", default=None)
    common.add_argument("--cd", default=None, help="(C_n, D_n) overrides, e.g. '7:64000,exp(1.66)'")
    common.add_argument("--out", default=None, help="also write JSON here")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="thuemeasure", description=__doc__)
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("certify", parents=[common], help="certify the measure for one (n, t, x)")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--t", type=int, required=True)
    c.add_argument("--x", type=int, required=True)
    c.set_defaults(func=cmd_certify)

    f = sub.add_parser("family", parents=[common], help="closed-form family bounds for n = 4, 5")
    f.add_argument("--n", type=int, required=True, choices=[4, 5])
    f.add_argument("--k", type=int, required=True)
    f.add_argument("--b", type=int, required=True)
    f.add_argument("--no-crosscheck", action="store_true")
    f.set_defaults(func=cmd_family)

    s = sub.add_parser("search", parents=[common], help="window and convergent scans")
    s.add_argument("--n", required=True, help="'7', '7,13' or '3-20'")
    s.add_argument("--t-max", type=int, default=1000)
    s.add_argument("--window", type=int, default=10)
    s.add_argument("--convergents", type=int, default=0, help="also scan this many convergents per root class")
    s.add_argument("--threshold", choices=["totient", "degree"], default="totient")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--near-miss", default="1", help="report misses within this margin")
    s.set_defaults(func=cmd_search)

    e = sub.add_parser("cf", parents=[common], help="certified continued-fraction expansion")
    e.add_argument("--n", type=int)
    e.add_argument("--t", type=int)
    e.add_argument("--k", type=int, help="root index: sqrt|t| tan(angle_k)")
    e.add_argument("--tan2", help="tan^2(a pi) for the rational a")
    e.add_argument("--surd", help="'a,b,d' for a + b sqrt(d)")
    e.add_argument("--rational")
    e.add_argument("--count", type=int, default=50)
    e.add_argument("--no-cache", action="store_true")
    e.set_defaults(func=cmd_cf)

    r = sub.add_parser("refine", parents=[common], help="trade exponent for a smaller constant")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--t", type=int, required=True)
    r.add_argument("--x", type=int, required=True)
    r.add_argument("--c-star", required=True)
    r.add_argument("--exponent", required=True, help="target exponent of |q|, i.e. kappa* + 1")
    r.add_argument("--tail-exponent", type=int, default=None, help="use B = 10^k (at least the admissible minimum)")
    r.add_argument("--skip-bounds-check", action="store_true")
    r.set_defaults(func=cmd_refine)

    v = sub.add_parser("verify-paper", parents=[common], help="replay the published claims")
    v.add_argument("--only", action="append", help="claim group(s), comma separated")
    v.set_defaults(func=cmd_verify_paper)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        cfg = load_config({"precision_floor": args.precision, "cache_dir": args.cache_dir,
                           "output_format": args.output_format, "cd": args.cd}, args.config)
        return args.func(args, cfg)
    except (DomainError, ValueError, KeyError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
