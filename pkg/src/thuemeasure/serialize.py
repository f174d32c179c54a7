"""JSON encoding of certificates and reports.

Field names follow the dataclass definitions.  Integers outside the range
that a double represents exactly are written as decimal strings, rationals
as "p/q", and certified reals as {"lo", "hi", "bits"} with outward-rounded
decimal endpoints.  Output carries no timestamps, so it is byte-identical
across runs.
"""

import dataclasses
import json
from fractions import Fraction

from .exactnum import QuadElement, SurdScalar
from .hyperg import PrimePowerValue
from .realengine import CertifiedReal, CFExpansion, Target

SAFE_INT = 2**53
REAL_DIGITS = 20

# read-only properties worth emitting next to the stored fields
_EXTRA = {
    "MeasureCertificate": ("applicable", "exponent", "statement"),
    "Finding": ("status",),
    "FamilyCertificate": ("hypotheses_ok", "theorem_applicable"),
    "RefinedCertificate": ("max_quotient_position",),
}
# fields that are bulky and recoverable; dropped from JSON
_SKIP = {
    "RefinedCertificate": ("cf_used",),
}


def encode_int(v: int):
    return v if -SAFE_INT <= v <= SAFE_INT else str(v)


def encode(obj):
    if obj is None or isinstance(obj, (bool, str)):
        return obj
    if isinstance(obj, int):
        return encode_int(int(obj))
    if isinstance(obj, float):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, CertifiedReal):
        lo, hi = obj.decimal_bounds(REAL_DIGITS)
        return {"lo": lo, "hi": hi, "bits": obj.bits}
    if isinstance(obj, QuadElement):
        return {"re": str(obj.re), "co": str(obj.co), "t": encode_int(obj.t)}
    if isinstance(obj, SurdScalar):
        return {"q": str(obj.q), "d": encode_int(obj.d)}
    if isinstance(obj, PrimePowerValue):
        return {"factors": {str(p): str(e) for p, e in sorted(obj.factors.items())}, "approx": str(obj)}
    if isinstance(obj, CFExpansion):
        return {
            "alpha": obj.alpha.canonical(),
            "certified_count": obj.certified_count,
            "precision_used": obj.precision_used,
            "terminated": obj.terminated,
            "quotients": [encode_int(a) for a in obj.quotients],
        }
    if isinstance(obj, Target) and not dataclasses.is_dataclass(obj):
        return obj.canonical()
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        name = type(obj).__name__
        out = {}
        if isinstance(obj, Target):
            out["canonical"] = obj.canonical()
        skip = _SKIP.get(name, ())
        for f in dataclasses.fields(obj):
            if f.name in skip:
                continue
            out[f.name] = encode(getattr(obj, f.name))
        for prop in _EXTRA.get(name, ()):
            v = getattr(obj, prop)
            out[prop] = encode(v() if callable(v) else v)
        return out
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(encode(obj), indent=2, ensure_ascii=False) + "\n"


def write(obj, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(obj))
