"""Certified effective irrationality measures for sqrt|t| tan(k pi / n).

The hypergeometric method turns an integer x near a root of
F_{n,t}(x) = (x - sqrt t)^n + (x + sqrt t)^n into an explicit bound
|alpha - p/q| > 1/(c |q|^(kappa+1)).  Every quantity is computed exactly or
as a certified interval.
"""

from .exactnum import DomainError, FactorizationBudgetExceeded, QuadElement, SurdScalar, core, factorint, totient
from .realengine import AlphaSpec, CertifiedReal, CFCache, CFExpansion, TanSquared, cf_expand
from .hyperg import CDConstants, builtin_cd, validate_cd
from .thue_core import InstanceInput, MeasureCertificate, certify, certify_standard
from .families import FamilyCertificate, family_instance
from .cfverify import RefinedCertificate, refine
from .search import Finding, SearchConfig, convergent_scan, window_scan

__version__ = "0.1.0"

__all__ = [
    "AlphaSpec",
    "CDConstants",
    "CFCache",
    "CFExpansion",
    "CertifiedReal",
    "DomainError",
    "FactorizationBudgetExceeded",
    "FamilyCertificate",
    "Finding",
    "InstanceInput",
    "MeasureCertificate",
    "QuadElement",
    "RefinedCertificate",
    "SearchConfig",
    "SurdScalar",
    "TanSquared",
    "builtin_cd",
    "certify",
    "certify_standard",
    "cf_expand",
    "convergent_scan",
    "core",
    "factorint",
    "family_instance",
    "refine",
    "totient",
    "validate_cd",
    "window_scan",
]
