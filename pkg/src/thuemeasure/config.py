"""Run configuration.

Sources, highest precedence first: command-line flags, a ``key = value``
config file, ``THUE_*`` environment variables, built-in defaults.
"""

import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Mapping, Optional, Tuple

from .exactnum import DomainError
from .hyperg import CDConstants, parse_cd

ENV_PREFIX = "THUE_"
KEYS = ("precision_floor", "cache_dir", "output_format", "cd")


@dataclass(frozen=True)
class RunConfig:
    precision_floor: int = 160
    cache_dir: Optional[Path] = None  # None disables the CF cache
    output_format: str = "text"
    cd_overrides: Tuple[CDConstants, ...] = ()

    def __post_init__(self):
        if self.precision_floor < 64:
            raise DomainError("precision_floor must be at least 64 bits")
        if self.output_format not in ("json", "text"):
            raise DomainError("output_format is 'json' or 'text'")

    def cd_for(self, n: int) -> Optional[CDConstants]:
        for cd in self.cd_overrides:
            if cd.n == n:
                return cd
        return None


def parse_config_file(text: str) -> Dict[str, str]:
    """``key = value`` lines; ``#`` starts a comment; blank lines are skipped."""
    out: Dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise DomainError(f"config line {lineno}: expected 'key = value'")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lower().replace("-", "_")
        if key not in KEYS:
            raise DomainError(f"config line {lineno}: unknown key {key!r}")
        out[key] = value
    return out


def _from_env(environ: Mapping[str, str]) -> Dict[str, str]:
    out = {}
    for key in KEYS:
        v = environ.get(ENV_PREFIX + key.upper())
        if v is not None:
            out[key] = v
    return out


def _parse_cd_list(text: str) -> Tuple[CDConstants, ...]:
    """'n:C,D; n:C,D' with D a decimal or exp(x)."""
    out = []
    for item in text.split(";"):
        item = item.strip()
        if not item:
            continue
        n, rest = item.split(":", 1)
        out.append(parse_cd(int(n), rest))
    return tuple(out)


def load_config(flags: Optional[Mapping[str, Optional[str]]] = None, path=None,
                environ: Optional[Mapping[str, str]] = None) -> RunConfig:
    merged: Dict[str, str] = {}
    merged.update(_from_env(os.environ if environ is None else environ))
    if path is not None:
        merged.update(parse_config_file(Path(path).read_text()))
    for k, v in (flags or {}).items():
        if v is not None:
            merged[k] = str(v)
    kwargs = {}
    if "precision_floor" in merged:
        kwargs["precision_floor"] = int(merged["precision_floor"])
    if merged.get("cache_dir"):
        kwargs["cache_dir"] = Path(merged["cache_dir"])
    if "output_format" in merged:
        kwargs["output_format"] = merged["output_format"]
    if merged.get("cd"):
        kwargs["cd_overrides"] = _parse_cd_list(merged["cd"])
    return RunConfig(**kwargs)
