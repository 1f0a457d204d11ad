from __future__ import annotations

import os
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Optional

from .verlinde import CACHE_ENV


@dataclass(frozen=True)
class RunConfig:
    lie_type: str = "A1"
    k: int = 1
    window: int = 10
    tolerance: float = 1e-9
    seed: int = 0
    jobs: int = 1
    output: str = "json"
    cache_dir: Optional[str] = None

    def __post_init__(self):
        if self.tolerance <= 0:
            raise ValueError("tolerance must be positive")
        if self.window < 1:
            raise ValueError("window must be >= 1")
        if self.jobs < 1:
            raise ValueError("jobs must be >= 1")
        if self.output not in ("json", "csv", "pretty"):
            raise ValueError(f"unknown output format {self.output!r}")

    def resolved_cache_dir(self) -> Optional[str]:
        return self.cache_dir or os.environ.get(CACHE_ENV) or None


_CASTS = {f.name: f.type for f in fields(RunConfig)}


def read_config_file(path: str | Path) -> dict:
    """Plain ``key = value`` lines; ``#`` starts a comment."""
    out = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.replace("-", "_")
        if key == "type":
            key = "lie_type"
        if key not in _CASTS:
            raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
        out[key] = value
    return out


def merge(file_values: dict, flag_values: dict) -> RunConfig:
    """Config-file values overridden by explicitly given flags."""
    base = RunConfig()
    merged = {}
    for key, value in {**file_values, **{k: v for k, v in flag_values.items() if v is not None}}.items():
        default = getattr(base, key)
        if isinstance(default, bool):
            merged[key] = str(value).lower() in ("1", "true", "yes")
        elif isinstance(default, int):
            merged[key] = int(value)
        elif isinstance(default, float):
            merged[key] = float(value)
        else:
            merged[key] = value
    return replace(base, **merged)
