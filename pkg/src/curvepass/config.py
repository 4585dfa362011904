"""Service configuration: one JSON file plus CURVEPASS_* environment overrides.

``CURVEPASS_CONFIG`` points at the config file; any scalar field can be
overridden by ``CURVEPASS_<FIELD>`` (e.g. ``CURVEPASS_ROWS=5``).  Setting a
``test_seed`` (or ``CURVEPASS_TEST_SEED``) switches challenge layout to a
deterministic seed sequence; leave it unset in production so layouts come
from the system RNG.
"""

from __future__ import annotations

import dataclasses
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

from .engine import ValidationPolicy
from .grid import GridSpec
from .images import DegradeParams

ENV_PREFIX = "CURVEPASS_"


@dataclass
class ServiceConfig:
    rows: int = 4
    cols: int = 6
    canvas_width: float = 600.0
    canvas_height: float = 400.0
    password_length: int = 5
    tolerance_mode: str = "absolute"
    relative_factor: float = 2.5
    contrast: float = 0.4
    brightness: float = 70.0
    challenge_ttl: float = 120.0
    lockout_threshold: int = 3
    catalog_manifest: str | None = None
    catalog_seed: int = 7
    state_path: str | None = None
    test_seed: int | None = None
    cors_origins: list[str] = field(default_factory=lambda: ["*"])

    def grid(self) -> GridSpec:
        return GridSpec(self.rows, self.cols, self.canvas_width, self.canvas_height)

    def policy(self) -> ValidationPolicy:
        return ValidationPolicy(
            grid=self.grid(),
            n=self.password_length,
            mode=self.tolerance_mode,
            relative_factor=self.relative_factor,
        )

    def degrade_params(self) -> DegradeParams:
        return DegradeParams(contrast=self.contrast, brightness=self.brightness)


def _coerce(raw: str, fielddef: dataclasses.Field):
    ftype = fielddef.type
    if raw == "" or raw.lower() == "null":
        return None
    if ftype in ("int", "int | None"):
        return int(raw)
    if ftype in ("float", "float | None"):
        return float(raw)
    if ftype == "list[str]":
        return [item.strip() for item in raw.split(",") if item.strip()]
    return raw


def load_config(path: str | Path | None = None, env: Mapping[str, str] | None = None) -> ServiceConfig:
    """Build a config from defaults, an optional JSON file, and env overrides."""
    env = os.environ if env is None else env
    values: dict = {}
    path = path or env.get(ENV_PREFIX + "CONFIG")
    if path:
        values.update(json.loads(Path(path).read_text()))
    known = {f.name for f in dataclasses.fields(ServiceConfig)}
    unknown = set(values) - known
    if unknown:
        raise ValueError(f"unknown config keys: {sorted(unknown)}")
    config = ServiceConfig(**values)
    for fielddef in dataclasses.fields(ServiceConfig):
        var = ENV_PREFIX + fielddef.name.upper()
        if var in env:
            setattr(config, fielddef.name, _coerce(env[var], fielddef))
    return config
