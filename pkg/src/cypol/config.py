"""Run configuration: flat key=value files plus command-line overrides.

Recognized keys (all optional):

    grid_n=256          samples per axis (even, >= 16)
    half_extent=5.0     half window in beam waists (>= 3)
    w0=1.0              beam waist
    k=6.283185307179586 wavenumber
    nmax_4mode=6        Fock cutoff of the four-mode space
    nmax_2mode=20       Fock cutoff of the two-mode squeezing space
    out=.               output directory
    tol_rotation=...    per-suite gating-tolerance overrides (see verify)
    tol_schmidt=... tol_momentum=... tol_hps=... tol_elements=... tol_quantum=...

No environment variables are consulted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace

from .modes import BeamParams, GridSpec

SUITES = ("rotation", "schmidt", "momentum", "hps", "elements", "quantum")


@dataclass
class RunConfig:
    grid_n: int = 256
    half_extent: float = 5.0
    w0: float = 1.0
    k: float = 2.0 * math.pi
    nmax_4mode: int = 6
    nmax_2mode: int = 20
    out: str = "."
    tol_overrides: dict = field(default_factory=dict)

    def __post_init__(self):
        # Fail fast: module preconditions are enforced at parse time.
        self.beam_params()
        self.grid_spec()
        if self.nmax_4mode < 2 or self.nmax_2mode < 2:
            raise ValueError("Fock cutoffs must be >= 2")
        for suite in self.tol_overrides:
            if suite not in SUITES:
                raise ValueError(f"unknown tolerance suite {suite!r}")

    def beam_params(self) -> BeamParams:
        return BeamParams(w0=self.w0, k=self.k)

    def grid_spec(self) -> GridSpec:
        return GridSpec(n=self.grid_n, half_extent=self.half_extent)

    def as_dict(self) -> dict:
        return {
            "grid_n": self.grid_n,
            "half_extent": self.half_extent,
            "w0": self.w0,
            "k": self.k,
            "nmax_4mode": self.nmax_4mode,
            "nmax_2mode": self.nmax_2mode,
            "tol_overrides": dict(sorted(self.tol_overrides.items())),
        }


_INT_KEYS = {"grid_n", "nmax_4mode", "nmax_2mode"}
_FLOAT_KEYS = {"half_extent", "w0", "k"}
_STR_KEYS = {"out"}


def load_config(path: str) -> RunConfig:
    """Parse a flat key=value file; '#' starts a comment."""
    values = {}
    tols = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value, got {raw!r}")
            key, val = (part.strip() for part in line.split("=", 1))
            if key in _INT_KEYS:
                values[key] = int(val)
            elif key in _FLOAT_KEYS:
                values[key] = float(val)
            elif key in _STR_KEYS:
                values[key] = val
            elif key.startswith("tol_") and key[4:] in SUITES:
                tols[key[4:]] = float(val)
            else:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
    return RunConfig(**values, tol_overrides=tols)


def apply_overrides(cfg: RunConfig, **overrides) -> RunConfig:
    """New config with the non-None keyword overrides applied."""
    fields = {k: v for k, v in overrides.items() if v is not None and k != "tols"}
    tols = dict(cfg.tol_overrides)
    tols.update(overrides.get("tols") or {})
    return replace(cfg, **fields, tol_overrides=tols)
