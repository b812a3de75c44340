"""Bit-exact rendering of mode intensity and polarization structure.

The intensity image is a binary PPM (P6, maxval 255, equal RGB channels,
gamma 1.0) with |ex|^2 + |ey|^2 mapped linearly onto [0, 255]; row 0 is the
top of the image (largest y).  The polarization ellipses go into a JSON
sidecar sampled on a coarse sub-grid: orientation is the major-axis angle
psi in [0, pi), ellipticity the angle chi = arcsin(S3/S0)/2 in [-pi/4, pi/4].
Both outputs are byte-identical across reruns of the same configuration.
"""

from __future__ import annotations

import math
import os

import numpy as np

from .modes import BeamParams, FieldGrid, GridSpec, evaluate_field, require_unit
from .serialize import atomic_write_bytes, write_json


def ppm_bytes(intensity: np.ndarray) -> bytes:
    """Encode a nonnegative scalar field as a grayscale P6 image."""
    arr = np.asarray(intensity, dtype=float)
    peak = float(arr.max())
    scaled = np.zeros_like(arr) if peak == 0.0 else arr / peak
    # Row 0 on top: flip the y axis of the (xy-indexed) field array.
    pix = np.rint(255.0 * scaled[::-1, :]).astype(np.uint8)
    rgb = np.repeat(pix[:, :, None], 3, axis=2)
    h, w = pix.shape
    return f"P6\n{w} {h}\n255\n".encode("ascii") + rgb.tobytes()


def ellipse_parameters(ex, ey):
    """(orientation, ellipticity, intensity) of a complex Jones pair."""
    s0 = np.abs(ex) ** 2 + np.abs(ey) ** 2
    cross = np.conj(ex) * ey
    s1 = np.abs(ex) ** 2 - np.abs(ey) ** 2
    s2 = 2.0 * cross.real
    s3 = 2.0 * cross.imag
    psi = 0.5 * np.arctan2(s2, s1) % math.pi
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = np.where(s0 > 0, s3 / np.where(s0 > 0, s0, 1.0), 0.0)
    chi = 0.5 * np.arcsin(np.clip(ratio, -1.0, 1.0))
    return psi, chi, s0


def ellipse_field(field: FieldGrid, stride: int = 16) -> list:
    """Ellipse entries on every stride-th grid cell, row-major order."""
    X, Y = field.spec.meshgrid(field.params)
    psi, chi, s0 = ellipse_parameters(field.ex, field.ey)
    entries = []
    for i in range(0, field.spec.n, stride):
        for j in range(0, field.spec.n, stride):
            entries.append({
                "x": float(X[i, j]),
                "y": float(Y[i, j]),
                "orientation": float(psi[i, j]),
                "ellipticity": float(chi[i, j]),
                "intensity": float(s0[i, j]),
            })
    return entries


def peak_ring_radius(field: FieldGrid) -> float:
    """Radius of the brightest grid cell."""
    X, Y = field.spec.meshgrid(field.params)
    inten = field.intensity()
    i, j = np.unravel_index(int(np.argmax(inten)), inten.shape)
    return float(math.hypot(X[i, j], Y[i, j]))


def render_field(c, params: BeamParams | None = None,
                 spec: GridSpec | None = None, out_dir: str = ".",
                 basename: str = "mode", stride: int = 16) -> dict:
    """Write the PPM intensity image and the ellipse JSON for a unit mode.

    Returns a summary with the output paths, the measured intensity-ring
    radius, and the grid cell size.
    """
    c = require_unit(c, tol=1e-10)
    params = params or BeamParams()
    spec = spec or GridSpec()
    field = evaluate_field(c, params, spec)

    ppm_path = os.path.join(out_dir, f"{basename}.ppm")
    ellipses_path = os.path.join(out_dir, f"{basename}_ellipses.json")
    atomic_write_bytes(ppm_path, ppm_bytes(field.intensity()))
    write_json(ellipses_path, {
        "basename": basename,
        "grid": {"n": spec.n, "half_extent": spec.half_extent},
        "beam": {"w0": params.w0, "k": params.k},
        "stride": stride,
        "ellipses": ellipse_field(field, stride=stride),
    })
    return {
        "ppm": ppm_path,
        "ellipses": ellipses_path,
        "peak_radius": peak_ring_radius(field),
        "expected_ring_radius": params.w0 / math.sqrt(2.0),
        "cell_size": spec.cell_size(params),
    }
