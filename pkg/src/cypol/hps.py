"""Hybrid Poincare spheres: Stokes-like coordinates for cylindrical modes.

Each rotation class (co-rotating "+" and counter-rotating "-") carries its own
unit sphere.  A point is parametrized by the pair of amplitudes in the
(radial, azimuthal) basis of that class,

    fA = cos(theta/2),        fR = exp(i phi) sin(theta/2),

so theta = 0 is the azimuthal pole and theta = pi the radial pole.  The hybrid
Stokes parameters are the usual quadratic forms in (fR, fA):

    S0 = |fR|^2 + |fA|^2        S1 = |fR|^2 - |fA|^2
    S2 = 2 Re(fR* fA)           S3 = -i (fR* fA - fA* fR)

This amplitude parametrization is primary; under it S1 = -cos(theta),
S2 = sin(theta) cos(phi), S3 = -sin(theta) sin(phi), and the inverse map used
for round trips is theta = arccos(-S1/S0), phi = atan2(-S3, S2).

A superselection rule forbids interference between the two classes: an
arbitrary four-dimensional mode is reported as its two projections, one per
sphere, discarding exactly the relative phase and amplitude between them.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import ForbiddenTransform, ZeroField
from .modes import as_coeff4, cpm_basis

_TAU = 2.0 * math.pi

#: phi values reachable by rules (a) and (b): the two linear meridians.
MERIDIAN_PHIS = (0.0, 0.5 * math.pi, math.pi, 1.5 * math.pi)


@dataclass(frozen=True)
class SpherePoint:
    theta: float
    phi: float
    sphere: str = "+"

    def __post_init__(self):
        if not -1e-12 <= self.theta <= math.pi + 1e-12:
            raise ValueError(f"theta must lie in [0, pi], got {self.theta}")
        if self.sphere not in ("+", "-"):
            raise ValueError(f"sphere must be '+' or '-', got {self.sphere!r}")
        object.__setattr__(self, "theta", float(min(max(self.theta, 0.0), math.pi)))
        object.__setattr__(self, "phi", float(self.phi) % _TAU)


@dataclass(frozen=True)
class HybridStokes:
    s0: float
    s1: float
    s2: float
    s3: float
    sphere: str = "+"


class ProjectedPair(NamedTuple):
    """Projection of a mode onto one sphere's (radial, azimuthal) pair."""

    A: complex
    B: complex
    weight: float


@dataclass(frozen=True)
class SuperselectionSplit:
    plus: ProjectedPair
    minus: ProjectedPair


def amplitudes_from_sphere(p: SpherePoint):
    """(fA, fR) amplitudes of a sphere point; |fA|^2 + |fR|^2 = 1."""
    fA = complex(math.cos(0.5 * p.theta))
    fR = cmath.exp(1j * p.phi) * math.sin(0.5 * p.theta)
    return fA, fR


def hybrid_stokes(fR: complex, fA: complex, sphere="+") -> HybridStokes:
    """Hybrid Stokes 4-vector of the (radial, azimuthal) amplitudes."""
    if abs(fR) == 0.0 and abs(fA) == 0.0:
        raise ZeroField("both amplitudes vanish; Stokes parameters undefined")
    sphere = "+" if sphere in ("+", "plus", 1) else "-"
    cross = np.conj(fR) * fA
    return HybridStokes(
        s0=float(abs(fR) ** 2 + abs(fA) ** 2),
        s1=float(abs(fR) ** 2 - abs(fA) ** 2),
        s2=float(2.0 * cross.real),
        s3=float(2.0 * cross.imag),
        sphere=sphere,
    )


def sphere_from_stokes(st: HybridStokes) -> SpherePoint:
    """Invert the amplitude parametrization; phi reported as 0 at the poles."""
    theta = math.acos(min(max(-st.s1 / st.s0, -1.0), 1.0))
    if min(abs(theta), abs(math.pi - theta)) < 1e-9:
        phi = 0.0
    else:
        phi = math.atan2(-st.s3, st.s2) % _TAU
    return SpherePoint(theta=theta, phi=phi, sphere=st.sphere)


def sphere_from_amplitudes(fR: complex, fA: complex, sphere="+") -> SpherePoint:
    """Sphere point of an amplitude pair, modulo the global phase."""
    if abs(fR) == 0.0 and abs(fA) == 0.0:
        raise ZeroField("both amplitudes vanish; no sphere point")
    sphere = "+" if sphere in ("+", "plus", 1) else "-"
    theta = 2.0 * math.atan2(abs(fR), abs(fA))
    if min(abs(theta), abs(math.pi - theta)) < 1e-9:
        phi = 0.0
    else:
        phi = (cmath.phase(fR) - cmath.phase(fA)) % _TAU
    return SpherePoint(theta=theta, phi=phi, sphere=sphere)


def coeff_from_sphere(p: SpherePoint) -> np.ndarray:
    """Unit coefficient vector fR*uR + fA*uA on the point's sphere."""
    fA, fR = amplitudes_from_sphere(p)
    return fR * cpm_basis("R" + p.sphere) + fA * cpm_basis("A" + p.sphere)


def superselect(c) -> SuperselectionSplit:
    """Project a mode onto the two rotation classes.

    The projection amplitudes are A = <uR, c>, B = <uA, c> per sphere and the
    weights |A|^2 + |B|^2 sum to ||c||^2 (the four CPMs are complete).
    """
    c = as_coeff4(c)
    pairs = {}
    for s in ("+", "-"):
        A = complex(np.vdot(cpm_basis("R" + s), c))
        B = complex(np.vdot(cpm_basis("A" + s), c))
        pairs[s] = ProjectedPair(A=A, B=B, weight=abs(A) ** 2 + abs(B) ** 2)
    return SuperselectionSplit(plus=pairs["+"], minus=pairs["-"])


def _on_meridian_set(phi: float, tol: float = 1e-9) -> bool:
    return any(
        min(abs(phi - m) % _TAU, _TAU - abs(phi - m) % _TAU) < tol
        for m in MERIDIAN_PHIS
    )


def allowed_transform(p: SpherePoint, rule: str) -> SpherePoint:
    """One of the three sphere moves reachable with uniform phase retarders.

    (a) {theta, phi} -> {pi - theta, phi}        phi in {0, pi/2, pi, 3pi/2}
    (b) {theta, phi} -> {pi - theta, pi + phi}   phi in {0, pi/2, pi, 3pi/2}
    (c) {theta, phi} -> {theta, pi + phi}        any phi

    Rules (a) and (b) raise ForbiddenTransform away from the allowed phi set:
    there are no arbitrary-to-arbitrary retarder transformations on these
    spheres.  The sphere label never changes.
    """
    if rule not in ("a", "b", "c"):
        raise ValueError(f"rule must be 'a', 'b' or 'c', got {rule!r}")
    if rule in ("a", "b") and not _on_meridian_set(p.phi):
        raise ForbiddenTransform(
            f"rule ({rule}) needs phi in {{0, pi/2, pi, 3pi/2}}, got phi={p.phi!r}"
        )
    if rule == "a":
        return SpherePoint(math.pi - p.theta, p.phi, p.sphere)
    if rule == "b":
        return SpherePoint(math.pi - p.theta, (math.pi + p.phi) % _TAU, p.sphere)
    return SpherePoint(p.theta, (math.pi + p.phi) % _TAU, p.sphere)


def mirror_swap(p: SpherePoint) -> SpherePoint:
    """Jump to the other sphere via the HWP(0) mirror action.

    At the coefficient level the half-wave plate with fast axis along x lifts
    to diag(1, -1, 1, -1) over basis B, which maps each sphere's (uR, uA)
    pair to the other's up to a common -1.  The relative phase survives, so
    the induced angle map is the identity: (theta, phi, s) -> (theta, phi, -s).
    Applying it twice returns the starting point exactly.
    """
    c = coeff_from_sphere(p)
    swapped = np.array([1.0, -1.0, 1.0, -1.0]) * c
    other = "-" if p.sphere == "+" else "+"
    A = complex(np.vdot(cpm_basis("R" + other), swapped))
    B = complex(np.vdot(cpm_basis("A" + other), swapped))
    return sphere_from_amplitudes(A, B, other)
