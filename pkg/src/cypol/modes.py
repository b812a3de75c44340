"""First-order Hermite-Gauss vector modes and their rotation algebra.

Everything in this package lives in the four-dimensional space spanned by the
ordered basis

    B = (psi10*x, psi10*y, psi01*x, psi01*y),

where psi10 and psi01 are the first-order Hermite-Gauss solutions of the
paraxial wave equation at z = 0 (proportional to x*exp(-r^2/w0^2) and
y*exp(-r^2/w0^2)) and x, y denote the linear polarization unit vectors.
A mode is a plain complex ndarray of shape (4,) over B ("Coeff4"): the field
components are

    ex = c[0]*psi10 + c[2]*psi01,      ey = c[1]*psi10 + c[3]*psi01.

All fields are evaluated at z = 0, and the common propagation phase factor
exp(-i*chi) is dropped; comparisons are modulo that global factor.

Scalar modes carry sqrt(8/pi)/w0^2 relative to the bare x*exp(-r^2/w0^2)/w0
form so that the transverse-plane quadrature norm is exactly 1 for any waist.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import GridMismatch, NotNormalized

SQRT_8_OVER_PI = math.sqrt(8.0 / math.pi)

#: Labels of the four cylindrically polarized basis modes: radial/azimuthal
#: pattern, co-rotating (+) or counter-rotating (-) under global rotations.
CPM_LABELS = ("R+", "A+", "R-", "A-")

#: Default rotation-angle samples for symmetry checks.  Deliberately
#: irrational-looking so no accidental symmetry at special angles sneaks in.
DEFAULT_PHI_SAMPLES = (0.37, 1.13, 2.71)

_S2 = 1.0 / math.sqrt(2.0)

_CPM_COEFFS = {
    "R+": np.array([_S2, 0.0, 0.0, _S2], dtype=complex),
    "A+": np.array([0.0, _S2, -_S2, 0.0], dtype=complex),
    "R-": np.array([-_S2, 0.0, 0.0, _S2], dtype=complex),
    "A-": np.array([0.0, _S2, _S2, 0.0], dtype=complex),
}


@dataclass(frozen=True)
class BeamParams:
    """Beam waist and wavenumber; z is fixed to 0 throughout."""

    w0: float = 1.0
    k: float = 2.0 * math.pi

    def __post_init__(self):
        if not self.w0 > 0:
            raise ValueError(f"beam waist must be positive, got {self.w0}")
        if not self.k > 0:
            raise ValueError(f"wavenumber must be positive, got {self.k}")


@dataclass(frozen=True)
class GridSpec:
    """Uniform cell-centered sampling of the transverse plane.

    ``half_extent`` is measured in units of the beam waist; the physical
    window is [-half_extent*w0, half_extent*w0] per axis.  Midpoint-rule
    quadrature on this grid is spectrally accurate for the Gaussian-decay
    integrands used here.
    """

    n: int = 256
    half_extent: float = 5.0

    def __post_init__(self):
        if self.n < 16 or self.n % 2 != 0:
            raise ValueError(f"grid n must be even and >= 16, got {self.n}")
        if self.half_extent < 3.0:
            raise ValueError(
                f"half extent must be >= 3 beam waists, got {self.half_extent}"
            )

    def axis(self, params: BeamParams) -> np.ndarray:
        """Cell-center coordinates along one axis."""
        half = self.half_extent * params.w0
        step = 2.0 * half / self.n
        return -half + (np.arange(self.n) + 0.5) * step

    def cell_size(self, params: BeamParams) -> float:
        return 2.0 * self.half_extent * params.w0 / self.n

    def cell_area(self, params: BeamParams) -> float:
        return self.cell_size(params) ** 2

    def meshgrid(self, params: BeamParams):
        ax = self.axis(params)
        return np.meshgrid(ax, ax, indexing="xy")


@dataclass(eq=False)
class FieldGrid:
    """Sampled transverse complex 2-vector field at z = 0."""

    params: BeamParams
    spec: GridSpec
    ex: np.ndarray
    ey: np.ndarray

    def intensity(self) -> np.ndarray:
        return np.abs(self.ex) ** 2 + np.abs(self.ey) ** 2


def as_coeff4(c) -> np.ndarray:
    """Coerce to a complex coefficient vector of shape (4,) over basis B."""
    arr = np.asarray(c, dtype=complex).reshape(-1)
    if arr.shape != (4,):
        raise ValueError(f"expected 4 coefficients, got shape {np.shape(c)}")
    if not np.all(np.isfinite(arr.view(float))):
        raise ValueError("coefficients must be finite")
    return arr


def require_unit(c, tol: float = 1e-10, what: str = "coefficient vector") -> np.ndarray:
    arr = as_coeff4(c)
    nrm = np.linalg.norm(arr)
    if abs(nrm - 1.0) > tol:
        raise NotNormalized(f"{what} has norm {nrm!r}, expected 1 within {tol}")
    return arr


def eval_scalar_mode(index: str, params: BeamParams, x, y):
    """First-order Hermite-Gauss scalar mode at z = 0 (real valued).

    index "10" gives the x-lobed mode, "01" the y-lobed one:

        psi10(x, y) = sqrt(8/pi) * x * exp(-(x^2+y^2)/w0^2) / w0^2,

    normalized so the plane integral of |psi|^2 equals 1 for any w0.
    """
    if index not in ("10", "01"):
        raise ValueError(f"mode index must be '10' or '01', got {index!r}")
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    w0 = params.w0
    envelope = np.exp(-(x * x + y * y) / w0**2)
    lobe = x if index == "10" else y
    return SQRT_8_OVER_PI * lobe * envelope / w0**2


def eval_lg_mode(sign: int, params: BeamParams, x, y):
    """Unit-norm Laguerre-Gauss mode (psi10 +/- i*psi01)/sqrt(2), one unit of
    orbital angular momentum with topological charge equal to ``sign``."""
    if sign not in (+1, -1):
        raise ValueError(f"LG sign must be +1 or -1, got {sign!r}")
    p10 = eval_scalar_mode("10", params, x, y)
    p01 = eval_scalar_mode("01", params, x, y)
    return (p10 + sign * 1j * p01) / math.sqrt(2.0)


def cpm_basis(label: str) -> np.ndarray:
    """Coefficient vector of one of the four cylindrically polarized modes.

    R+ = (psi10*x + psi01*y)/sqrt(2)       A+ = (-psi01*x + psi10*y)/sqrt(2)
    R- = (-psi10*x + psi01*y)/sqrt(2)      A- = (psi01*x + psi10*y)/sqrt(2)
    """
    try:
        return _CPM_COEFFS[label].copy()
    except KeyError:
        raise ValueError(f"unknown CPM label {label!r}, expected one of {CPM_LABELS}")


def cpm_basis_matrix() -> np.ndarray:
    """4x4 matrix whose columns are the CPM coefficient vectors, in label order."""
    return np.stack([_CPM_COEFFS[lbl] for lbl in CPM_LABELS], axis=1)


def _sphere_sign(sphere) -> int:
    if sphere in (+1, -1):
        return int(sphere)
    if sphere in ("+", "plus"):
        return +1
    if sphere in ("-", "minus"):
        return -1
    raise ValueError(f"sphere must be '+'/'-' (or +1/-1), got {sphere!r}")


def make_uab(A: complex, B: complex, sphere="+") -> np.ndarray:
    """Superposition A*uR + B*uA on the requested sphere, |A|^2+|B|^2 = 1.

    The co-rotating case reproduces the general cylindrically symmetric mode
    (A*psi10 - B*psi01)*x/sqrt2 + (B*psi10 + A*psi01)*y/sqrt2; the
    counter-rotating case is defined symmetrically on the minus pair.
    """
    if abs(abs(A) ** 2 + abs(B) ** 2 - 1.0) > 1e-10:
        raise NotNormalized(
            f"|A|^2+|B|^2 = {abs(A)**2 + abs(B)**2!r}, expected 1 within 1e-10"
        )
    s = "+" if _sphere_sign(sphere) > 0 else "-"
    return A * cpm_basis("R" + s) + B * cpm_basis("A" + s)


def evaluate_field(c, params: BeamParams | None = None,
                   spec: GridSpec | None = None) -> FieldGrid:
    """Sample the vector field of a coefficient vector on the grid."""
    c = as_coeff4(c)
    params = params or BeamParams()
    spec = spec or GridSpec()
    X, Y = spec.meshgrid(params)
    p10 = eval_scalar_mode("10", params, X, Y)
    p01 = eval_scalar_mode("01", params, X, Y)
    ex = c[0] * p10 + c[2] * p01
    ey = c[1] * p10 + c[3] * p01
    return FieldGrid(params=params, spec=spec, ex=ex, ey=ey)


def inner_product_coeff(a, b) -> complex:
    """Hermitian dot product <a|b> of two coefficient vectors."""
    return complex(np.vdot(as_coeff4(a), as_coeff4(b)))


def inner_product_grid(F: FieldGrid, G: FieldGrid) -> complex:
    """Midpoint-rule quadrature of sum_i conj(u_i) v_i over the plane."""
    if F.params != G.params or F.spec != G.spec:
        raise GridMismatch("fields sampled with different parameters or grids")
    acc = np.sum(np.conj(F.ex) * G.ex + np.conj(F.ey) * G.ey)
    return complex(acc * F.spec.cell_area(F.params))


def rotation_matrix(phi: float) -> np.ndarray:
    """2x2 counterclockwise rotation [[cos, -sin], [sin, cos]]."""
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, -s], [s, c]])


def g_operator(sign, phi: float) -> np.ndarray:
    """Global-rotation operator on coefficient vectors over basis B.

    ``g_operator(+1, phi)`` is the active rotation by phi: it sends a field
    u(x) to R(phi) u(R(-phi) x).  On basis B (spatial index major) this is
    kron(R(phi), R(phi)); the counter-rotating variant rotates the spatial
    argument the other way, kron(R(-phi), R(phi)).  Co-rotating modes are
    fixed points of the + operator, counter-rotating ones of the - operator,
    and the two spans never mix.
    """
    s = _sphere_sign(sign)
    return np.kron(rotation_matrix(s * phi), rotation_matrix(phi))


def pol_rotation4(phi: float) -> np.ndarray:
    """Local polarization rotation by phi (identity on the spatial index)."""
    return np.kron(np.eye(2), rotation_matrix(phi))


def check_rotation_law(c, sign, phi_samples=DEFAULT_PHI_SAMPLES) -> float:
    """Max residual of the rotation-invariance law over the angle samples.

    Checks ||G^sign(phi) c - c|| for each phi.  For the minus law the
    double-angle identity is verified as well: a global rotation acts on
    counter-rotating modes like a local polarization rotation by 2*phi,
    so ||G^+(phi) c - (I ox R(2 phi)) c|| is folded into the residual.
    """
    c = require_unit(c, tol=1e-10)
    s = _sphere_sign(sign)
    worst = 0.0
    for phi in phi_samples:
        worst = max(worst, float(np.linalg.norm(g_operator(s, phi) @ c - c)))
        if s < 0:
            twisted = g_operator(+1, phi) @ c - pol_rotation4(2.0 * phi) @ c
            worst = max(worst, float(np.linalg.norm(twisted)))
    return worst
