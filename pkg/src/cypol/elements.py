"""Optical-element matrices, their tensor lift, and symmetry classification.

An element acts separately on the spatial and polarization degrees of freedom
as T = M ox P; on coefficient vectors over basis B (spatial index major) that
is the Kronecker product kron(M, P).  Two families of 2x2 matrices keep the
rotation-symmetry condition [G(phi), T] |u> = 0 on the corresponding mode
pair:

    rotation-like  "Form75":  [[a, b], [-b, a]]     (complex a, b)
    reflection-like "Form76": [[a, b], [b, -a]]

Rotation-like pairs commute with the rotation operators outright; a pair of
reflection-like factors satisfies the condition only through its kernel (the
commutator annihilates the mode pair without vanishing as a matrix).  A single
reflection-like factor exchanges the two spheres.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import KindMismatch
from .modes import (
    DEFAULT_PHI_SAMPLES,
    cpm_basis,
    cpm_basis_matrix,
    g_operator,
    rotation_matrix,
)

SPATIAL = "spatial"
POLARIZATION = "polarization"


@dataclass(eq=False)
class ElementMatrix2:
    """2x2 element matrix tagged with the degree of freedom it acts on."""

    mat: np.ndarray
    kind: str

    def __post_init__(self):
        self.mat = np.asarray(self.mat, dtype=complex).reshape(2, 2)
        if self.kind not in (SPATIAL, POLARIZATION):
            raise ValueError(f"kind must be '{SPATIAL}' or '{POLARIZATION}'")


def jones_hwp(alpha: float) -> ElementMatrix2:
    """Half-wave plate with fast axis at angle alpha (reflection-like)."""
    c2, s2 = math.cos(2.0 * alpha), math.sin(2.0 * alpha)
    return ElementMatrix2(np.array([[c2, s2], [s2, -c2]]), POLARIZATION)


def jones_qwp(alpha: float) -> ElementMatrix2:
    """Quarter-wave plate with fast axis at alpha.

    Standard retarder R(alpha) diag(1, i) R(-alpha): unit transmission on the
    fast axis, +pi/2 retardance on the slow one, global phase dropped.
    """
    r = rotation_matrix(alpha)
    return ElementMatrix2(r @ np.diag([1.0, 1.0j]) @ r.T, POLARIZATION)


def jones_circular(hand: str) -> ElementMatrix2:
    """Circular polarizer projector; hand 'L' -> (1/2)[[1, i], [-i, 1]].

    Which sign corresponds to which handedness is a documentation convention;
    the two projectors sum to the identity either way.
    """
    if hand not in ("L", "R"):
        raise ValueError(f"hand must be 'L' or 'R', got {hand!r}")
    s = 1.0j if hand == "L" else -1.0j
    return ElementMatrix2(0.5 * np.array([[1.0, s], [-s, 1.0]]), POLARIZATION)


def jones_rotation(phi: float) -> ElementMatrix2:
    """Polarization rotator by phi (rotation-like)."""
    return ElementMatrix2(rotation_matrix(phi), POLARIZATION)


def spatial_rotation(phi: float) -> ElementMatrix2:
    """Rotation of the first-order spatial mode pair by phi."""
    return ElementMatrix2(rotation_matrix(phi), SPATIAL)


def spatial_identity() -> ElementMatrix2:
    return ElementMatrix2(np.eye(2), SPATIAL)


def pol_identity() -> ElementMatrix2:
    return ElementMatrix2(np.eye(2), POLARIZATION)


def spatial_flip(m1: complex, m2: complex) -> ElementMatrix2:
    """Reflection-like spatial element [[m1, m2], [m2, -m1]]."""
    return ElementMatrix2(np.array([[m1, m2], [m2, -m1]]), SPATIAL)


def _as_mat2(E) -> np.ndarray:
    if isinstance(E, ElementMatrix2):
        return E.mat
    return np.asarray(E, dtype=complex).reshape(2, 2)


def classify_form(E, tol: float = 1e-10) -> str:
    """Sort a 2x2 matrix into the rotation-like / reflection-like families.

    Returns "Form75" for [[a, b], [-b, a]], "Form76" for [[a, b], [b, -a]],
    "Neither" otherwise.  A matrix matching both (only the zero matrix does)
    reports Form75.
    """
    m = _as_mat2(E)
    if abs(m[0, 0] - m[1, 1]) <= tol and abs(m[0, 1] + m[1, 0]) <= tol:
        return "Form75"
    if abs(m[0, 0] + m[1, 1]) <= tol and abs(m[0, 1] - m[1, 0]) <= tol:
        return "Form76"
    return "Neither"


def tensor_transform(M: ElementMatrix2, P: ElementMatrix2) -> np.ndarray:
    """Lift a (spatial, polarization) pair to the 4x4 operator on basis B."""
    if not (isinstance(M, ElementMatrix2) and M.kind == SPATIAL):
        raise KindMismatch("first factor must be a spatial ElementMatrix2")
    if not (isinstance(P, ElementMatrix2) and P.kind == POLARIZATION):
        raise KindMismatch("second factor must be a polarization ElementMatrix2")
    return np.kron(M.mat, P.mat)


def is_unitary(T: np.ndarray, tol: float = 1e-10) -> bool:
    T = np.asarray(T, dtype=complex)
    return bool(np.linalg.norm(T.conj().T @ T - np.eye(T.shape[0])) < tol)


@dataclass(eq=False)
class SymmetryReport:
    """Outcome of the rotation-symmetry classification of a 4x4 operator.

    ``classification`` is one of PreservesPlus / PreservesMinus /
    PreservesBoth / SwapsSpheres / Breaks.  ``kernel_residuals`` holds the
    max of ||[G^s(phi), T] c|| over the angle samples and the CPM pair of
    each sphere; ``block_norms`` the Frobenius norms of T in the CPM basis
    (keys like "plus_to_minus" meaning the image of the plus pair in the
    minus pair).  ``commutes_fully`` reports whether T commutes with the
    rotation operators as a matrix, which is sufficient but not necessary
    for the kernel condition; it is auxiliary metadata only.
    """

    classification: str
    kernel_residuals: dict = field(default_factory=dict)
    block_norms: dict = field(default_factory=dict)
    swapped_law_residual: float = float("nan")
    commutes_fully: bool = False


def _kernel_residual(T, sign, phi_samples) -> float:
    worst = 0.0
    for phi in phi_samples:
        G = g_operator(sign, phi)
        comm = G @ T - T @ G
        for label in ("R", "A"):
            s = "+" if sign > 0 else "-"
            worst = max(worst, float(np.linalg.norm(comm @ cpm_basis(label + s))))
    return worst


def symmetry_check(T: np.ndarray, phi_samples=DEFAULT_PHI_SAMPLES,
                   tol: float = 1e-9) -> SymmetryReport:
    """Classify whether T respects, swaps, or breaks the two rotation classes.

    The decision is made from the block structure of T in the CPM basis: a
    sphere is preserved when its pair maps back into itself, the spheres are
    swapped when both pairs map entirely across (and the swapped images obey
    the opposite-sign rotation law), and any partial mixing reports Breaks.
    """
    if not phi_samples:
        raise ValueError("phi_samples must be nonempty")
    T = np.asarray(T, dtype=complex).reshape(4, 4)
    Q = cpm_basis_matrix()
    Tc = Q.conj().T @ T @ Q
    blocks = {
        "plus_to_plus": float(np.linalg.norm(Tc[0:2, 0:2])),
        "plus_to_minus": float(np.linalg.norm(Tc[2:4, 0:2])),
        "minus_to_plus": float(np.linalg.norm(Tc[0:2, 2:4])),
        "minus_to_minus": float(np.linalg.norm(Tc[2:4, 2:4])),
    }
    scale = max(1.0, float(np.linalg.norm(T)))
    cut = tol * scale

    residuals = {
        "plus": _kernel_residual(T, +1, phi_samples),
        "minus": _kernel_residual(T, -1, phi_samples),
    }
    commutes = all(
        np.linalg.norm(g_operator(s, phi) @ T - T @ g_operator(s, phi)) < cut
        for s in (+1, -1)
        for phi in phi_samples
    )

    keeps_plus = blocks["plus_to_minus"] < cut
    keeps_minus = blocks["minus_to_plus"] < cut
    crosses_plus = blocks["plus_to_plus"] < cut and blocks["plus_to_minus"] >= cut
    crosses_minus = blocks["minus_to_minus"] < cut and blocks["minus_to_plus"] >= cut

    swapped_residual = float("nan")
    if keeps_plus and keeps_minus:
        classification = "PreservesBoth"
    elif crosses_plus and crosses_minus:
        worst = 0.0
        for src, dst_sign in (("+", -1), ("-", +1)):
            for label in ("R", "A"):
                img = T @ cpm_basis(label + src)
                nrm = np.linalg.norm(img)
                if nrm < cut:
                    continue
                img = img / nrm
                for phi in phi_samples:
                    worst = max(worst, float(
                        np.linalg.norm(g_operator(dst_sign, phi) @ img - img)))
        swapped_residual = worst
        classification = "SwapsSpheres" if worst < tol else "Breaks"
    elif keeps_plus and not keeps_minus:
        classification = "PreservesPlus"
    elif keeps_minus and not keeps_plus:
        classification = "PreservesMinus"
    else:
        classification = "Breaks"

    return SymmetryReport(
        classification=classification,
        kernel_residuals=residuals,
        block_norms=blocks,
        swapped_law_residual=swapped_residual,
        commutes_fully=commutes,
    )
