"""Schmidt analysis of vector modes over the polarization/spatial split.

A coefficient vector c over basis B is reshaped into the 2x2 matrix C with
u = sum_ij C[i, j] psi_i e_j (i: spatial index over {psi10, psi01}, j:
polarization index over {x, y}).  The Schmidt decomposition of u is the
singular value decomposition of C; the squared singular values lam sum to 1
for unit-norm modes and the effective rank is K = 1/sum(lam^2), between 1
(separable) and 2 (maximally inseparable).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotNormalized
from .modes import as_coeff4

_S2 = 1.0 / math.sqrt(2.0)

#: The four mode labels are, up to sign, the four maximally entangled Bell
#: states of a polarization qubit (x -> |0>, y -> |1>) and a spatial qubit
#: (psi10 -> |0>, psi01 -> |1>).
BELL_CORRESPONDENCE = {
    "R+": (+1, "Phi+"),
    "A+": (-1, "Psi-"),
    "R-": (-1, "Phi-"),
    "A-": (+1, "Psi+"),
}

_BELL_VECTORS = {
    # Over the ordered product basis (|0p 0s>, |0p 1s>, |1p 0s>, |1p 1s>).
    "Phi+": np.array([_S2, 0.0, 0.0, _S2], dtype=complex),
    "Phi-": np.array([_S2, 0.0, 0.0, -_S2], dtype=complex),
    "Psi+": np.array([0.0, _S2, _S2, 0.0], dtype=complex),
    "Psi-": np.array([0.0, _S2, -_S2, 0.0], dtype=complex),
}


@dataclass(eq=False)
class SchmidtResult:
    """Schmidt data of a 2x2 coefficient matrix.

    ``lam`` is sorted descending and sums to 1; ``spat_vecs[k]`` and
    ``pol_vecs[k]`` are the orthonormal factor vectors of the k-th term, so
    C = sum_k sqrt(lam[k]) * outer(spat_vecs[k], pol_vecs[k]).
    """

    lam: np.ndarray
    pol_vecs: np.ndarray
    spat_vecs: np.ndarray
    K: float


def coeff_matrix(c) -> np.ndarray:
    """Reshape a coefficient vector into the 2x2 spatial-by-polarization matrix."""
    return as_coeff4(c).reshape(2, 2).copy()


def _orth_complement(v: np.ndarray) -> np.ndarray:
    # Unit 2-vector Hermitian-orthogonal to unit v.
    return np.array([-np.conj(v[1]), np.conj(v[0])])


def schmidt_decompose(C: np.ndarray, tol: float = 1e-10) -> SchmidtResult:
    """Closed-form Schmidt decomposition of a unit-Frobenius 2x2 matrix.

    Uses the trace/determinant eigendecomposition of C C^dag instead of an
    iterative SVD; exact for the 2x2 case.
    """
    C = np.asarray(C, dtype=complex).reshape(2, 2)
    fro = np.linalg.norm(C)
    if abs(fro - 1.0) > tol:
        raise NotNormalized(f"Frobenius norm {fro!r}, expected 1 within {tol}")

    H = C @ C.conj().T
    h11 = H[0, 0].real
    h22 = H[1, 1].real
    h12 = H[0, 1]
    tr = h11 + h22
    disc = math.sqrt(max((h11 - h22) ** 2 + 4.0 * abs(h12) ** 2, 0.0))
    lam1 = 0.5 * (tr + disc)
    # (tr - disc)/2 cancels catastrophically for near-rank-1 inputs; the
    # determinant route det(H) = |det C|^2 is exact there.
    lam2 = abs(np.linalg.det(C)) ** 2 / lam1 if lam1 > 0 else 0.0

    if abs(h12) > 1e-15 * max(tr, 1.0):
        # Eigenvector of H from whichever row keeps the larger pivot.
        if abs(lam1 - h11) >= abs(lam1 - h22):
            u1 = np.array([h12, lam1 - h11])
        else:
            u1 = np.array([lam1 - h22, np.conj(h12)])
        u1 = u1 / np.linalg.norm(u1)
    else:
        u1 = np.array([1.0 + 0j, 0.0]) if h11 >= h22 else np.array([0.0j, 1.0])
    u2 = _orth_complement(u1)

    w1 = C.conj().T @ u1
    v1 = w1 / np.linalg.norm(w1)
    w2 = C.conj().T @ u2
    n2 = np.linalg.norm(w2)
    if n2 > 1e-12:
        # Re-orthogonalize: for sigma2 << sigma1 this route loses
        # orthogonality at the eps*sigma1/sigma2 level.
        v2 = w2 / n2
        v2 = v2 - v1 * np.vdot(v1, v2)
        v2 = v2 / np.linalg.norm(v2)
    else:
        v2 = _orth_complement(v1)

    lam = np.array([lam1, lam2])
    K = 1.0 / float(np.sum(lam**2))
    # C = sum_k sig_k outer(u_k, conj(v_k)), so the polarization factor of
    # the mode expansion is conj(v_k).
    return SchmidtResult(
        lam=lam,
        pol_vecs=np.stack([np.conj(v1), np.conj(v2)]),
        spat_vecs=np.stack([u1, u2]),
        K=K,
    )


def schmidt_of_coeff(c, tol: float = 1e-10) -> SchmidtResult:
    """Schmidt decomposition straight from a coefficient vector."""
    return schmidt_decompose(coeff_matrix(c), tol=tol)


def separability_class(A: complex, B: complex, tol: float = 1e-10) -> str:
    """Classify the co-rotating superposition A*uR + B*uA.

    "Rank2" when Im(A conj(B)) = 0 (maximally inseparable, K = 2),
    "Separable" when A = +/- i B (the circularly polarized Laguerre-Gauss
    modes, K = 1), "Intermediate" otherwise.
    """
    if abs(abs(A) ** 2 + abs(B) ** 2 - 1.0) > 1e-10:
        raise NotNormalized(
            f"|A|^2+|B|^2 = {abs(A)**2 + abs(B)**2!r}, expected 1 within 1e-10"
        )
    if abs((A * np.conj(B)).imag) < tol:
        return "Rank2"
    if abs(A - 1j * B) < tol or abs(A + 1j * B) < tol:
        return "Separable"
    return "Intermediate"


def bell_label(label: str):
    """Signed Bell tag of a CPM label and its explicit two-qubit 4-vector.

    Returns (sign, name, vector) with vector over the product basis
    (|0p 0s>, |0p 1s>, |1p 0s>, |1p 1s>); e.g. "R+" -> (+1, "Phi+", ...).
    """
    try:
        sign, name = BELL_CORRESPONDENCE[label]
    except KeyError:
        raise ValueError(f"unknown CPM label {label!r}")
    return sign, name, sign * _BELL_VECTORS[name]
