"""Truncated Fock-space layer for cylindrically polarized light.

Four bosonic modes carry the first-order subspace; the numbering ties mode
operators to basis B as

    a_1 = a_{x10},  a_2 = a_{y01},  a_3 = a_{x01},  a_4 = a_{y10},

and the annihilation operator of the co-rotating superposition A*uR + B*uA is

    a_AB = A (a_1 + a_2)/sqrt(2) + B (-a_3 + a_4)/sqrt(2).

States live on a per-mode occupation cutoff n_max (inclusive).  Two standard
configurations are used: a four-mode space (default n_max = 6) for coherent
and single-photon checks, and a dedicated two-mode space on modes (3, 4)
(default n_max = 20) for squeezing, which only touches the azimuthal pair.

Displacements follow D(beta) = exp(beta a^dag - beta* a) so that the product
of per-mode displacements with beta_1 = beta_2 = A* alpha/sqrt2 and
beta_3 = -beta_4 = -B* alpha/sqrt2 reproduces exp(alpha a_AB^dag - alpha* a_AB).
Squeezers are exp((z*/2) a^2 - (z/2) a^dag^2) per mode and
exp(z* a_i a_j - z a_i^dag a_j^dag) for mode pairs, built by matrix exponential
of the truncated generators (anti-Hermitian, so the truncated unitaries are
exactly unitary).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from functools import lru_cache, reduce
from itertools import permutations

import numpy as np
import scipy.sparse as sp
from scipy.linalg import expm
from scipy.special import xlogy

from .errors import NotNormalized, NotPure, TruncationRisk

MODE_NAMES = {1: "x10", 2: "y01", 3: "x01", 4: "y10"}

_S2 = 1.0 / math.sqrt(2.0)


@dataclass(frozen=True)
class FockSpace:
    """Truncated multimode Fock space; modes are labels from {1, 2, 3, 4}."""

    modes: tuple = (1, 2, 3, 4)
    n_max: int = 6

    def __post_init__(self):
        if self.n_max < 2:
            raise ValueError(f"n_max must be >= 2, got {self.n_max}")
        if len(set(self.modes)) != len(self.modes) or not set(self.modes) <= set(
            MODE_NAMES
        ):
            raise ValueError(f"modes must be distinct labels in 1..4, got {self.modes}")

    @classmethod
    def four_mode(cls, n_max: int = 6) -> "FockSpace":
        return cls(modes=(1, 2, 3, 4), n_max=n_max)

    @classmethod
    def squeezing_pair(cls, n_max: int = 20) -> "FockSpace":
        return cls(modes=(3, 4), n_max=n_max)

    @property
    def levels(self) -> int:
        return self.n_max + 1

    @property
    def dims(self) -> tuple:
        return (self.levels,) * len(self.modes)

    @property
    def dim(self) -> int:
        return self.levels ** len(self.modes)

    def axis(self, mode: int) -> int:
        try:
            return self.modes.index(mode)
        except ValueError:
            raise ValueError(f"mode {mode} not in space {self.modes}")


@dataclass(eq=False)
class FockState:
    """Complex amplitude tensor over occupation numbers, one axis per mode."""

    space: FockSpace
    amps: np.ndarray
    meta: dict = dc_field(default_factory=dict)

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    @property
    def vector(self) -> np.ndarray:
        return self.amps.reshape(-1)

    def truncation_leak(self) -> float:
        """Largest probability weight sitting on any mode's top layer."""
        leak = 0.0
        for ax in range(self.amps.ndim):
            top = np.take(self.amps, -1, axis=ax)
            leak = max(leak, float(np.sum(np.abs(top) ** 2)))
        return leak


def vacuum(space: FockSpace) -> FockState:
    amps = np.zeros(space.dims, dtype=complex)
    amps[(0,) * len(space.modes)] = 1.0
    return FockState(space=space, amps=amps, meta={"kind": "vacuum"})


@lru_cache(maxsize=None)
def _ladder_pair(space: FockSpace, mode: int):
    single = sp.diags(np.sqrt(np.arange(1, space.levels)), 1, format="csr")
    eye = sp.identity(space.levels, format="csr")
    pos = space.axis(mode)
    factors = [single if p == pos else eye for p in range(len(space.modes))]
    a = reduce(lambda x, y: sp.kron(x, y, format="csr"), factors)
    return a, a.conj().T.tocsr()


def ladder(space: FockSpace, mode: int):
    """(a, a_dag) on the truncated space; [a, a_dag] = 1 below the cutoff."""
    a, adag = _ladder_pair(space, mode)
    return a.copy(), adag.copy()


def a_ab(A: complex, B: complex, space: FockSpace | None = None):
    """Annihilation operator of the co-rotating mode A*uR + B*uA (sparse)."""
    if abs(abs(A) ** 2 + abs(B) ** 2 - 1.0) > 1e-10:
        raise NotNormalized(
            f"|A|^2+|B|^2 = {abs(A)**2 + abs(B)**2!r}, expected 1 within 1e-10"
        )
    space = space or FockSpace.four_mode()
    op = sp.csr_matrix((space.dim, space.dim), dtype=complex)
    if A != 0:
        for m in (1, 2):
            op = op + (A * _S2) * ladder(space, m)[0]
    if B != 0:
        op = op - (B * _S2) * ladder(space, 3)[0]
        op = op + (B * _S2) * ladder(space, 4)[0]
    return op


def apply_operator(op, state: FockState) -> FockState:
    vec = op @ state.vector
    return FockState(space=state.space, amps=np.asarray(vec).reshape(state.space.dims))


def displacement_amplitudes(alpha: complex, A: complex, B: complex) -> dict:
    """Per-mode displacement amplitudes realizing the mode-AB displacement."""
    return {
        1: np.conj(A) * alpha * _S2,
        2: np.conj(A) * alpha * _S2,
        3: -np.conj(B) * alpha * _S2,
        4: +np.conj(B) * alpha * _S2,
    }


def _poisson_vector(beta: complex, levels: int) -> np.ndarray:
    v = np.empty(levels, dtype=complex)
    v[0] = 1.0
    for n in range(1, levels):
        v[n] = v[n - 1] * beta / math.sqrt(n)
    return v * math.exp(-0.5 * abs(beta) ** 2)


def coherent_state(alpha: complex, A: complex, B: complex,
                   space: FockSpace | None = None) -> FockState:
    """Coherent state of the mode-AB oscillator, built analytically.

    The state is the product of per-mode displacements of the vacuum with the
    amplitudes of ``displacement_amplitudes``; the per-mode Poisson amplitudes
    exp(-|b|^2/2) b^n / sqrt(n!) are written down directly, which matches the
    matrix-exponential construction up to the truncation tail.
    """
    if abs(abs(A) ** 2 + abs(B) ** 2 - 1.0) > 1e-10:
        raise NotNormalized(
            f"|A|^2+|B|^2 = {abs(A)**2 + abs(B)**2!r}, expected 1 within 1e-10"
        )
    space = space or FockSpace.four_mode()
    if abs(alpha) ** 2 * max(abs(A) ** 2, abs(B) ** 2) / 2.0 > space.n_max / 4.0:
        raise TruncationRisk(
            f"alpha={alpha!r} too large for n_max={space.n_max}; "
            "per-mode mean photon number must stay below n_max/4"
        )
    betas = displacement_amplitudes(alpha, A, B)
    vecs = [_poisson_vector(betas[m], space.levels) for m in space.modes]
    amps = reduce(np.multiply.outer, vecs)
    return FockState(
        space=space,
        amps=amps,
        meta={"kind": "coherent", "alpha": alpha, "A": A, "B": B},
    )


def mode_expectation(state: FockState, mode: int) -> complex:
    """Normalized expectation <a_mode>; carries the truncation tail bias."""
    vec = state.vector
    a = ladder(state.space, mode)[0]
    return complex(np.vdot(vec, a @ vec) / np.vdot(vec, vec))


def coherent_amplitude(state: FockState, mode: int) -> complex:
    """Coherent amplitude of one mode, read out against the vacuum component.

    <0| a |psi> / <0|psi> equals <a> for any coherent state and is exact in
    the truncated space, unlike the raw expectation whose value is biased by
    the cutoff tail.
    """
    idx0 = [0] * len(state.space.modes)
    vac_amp = state.amps[tuple(idx0)]
    if vac_amp == 0:
        return mode_expectation(state, mode)
    idx1 = list(idx0)
    idx1[state.space.axis(mode)] = 1
    return complex(state.amps[tuple(idx1)] / vac_amp)


def coherent_signal(state: FockState) -> np.ndarray:
    """Classical coefficient vector radiated by a coherent state, over basis B.

    Maps the per-mode coherent amplitudes (alpha_1, ..., alpha_4) to
    x(a1 psi10 + a3 psi01) + y(a4 psi10 + a2 psi01) and divides by the overall
    alpha recorded at construction; for real A, B this returns exactly the
    classical mode coefficients of make_uab(A, B, "+").
    """
    if state.meta.get("kind") != "coherent":
        raise ValueError("coherent_signal expects a state built by coherent_state")
    alpha = state.meta["alpha"]
    if alpha == 0:
        return np.zeros(4, dtype=complex)
    amps = {m: coherent_amplitude(state, m) for m in (1, 2, 3, 4)}
    c = np.array([amps[1], amps[4], amps[3], amps[2]], dtype=complex)
    return c / alpha


def single_photon(A: complex, B: complex,
                  space: FockSpace | None = None) -> FockState:
    """One photon in the mode-AB oscillator: A_dag(xi) |0> with the weights
    xi_1 = xi_2 = A*/sqrt2, xi_3 = -xi_4 = -B*/sqrt2.  Exactly representable,
    so the norm is 1 with no truncation loss."""
    if abs(abs(A) ** 2 + abs(B) ** 2 - 1.0) > 1e-10:
        raise NotNormalized(
            f"|A|^2+|B|^2 = {abs(A)**2 + abs(B)**2!r}, expected 1 within 1e-10"
        )
    space = space or FockSpace.four_mode()
    xis = {
        1: np.conj(A) * _S2,
        2: np.conj(A) * _S2,
        3: -np.conj(B) * _S2,
        4: +np.conj(B) * _S2,
    }
    amps = np.zeros(space.dims, dtype=complex)
    for m in space.modes:
        idx = [0] * len(space.modes)
        idx[space.axis(m)] = 1
        amps[tuple(idx)] = xis[m]
    return FockState(space=space, amps=amps,
                     meta={"kind": "single_photon", "A": A, "B": B})


def photon_wavefunction(state: FockState) -> np.ndarray:
    """Coefficient vector of <0| E^+ |1> over basis B (global phase dropped).

    Reads the one-excitation amplitudes xi_i and returns
    (xi_1, xi_4, xi_3, xi_2)/2, i.e. one half of the classical mode the
    photon occupies.
    """
    space = state.space
    xi = {}
    for m in (1, 2, 3, 4):
        if m in space.modes:
            idx = [0] * len(space.modes)
            idx[space.axis(m)] = 1
            xi[m] = complex(state.amps[tuple(idx)])
        else:
            xi[m] = 0.0
    return 0.5 * np.array([xi[1], xi[4], xi[3], xi[2]], dtype=complex)


def _guard_squeeze(zeta: complex, limit: float = 1.5):
    if abs(zeta) > limit:
        raise TruncationRisk(
            f"|zeta| = {abs(zeta)!r} exceeds the truncation guard {limit}"
        )


def squeeze_single(mode: int, zeta: complex,
                   space: FockSpace | None = None) -> np.ndarray:
    """One-mode squeezer exp((z*/2) a^2 - (z/2) a^dag^2) as a dense unitary."""
    _guard_squeeze(zeta)
    space = space or FockSpace.squeezing_pair()
    a, adag = ladder(space, mode)
    gen = 0.5 * np.conj(zeta) * (a @ a) - 0.5 * zeta * (adag @ adag)
    return expm(gen.toarray())


def squeeze_two(modes, zeta: complex,
                space: FockSpace | None = None) -> np.ndarray:
    """Two-mode squeezer exp(z* a_i a_j - z a_i^dag a_j^dag), dense unitary."""
    i, j = modes
    if i == j:
        raise ValueError("two-mode squeezing needs distinct modes")
    _guard_squeeze(zeta)
    space = space or FockSpace.squeezing_pair()
    ai, adi = ladder(space, i)
    aj, adj = ladder(space, j)
    gen = np.conj(zeta) * (ai @ aj) - zeta * (adi @ adj)
    return expm(gen.toarray())


def azimuthal_generator(zeta: complex, space: FockSpace | None = None):
    """Generator (z*/2) a_A^2 - (z/2) a_A^dag^2 of the azimuthal squeezer."""
    space = space or FockSpace.squeezing_pair()
    aA = a_ab(0.0, 1.0, space)
    adA = aA.conj().T.tocsr()
    return 0.5 * np.conj(zeta) * (aA @ aA) - 0.5 * zeta * (adA @ adA)


def squeeze_azimuthal(zeta: complex,
                      space: FockSpace | None = None) -> np.ndarray:
    """Squeezer of the azimuthally polarized mode (a_A = a_ab(0, 1))."""
    _guard_squeeze(zeta)
    space = space or FockSpace.squeezing_pair()
    return expm(azimuthal_generator(zeta, space).toarray())


def two_mode_squeezed_vacuum_amplitudes(zeta: complex, n_max: int) -> np.ndarray:
    """Diagonal |n, n> amplitudes of the two-mode squeezer acting on vacuum.

    For zeta = s e^{i theta} the closed form is (-e^{i theta} tanh s)^n / cosh s;
    off-diagonal occupation pairs carry no amplitude.
    """
    s = abs(zeta)
    out = np.zeros(n_max + 1, dtype=complex)
    if s == 0:
        out[0] = 1.0
        return out
    ratio = -(zeta / s) * math.tanh(s)
    out[:] = ratio ** np.arange(n_max + 1)
    return out / math.cosh(s)


def entanglement_entropy(state: FockState, bipartition) -> float:
    """Entanglement entropy (nats) across a mode bipartition of a pure state."""
    part = tuple(bipartition)
    if not part or not set(part) < set(state.space.modes):
        raise ValueError(
            f"bipartition must be a proper nonempty subset of {state.space.modes}"
        )
    nrm = state.norm
    if abs(nrm - 1.0) > 1e-6:
        raise NotPure(f"state norm {nrm!r} deviates from 1 beyond 1e-6")
    amps = state.amps / nrm
    axes_a = [state.space.axis(m) for m in part]
    axes_b = [ax for ax in range(amps.ndim) if ax not in axes_a]
    mat = np.transpose(amps, axes_a + axes_b).reshape(
        state.space.levels ** len(axes_a), -1
    )
    lam = np.linalg.svd(mat, compute_uv=False) ** 2
    return float(-np.sum(xlogy(lam, lam)))


@dataclass(eq=False)
class FactorizationReport:
    """Residual table of candidate factorizations of the azimuthal squeezer.

    Each row records ||S_A(zeta)|0> - F1 F2 F3 |0>|| for one variant of the
    two-mode factor argument and one ordering of the three factors.  In the
    difference/sum superposition modes the factors regroup into commuting
    one-mode squeezers, which makes the -zeta/2 variant exact in the
    untruncated space; at finite cutoff its residual is a pure truncation
    effect and depends on the factor ordering.  The full-argument variant
    produces a different (still entangled) state with O(1) residual.  The
    table measures all of this rather than asserting any row is zero.
    """

    zeta: complex
    n_max: int
    rows: list


def factorization_residual(zeta: complex,
                           space: FockSpace | None = None) -> FactorizationReport:
    """Compare S_A(zeta)|0> against the one-/two-mode factor products.

    Both published right-hand sides are evaluated — the two-mode factor taken
    at -zeta/2 and at zeta — in every ordering of the three factors.
    """
    _guard_squeeze(zeta, limit=1.0)
    space = space or FockSpace.squeezing_pair()
    vac = vacuum(space).vector
    lhs = squeeze_azimuthal(zeta, space) @ vac

    factors = {
        "s3": squeeze_single(3, zeta / 2.0, space),
        "s4": squeeze_single(4, zeta / 2.0, space),
    }
    variants = {
        "two_mode_arg_minus_half": squeeze_two((3, 4), -zeta / 2.0, space),
        "two_mode_arg_full": squeeze_two((3, 4), zeta, space),
    }
    rows = []
    for vname, s34 in variants.items():
        ops = dict(factors, s34=s34)
        for order in permutations(("s3", "s4", "s34")):
            rhs = vac
            for name in reversed(order):
                rhs = ops[name] @ rhs
            rows.append({
                "variant": vname,
                "order": list(order),
                "residual": float(np.linalg.norm(lhs - rhs)),
            })
    return FactorizationReport(zeta=zeta, n_max=space.n_max, rows=rows)
