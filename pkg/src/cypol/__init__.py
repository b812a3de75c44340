"""Cylindrically polarized light modes.

Exact four-dimensional mode algebra for first-order vector beams, Schmidt
analysis over the polarization/spatial split, momentum and angular-momentum
quadrature, hybrid Poincare-sphere navigation, optical-element symmetry
classification, and a truncated Fock-space quantum layer.
"""

from .errors import (
    CypolError,
    ForbiddenTransform,
    GridMismatch,
    KindMismatch,
    NotNormalized,
    NotPure,
    TruncationRisk,
    ZeroField,
)
from .modes import (
    CPM_LABELS,
    BeamParams,
    FieldGrid,
    GridSpec,
    check_rotation_law,
    cpm_basis,
    eval_lg_mode,
    eval_scalar_mode,
    evaluate_field,
    g_operator,
    inner_product_coeff,
    inner_product_grid,
    make_uab,
    rotation_matrix,
)
from .schmidt import (
    SchmidtResult,
    bell_label,
    coeff_matrix,
    schmidt_decompose,
    schmidt_of_coeff,
    separability_class,
)
from .momentum import (
    IntegralReport,
    MomentumField,
    analytic_partials,
    helicity_sz,
    integrate,
    momentum_density,
)
from .hps import (
    HybridStokes,
    SpherePoint,
    allowed_transform,
    amplitudes_from_sphere,
    hybrid_stokes,
    mirror_swap,
    sphere_from_stokes,
    superselect,
)
from .elements import (
    ElementMatrix2,
    SymmetryReport,
    classify_form,
    is_unitary,
    jones_circular,
    jones_hwp,
    jones_qwp,
    spatial_rotation,
    symmetry_check,
    tensor_transform,
)
from .quantum import (
    FockSpace,
    FockState,
    a_ab,
    coherent_signal,
    coherent_state,
    entanglement_entropy,
    factorization_residual,
    ladder,
    photon_wavefunction,
    single_photon,
    squeeze_azimuthal,
    squeeze_single,
    squeeze_two,
    vacuum,
)
from .render import render_field
from .config import RunConfig, load_config
from .verify import run_suite

__version__ = "0.1.0"
