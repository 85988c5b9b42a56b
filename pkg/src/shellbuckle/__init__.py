"""Buckling of axially compressed cylindrical shells via Korn-type constants."""

__version__ = "0.1.0"

from .tensors import DomainError, ShellParams, SymTensor3  # noqa: E402
from .basis import BOTH, EVEN, ODD, ConfigError, StressField, build_basis  # noqa: E402
from .branches import imperfect_branch, perfect_stress, sigma0_family, svk_branch  # noqa: E402
from .mooney_rivlin import mr_alpha, mr_branch, mr_linearize, mr_pressure, mr_psi, mr_residuals  # noqa: E402
from .spectra import (  # noqa: E402
    Resolution,
    buckling_load,
    component_korn,
    equivalence_gap,
    korn_constant,
    safe_load_constant,
    sufficiency_ratio,
)
from .ansatz import ansatz_field, ansatz_ratios, bump_profile, phipsi_profile  # noqa: E402
from .dent import dent_grid, dent_hoop_stress, dent_solve  # noqa: E402
from .scaling import ScalingFit, fit_scaling  # noqa: E402
