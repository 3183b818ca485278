"""Statistics and phase-space structure of photon-added squeezed thermal states.

A state is specified by the thermal occupation ``nbar``, squeeze
parameter ``r``, displacement ``(beta_q, beta_p)``, and the number of
added photons ``m``.  Closed-form normalization constants, photon
statistics, photon number distributions, Wigner functions, and
photon-loss evolution all reduce to m-th derivatives of small composite
expressions, evaluated exactly with truncated Taylor (jet) arithmetic.
An independent truncated-Fock-basis oracle backs every closed form.
"""

from ._core import BACKEND, HAVE_COMPILED
from .channel import (
    EvolvedCoeffs,
    QuadSpec,
    evolved_coeffs,
    threshold_kt,
    wigner_evolved_grid,
    wigner_evolved_numeric,
    wigner_evolved_numeric_many,
    wigner_evolved_point,
    wigner_evolved_values,
)
from .distributions import PndProfile, pnd, pnd_profile
from .errors import (
    BracketError,
    CutoffError,
    DomainError,
    JetSingularityError,
    JetUsageError,
    NumericConsistencyError,
    PastsError,
    QuadratureError,
    UndefinedQError,
)
from .jets import Jet, constant, variable
from .kernel import KernelCoeffs, StateParams, derive_kernel, from_beta
from .moments import (
    PhotonMoments,
    mandel_q,
    mean_photon,
    norm_constant,
    norm_ladder,
    norm_triplet,
    photon_moments,
    q_threshold_r,
    second_factorial_moment,
)
from .wigner import (
    M1Coeffs,
    NegativityMetrics,
    PhaseGrid,
    auto_window,
    negativity_metrics,
    wigner_grid,
    wigner_m0,
    wigner_m1,
    wigner_m1_coeffs,
    wigner_point,
    wigner_values,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "BracketError",
    "CutoffError",
    "DomainError",
    "EvolvedCoeffs",
    "HAVE_COMPILED",
    "Jet",
    "JetSingularityError",
    "JetUsageError",
    "KernelCoeffs",
    "M1Coeffs",
    "NegativityMetrics",
    "NumericConsistencyError",
    "PastsError",
    "PhaseGrid",
    "PhotonMoments",
    "PndProfile",
    "QuadSpec",
    "QuadratureError",
    "StateParams",
    "UndefinedQError",
    "auto_window",
    "constant",
    "derive_kernel",
    "evolved_coeffs",
    "from_beta",
    "mandel_q",
    "mean_photon",
    "negativity_metrics",
    "norm_constant",
    "norm_ladder",
    "norm_triplet",
    "photon_moments",
    "pnd",
    "pnd_profile",
    "q_threshold_r",
    "second_factorial_moment",
    "threshold_kt",
    "variable",
    "wigner_evolved_grid",
    "wigner_evolved_numeric",
    "wigner_evolved_numeric_many",
    "wigner_evolved_point",
    "wigner_evolved_values",
    "wigner_grid",
    "wigner_m0",
    "wigner_m1",
    "wigner_m1_coeffs",
    "wigner_point",
    "wigner_values",
]
