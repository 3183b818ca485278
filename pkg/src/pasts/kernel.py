"""State parameters and the Gaussian kernel coefficients derived from them.

A photon-added squeezed thermal state is specified by the thermal occupation
``nbar``, the squeeze parameter ``r``, a displacement given in quadrature
components ``(beta_q, beta_p)`` and the number ``m`` of added photons.
Everything downstream (normalization constants, photon statistics, Wigner
functions, loss evolution) is expressed through a handful of coefficients of
the underlying Gaussian kernel; this module computes them once, exactly.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DomainError, NumericConsistencyError

_SQRT2 = math.sqrt(2.0)

# Below this value of sigma**2 the two principal axes of the kernel are
# treated as degenerate and consumers switch to expansions that do not
# divide by sigma.
SIGMA_SQ_DEGENERATE = 1e-16


@dataclass(frozen=True)
class StateParams:
    """Defining parameters of a photon-added squeezed thermal state.

    Attributes
    ----------
    nbar : float
        Thermal occupation of the initial thermal state, >= 0.
    r : float
        Squeeze parameter.  Positive ``r`` stretches the q quadrature.
    beta_q, beta_p : float
        Displacement in quadrature components; the complex displacement
        is ``(beta_q + 1j * beta_p) / sqrt(2)``.
    m : int
        Number of photons added on top of the displaced squeezed thermal
        state, >= 0.
    """

    nbar: float
    r: float
    beta_q: float = 0.0
    beta_p: float = 0.0
    m: int = 0

    def __post_init__(self) -> None:
        for name in ("nbar", "r", "beta_q", "beta_p"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool):
                raise DomainError(f"{name} must be a real number, got {value!r}")
            if not math.isfinite(value):
                raise DomainError(f"{name} must be finite, got {value!r}")
        if self.nbar < 0:
            raise DomainError(f"nbar must be >= 0, got {self.nbar}")
        if not isinstance(self.m, int) or isinstance(self.m, bool):
            raise DomainError(f"m must be an integer, got {self.m!r}")
        if self.m < 0:
            raise DomainError(f"m must be >= 0, got {self.m}")

    @property
    def beta(self) -> complex:
        """Displacement as a complex amplitude."""
        return complex(self.beta_q, self.beta_p) / _SQRT2

    @property
    def displaced(self) -> bool:
        return self.beta_q != 0.0 or self.beta_p != 0.0

    def with_m(self, m: int) -> "StateParams":
        """Same Gaussian core with a different number of added photons."""
        return StateParams(self.nbar, self.r, self.beta_q, self.beta_p, m)


def from_beta(nbar: float, r: float, beta: complex, m: int = 0) -> StateParams:
    """Build :class:`StateParams` from a complex displacement amplitude."""
    beta = complex(beta)
    return StateParams(nbar, r, _SQRT2 * beta.real, _SQRT2 * beta.imag, m)


@dataclass(frozen=True)
class KernelCoeffs:
    """Coefficients of the normally ordered Gaussian kernel of the state.

    With ``tau1_sq`` and ``tau2_sq`` the half-width parameters of the
    stretched and compressed quadratures, the kernel exponent carries one
    isotropic coefficient ``a``, a linear (displacement) coefficient ``b``,
    an anisotropy coefficient ``c`` and a constant offset ``d``.  ``f``
    is the companion coefficient ``2 - a`` appearing in all phase-space
    expressions, and ``sigma_sq`` the discriminant ``(1-a)**2 - 4c**2``
    separating the principal axes.  ``sigma_sq`` is negative whenever one
    quadrature is squeezed below the vacuum width, so it is stored as the
    square rather than as a (then imaginary) root.
    """

    tau1_sq: float
    tau2_sq: float
    a: float
    b: complex
    c: float
    d: float
    f: float
    sigma_sq: float

    @property
    def tau_prod(self) -> float:
        """Geometric mean factor ``tau1 * tau2`` (always real positive)."""
        return math.sqrt(self.tau1_sq * self.tau2_sq)

    @property
    def sigma(self) -> float:
        """Principal-axis gap ``sqrt(sigma_sq)``; only real when >= 0."""
        if self.sigma_sq < 0:
            raise DomainError(
                "sigma is imaginary here (one quadrature below vacuum width); "
                "use sigma_sq"
            )
        return math.sqrt(self.sigma_sq)

    @property
    def sigma_degenerate(self) -> bool:
        """True when the axis gap is too small to divide by."""
        return self.sigma_sq < SIGMA_SQ_DEGENERATE


def derive_kernel(params: StateParams) -> KernelCoeffs:
    """Compute the Gaussian kernel coefficients for the given state.

    Raises
    ------
    NumericConsistencyError
        If the computed coefficients violate ``|2c| < a`` or ``f**2 > 4c**2``.
        Both hold exactly for every finite physical parameter set, so a
        violation indicates overflow rather than an edge case; nothing is
        clamped.
    """
    s = 2.0 * params.nbar + 1.0
    try:
        # math.exp raises instead of returning inf, unlike the numpy ufunc
        tau1_sq = (s * math.exp(2.0 * params.r) + 1.0) / 2.0
        tau2_sq = (s * math.exp(-2.0 * params.r) + 1.0) / 2.0
    except OverflowError:
        tau1_sq = math.inf
        tau2_sq = math.inf
    if not (math.isfinite(tau1_sq) and math.isfinite(tau2_sq)):
        raise DomainError(
            f"kernel widths overflow for nbar={params.nbar}, r={params.r}"
        )

    a1 = 1.0 / (2.0 * tau1_sq)
    a2 = 1.0 / (2.0 * tau2_sq)
    a = a1 + a2
    c = (a2 - a1) / 2.0
    b = complex(params.beta_q / tau1_sq, params.beta_p / tau2_sq) / _SQRT2
    d = -params.beta_q**2 / (2.0 * tau1_sq) - params.beta_p**2 / (2.0 * tau2_sq)
    f = 2.0 - a
    # (1-a)^2 - 4c^2 in its factored form, which is exact and sign-stable.
    sigma_sq = (1.0 - 2.0 * a1) * (1.0 - 2.0 * a2)

    if not abs(2.0 * c) < a:
        raise NumericConsistencyError(f"expected |2c| < a, got c={c}, a={a}")
    if not f * f > 4.0 * c * c:
        raise NumericConsistencyError(f"expected f^2 > 4c^2, got f={f}, c={c}")

    return KernelCoeffs(
        tau1_sq=tau1_sq,
        tau2_sq=tau2_sq,
        a=a,
        b=b,
        c=c,
        d=d,
        f=f,
        sigma_sq=sigma_sq,
    )


def alpha_from_xy(x: float, y: float) -> complex:
    """Phase-space point (x, y) as a complex amplitude."""
    return complex(x, y) / _SQRT2


def require_real(value: complex, rtol: float = 1e-10, context: str = "") -> float:
    """Return the real part of ``value`` after checking the imaginary residue.

    The residue is measured relative to the magnitude of the value; exact
    zeros pass trivially.  Violations raise rather than truncate.
    """
    if value.imag == 0.0:
        return value.real
    scale = abs(value)
    if scale == 0.0 or not cmath.isfinite(value):
        raise NumericConsistencyError(f"non-finite value {value!r} {context}")
    if abs(value.imag) > rtol * scale:
        raise NumericConsistencyError(
            f"imaginary residue {value.imag!r} exceeds {rtol} relative "
            f"on {value!r} {context}"
        )
    return value.real
