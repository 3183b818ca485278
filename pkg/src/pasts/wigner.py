"""Wigner functions of photon-added squeezed thermal states.

The generic evaluator differentiates a Gaussian phase-space kernel m
times with jet arithmetic; closed forms for zero and one added photon are
provided separately and cross-checked against the generic path in the
test suite rather than substituted for it.

Convention: all values integrate to one against dx dy over the plane,
with x and y the two quadratures (a coherent state of amplitude alpha
peaks at x = sqrt(2) Re alpha, y = sqrt(2) Im alpha).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import _core
from .errors import DomainError, NumericConsistencyError
from .jets import jet_exp_reduced, jet_pow, variable
from .kernel import KernelCoeffs, StateParams, derive_kernel, require_real
from .moments import norm_constant

MASS_CONVENTION = "unit mass under dx dy"

DEFAULT_WINDOW = (-4.0, 4.0, -4.0, 4.0)
DEFAULT_POINTS = 201

# numpy renamed trapz to trapezoid in 2.0; support both
_trapezoid = getattr(np, "trapezoid", np.trapz)


@dataclass(frozen=True)
class PhaseGrid:
    """Rectangular phase-space sampling of a real function.

    ``values[iy, ix]`` is the function at ``(xs()[ix], ys()[iy])``; the
    flattened array is row major over y rows.  ``meta`` carries
    serializable provenance (state parameters, decay time, backend).
    """

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.nx < 2 or self.ny < 2:
            raise DomainError(f"grid needs nx, ny >= 2, got {self.nx}, {self.ny}")
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise DomainError("grid window is empty")
        vals = np.asarray(self.values, dtype=np.float64)
        if vals.shape != (self.ny, self.nx):
            raise DomainError(
                f"values shape {vals.shape} != (ny, nx) = ({self.ny}, {self.nx})"
            )
        object.__setattr__(self, "values", vals)

    def xs(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    def ys(self) -> np.ndarray:
        return np.linspace(self.y_min, self.y_max, self.ny)

    def mass(self) -> float:
        """Trapezoidal integral of the values over the window."""
        return float(
            _trapezoid(_trapezoid(self.values, self.xs(), axis=1), self.ys())
        )

    def min_location(self) -> tuple[float, float, float]:
        """Minimum value and the grid point where it occurs."""
        iy, ix = np.unravel_index(np.argmin(self.values), self.values.shape)
        return float(self.values[iy, ix]), float(self.xs()[ix]), float(self.ys()[iy])

    def negative_volume(self) -> float:
        """Trapezoidal integral of max(-W, 0), the mass of the negative part."""
        neg = np.maximum(-self.values, 0.0)
        return float(_trapezoid(_trapezoid(neg, self.xs(), axis=1), self.ys()))


@dataclass(frozen=True)
class NegativityMetrics:
    min_value: float
    min_x: float
    min_y: float
    negative_volume: float


def negativity_metrics(grid: PhaseGrid) -> NegativityMetrics:
    """Summary of how negative, and where, a phase-space grid is."""
    mn, mx, my = grid.min_location()
    return NegativityMetrics(
        min_value=mn, min_x=mx, min_y=my, negative_volume=grid.negative_volume()
    )


def _grid_setup(params: StateParams) -> tuple[KernelCoeffs, float, np.ndarray, float]:
    """Shared precomputation: kernel, norm, inverse-sqrt jet, prefactor."""
    kc = derive_kernel(params)
    nm = norm_constant(params)
    fv = variable(kc.f, params.m)
    pcoef = jet_pow(fv * fv - 4.0 * kc.c * kc.c, -0.5).coeffs
    pref = math.factorial(params.m) / (math.pi * kc.tau_prod * nm)
    return kc, nm, pcoef, pref


def wigner_point(params: StateParams, x: float, y: float) -> float:
    """Wigner function at one point, by the generic jet evaluation.

    Runs on plain jet arithmetic rather than the batch backend, so it
    doubles as an independent reference for the grid evaluators.
    """
    kc = derive_kernel(params)
    nm = norm_constant(params)
    m = params.m
    alpha = complex(x, y) / math.sqrt(2.0)
    e_lin = kc.b - 2.0 * alpha
    e2 = abs(e_lin) ** 2
    re2 = e_lin.real**2 - e_lin.imag**2

    fv = variable(kc.f, m)
    quad = fv * fv - 4.0 * kc.c * kc.c
    g = jet_pow(quad, -0.5)
    h = (-e2 * fv + 2.0 * kc.c * re2) / quad
    eu, h0 = jet_exp_reduced(h)
    deriv = (g * eu).derivative(m)
    h0 = require_real(complex(h0), context="phase-space exponent")
    expo = 2.0 * abs(alpha) ** 2 + kc.d + h0
    value = deriv * math.exp(expo) / (math.pi * kc.tau_prod * nm)
    return require_real(complex(value), context=f"wigner at ({x}, {y})")


def wigner_m0(params: StateParams, x, y):
    """Closed form for the bare (no photons added) squeezed thermal state."""
    if params.m != 0 or params.displaced:
        raise DomainError("closed form requires m = 0 and no displacement")
    s = 2.0 * params.nbar + 1.0
    gauss = np.exp(
        -(np.exp(-2.0 * params.r) * np.asarray(x) ** 2
          + np.exp(2.0 * params.r) * np.asarray(y) ** 2) / s
    )
    return gauss / (math.pi * s)


@dataclass(frozen=True)
class M1Coeffs:
    """Quadratic-polynomial coefficients of the one-added-photon state.

    The Wigner function is (coef_x2 * x^2 + coef_y2 * y^2 + coef_const)/pi
    times the same Gaussian as the m = 0 state.  coef_const is negative
    for every physical parameter set, which is the analytic statement
    that one photon addition always leaves a negative dip at the origin.
    """

    coef_x2: float
    coef_y2: float
    coef_const: float


def wigner_m1_coeffs(params: StateParams) -> M1Coeffs:
    if params.displaced:
        raise DomainError("closed form requires no displacement")
    kc = derive_kernel(StateParams(params.nbar, params.r))
    s = 2.0 * params.nbar + 1.0
    t1, t2 = kc.tau1_sq, kc.tau2_sq
    denom = s**3 * (t1 + t2)
    coef_x2 = (2.0 * t1 * math.exp(-2.0 * params.r)) ** 2 / denom
    coef_y2 = (2.0 * t2 * math.exp(2.0 * params.r)) ** 2 / denom
    coef_const = (t1 + t2 - 4.0 * t1 * t2) / denom
    return M1Coeffs(coef_x2=coef_x2, coef_y2=coef_y2, coef_const=coef_const)


def wigner_m1(params: StateParams, x, y):
    """Closed form for one added photon (no displacement)."""
    if params.m != 1 or params.displaced:
        raise DomainError("closed form requires m = 1 and no displacement")
    co = wigner_m1_coeffs(params)
    s = 2.0 * params.nbar + 1.0
    x = np.asarray(x)
    y = np.asarray(y)
    poly = co.coef_x2 * x**2 + co.coef_y2 * y**2 + co.coef_const
    gauss = np.exp(
        -(np.exp(-2.0 * params.r) * x**2 + np.exp(2.0 * params.r) * y**2) / s
    )
    return poly * gauss / math.pi


def wigner_values(params: StateParams, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Wigner function at paired points (xs[i], ys[i]) via the batch backend."""
    kc, _, pcoef, pref = _grid_setup(params)
    raw = _core.wigner_batch(
        params.m, kc.f, kc.c, kc.b, kc.d, pcoef, pref, xs, ys
    )
    return _real_checked(raw, "wigner batch")


def wigner_grid(
    params: StateParams,
    window: tuple[float, float, float, float] = DEFAULT_WINDOW,
    nx: int = DEFAULT_POINTS,
    ny: int = DEFAULT_POINTS,
) -> PhaseGrid:
    """Wigner function sampled on a rectangular window."""
    x_min, x_max, y_min, y_max = (float(v) for v in window)
    xs = np.linspace(x_min, x_max, nx)
    ys = np.linspace(y_min, y_max, ny)
    gx, gy = np.meshgrid(xs, ys)
    vals = wigner_values(params, gx.ravel(), gy.ravel()).reshape(ny, nx)
    return PhaseGrid(
        x_min=x_min, x_max=x_max, y_min=y_min, y_max=y_max,
        nx=nx, ny=ny, values=vals,
        meta={
            "kind": "wigner",
            "convention": MASS_CONVENTION,
            "nbar": params.nbar,
            "r": params.r,
            "beta_q": params.beta_q,
            "beta_p": params.beta_p,
            "m": params.m,
            "backend": _core.BACKEND,
        },
    )


def auto_window(params: StateParams, n_sigma: float = 4.5) -> tuple[float, float, float, float]:
    """Window wide enough to hold essentially all of the state's mass.

    Widths follow the Gaussian envelope of the squeezed thermal core,
    inflated by the photon-number growth from m additions, and centered
    on the displacement.
    """
    kc = derive_kernel(params)
    sx = math.sqrt((kc.tau1_sq - 0.5) * (params.m + 1.0))
    sy = math.sqrt((kc.tau2_sq - 0.5) * (params.m + 1.0))
    return (
        params.beta_q - n_sigma * sx,
        params.beta_q + n_sigma * sx,
        params.beta_p - n_sigma * sy,
        params.beta_p + n_sigma * sy,
    )


def _real_checked(raw: np.ndarray, context: str, rtol: float = 1e-10) -> np.ndarray:
    scale = max(float(np.max(np.abs(raw))), 1e-300)
    worst = float(np.max(np.abs(raw.imag)))
    if worst > rtol * scale:
        raise NumericConsistencyError(
            f"imaginary residue {worst} exceeds {rtol} relative in {context}"
        )
    return raw.real.copy()
