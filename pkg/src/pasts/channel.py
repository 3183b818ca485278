"""Photon-loss decoherence of the states in phase space.

Evolution under a pure-loss channel for a scaled time ``kt`` (decay rate
times time) maps the Wigner function through a Gaussian convolution with
shrinking centers.  For undisplaced states the result keeps the
m-th-derivative structure of the static function with evolved kernel
coefficients, evaluated here with the same jet machinery; for displaced
states (or as an independent check) the convolution is done by direct
quadrature against the static function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _core
from .errors import BracketError, DomainError, NumericConsistencyError, QuadratureError
from .jets import Jet, jet_exp_reduced, jet_pow, variable
from .kernel import StateParams, derive_kernel, require_real
from .moments import norm_constant
from .wigner import (
    DEFAULT_POINTS,
    DEFAULT_WINDOW,
    MASS_CONVENTION,
    PhaseGrid,
    wigner_grid,
    wigner_point,
    wigner_values,
)


@dataclass(frozen=True)
class EvolvedCoeffs:
    """Evolved-kernel coefficients at decay time kt.

    ``loss`` is the lost energy fraction 1 - exp(-2 kt); ``n_c`` the
    kernel determinant factor (strictly positive), ``r_c`` the
    coefficient of |alpha|^2 in the exponent (tends to -2 at late times)
    and ``k_c`` the anisotropy coefficient (tends to 0; exactly 0 when
    r = 0 at all times).
    """

    kt: float
    loss: float
    n_c: float
    r_c: float
    k_c: float


def _evolved_jets(
    params: StateParams, kt: float, order: int
) -> tuple[float, Jet, Jet, Jet]:
    """Point-independent series for the evolved evaluation, in the kernel
    coefficient ``f``: the square-rooted determinant factor and the two
    exponent coefficient series."""
    if params.displaced:
        raise DomainError(
            "closed-form loss evolution covers undisplaced states only; "
            "use the quadrature path for displaced ones"
        )
    if not kt > 0:
        raise DomainError(f"kt must be > 0 here, got {kt}")
    kc = derive_kernel(params)
    loss = -math.expm1(-2.0 * kt)
    eta2 = 1.0 - loss  # exp(-2 kt), exact complement
    c4 = 2.0 / loss - 4.0

    fv = variable(kc.f, order)
    quad = fv * fv - 4.0 * kc.c * kc.c
    mser = 4.0 * fv + c4 * quad
    den = mser * mser - 64.0 * kc.c * kc.c
    den0 = require_real(complex(den.value), context="evolved denominator")
    if not den0 > 0:
        raise NumericConsistencyError(f"evolved denominator not positive: {den0}")
    nser = quad / den
    n_c = require_real(complex(nser.value), context="evolved determinant factor")
    if not n_c > 0:
        raise NumericConsistencyError(f"evolved determinant factor not positive: {n_c}")
    rser = (4.0 * eta2 / loss**2) * (nser * mser) - 2.0 / loss
    kser = (16.0 * kc.c * eta2 / loss**2) * nser
    return loss, jet_pow(nser, 0.5), rser, kser


def evolved_coeffs(params: StateParams, kt: float) -> EvolvedCoeffs:
    """Scalar evolved-kernel coefficients (see :class:`EvolvedCoeffs`)."""
    loss, _, rser, kser = _evolved_jets(params, kt, 0)
    kc = derive_kernel(params)
    quad0 = kc.f * kc.f - 4.0 * kc.c * kc.c
    c4 = 2.0 / loss - 4.0
    m0 = 4.0 * kc.f + c4 * quad0
    n_c = quad0 / (m0 * m0 - 64.0 * kc.c * kc.c)
    return EvolvedCoeffs(
        kt=kt,
        loss=loss,
        n_c=n_c,
        r_c=require_real(complex(rser.value), context="evolved exponent"),
        k_c=require_real(complex(kser.value), context="evolved anisotropy"),
    )


def wigner_evolved_point(params: StateParams, kt: float, x: float, y: float) -> float:
    """Loss-evolved Wigner function at one point (jet path, undisplaced)."""
    if kt < 0:
        raise DomainError(f"kt must be >= 0, got {kt}")
    if kt == 0.0:
        return wigner_point(params, x, y)
    m = params.m
    loss, sqrtn, rser, kser = _evolved_jets(params, kt, m)
    kc = derive_kernel(params)
    nm = norm_constant(params)
    a2 = 0.5 * (x * x + y * y)
    tra = x * x - y * y
    expo = a2 * rser + tra * kser
    eu, h0 = jet_exp_reduced(expo)
    deriv = (sqrtn * eu).derivative(m)
    h0 = require_real(complex(h0), context="evolved exponent")
    value = 2.0 * deriv * math.exp(h0) / (math.pi * loss * kc.tau_prod * nm)
    return require_real(complex(value), context=f"evolved wigner at ({x}, {y})")


def wigner_evolved_values(
    params: StateParams, kt: float, xs: np.ndarray, ys: np.ndarray
) -> np.ndarray:
    """Loss-evolved Wigner function at paired points, via the batch backend."""
    if kt < 0:
        raise DomainError(f"kt must be >= 0, got {kt}")
    if kt == 0.0:
        return wigner_values(params, xs, ys)
    m = params.m
    loss, sqrtn, rser, kser = _evolved_jets(params, kt, m)
    kc = derive_kernel(params)
    nm = norm_constant(params)
    pref = 2.0 * math.factorial(m) / (math.pi * loss * kc.tau_prod * nm)
    raw = _core.evolved_batch(
        m, sqrtn.coeffs, rser.coeffs, kser.coeffs, pref, xs, ys
    )
    scale = max(float(np.max(np.abs(raw))), 1e-300)
    worst = float(np.max(np.abs(raw.imag)))
    if worst > 1e-10 * scale:
        raise NumericConsistencyError(
            f"imaginary residue {worst} exceeds tolerance in evolved batch"
        )
    return raw.real.copy()


def wigner_evolved_grid(
    params: StateParams,
    kt: float,
    window: tuple[float, float, float, float] = DEFAULT_WINDOW,
    nx: int = DEFAULT_POINTS,
    ny: int = DEFAULT_POINTS,
) -> PhaseGrid:
    """Loss-evolved Wigner function sampled on a rectangular window."""
    x_min, x_max, y_min, y_max = (float(v) for v in window)
    if kt == 0.0:
        grid = wigner_grid(params, window, nx, ny)
        grid.meta["kt"] = 0.0
        return grid
    xs = np.linspace(x_min, x_max, nx)
    ys = np.linspace(y_min, y_max, ny)
    gx, gy = np.meshgrid(xs, ys)
    vals = wigner_evolved_values(params, kt, gx.ravel(), gy.ravel()).reshape(ny, nx)
    return PhaseGrid(
        x_min=x_min, x_max=x_max, y_min=y_min, y_max=y_max,
        nx=nx, ny=ny, values=vals,
        meta={
            "kind": "wigner-evolved",
            "convention": MASS_CONVENTION,
            "nbar": params.nbar,
            "r": params.r,
            "beta_q": params.beta_q,
            "beta_p": params.beta_p,
            "m": params.m,
            "kt": kt,
            "backend": _core.BACKEND,
        },
    )


@dataclass(frozen=True)
class QuadSpec:
    """Controls for the quadrature evolution path.

    ``nodes`` is a per-axis floor; it is raised automatically (up to
    ``node_cap``) when the loss kernel needs finer sampling.
    """

    nodes: int = 301
    n_sigma: float = 6.0
    window: tuple[float, float, float, float] | None = None
    mass_tol: float = 1e-3
    node_cap: int = 2001


def wigner_evolved_numeric(
    params: StateParams,
    kt: float,
    x: float,
    y: float,
    quad: QuadSpec | None = None,
) -> float:
    """Loss-evolved Wigner function by direct Gaussian-convolution quadrature.

    Independent of the jet path and valid for displaced states.  The
    static function is sampled once on an automatically sized window and
    convolved with the loss kernel; an inadequate window (mass deficit
    above ``quad.mass_tol``) or unresolvably narrow kernel raises
    :class:`~pasts.errors.QuadratureError`.
    """
    return float(
        wigner_evolved_numeric_many(params, kt, np.array([[x, y]]), quad)[0]
    )


def wigner_evolved_numeric_many(
    params: StateParams,
    kt: float,
    points: np.ndarray,
    quad: QuadSpec | None = None,
) -> np.ndarray:
    """Quadrature evolution at several output points, sharing one sampling."""
    quad = quad or QuadSpec()
    points = np.asarray(points, dtype=np.float64).reshape(-1, 2)
    if kt < 0:
        raise DomainError(f"kt must be >= 0, got {kt}")
    if kt == 0.0:
        return wigner_values(params, points[:, 0], points[:, 1])

    eta = math.exp(-kt)
    loss = -math.expm1(-2.0 * kt)
    s_kernel = math.sqrt(loss / 2.0) / eta

    if quad.window is not None:
        x_min, x_max, y_min, y_max = quad.window
    else:
        kc = derive_kernel(params)
        sx = math.sqrt((kc.tau1_sq - 0.5) * (params.m + 1.0))
        sy = math.sqrt((kc.tau2_sq - 0.5) * (params.m + 1.0))
        ns = quad.n_sigma
        x_min = min(params.beta_q - ns * sx, points[:, 0].min() / eta - ns * s_kernel)
        x_max = max(params.beta_q + ns * sx, points[:, 0].max() / eta + ns * s_kernel)
        y_min = min(params.beta_p - ns * sy, points[:, 1].min() / eta - ns * s_kernel)
        y_max = max(params.beta_p + ns * sy, points[:, 1].max() / eta + ns * s_kernel)

    span = max(x_max - x_min, y_max - y_min)
    needed = int(math.ceil(span / (s_kernel / 2.5))) + 1
    n = max(quad.nodes, needed)
    if n > quad.node_cap:
        raise QuadratureError(
            f"loss kernel width {s_kernel:.3g} needs {needed} nodes over a "
            f"{span:.3g}-wide window, above the cap {quad.node_cap}"
        )
    xs = np.linspace(x_min, x_max, n)
    ys = np.linspace(y_min, y_max, n)
    dx = xs[1] - xs[0]
    dy = ys[1] - ys[0]

    gx, gy = np.meshgrid(xs, ys)
    w0 = wigner_values(params, gx.ravel(), gy.ravel()).reshape(n, n)
    wx = np.full(n, dx)
    wx[0] = wx[-1] = dx / 2.0
    wy = np.full(n, dy)
    wy[0] = wy[-1] = dy / 2.0
    mass = float(wy @ w0 @ wx)
    if abs(mass - 1.0) > quad.mass_tol:
        raise QuadratureError(
            f"static mass on the quadrature window is {mass:.6f}; "
            f"window too small for the requested accuracy"
        )

    out = np.empty(points.shape[0])
    for idx, (px, py) in enumerate(points):
        ex = np.exp(-((px - eta * xs) ** 2) / loss) * wx
        ey = np.exp(-((py - eta * ys) ** 2) / loss) * wy
        out[idx] = (ey @ w0 @ ex) / (math.pi * loss)
    return out


def threshold_kt(
    params: StateParams,
    kt_lo: float,
    kt_hi: float,
    window: tuple[float, float, float, float] = DEFAULT_WINDOW,
    nx: int = DEFAULT_POINTS,
    ny: int = DEFAULT_POINTS,
    tol: float = 1e-4,
) -> float:
    """Decay time at which the sampled Wigner minimum stops being negative.

    Bisection on the grid minimum; requires the minimum to be negative at
    ``kt_lo`` and non-negative at ``kt_hi``.
    """

    def grid_min(kt: float) -> float:
        return wigner_evolved_grid(params, kt, window, nx, ny).min_location()[0]

    lo, hi = float(kt_lo), float(kt_hi)
    if not lo < hi:
        raise DomainError(f"need kt_lo < kt_hi, got {lo}, {hi}")
    f_lo = grid_min(lo)
    f_hi = grid_min(hi)
    if not (f_lo < 0.0 <= f_hi):
        raise BracketError(
            f"minimum {f_lo:.3e} at kt={lo} and {f_hi:.3e} at kt={hi} "
            f"do not bracket the threshold"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if grid_min(mid) >= 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
