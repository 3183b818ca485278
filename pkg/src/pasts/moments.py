"""Normalization constants and photon-number moments.

The normalization constant of an m-photon-added state is an m-th
derivative of a simple function of the kernel coefficient ``a`` (an
inverse square root times, for displaced states, a Gaussian factor), and
the photon-number moments are ratios of the constants at m, m+1, m+2.
The derivatives are evaluated with jet arithmetic; a single jet of order
m+2 yields all three constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import NumericConsistencyError, UndefinedQError
from .jets import Jet, jet_exp_reduced, jet_pow, variable
from .kernel import KernelCoeffs, StateParams, derive_kernel, require_real


def _core_jet(kc: KernelCoeffs, order: int) -> tuple[Jet, float]:
    """Jet (in the coefficient ``a``) whose m-th derivative gives the norms.

    Returns the jet of ``(a^2-4c^2)^(-1/2) * exp(u(a) - u0)`` together with
    the total constant exponent ``d + u0``, which the caller applies in a
    single ``exp``.  For undisplaced states the Gaussian factor is absent
    and the constant exponent is zero exactly.
    """
    av = variable(kc.a, order)
    quad = av * av - 4.0 * kc.c * kc.c
    g = jet_pow(quad, -0.5)
    if kc.b == 0:
        return g, 0.0
    b2 = abs(kc.b) ** 2
    reb2 = kc.b.real**2 - kc.b.imag**2
    u = (b2 * av + 2.0 * kc.c * reb2) / quad
    eu, u0 = jet_exp_reduced(u)
    return g * eu, kc.d + require_real(u0, context="norm exponent")


def norm_ladder(params: StateParams, count: int = 1) -> list[float]:
    """Normalization constants for m, m+1, ..., m+count-1 added photons.

    One jet evaluation of order m+count-1 supplies the whole ladder.
    Every constant is checked real and strictly positive.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    kc = derive_kernel(params)
    top = params.m + count - 1
    total, expo = _core_jet(kc, top)
    scale = math.exp(expo) / kc.tau_prod
    out = []
    sign = -1.0 if params.m % 2 else 1.0
    for k in range(params.m, top + 1):
        value = require_real(total.derivative(k), context=f"norm m={k}")
        n_k = sign * scale * value
        if not n_k > 0:
            raise NumericConsistencyError(
                f"normalization constant for m={k} not positive: {n_k}"
            )
        out.append(n_k)
        sign = -sign
    return out


def norm_constant(params: StateParams) -> float:
    """Normalization constant of the m-photon-added state (exactly 1 at m=0)."""
    return norm_ladder(params, 1)[0]


def norm_triplet(params: StateParams) -> tuple[float, float, float]:
    """Constants for m, m+1 and m+2 added photons from one jet evaluation."""
    ladder = norm_ladder(params, 3)
    return ladder[0], ladder[1], ladder[2]


@dataclass(frozen=True)
class PhotonMoments:
    """First two factorial moments and Mandel Q of the photon number."""

    norm: float
    mean: float
    second_factorial: float
    mandel_q: float


def mean_photon(params: StateParams) -> float:
    n_m, n_m1 = norm_ladder(params, 2)
    return n_m1 / n_m - 1.0


def second_factorial_moment(params: StateParams) -> float:
    n_m, n_m1, n_m2 = norm_triplet(params)
    return n_m2 / n_m - 4.0 * n_m1 / n_m + 2.0


def photon_moments(params: StateParams) -> PhotonMoments:
    """Moments from one shared jet evaluation; Q undefined on the vacuum."""
    n_m, n_m1, n_m2 = norm_triplet(params)
    mean = n_m1 / n_m - 1.0
    second = n_m2 / n_m - 4.0 * n_m1 / n_m + 2.0
    if mean < -1e-12:
        raise NumericConsistencyError(f"negative mean photon number {mean}")
    if second < -1e-12:
        raise NumericConsistencyError(f"negative second factorial moment {second}")
    if mean <= 0 or n_m1 - n_m <= 0:
        raise UndefinedQError(
            "Mandel Q undefined: state has zero mean photon number"
        )
    q = (n_m2 - 4.0 * n_m1 + 2.0 * n_m) / (n_m1 - n_m) - (n_m1 - n_m) / n_m
    return PhotonMoments(norm=n_m, mean=mean, second_factorial=second, mandel_q=q)


def mandel_q(params: StateParams) -> float:
    return photon_moments(params).mandel_q


def q_threshold_r(
    nbar: float,
    m: int,
    r_lo: float = 0.0,
    r_hi: float = 1.5,
    step: float = 0.01,
    tol: float = 1e-4,
) -> float | None:
    """Smallest squeeze parameter in [r_lo, r_hi] where Mandel Q turns positive.

    Scans in fixed steps for a sign change and refines it by bisection.
    Returns None when Q does not cross zero on the interval (either always
    positive or always negative there).
    """

    def q_at(r: float) -> float:
        return mandel_q(StateParams(nbar=nbar, r=r, m=m))

    r_prev, q_prev = r_lo, q_at(r_lo)
    if q_prev >= 0.0:
        return r_lo if q_prev == 0.0 else None
    crossing = None
    r = r_lo
    while r < r_hi:
        r = min(r + step, r_hi)
        q_here = q_at(r)
        if q_here >= 0.0:
            crossing = (r_prev, r)
            break
        r_prev, q_prev = r, q_here
    if crossing is None:
        return None
    lo, hi = crossing
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if q_at(mid) >= 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
