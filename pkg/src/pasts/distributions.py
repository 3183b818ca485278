"""Photon number distribution of photon-added squeezed thermal states.

Two closed forms are implemented.  The general one sums scaled Hermite
polynomial magnitudes and covers displaced states; the undisplaced one
collapses to a Legendre polynomial of the kernel axis ratio.  Both are
assembled in log space (factorials through ``gammaln``, partial sums in
ascending magnitude) so that deep tails neither overflow nor lose the
leading digits.

The Legendre argument ``(1-a)/sigma`` leaves the real axis whenever one
quadrature drops below vacuum width (``sigma_sq < 0``).  The scaled
combination ``sigma**k * P_k((1-a)/sigma)`` stays real and polynomial in
``sigma_sq``, so the recurrence is run on that combination directly; the
degenerate small-``sigma`` regime falls back to the explicit double sum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .errors import DomainError, NumericConsistencyError
from .kernel import StateParams, derive_kernel
from .moments import norm_constant

_LOG_TINY = -745.0  # under exp() this is a clean 0.0 in double precision


def hermite(n: int, z: complex) -> complex:
    """Physicists' Hermite polynomial of (possibly complex) argument."""
    if n < 0:
        raise DomainError(f"polynomial degree must be >= 0, got {n}")
    h_prev, h = 1.0 + 0.0j, 2.0 * complex(z)
    if n == 0:
        return h_prev
    for k in range(1, n):
        h_prev, h = h, 2.0 * z * h - 2.0 * k * h_prev
    return h


def legendre(n: int, x: float) -> float:
    """Legendre polynomial by the three-term recurrence."""
    if n < 0:
        raise DomainError(f"polynomial degree must be >= 0, got {n}")
    p_prev, p = 1.0, float(x)
    if n == 0:
        return p_prev
    for k in range(1, n):
        p_prev, p = p, ((2.0 * k + 1.0) * x * p - k * p_prev) / (k + 1.0)
    return p


def legendre_sum(n: int, x: float) -> float:
    """Legendre polynomial by the explicit even/odd power sum.

    Slower and narrower-ranged than :func:`legendre`; kept as an
    independent cross-check of the recurrence.
    """
    if n < 0:
        raise DomainError(f"polynomial degree must be >= 0, got {n}")
    w = (x * x - 1.0) / 4.0
    total = 0.0
    for l in range(n // 2 + 1):
        term = (
            math.exp(
                gammaln(n + 1) - 2.0 * gammaln(l + 1) - gammaln(n - 2 * l + 1)
            )
            * x ** (n - 2 * l)
            * w**l
        )
        total += term
    return total


def _scaled_legendre_terms(k_max: int, y: float, sigma_sq: float) -> np.ndarray:
    """Values of sigma^k P_k(y / sigma) for k = 0..k_max.

    Polynomial in y and sigma_sq, hence well defined and real for any sign
    of sigma_sq; reduces to (1 - a)^k ... at sigma_sq = y^2 the weights
    collapse to pure powers.  All values lie in [0, (y + 2|c|)^k].
    """
    out = np.empty(k_max + 1)
    out[0] = 1.0
    if k_max >= 1:
        out[1] = y
    for k in range(1, k_max):
        out[k + 1] = ((2.0 * k + 1.0) * y * out[k] - k * sigma_sq * out[k - 1]) / (
            k + 1.0
        )
    return out


def _scaled_hermite_sq(k_max: int, b: complex, c: float) -> np.ndarray:
    """|c|^k |H_k(i b / (2 sqrt(c)))|^2 for k = 0..k_max, branch independent.

    Run as a recurrence on g_k = |c|^(k/2) H_k(...), which absorbs the
    sqrt(c) of the argument and stays finite as c -> 0 (where g_k -> w^k
    with |w| = |b|).  Only |g_k|^2 is returned, so the sign of the square
    root branch cancels.
    """
    w = 1j * b if c >= 0 else complex(b)
    absc = abs(c)
    g_prev, g = 1.0 + 0.0j, w
    out = np.empty(k_max + 1)
    out[0] = 1.0
    if k_max >= 1:
        out[1] = abs(g) ** 2
    for k in range(1, k_max):
        g_prev, g = g, w * g - 2.0 * k * absc * g_prev
        out[k + 1] = abs(g) ** 2
    return out


def _log_ascending_sum(log_terms: np.ndarray) -> float:
    """log(sum(exp(log_terms))) with the partial sums taken small to large."""
    finite = log_terms[np.isfinite(log_terms)]
    if finite.size == 0:
        return _LOG_TINY * 2.0
    peak = float(np.max(finite))
    shifted = np.sort(finite - peak)
    return peak + math.log(float(np.sum(np.exp(shifted))))


@dataclass(frozen=True)
class PndProfile:
    """Photon number probabilities P(0..n_max) of one state."""

    params: StateParams
    n_max: int
    probs: np.ndarray

    @property
    def tail_deficit(self) -> float:
        """Probability mass beyond n_max."""
        return 1.0 - float(np.sum(self.probs))

    def peak(self) -> int:
        return int(np.argmax(self.probs))


def pnd(params: StateParams, n: int) -> float:
    """Probability of exactly n photons."""
    if n < 0:
        raise DomainError(f"photon number must be >= 0, got {n}")
    return float(pnd_profile(params, n).probs[n])


def pnd_profile(params: StateParams, n_max: int) -> PndProfile:
    """Probabilities P(0..n_max), sharing one normalization evaluation."""
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    kc = derive_kernel(params)
    m = params.m
    norm = norm_constant(params)
    log_pref = -math.log(norm) - 0.5 * math.log(kc.tau1_sq * kc.tau2_sq)
    probs = np.zeros(n_max + 1)
    k_top = n_max - m
    if k_top < 0:
        return PndProfile(params=params, n_max=n_max, probs=probs)

    y = 1.0 - kc.a
    # lgf[i] = log(i!)
    lgf = gammaln(np.arange(n_max + 2, dtype=float) + 1.0)

    if params.displaced:
        # general (displaced) form: for each n sum over Gaussian and
        # Hermite contributions; all terms are >= 0 so no sign tracking
        gsq = _scaled_hermite_sq(k_top, kc.b, kc.c)
        ks = np.arange(k_top + 1)
        with np.errstate(divide="ignore", invalid="ignore"):
            log_y = np.where(
                ks == 0, 0.0, ks * (math.log(y) if y > 0 else -math.inf)
            )
            log_gsq = np.log(np.maximum(gsq, 0.0))
        for n in range(m, n_max + 1):
            k = n - m
            ls = np.arange(k + 1)
            log_terms = (
                lgf[n]
                + log_y[ls]
                - lgf[ls]
                - 2.0 * lgf[k - ls]
                + log_gsq[k - ls]
            )
            total = _log_ascending_sum(log_terms)
            probs[n] = math.exp(log_pref + kc.d + total)
    elif kc.sigma_degenerate:
        # both axes at vacuum width: explicit double sum over the few
        # non-vanishing powers
        w = kc.c * kc.c
        log_y = math.log(y) if y > 0 else -math.inf
        log_w = math.log(w) if w > 0 else -math.inf
        for n in range(m, n_max + 1):
            k = n - m
            js = np.arange(k // 2 + 1)
            powers_y = k - 2 * js
            with np.errstate(invalid="ignore"):
                log_terms = (
                    lgf[n]
                    + np.where(powers_y == 0, 0.0, powers_y * log_y)
                    + np.where(js == 0, 0.0, js * log_w)
                    - 2.0 * lgf[js]
                    - lgf[powers_y]
                )
            total = _log_ascending_sum(log_terms)
            probs[n] = math.exp(log_pref + total)
    else:
        scaled = _scaled_legendre_terms(k_top, y, kc.sigma_sq)
        bad = scaled < -1e-12
        if bad.any():
            raise NumericConsistencyError(
                f"scaled Legendre weight negative at k={int(np.argmax(bad))}"
            )
        with np.errstate(divide="ignore"):
            log_scaled = np.log(np.maximum(scaled, 0.0))
        for n in range(m, n_max + 1):
            k = n - m
            probs[n] = math.exp(log_pref + lgf[n] - lgf[k] + log_scaled[k])

    _check_probabilities(probs)
    np.clip(probs, 0.0, None, out=probs)
    return PndProfile(params=params, n_max=n_max, probs=probs)


def _check_probabilities(probs: np.ndarray) -> None:
    lo = float(np.min(probs))
    if lo < -1e-12:
        raise NumericConsistencyError(f"negative probability {lo}")
    hi = float(np.max(probs))
    if hi > 1.0 + 1e-9:
        raise NumericConsistencyError(f"probability above one: {hi}")
