"""NumPy implementation of the per-point hot loops.

Mirrors the compiled extension in ``_jetcore.pyx`` exactly: same
signatures, same recurrences, same combined-exponent evaluation order.
Batch dimensions are vectorized across points; the Taylor recurrences
stay as short Python loops over the (small) jet order.
"""

from __future__ import annotations

import numpy as np

_SQRT2 = np.sqrt(2.0)

BACKEND_NAME = "python"


def wigner_batch(
    m: int,
    f0: float,
    c: float,
    b: complex,
    d: float,
    pcoef: np.ndarray,
    pref: float,
    xs: np.ndarray,
    ys: np.ndarray,
) -> np.ndarray:
    """Phase-space values of the m-photon-added state at (xs, ys).

    ``pcoef`` holds the point-independent Taylor coefficients of
    ``(f^2 - 4c^2)^(-1/2)``; ``pref`` already contains ``m!`` and the
    normalization, so the only per-point work is a linear-over-quadratic
    exponent jet, its exponential, and one convolution coefficient.
    """
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    alpha = (xs + 1j * ys) / _SQRT2
    e_lin = b - 2.0 * alpha
    e2 = e_lin.real**2 + e_lin.imag**2
    re2 = e_lin.real**2 - e_lin.imag**2
    g0 = f0 * f0 - 4.0 * c * c
    g1 = 2.0 * f0

    # h = (-f*e2 + 2c*re2) / (f^2 - 4c^2) as a Taylor series in f
    h = np.zeros((m + 1, xs.shape[0]), dtype=np.complex128)
    h[0] = (-f0 * e2 + 2.0 * c * re2) / g0
    if m >= 1:
        h[1] = (-e2 - g1 * h[0]) / g0
    for k in range(2, m + 1):
        h[k] = -(g1 * h[k - 1] + h[k - 2]) / g0

    h0 = h[0].copy()
    h[0] = 0.0
    eu = _exp_series(h)

    qm = np.zeros(xs.shape[0], dtype=np.complex128)
    for j in range(m + 1):
        qm += pcoef[j] * eu[m - j]
    expo = d + (xs * xs + ys * ys) + h0
    return pref * np.exp(expo) * qm


def evolved_batch(
    m: int,
    sqrtn: np.ndarray,
    rj: np.ndarray,
    kj: np.ndarray,
    pref: float,
    xs: np.ndarray,
    ys: np.ndarray,
) -> np.ndarray:
    """Values of the loss-evolved state at (xs, ys).

    ``sqrtn``, ``rj`` and ``kj`` are the point-independent Taylor
    coefficients of the evolved-kernel square root and the two exponent
    coefficient series; the per-point exponent is just their linear
    combination with |alpha|^2 and Re(alpha^2).
    """
    xs = np.asarray(xs, dtype=np.float64)
    ys = np.asarray(ys, dtype=np.float64)
    a2 = 0.5 * (xs * xs + ys * ys)
    tra = xs * xs - ys * ys  # alpha^2 + conj(alpha)^2

    h = rj[:, None] * a2[None, :] + kj[:, None] * tra[None, :]
    h0 = h[0].copy()
    h[0] = 0.0
    eu = _exp_series(h)

    qm = np.zeros(xs.shape[0], dtype=np.complex128)
    for j in range(m + 1):
        qm += sqrtn[j] * eu[m - j]
    return pref * np.exp(h0) * qm


def _exp_series(h: np.ndarray) -> np.ndarray:
    """exp of a Taylor series with zero value coefficient."""
    order = h.shape[0] - 1
    eu = np.zeros_like(h)
    eu[0] = 1.0
    for k in range(1, order + 1):
        acc = h[1] * eu[k - 1]
        for j in range(2, k + 1):
            acc = acc + j * h[j] * eu[k - j]
        eu[k] = acc / k
    return eu
