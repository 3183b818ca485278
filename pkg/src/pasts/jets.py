"""Truncated Taylor (jet) arithmetic for high-order derivatives.

A :class:`Jet` stores the Taylor coefficients ``f(x0), f'(x0)/1!, ...,
f^(n)(x0)/n!`` of a function at a scalar expansion point.  Arithmetic on
jets propagates derivatives exactly (to rounding), which is how every
m-th-derivative expression in this package is evaluated: build the inner
function as a jet in the differentiation variable, read off the top
coefficient.

Coefficients are kept complex throughout even when the represented
function is real valued; realness is asserted at the consumer boundary,
not assumed inside the algebra.  Coefficient arrays may carry trailing
batch dimensions, in which case every operation applies elementwise
across the batch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import JetSingularityError, JetUsageError

Scalar = Union[int, float, complex]


@dataclass(frozen=True)
class Jet:
    """Taylor coefficients of a function at a fixed expansion point.

    Attributes
    ----------
    point : complex
        Expansion point of the series.
    coeffs : numpy.ndarray
        Complex array whose leading axis has length ``order + 1``;
        ``coeffs[k]`` is the k-th Taylor coefficient ``f^(k)(point) / k!``.
        Trailing axes, if any, are batch dimensions.
    """

    point: complex
    coeffs: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.coeffs, dtype=np.complex128)
        if arr.ndim < 1 or arr.shape[0] < 1:
            raise JetUsageError("jet needs at least the value coefficient")
        object.__setattr__(self, "coeffs", arr)

    @property
    def order(self) -> int:
        return self.coeffs.shape[0] - 1

    @property
    def value(self) -> np.ndarray | complex:
        return self.coeffs[0]

    def derivative(self, k: int) -> np.ndarray | complex:
        """The k-th derivative ``f^(k)(point)`` (coefficient times k!)."""
        if not 0 <= k <= self.order:
            raise JetUsageError(f"derivative order {k} outside jet order {self.order}")
        return self.coeffs[k] * math.factorial(k)

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "Jet | Scalar") -> "Jet":
        if isinstance(other, Jet):
            a, b = _aligned(self, other)
            return Jet(self.point, a + b)
        out = self.coeffs.copy()
        out[0] = out[0] + complex(other)
        return Jet(self.point, out)

    __radd__ = __add__

    def __neg__(self) -> "Jet":
        return Jet(self.point, -self.coeffs)

    def __sub__(self, other: "Jet | Scalar") -> "Jet":
        return self + (-other if isinstance(other, Jet) else -complex(other))

    def __rsub__(self, other: Scalar) -> "Jet":
        return (-self) + complex(other)

    def __mul__(self, other: "Jet | Scalar") -> "Jet":
        if isinstance(other, Jet):
            a, b = _aligned(self, other)
            n = a.shape[0]
            out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.complex128)
            for k in range(n):
                # truncated Cauchy product
                for j in range(k + 1):
                    out[k] += a[j] * b[k - j]
            return Jet(self.point, out)
        return Jet(self.point, self.coeffs * complex(other))

    __rmul__ = __mul__

    def __truediv__(self, other: "Jet | Scalar") -> "Jet":
        if isinstance(other, Jet):
            a, b = _aligned(self, other)
            _check_invertible(b[0])
            n = a.shape[0]
            out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.complex128)
            for k in range(n):
                acc = a[k] + 0.0
                for j in range(1, k + 1):
                    acc = acc - b[j] * out[k - j]
                out[k] = acc / b[0]
            return Jet(self.point, out)
        return Jet(self.point, self.coeffs / complex(other))

    def __rtruediv__(self, other: Scalar) -> "Jet":
        return complex(other) * jet_recip(self)

    def __pow__(self, exponent: float) -> "Jet":
        return jet_pow(self, exponent)


def variable(point: Scalar, order: int, batch_shape: tuple[int, ...] = ()) -> Jet:
    """Jet of the identity function ``x`` at ``point``."""
    if order < 0:
        raise JetUsageError(f"order must be >= 0, got {order}")
    coeffs = np.zeros((order + 1, *batch_shape), dtype=np.complex128)
    coeffs[0] = complex(point)
    if order >= 1:
        coeffs[1] = 1.0
    return Jet(complex(point), coeffs)


def constant(value: Scalar, order: int, point: Scalar = 0.0) -> Jet:
    """Jet of a constant function at ``point``."""
    if order < 0:
        raise JetUsageError(f"order must be >= 0, got {order}")
    coeffs = np.zeros(order + 1, dtype=np.complex128)
    coeffs[0] = complex(value)
    return Jet(complex(point), coeffs)


def jet_recip(x: Jet) -> Jet:
    """Jet of ``1 / x``."""
    a = x.coeffs
    _check_invertible(a[0])
    out = np.zeros_like(a)
    out[0] = 1.0 / a[0]
    for k in range(1, a.shape[0]):
        acc = a[1] * out[k - 1]
        for j in range(2, k + 1):
            acc = acc + a[j] * out[k - j]
        out[k] = -acc / a[0]
    return Jet(x.point, out)


def jet_exp(x: Jet) -> Jet:
    """Jet of ``exp(x)``.

    The value coefficient is exponentiated directly; callers that need
    overflow-safe behaviour should shift the exponent out first (see
    :func:`jet_exp_reduced`).
    """
    a = x.coeffs
    out = np.zeros_like(a)
    out[0] = np.exp(a[0])
    for k in range(1, a.shape[0]):
        acc = 1.0 * a[1] * out[k - 1]
        for j in range(2, k + 1):
            acc = acc + j * a[j] * out[k - j]
        out[k] = acc / k
    return Jet(x.point, out)


def jet_exp_reduced(x: Jet) -> tuple[Jet, np.ndarray | complex]:
    """Jet of ``exp(x - x(point))`` together with the removed exponent.

    The returned jet has unit value coefficient, so products built from it
    cannot overflow; the caller folds the removed exponent into one final
    ``exp`` alongside any other prefactors.
    """
    a = x.coeffs
    shifted = a.copy()
    x0 = a[0].copy() if isinstance(a[0], np.ndarray) else a[0]
    shifted[0] = 0.0
    return jet_exp(Jet(x.point, shifted)), x0


def jet_pow(x: Jet, exponent: float) -> Jet:
    """Jet of ``x ** exponent`` for a real exponent, principal branch."""
    a = x.coeffs
    if exponent == int(exponent) and exponent >= 0:
        # non-negative integer powers have no branch or singularity issues
        n = int(exponent)
        result = constant(1.0, x.order, x.point)
        base = x
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result
    _check_invertible(a[0])
    p = float(exponent)
    out = np.zeros_like(a)
    out[0] = a[0] ** p
    for k in range(1, a.shape[0]):
        acc = ((p + 1.0) * 1 - k) * a[1] * out[k - 1]
        for j in range(2, k + 1):
            acc = acc + ((p + 1.0) * j - k) * a[j] * out[k - j]
        out[k] = acc / (k * a[0])
    return Jet(x.point, out)


def jet_sqrt(x: Jet) -> Jet:
    return jet_pow(x, 0.5)


def _aligned(x: Jet, y: Jet) -> tuple[np.ndarray, np.ndarray]:
    if x.order != y.order:
        raise JetUsageError(f"jet orders differ: {x.order} vs {y.order}")
    if x.point != y.point:
        raise JetUsageError(f"expansion points differ: {x.point} vs {y.point}")
    a, b = x.coeffs, y.coeffs
    # batch axes trail the coefficient axis, so pad on the right to align
    if a.ndim < b.ndim:
        a = a.reshape(a.shape + (1,) * (b.ndim - a.ndim))
    elif b.ndim < a.ndim:
        b = b.reshape(b.shape + (1,) * (a.ndim - b.ndim))
    return a, b


def _check_invertible(value0: np.ndarray | complex) -> None:
    bad = np.asarray(value0 == 0.0)
    if bad.any():
        raise JetSingularityError(
            "reciprocal or fractional power of a jet with zero value coefficient"
        )
