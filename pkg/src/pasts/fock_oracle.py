"""Brute-force truncated Fock-space model of the same states.

Everything here is deliberately independent of the closed forms in the
rest of the package: states are built as explicit matrices (thermal
diagonal, then matrix-exponential squeeze and displacement, then repeated
photon addition) and all quantities are traces against explicit operators.
Agreement between this module and the analytic modules is the core
correctness argument of the package, so nothing from the analytic side is
imported except the parameter container.

The price of the brute force is a finite basis.  Truncation adequacy is
checked, never assumed: states that push weight into the top of the basis
raise :class:`~pasts.errors.CutoffError` instead of returning silently
biased numbers.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.linalg import expm
from scipy.special import gammaln

from .errors import CutoffError, DomainError
from .kernel import StateParams, alpha_from_xy

DEFAULT_CUTOFF = 80

# Escalation ladder for states whose Fock support outgrows the default
# cutoff (large |r| with thermal occupation pushes the photon number
# distribution's decay ratio toward 1).
CUTOFF_LADDER = (80, 160, 240, 320)

# Number of top basis levels whose occupancy is used to judge containment.
_TAIL_LEVELS = 8


@dataclass(frozen=True)
class DensityMatrix:
    """A normalized state in a truncated Fock basis."""

    dim: int
    entries: np.ndarray

    def validate(self, rtol_herm: float = 1e-12, tol_trace: float = 1e-10) -> None:
        """Check hermiticity, unit trace and positivity; raise on violation."""
        rho = self.entries
        if rho.shape != (self.dim, self.dim):
            raise DomainError(f"entries shape {rho.shape} != ({self.dim}, {self.dim})")
        herm = np.max(np.abs(rho - rho.conj().T))
        if herm > rtol_herm * max(1.0, np.max(np.abs(rho))):
            raise CutoffError(f"density matrix not hermitian: residue {herm}")
        tr = np.trace(rho).real
        if abs(tr - 1.0) > tol_trace:
            raise CutoffError(f"density matrix trace {tr} != 1")
        lo = np.linalg.eigvalsh(rho)[0]
        if lo < -1e-10:
            raise CutoffError(f"density matrix has negative eigenvalue {lo}")


def lowering(dim: int) -> np.ndarray:
    """Matrix of the photon annihilation operator."""
    op = np.zeros((dim, dim), dtype=np.complex128)
    ns = np.arange(1, dim)
    op[ns - 1, ns] = np.sqrt(ns)
    return op


@lru_cache(maxsize=32)
def _squeeze_op(r: float, dim: int) -> np.ndarray:
    """Squeeze unitary with positive r stretching the q quadrature.

    The generator is (r/2)(adag^2 - a^2); its truncation stays
    anti-hermitian, so the exponential is unitary to rounding.
    """
    a = lowering(dim)
    gen = 0.5 * r * (a.conj().T @ a.conj().T - a @ a)
    op = expm(gen)
    op.flags.writeable = False
    return op

def _displace_op(alpha: complex, dim: int) -> np.ndarray:
    return _displace_op_cached(alpha.real, alpha.imag, dim)


@lru_cache(maxsize=512)
def _displace_op_cached(re: float, im: float, dim: int) -> np.ndarray:
    a = lowering(dim)
    alpha = complex(re, im)
    op = expm(alpha * a.conj().T - np.conj(alpha) * a)
    op.flags.writeable = False
    return op


def _unitarity_defect(op: np.ndarray) -> float:
    return float(np.max(np.abs(op.conj().T @ op - np.eye(op.shape[0]))))


@lru_cache(maxsize=16)
def _squeezed_thermal(
    nbar: float, r: float, beta_q: float, beta_p: float, dim: int
) -> np.ndarray:
    """Displaced squeezed thermal state, unnormalized by the thermal tail.

    The thermal diagonal is truncated without renormalizing, so the trace
    deficit of the result reports the thermal tail directly.
    """
    ns = np.arange(dim)
    if nbar == 0.0:
        diag = np.zeros(dim)
        diag[0] = 1.0
    else:
        x = nbar / (nbar + 1.0)
        diag = np.exp(ns * math.log(x) - math.log(nbar + 1.0))
    rho = np.diag(diag.astype(np.complex128))

    s_op = _squeeze_op(r, dim)
    if _unitarity_defect(s_op) > 1e-12:
        raise CutoffError("squeeze operator lost unitarity; cutoff unusable")
    rho = s_op @ rho @ s_op.conj().T

    alpha = complex(beta_q, beta_p) / math.sqrt(2.0)
    if alpha != 0:
        d_op = _displace_op(alpha, dim)
        if _unitarity_defect(d_op) > 1e-12:
            raise CutoffError("displacement operator lost unitarity; cutoff unusable")
        rho = d_op @ rho @ d_op.conj().T

    rho.flags.writeable = False
    return rho


def _contained_squeezed_thermal(
    params: StateParams, cutoff: int, trace_tol: float
) -> np.ndarray:
    """Squeezed thermal core with truncation adequacy checks applied.

    Two independent checks: the trace deficit (catches the truncated
    thermal tail exactly) and the occupancy of the top basis levels
    (catches squeeze and displacement leakage, which unitary truncated
    operators cannot turn into a trace deficit).  Both gates stay strict:
    under-truncation distorts the near-edge diagonal downward, so a
    visibly small tail alone is not trustworthy evidence of convergence.
    """
    if cutoff < max(16, 2 * params.m + 4):
        raise CutoffError(f"cutoff {cutoff} too small to hold the state")
    rho = _squeezed_thermal(
        float(params.nbar), float(params.r),
        float(params.beta_q), float(params.beta_p), int(cutoff),
    )
    deficit = abs(1.0 - np.trace(rho).real)
    if deficit > trace_tol:
        raise CutoffError(
            f"thermal tail deficit {deficit:.3e} exceeds {trace_tol:.1e} "
            f"at cutoff {cutoff}"
        )
    tail = np.sum(np.abs(np.diag(rho)[-max(_TAIL_LEVELS, params.m + 2):]))
    if tail > trace_tol:
        raise CutoffError(
            f"top-of-basis occupancy {tail:.3e} exceeds {trace_tol:.1e} "
            f"at cutoff {cutoff}; state not contained"
        )
    return rho


def _raised(params: StateParams, cutoff: int, trace_tol: float) -> np.ndarray:
    """Unnormalized matrix after adding m photons to the contained core."""
    rho = _contained_squeezed_thermal(params, cutoff, trace_tol)
    if params.m == 0:
        return rho
    adag = lowering(cutoff).conj().T
    out = rho
    for _ in range(params.m):
        out = adag @ out @ adag.conj().T
    return out


def build_pasts(
    params: StateParams, cutoff: int = DEFAULT_CUTOFF, trace_tol: float = 1e-10
) -> DensityMatrix:
    """Photon-added squeezed thermal state as an explicit density matrix."""
    raw = _raised(params, cutoff, trace_tol)
    norm = np.trace(raw).real
    if norm <= 0:
        raise CutoffError(f"non-positive norm {norm} at cutoff {cutoff}")
    return DensityMatrix(dim=cutoff, entries=raw / norm)


def _weighted_tail_guard(diag: np.ndarray, total: float, tail_tol: float,
                         what: str) -> None:
    # Scale floor of 1 keeps the bound meaningful for values that are
    # legitimately zero (e.g. the second factorial moment of |1><1|),
    # while still certifying well below the comparison tolerances.
    tail = abs(float(np.sum(diag[-_TAIL_LEVELS:])))
    scale = max(abs(total), 1.0)
    if tail > tail_tol * scale:
        raise CutoffError(
            f"{what}: top {_TAIL_LEVELS} basis levels carry {tail / scale:.3e} "
            f"of the value (tolerance {tail_tol:.1e}); raise the cutoff"
        )


def oracle_norm(
    params: StateParams,
    cutoff: int = DEFAULT_CUTOFF,
    trace_tol: float = 1e-10,
    tail_tol: float = 1e-9,
) -> float:
    """Trace of the m-fold photon-raised state before normalization.

    This is the brute-force counterpart of the analytic normalization
    constant.  The diagonal of the raised matrix carries weights that grow
    like n**m, so convergence is re-checked on the weighted sum itself.
    """
    raw = _raised(params, cutoff, trace_tol)
    diag = np.diag(raw).real
    total = float(np.sum(diag))
    if not total > 0:
        raise CutoffError(f"non-positive norm trace {total} at cutoff {cutoff}")
    _weighted_tail_guard(diag, total, tail_tol, "norm trace")
    return total


@dataclass(frozen=True)
class OracleMoments:
    mean: float
    second_factorial: float
    mandel_q: float


def oracle_moments(dm: DensityMatrix, tail_tol: float = 1e-9) -> OracleMoments:
    """Photon-number mean, second factorial moment and Mandel Q by trace."""
    diag = np.diag(dm.entries).real
    ns = np.arange(dm.dim, dtype=float)
    mean_terms = diag * ns
    sec_terms = diag * ns * (ns - 1.0)
    mean = float(np.sum(mean_terms))
    second = float(np.sum(sec_terms))
    if mean <= 0:
        raise DomainError("mean photon number vanishes; Mandel Q undefined")
    _weighted_tail_guard(mean_terms, mean, tail_tol, "mean photon number")
    _weighted_tail_guard(sec_terms, second, tail_tol, "second factorial moment")
    # Mandel Q = (<n^2> - <n>^2)/<n> - 1 with <n^2> = second + mean
    q = (second + mean - mean * mean) / mean - 1.0
    return OracleMoments(mean=mean, second_factorial=second, mandel_q=q)


def oracle_pnd(dm: DensityMatrix, n: int) -> float:
    """Probability of finding exactly n photons."""
    if not 0 <= n < dm.dim:
        raise DomainError(f"level {n} outside basis of size {dm.dim}")
    return float(dm.entries[n, n].real)


def oracle_wigner(dm: DensityMatrix, x: float, y: float) -> float:
    """Wigner function at the quadrature point (x, y) by displaced parity.

    Normalized so the function integrates to one against dx dy.
    """
    alpha = alpha_from_xy(x, y)
    d_op = _displace_op(alpha, dm.dim)
    shifted = d_op.conj().T @ dm.entries @ d_op
    parity = (-1.0) ** np.arange(dm.dim)
    return float(np.sum(parity * np.diag(shifted).real) / math.pi)


def damp(dm: DensityMatrix, kt: float) -> DensityMatrix:
    """Pure photon-loss evolution for a time kt (kappa * t), via Kraus sum.

    The k-photon-loss Kraus operator has a single superdiagonal band
    sqrt(binom(n, k) T^k (1-T)^(n-k)) with T = 1 - exp(-2 kt); the band
    weights are assembled in log space.  The sum preserves the trace
    exactly on the truncated basis.
    """
    if kt < 0:
        raise DomainError(f"kt must be >= 0, got {kt}")
    if kt == 0.0:
        return DensityMatrix(dm.dim, dm.entries.copy())
    big_t = -math.expm1(-2.0 * kt)
    log_t = math.log(big_t)
    log_1mt = -2.0 * kt
    dim = dm.dim
    ns = np.arange(dim, dtype=float)
    lg = gammaln(ns + 1.0)
    out = np.zeros_like(dm.entries)
    for k in range(dim):
        n = np.arange(k, dim, dtype=float)
        logw = 0.5 * (
            lg[k:] - lg[k] - gammaln(n - k + 1.0)
            + k * log_t + (n - k) * log_1mt
        )
        w = np.exp(logw)
        out[: dim - k, : dim - k] += (
            w[:, None] * dm.entries[k:, k:] * w[None, :]
        )
    return DensityMatrix(dim, out)


@dataclass(frozen=True)
class QuadratureStats:
    mean_q: float
    mean_p: float
    var_q: float
    var_p: float


def oracle_quadrature_stats(dm: DensityMatrix) -> QuadratureStats:
    """First two moments of both quadratures, q = (a + adag)/sqrt(2)."""
    a = lowering(dm.dim)
    q_op = (a + a.conj().T) / math.sqrt(2.0)
    p_op = (a - a.conj().T) / (1j * math.sqrt(2.0))
    rho = dm.entries

    def moment(op: np.ndarray) -> float:
        return float(np.trace(rho @ op).real)

    mq = moment(q_op)
    mp = moment(p_op)
    vq = moment(q_op @ q_op) - mq * mq
    vp = moment(p_op @ p_op) - mp * mp
    return QuadratureStats(mean_q=mq, mean_p=mp, var_q=vq, var_p=vp)


def with_cutoff_ladder(evaluate, ladder: tuple[int, ...] = CUTOFF_LADDER):
    """Run ``evaluate(cutoff)``, escalating through ``ladder`` on cutoff errors.

    The tail guards make under-truncation loud; this retries with larger
    bases until one is certified, re-raising the last failure otherwise.
    """
    failure: CutoffError | None = None
    for cutoff in ladder:
        try:
            return evaluate(cutoff)
        except CutoffError as exc:
            failure = exc
    assert failure is not None
    raise failure
