"""Parameter validation and kernel coefficient identities."""

from __future__ import annotations

import math

import pytest

from conftest import built
from pasts.errors import DomainError, NumericConsistencyError
from pasts.fock_oracle import oracle_quadrature_stats
from pasts.kernel import (
    SIGMA_SQ_DEGENERATE,
    StateParams,
    alpha_from_xy,
    derive_kernel,
    from_beta,
    require_real,
)

SWEEP = [
    StateParams(nbar=nbar, r=r, beta_q=bq, beta_p=bp, m=0)
    for nbar in (0.0, 0.5, 1.0, 2.0)
    for r in (-0.8, -0.3, 0.0, 0.3, 0.8)
    for bq, bp in ((0.0, 0.0), (0.8, -0.4))
]


@pytest.mark.parametrize(
    "kwargs",
    [
        {"nbar": -0.1, "r": 0.0},
        {"nbar": math.nan, "r": 0.0},
        {"nbar": math.inf, "r": 0.0},
        {"nbar": 0.5, "r": math.nan},
        {"nbar": 0.5, "r": 0.0, "beta_q": math.inf},
        {"nbar": 0.5, "r": 0.0, "m": -1},
        {"nbar": 0.5, "r": 0.0, "m": 1.0},
        {"nbar": 0.5, "r": 0.0, "m": True},
        {"nbar": "0.5", "r": 0.0},
    ],
)
def test_unphysical_parameters_are_rejected(kwargs) -> None:
    with pytest.raises(DomainError):
        StateParams(**kwargs)


def test_displacement_amplitude_and_flags() -> None:
    p = StateParams(nbar=0.5, r=0.3, beta_q=0.8, beta_p=-0.4, m=2)
    assert p.displaced
    assert p.beta == pytest.approx(complex(0.8, -0.4) / math.sqrt(2.0), rel=1e-15)
    assert not StateParams(nbar=0.5, r=0.3).displaced

    back = from_beta(0.5, 0.3, p.beta, m=2)
    assert back.beta_q == pytest.approx(0.8, rel=1e-15)
    assert back.beta_p == pytest.approx(-0.4, rel=1e-15)

    assert p.with_m(5).m == 5
    assert p.with_m(5).beta_q == p.beta_q


def test_alpha_from_xy_matches_convention() -> None:
    assert alpha_from_xy(1.0, -2.0) == complex(1.0, -2.0) / math.sqrt(2.0)


def test_quadratic_identity_links_widths() -> None:
    # a^2 - 4c^2 telescopes to 1/(tau1^2 tau2^2); this is what makes the
    # inverse square root in the norm pipeline collapse to tau1*tau2
    for params in SWEEP:
        kc = derive_kernel(params)
        lhs = kc.a * kc.a - 4.0 * kc.c * kc.c
        rhs = 1.0 / (kc.tau1_sq * kc.tau2_sq)
        assert lhs == pytest.approx(rhs, rel=1e-13)


def test_coefficient_inequalities() -> None:
    for params in SWEEP:
        kc = derive_kernel(params)
        assert 0.0 < kc.a <= 1.0
        assert abs(2.0 * kc.c) < kc.a
        assert kc.f == 2.0 - kc.a
        assert kc.f * kc.f > 4.0 * kc.c * kc.c
        assert kc.tau_prod == pytest.approx(
            math.sqrt(kc.tau1_sq * kc.tau2_sq), rel=1e-15
        )


def test_isotropic_coefficient_saturates_only_at_zero_temperature() -> None:
    assert derive_kernel(StateParams(nbar=0.0, r=0.7)).a == pytest.approx(1.0, abs=1e-15)
    assert derive_kernel(StateParams(nbar=0.2, r=0.7)).a < 1.0


def test_axis_gap_sign_cases() -> None:
    # one quadrature below vacuum width makes the gap square negative
    squeezed = derive_kernel(StateParams(nbar=0.0, r=0.3))
    assert squeezed.sigma_sq < 0.0
    # a negative gap square cannot be divided through either
    assert squeezed.sigma_degenerate
    with pytest.raises(DomainError):
        _ = squeezed.sigma

    vacuum = derive_kernel(StateParams(nbar=0.0, r=0.0))
    assert abs(vacuum.sigma_sq) < SIGMA_SQ_DEGENERATE
    assert vacuum.sigma_degenerate

    wide = derive_kernel(StateParams(nbar=1.0, r=0.1))
    assert wide.sigma_sq > 0.0
    assert wide.sigma == pytest.approx(math.sqrt(wide.sigma_sq), rel=1e-15)


def test_displacement_only_moves_linear_terms() -> None:
    plain = derive_kernel(StateParams(nbar=0.7, r=0.4))
    moved = derive_kernel(StateParams(nbar=0.7, r=0.4, beta_q=0.9, beta_p=-0.2))
    assert moved.a == plain.a
    assert moved.c == plain.c
    assert moved.f == plain.f
    assert moved.sigma_sq == plain.sigma_sq
    assert plain.b == 0.0 and plain.d == 0.0
    assert moved.b != 0.0 and moved.d < 0.0


@pytest.mark.parametrize("r", [0.3, -0.3])
def test_quadrature_variances_pin_squeeze_orientation(r: float) -> None:
    # positive r must stretch the q quadrature: Var(q) = tau1^2 - 1/2 with
    # tau1 carrying e^{2r}; a flipped squeeze sign would swap the two
    params = StateParams(nbar=0.5, r=r)
    kc = derive_kernel(params)
    stats = oracle_quadrature_stats(built(params))
    assert stats.var_q == pytest.approx(kc.tau1_sq - 0.5, abs=1e-9)
    assert stats.var_p == pytest.approx(kc.tau2_sq - 0.5, abs=1e-9)


def test_displaced_centroid_matches_parameters() -> None:
    params = StateParams(nbar=0.5, r=0.3, beta_q=0.8, beta_p=-0.4)
    stats = oracle_quadrature_stats(built(params))
    assert stats.mean_q == pytest.approx(0.8, abs=1e-9)
    assert stats.mean_p == pytest.approx(-0.4, abs=1e-9)


def test_kernel_width_overflow_raises() -> None:
    with pytest.raises(DomainError):
        derive_kernel(StateParams(nbar=1.0, r=400.0))


def test_require_real_accepts_and_rejects() -> None:
    assert require_real(3.5 + 0.0j) == 3.5
    assert require_real(1.0 + 1e-14j) == 1.0
    with pytest.raises(NumericConsistencyError):
        require_real(1.0 + 1e-3j)
    with pytest.raises(NumericConsistencyError):
        require_real(complex(math.nan, 1.0))
