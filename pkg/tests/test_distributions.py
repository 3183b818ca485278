"""Photon number distribution branches, polynomial helpers, and the oracle."""

from __future__ import annotations

import cmath
import math

import numpy as np
import pytest
from scipy.special import eval_hermite, eval_legendre

from conftest import built
from pasts.distributions import (
    PndProfile,
    _scaled_hermite_sq,
    _scaled_legendre_terms,
    hermite,
    legendre,
    legendre_sum,
    pnd,
    pnd_profile,
)
from pasts.errors import DomainError
from pasts.fock_oracle import oracle_pnd
from pasts.kernel import StateParams, derive_kernel

ORACLE_STATES = [
    StateParams(nbar=0.5, r=0.3, m=1),
    StateParams(nbar=1.0, r=-0.5, m=3),
    StateParams(nbar=0.0, r=0.8, m=2),
    StateParams(nbar=0.5, r=0.3, beta_q=0.8, beta_p=-0.4, m=2),
]


def _hermite_series(n: int, z: complex) -> complex:
    total = 0.0 + 0.0j
    for l in range(n // 2 + 1):
        total += (
            (-1.0) ** l
            / (math.factorial(l) * math.factorial(n - 2 * l))
            * (2.0 * z) ** (n - 2 * l)
        )
    return math.factorial(n) * total


def test_support_starts_at_added_photon_count() -> None:
    for params in (
        StateParams(nbar=0.5, r=0.3, m=3),
        StateParams(nbar=0.5, r=0.3, beta_q=0.8, beta_p=-0.4, m=3),
    ):
        for n in range(3):
            assert pnd(params, n) == 0.0
        assert pnd(params, 3) > 0.0


@pytest.mark.parametrize("params", ORACLE_STATES)
def test_profile_matches_fock_oracle(params: StateParams) -> None:
    profile = pnd_profile(params, n_max=40)
    dm = built(params)
    worst = max(
        abs(profile.probs[n] - oracle_pnd(dm, n)) for n in range(41)
    )
    assert worst < 1e-7


def test_profiles_sum_to_one() -> None:
    for params in ORACLE_STATES + [StateParams(nbar=2.0, r=1.0, m=3)]:
        kc = derive_kernel(params)
        # large-n probabilities decay geometrically at this ratio, so scale
        # the window to push the remaining tail below the check
        ratio = 1.0 - kc.a + 2.0 * abs(kc.c)
        n_max = 120 if ratio <= 0.8 else math.ceil(30.0 / (1.0 - ratio))
        profile = pnd_profile(params, n_max=n_max)
        assert profile.tail_deficit < 1e-9
        assert np.all(profile.probs >= 0.0)


def test_thermal_distribution_is_geometric() -> None:
    nbar = 1.3
    profile = pnd_profile(StateParams(nbar=nbar, r=0.0), n_max=30)
    for n in range(31):
        expected = nbar**n / (nbar + 1.0) ** (n + 1)
        assert profile.probs[n] == pytest.approx(expected, rel=1e-12)


def test_pure_addition_to_vacuum_is_number_state() -> None:
    profile = pnd_profile(StateParams(nbar=0.0, r=0.0, m=3), n_max=10)
    assert profile.probs[3] == pytest.approx(1.0, rel=1e-12)
    others = np.delete(profile.probs, 3)
    assert np.max(np.abs(others)) < 1e-12
    assert profile.peak() == 3


def test_squeezed_vacuum_has_no_odd_photons() -> None:
    # odd entries cancel term by term in the signed double sum, so they
    # survive only as roundoff dust well below any physical probability
    params = StateParams(nbar=0.0, r=0.6)
    profile = pnd_profile(params, n_max=24)
    assert all(profile.probs[n] < 5e-16 for n in range(1, 25, 2))
    dm = built(params)
    for n in range(0, 25, 2):
        assert profile.probs[n] == pytest.approx(oracle_pnd(dm, n), abs=1e-9)


def test_point_value_agrees_with_profile() -> None:
    params = StateParams(nbar=0.8, r=-0.4, m=2)
    profile = pnd_profile(params, n_max=25)
    for n in (2, 7, 25):
        assert pnd(params, n) == pytest.approx(profile.probs[n], rel=1e-13)


def test_peak_never_below_added_count() -> None:
    for params in ORACLE_STATES:
        assert pnd_profile(params, n_max=60).peak() >= params.m


def test_negative_indices_rejected() -> None:
    params = StateParams(nbar=0.5, r=0.3, m=1)
    with pytest.raises(DomainError):
        pnd(params, -1)
    with pytest.raises(DomainError):
        pnd_profile(params, n_max=-1)
    with pytest.raises(DomainError):
        hermite(-1, 0.3)
    with pytest.raises(DomainError):
        legendre(-2, 0.3)


def test_hermite_matches_series_and_reference() -> None:
    zs = [0.7, -1.2, 0.3 + 0.8j, -0.5 - 1.1j]
    for n in range(9):
        for z in zs:
            mine = hermite(n, z)
            assert mine == pytest.approx(_hermite_series(n, z), rel=1e-10)
            if isinstance(z, float):
                assert mine.real == pytest.approx(
                    float(eval_hermite(n, z)), rel=1e-10
                )


def test_legendre_matches_reference_and_sum_form() -> None:
    for n in range(11):
        for x in (-1.5, -0.3, 0.0, 0.7, 2.0):
            mine = legendre(n, x)
            assert mine == pytest.approx(float(eval_legendre(n, x)), rel=1e-10)
            assert legendre_sum(n, x) == pytest.approx(mine, rel=1e-9, abs=1e-12)


def test_scaled_legendre_terms_match_direct_scaling() -> None:
    # only meaningful with a real positive axis gap, so pick a warm state
    kc = derive_kernel(StateParams(nbar=1.0, r=0.1))
    sigma = kc.sigma
    y = 1.0 - kc.a + 0.04  # any polynomial argument works
    terms = _scaled_legendre_terms(12, y, kc.sigma_sq)
    for k in range(13):
        direct = sigma**k * float(eval_legendre(k, y / sigma))
        assert terms[k] == pytest.approx(direct, rel=1e-11, abs=1e-13)


@pytest.mark.parametrize("c", [0.15, -0.15])
def test_scaled_hermite_sq_matches_direct_evaluation(c: float) -> None:
    b = 0.3 - 0.2j
    terms = _scaled_hermite_sq(10, b, c)
    root = cmath.sqrt(complex(c))
    for k in range(11):
        direct = abs(c) ** k * abs(hermite(k, 1j * b / (2.0 * root))) ** 2
        assert terms[k] == pytest.approx(direct, rel=1e-10, abs=1e-13)


def test_scaled_hermite_sq_zero_coupling_limit() -> None:
    b = 0.4 + 0.1j
    terms = _scaled_hermite_sq(6, b, 0.0)
    for k in range(7):
        assert terms[k] == pytest.approx(abs(b) ** (2 * k), rel=1e-12)


def test_profile_record_fields() -> None:
    params = StateParams(nbar=0.5, r=0.3, m=1)
    profile = pnd_profile(params, n_max=15)
    assert isinstance(profile, PndProfile)
    assert profile.params == params
    assert profile.n_max == 15
    assert profile.probs.shape == (16,)
