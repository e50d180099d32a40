"""High-precision oracle internals: routes, residuals and certifications."""

from __future__ import annotations

import math

import mpmath as mp
import pytest

from uniasym import (
    DomainError,
    OracleConfig,
    PrecisionError,
    UsageError,
    besselI_reference,
    besselK_reference,
    limit_check_bessel,
    p_reference,
    q_reference,
)
from uniasym.oracle import (
    ORACLE_DPS_ENV,
    besselI_ode_residual,
    besselK_ode_residual,
    default_config,
    legendre_wronskian_residual,
    p_ode_residual,
    p_reference_paths,
    q_methods_gap,
)

CFG = OracleConfig(dps=40)


# -- configuration -------------------------------------------------------------

def test_config_validation():
    with pytest.raises(UsageError):
        OracleConfig(dps=20)
    with pytest.raises(UsageError):
        OracleConfig(series_tol=0.0)
    with pytest.raises(UsageError):
        OracleConfig(max_terms=0)


def test_config_env_override(monkeypatch):
    monkeypatch.setenv(ORACLE_DPS_ENV, "45")
    assert default_config().dps == 45
    monkeypatch.delenv(ORACLE_DPS_ENV)
    assert default_config().dps == 60


def test_point_validation():
    with pytest.raises(DomainError):
        p_reference(0, 1.0, 0.0, 0.5, CFG)
    with pytest.raises(DomainError):
        p_reference(4, -1.0, 0.0, 0.5, CFG)
    with pytest.raises(DomainError):
        p_reference(4, 1.0, 0.0, 1.0, CFG)
    with pytest.raises(UsageError):
        q_reference(4, 1.0, 0.0, 0.5, CFG, method="bogus")


def test_series_budget_surfaces_precision_error():
    tiny = OracleConfig(dps=30, max_terms=10)
    with pytest.raises(PrecisionError):
        p_reference(8, 5.0, 0.0, 0.5, tiny)


# -- first-kind solution ---------------------------------------------------------

def test_p_realness_certificate():
    # mu is complex here; both series routes must agree and the imaginary
    # residue must stay far below the working precision.
    complex_route, real_route = p_reference_paths(1, 0.1, 0.0, 0.9, CFG)
    gap = abs(complex_route.value - real_route.value) / abs(real_route.value)
    assert float(gap) < 1e-35
    assert complex_route.err_estimate < 1e-30


def test_p_endpoint_asymptote():
    n, x = 4, 1.0 - 1e-8
    val = p_reference(n, 1.0, 0.0, x, CFG).value
    scaled = val * (2.0 / (1.0 - x)) ** (n / 2) * math.factorial(n)
    assert float(scaled) == pytest.approx(1.0, abs=1e-6)


def test_p_ode_residual_tiny():
    assert p_ode_residual(4, 1.0, 0.0, math.cos(0.1), CFG) < 1e-30


# -- second-kind solution ---------------------------------------------------------

def test_q_endpoint_asymptote():
    n, x = 4, 1.0 - 1e-8
    val = q_reference(n, 1.0, 0.0, x, CFG).value
    scaled = val * ((1.0 - x) / 2.0) ** (n / 2) * 2.0 / math.factorial(n - 1)
    assert float(scaled) == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize(
    "n,gamma,xi", [(1, 1.0, 0.0), (4, 1.0, 0.0), (4, 2.0, 0.125)]
)
def test_wronskian_identity_grid(n, gamma, xi):
    for x in (-0.9, -0.5, 0.0, 0.5, 0.9, 0.995):
        assert legendre_wronskian_residual(n, gamma, xi, x, CFG) <= 1e-10


@pytest.mark.parametrize("n,gamma,xi,x", [(4, 1.0, 0.0, 0.5), (4, 2.0, 0.125, -0.3)])
def test_q_construction_routes_agree(n, gamma, xi, x):
    assert q_methods_gap(n, gamma, xi, x, CFG) <= 1e-25


def test_q_reflection_vs_integral():
    a = q_reference(4, 1.0, 0.0, 0.5, CFG, method="reflection")
    b = q_reference(4, 1.0, 0.0, 0.5, CFG, method="integral")
    assert float(abs(a.value - b.value) / abs(a.value)) < 1e-30


def test_q_cross_validation_path():
    val = q_reference(4, 1.0, 0.0, 0.5, OracleConfig(dps=35), cross_validate=True)
    ref = q_reference(4, 1.0, 0.0, 0.5, CFG)
    assert float(abs(val.value - ref.value) / abs(ref.value)) < 1e-25


# -- modified Bessel oracles -------------------------------------------------------

def test_besselI_base_cases():
    assert besselI_reference(0, 0.0, CFG).value == 1
    assert besselI_reference(3, 0.0, CFG).value == 0
    with pytest.raises(DomainError):
        besselI_reference(4, -1.0, CFG)
    with pytest.raises(DomainError):
        besselI_reference(-1, 2.0, CFG)


def test_besselI_recurrence_identity():
    z = mp.mpf(8)
    with mp.workdps(60):
        vals = {k: besselI_reference(k, 8.0, CFG).value for k in (3, 4, 5)}
        resid = abs(vals[3] - vals[5] - (2 * 4 / z) * vals[4]) / vals[4]
    assert float(resid) < 1e-30


def test_besselK_positive():
    for n, z in ((1, 0.5), (4, 8.0), (16, 40.0)):
        assert besselK_reference(n, z, CFG).value > 0


def test_besselK_large_argument_asymptote():
    # Bare leading asymptote K_n ~ sqrt(pi/2z) e^-z carries a relative
    # defect (4n^2-1)/(8z) ~ 20% at (4, 40); with that first correction
    # folded in the match is percent-level.
    val = besselK_reference(4, 40.0, CFG).value
    bare = float(val * mp.exp(40) * mp.sqrt(2 * 40 / mp.pi))
    assert bare == pytest.approx(1.0, abs=0.25)
    corrected = bare / (1.0 + (4 * 16 - 1) / (8 * 40.0))
    assert corrected == pytest.approx(1.0, abs=0.03)


def test_bessel_cross_wronskian():
    z = 8.0
    iv = besselI_reference(4, z, CFG)
    kv = besselK_reference(4, z, CFG)
    with mp.workdps(60):
        resid = abs((iv.derivative * kv.value - kv.derivative * iv.value) * z - 1)
    assert float(resid) < 1e-25


def test_bessel_ode_residuals():
    assert besselI_ode_residual(4, 8.0, CFG) < 1e-25
    # K derivatives come from the order recurrence, so this residual is a
    # mutual-consistency certificate rather than an independent check.
    assert besselK_ode_residual(4, 8.0, CFG) < 1e-25


# -- limiting relation ---------------------------------------------------------------

def test_limit_gaps_shrink_with_theta():
    reports = [limit_check_bessel(4, 1.0, th, CFG) for th in (1e-2, 1e-3)]
    assert reports[1].p_gap < reports[0].p_gap / 2
    assert reports[1].q_gap < reports[0].q_gap / 2
    assert reports[0].p_gap < 1e-3


def test_limit_check_finite_and_same_sign_at_n1():
    rep = limit_check_bessel(1, 1.0, 0.05, CFG)
    assert math.isfinite(rep.p_scaled) and math.isfinite(rep.q_scaled)
    assert rep.p_scaled > 0 and rep.i_value > 0
    assert rep.q_scaled > 0 and rep.k_value > 0


def test_limit_check_rejects_bad_angles():
    with pytest.raises(DomainError):
        limit_check_bessel(4, 1.0, 0.0, CFG)
    with pytest.raises(DomainError):
        limit_check_bessel(4, -1.0, 0.1, CFG)
