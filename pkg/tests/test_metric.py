import math

import numpy as np
import pytest

from cpumap import (
    BatteryConfig,
    DimensionError,
    DomainError,
    MetricParams,
    build_profile,
    dilation_factor,
    offset_factor,
    phi,
    simulate_charging,
    synth_env,
)

from conftest import random_density, rng_for


def test_dilation_factor_horizon_value():
    # direct evaluation: 32 * e^{-1} / 2 = 16/e
    assert abs(dilation_factor(2.0, 1.0) - 32.0 * math.exp(-1.0) / 2.0) < 1e-15
    assert abs(dilation_factor(2.0, 1.0) - 5.886071058743077) < 1e-12


def test_dilation_factor_decreasing_tail():
    values = [dilation_factor(r, 1.0) for r in np.linspace(2.0, 50.0, 30)]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert values[-1] < 1e-6


def test_dilation_factor_scaling_identity():
    # substituting (2r, 2M): 32 (2M)^3 e^{-r/2M} / (2r) = 4 * factor(r, M)
    assert abs(dilation_factor(4.0, 2.0) - 4.0 * dilation_factor(2.0, 1.0)) < 1e-12
    assert abs(dilation_factor(4.0, 2.0) - 64.0 / math.e) < 1e-12


def test_dilation_factor_domain():
    with pytest.raises(DomainError):
        dilation_factor(0.0, 1.0)
    with pytest.raises(DomainError):
        dilation_factor(-1.0, 1.0)
    with pytest.raises(DomainError):
        dilation_factor(2.0, 0.0)


def make_params(M=1.0, r0=0.1, d=16, grid=(0.5, 2.0, 10.0)):
    return MetricParams(M=M, r0=r0, d=d, r_grid=np.asarray(grid, dtype=float))


def test_offset_factor_finite_at_origin():
    params = make_params()
    assert offset_factor(0.0, params) == dilation_factor(0.1, 1.0)
    assert math.isfinite(offset_factor(0.0, params))


def test_offset_factor_recovers_bare_factor():
    bare = dilation_factor(2.0, 1.0)
    for r0 in (1e-3, 1e-6, 1e-9):
        params = make_params(r0=r0)
        assert abs(offset_factor(2.0 - r0, params) - bare) < 1e-12
    assert abs(offset_factor(2.0, make_params(r0=1e-9)) - bare) < 1e-6


def test_offset_factor_three_point_profile():
    params = make_params()
    for r in (0.0, 1.0, 2.0):
        direct = 32.0 * math.exp(-(r + 0.1) / 2.0) / (r + 0.1)
        assert abs(offset_factor(r, params) - direct) < 1e-12


def test_synth_env_zero_target():
    env, clipped = synth_env(0.0, 8)
    assert not clipped
    assert env.spectrum[0] == 1.0
    assert phi(env) == 0.0


def test_synth_env_interior_target():
    env, clipped = synth_env(2.0, 8)
    assert not clipped
    assert abs(phi(env) - 2.0) < 1e-12
    env, clipped = synth_env(2.5, 8)
    assert not clipped
    assert abs(phi(env) - 2.5) < 1e-12
    # two-level structure: weight on level 0 and one excited level only
    support = np.nonzero(env.spectrum)[0]
    assert len(support) <= 2 and support[0] == 0


def test_synth_env_clipped_target():
    env, clipped = synth_env(100.0, 8)
    assert clipped
    assert phi(env) == 7.0
    assert env.spectrum[7] == 1.0


def test_synth_env_negative_target():
    with pytest.raises(DomainError):
        synth_env(-0.5, 8)


def test_synth_env_round_trip():
    d = 8
    for x in np.linspace(0.0, 2.0 * (d - 1), 57):
        env, clipped = synth_env(float(x), d)
        assert abs(phi(env) - min(float(x), d - 1.0)) < 1e-9
        assert clipped == (float(x) > d - 1)


def test_metric_params_validation():
    with pytest.raises(DomainError):
        make_params(M=0.0)
    with pytest.raises(DomainError):
        make_params(r0=0.0)
    with pytest.raises(DimensionError):
        make_params(d=1)
    with pytest.raises(DomainError):
        make_params(grid=(2.0, 1.0))
    with pytest.raises(DomainError):
        make_params(grid=(-1.0, 1.0))


def test_build_profile_basic():
    params = make_params()
    profile = build_profile(params)
    assert len(profile.records) == 3
    for rec in profile.records:
        assert math.isfinite(rec.target_factor)
        assert math.isfinite(rec.phi_achieved)
        assert abs(rec.phi_achieved - min(rec.target_factor, params.d - 1.0)) < 1e-9
        assert rec.clipped == (rec.target_factor > params.d - 1)


def test_build_profile_large_r_no_clipping():
    params = make_params(grid=np.linspace(30.0, 60.0, 10))
    profile = build_profile(params)
    for rec in profile.records:
        assert not rec.clipped
        assert rec.target_factor < 1e-4
        assert abs(rec.phi_achieved - rec.target_factor) < 1e-9


def test_build_profile_clips_near_horizon_for_large_mass():
    # mass large enough that the factor tops the truncation bound d-1 = 15
    params = make_params(M=2.0, r0=0.2, d=16, grid=np.linspace(0.0, 20.0, 21))
    profile = build_profile(params)
    near = profile.records[0]
    assert near.target_factor > 15.0 and near.clipped
    assert any(not rec.clipped for rec in profile.records)


def test_build_profile_monotone_decreasing():
    params = make_params(grid=np.linspace(0.0, 10.0, 25))
    targets = [rec.target_factor for rec in build_profile(params).records]
    assert all(a > b for a, b in zip(targets, targets[1:]))


def test_build_profile_charging_consistency():
    rng = rng_for(501)
    params = make_params(grid=np.linspace(1.0, 8.0, 6))
    profile = build_profile(params)
    for rec in profile.records:
        if rec.clipped:
            continue
        cfg = BatteryConfig(d=params.d, env=rec.env, rho0=random_density(rng, params.d))
        trace = simulate_charging(cfg, np.array([0.0, 1.0]))
        assert abs(trace.phi_fit - rec.target_factor) < 1e-9
