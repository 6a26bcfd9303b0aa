"""Smoke tests for the python bindings."""

import math

import pytest

import suplord


def test_version():
    assert suplord.__version__ == "0.1.0"


def test_coef_and_constants():
    assert suplord.coef(0.05) == pytest.approx(2.1626293571160795, rel=1e-12)
    assert 1.418 <= suplord.c_a(1.0) <= 1.420
    assert suplord.canonical_a(0.15, 0.05, 20) == pytest.approx(0.565794, abs=1e-5)


def test_default_boosts():
    params = suplord.SupLordParams(0.15, 0.05, 30)
    boosts = suplord.suplord_default_boosts(params)
    assert boosts.beta0 == pytest.approx(0.036026679516963284, rel=1e-12)
    assert boosts.phase2 == pytest.approx(0.06936001285029661, rel=1e-12)
    assert len(boosts.phase1) == 29
    ok, message = suplord.validate_boosts(boosts, params)
    assert ok, message


def test_infeasible_params_raise():
    params = suplord.SupLordParams(0.15, 0.05, 14)
    with pytest.raises(ValueError, match="increase r\\*"):
        suplord.suplord_default_boosts(params)


def test_guarantee_summary():
    params = suplord.SupLordParams(0.15, 0.05, 30)
    summary = suplord.guarantee_summary(params, suplord.mfdr_safe_boosts(params))
    assert summary.supfd_bound == pytest.approx(0.098406, abs=1e-4)
    assert summary.fixed_time_bounds_active
    assert summary.fdx_epsilon_at(0.05) == 0.15


def test_default_gamma_normalizes():
    gamma = suplord.default_gamma(500)
    assert math.fsum(gamma) == pytest.approx(1.0, abs=1e-9)
    assert all(g >= 0 for g in gamma)
    assert gamma[1] >= gamma[2]


def test_stream_run_and_wealth_identity():
    params = suplord.SupLordParams(0.15, 0.05, 20)
    boosts = suplord.suplord_default_boosts(params)
    schedule = suplord.make_schedule("steady", 300)
    stream = suplord.gaussian_stream(300, 0.3, 3.0, seed=7)
    assert len(stream) == 300

    traj = suplord.run_stream(boosts, schedule, stream.p_values, params=params)
    assert len(traj) == 300
    rejections = 0
    alpha_sum = 0.0
    boost_sum = 0.0
    for rec in traj.records:
        alpha_sum += rec.alpha
        if rec.rejected:
            rejections += 1
            boost_sum += boosts.boost_for_rejection(rejections)
        assert rec.wealth >= 0
        assert rec.wealth == pytest.approx(boosts.beta0 + boost_sum - alpha_sum, abs=1e-9)
    assert rejections == traj.rejections()
    assert rejections > 0


def test_streams_are_deterministic():
    a = suplord.gaussian_stream(100, 0.3, 2.0, seed=5)
    b = suplord.gaussian_stream(100, 0.3, 2.0, seed=5)
    assert a.p_values == b.p_values
    assert a.labels == b.labels
    c = suplord.hmm_stream(100, 0.3, 2.0, seed=5)
    assert len(c.p_values) == 100


def test_band_and_estimators():
    boosts = suplord.lord_boosts(0.1)
    schedule = suplord.make_schedule("steady", 50)
    stream = suplord.gaussian_stream(50, 0.5, 3.0, seed=11)
    traj = suplord.run_stream(boosts, schedule, stream.p_values)
    band = suplord.fdp_band(traj, 0.05)
    assert len(band) == 50
    assert all(0 <= b <= 1 for b in band)
    assert suplord.fdp_hat_lord(traj, 50) <= 0.1 + 1e-12
    assert 0.0 <= suplord.fdp(traj, stream.labels, 50) <= 1.0
