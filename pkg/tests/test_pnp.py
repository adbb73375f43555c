import math

import numpy as np
import pytest

import mdfusion.pnp as pnp_module
import oracles
from mdfusion.baselines import baseline_reconstruct
from mdfusion.denoise import identity_denoiser, lbnlm_denoise
from mdfusion.forward import invert
from mdfusion.imagecore import MeasurementSet, SuperResolution, block_downsample, sample_sparse
from mdfusion.patchlib import build_library
from mdfusion.pnp import (BETA_DEFAULTS, SIGMA_LAMBDA_SQ_DEFAULTS, PnPConfig,
                          estimate_sigma_lambda, normalized_residual, pnp_reconstruct)
from mdfusion.synthbench import gen_lattice_scene


def test_sigma_lambda_floor():
    assert estimate_sigma_lambda(np.full((9, 9), 17.0)) == 1.0


def test_sigma_lambda_checkerboard():
    board = 255.0 * (np.indices((12, 12)).sum(axis=0) % 2)
    # every 7x7 window holds 25 of one colour and 24 of the other
    assert estimate_sigma_lambda(board) ** 2 == pytest.approx(65025 * 600 / 2401, rel=1e-12)
    assert estimate_sigma_lambda(board) ** 2 == pytest.approx(
        oracles.window_variance_mean(board), rel=1e-12)


def test_sigma_lambda_random_matches_oracle(rng):
    img = rng.uniform(0, 255, (10, 9))
    assert estimate_sigma_lambda(img) ** 2 == pytest.approx(oracles.window_variance_mean(img),
                                                            rel=1e-12)


def test_documented_defaults():
    assert BETA_DEFAULTS == {"sparse": 0.42, "hinea": 0.51, "gold": 0.36}
    assert SIGMA_LAMBDA_SQ_DEFAULTS == {"sparse": 64.0, "hinea": 55.0, "gold": 72.0}


def test_normalized_residual_cases(rng):
    a = rng.uniform(0, 255, (4, 4))
    assert normalized_residual(a, a, a) == 0.0
    e1 = np.zeros((4, 4))
    e1[0, 0] = 1.0
    ref = np.zeros((4, 4))
    ref[1, 1] = 10.0
    assert normalized_residual(e1, np.zeros((4, 4)), ref) == pytest.approx(0.1, rel=1e-15)
    b, c = rng.normal(size=(2, 4, 4))
    expected = oracles.two_norm(b - c) / oracles.two_norm(a)
    assert normalized_residual(b, c, a) == pytest.approx(expected, rel=1e-14)
    with pytest.raises(ZeroDivisionError):
        normalized_residual(a, a, np.zeros((4, 4)))


def test_sigma_n_is_derived():
    cfg = PnPConfig(beta=0.36, sigma_lambda=8.0)
    assert cfg.sigma_n == math.sqrt(0.36) * 8.0
    with pytest.raises(ValueError):
        PnPConfig(beta=0.36).sigma_n
    with pytest.raises(ValueError):
        PnPConfig(beta=0.0)


def test_identity_prior_sparse_fixed_point(rng):
    x = rng.uniform(0, 255, (16, 16))
    meas, mask = sample_sparse(x, 0.1, 5)
    init = baseline_reconstruct(meas)
    seen = []
    out, report = pnp_reconstruct(meas, identity_denoiser, PnPConfig(0.4, max_iters=5), init,
                                  callback=lambda s: seen.append(s.k))
    assert np.array_equal(out.ravel()[mask.indices], meas.y)
    assert report.residual_history == [0.0]
    assert report.iterations == 1 and report.converged and seen == [1]


def _small_sr_case():
    scene = gen_lattice_scene(32, 32, spot_spacing=8, spot_sigma=1.5, seed=2)
    meas = MeasurementSet(block_downsample(scene, 2), SuperResolution(2))
    lib = build_library([scene[8:24, 8:24]], 5, 2, None)
    return meas, (lambda v, s: lbnlm_denoise(v, lib, s))


def test_initialisation_and_dual_update():
    meas, prior = _small_sr_case()
    init = baseline_reconstruct(meas)
    states = []
    previous_u = []

    def spy(v, s):
        states.append(v.copy())
        return prior(v, s)

    def record(state):
        previous_u.append((state.x_hat.copy(), state.v_hat.copy(), state.u.copy()))

    pnp_reconstruct(meas, spy, PnPConfig(0.36, max_iters=4, residual_tol=1e-12), init,
                    callback=record)
    # first denoiser input is x + u with u = 0
    x1, v1, u1 = previous_u[0]
    assert np.array_equal(states[0], x1)
    assert np.array_equal(u1, x1 - v1)
    for (_, _, u_old), (x, v, u_new) in zip(previous_u, previous_u[1:]):
        assert np.array_equal(u_new, u_old + (x - v))


def test_first_inversion_sees_init(monkeypatch):
    meas, prior = _small_sr_case()
    init = baseline_reconstruct(meas)
    seen = []

    def spy(x_tilde, prob):
        seen.append(x_tilde.copy())
        return invert(x_tilde, prob)

    monkeypatch.setattr(pnp_module, "invert", spy)
    pnp_reconstruct(meas, prior, PnPConfig(0.36, max_iters=2, residual_tol=1e-12), init)
    assert np.array_equal(seen[0], init)


def test_sigma_n_passed_every_iteration():
    meas, prior = _small_sr_case()
    cfg = PnPConfig(0.42, sigma_lambda=7.5, max_iters=5, residual_tol=1e-12)
    seen = []
    _, report = pnp_reconstruct(meas, lambda v, s: (seen.append(s), prior(v, s))[1], cfg,
                                baseline_reconstruct(meas))
    assert seen == [math.sqrt(0.42) * 7.5] * 5
    assert report.sigma_n == cfg.sigma_n


def test_history_renormalised_by_final_norm():
    meas, prior = _small_sr_case()
    out, report = pnp_reconstruct(meas, prior, PnPConfig(0.36, max_iters=6, residual_tol=1e-12),
                                  baseline_reconstruct(meas))
    assert report.final_residual == report.residual_history[-1]
    assert len(report.residual_history) == len(report.running_residuals) == report.iterations
    assert report.residual_history[-1] == report.running_residuals[-1]
    assert all(np.isfinite(report.residual_history))


def test_determinism():
    meas, prior = _small_sr_case()
    init = baseline_reconstruct(meas)
    cfg = PnPConfig(0.36, max_iters=5)
    a, ra = pnp_reconstruct(meas, prior, cfg, init)
    b, rb = pnp_reconstruct(meas, prior, cfg, init)
    assert np.array_equal(a, b)
    assert ra.to_json(include_timing=False) == rb.to_json(include_timing=False)


def test_non_finite_denoiser_aborts():
    meas, _ = _small_sr_case()
    with pytest.raises(FloatingPointError):
        pnp_reconstruct(meas, lambda v, s: v * np.nan, PnPConfig(0.36),
                        baseline_reconstruct(meas))


def test_init_shape_checked():
    meas, prior = _small_sr_case()
    with pytest.raises(ValueError):
        pnp_reconstruct(meas, prior, PnPConfig(0.36), np.zeros((4, 4)))
