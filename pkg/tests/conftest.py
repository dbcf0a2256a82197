"""Session-scoped oracle runs shared by the axis tests and the acceptance
suite, so the expensive probe trainings happen once per session. Each
fixture returns its measurements plus the wall-clock seconds it cost; the
acceptance suite sums those costs against its runtime budget."""

import time

import numpy as np
import pytest

from oracles import lstsq_rmse
from repaxes.axes import (
    eval_disentanglement,
    eval_informativeness,
    eval_invariance,
    eval_p_equivariance,
    eval_r_equivariance,
    train_fv_probe,
)
from repaxes.fixtures import (
    LatentShiftEmbedder,
    LatentTransformSpec,
    gen_disentangled_store,
    gen_entangled_store,
    gen_linear_action_pairs,
    records_for_ids,
    shuffle_params,
    shuffle_transformed,
)

ORACLE_N = 1000
ORACLE_D = 16


@pytest.fixture(scope="session")
def informativeness_oracle():
    t0 = time.time()
    fx = gen_disentangled_store(ORACLE_N, ORACLE_D, {"fv_x": 4}, seed=0)
    report = eval_informativeness(fx.store, fx.records, "fv_x", probe_kind="slp")
    sizes = report.config["split_sizes"]
    n_train, n_val = sizes["train"], sizes["val"]
    x = fx.store.matrix
    y = fx.fv_values["fv_x"]
    baseline = lstsq_rmse(
        x[:n_train], y[:n_train], x[n_train + n_val :], y[n_train + n_val :]
    )
    return {
        "report": report,
        "rmse": report.metrics["rmse"],
        "lstsq_rmse": baseline,
        "elapsed": time.time() - t0,
    }


@pytest.fixture(scope="session")
def linear_action_fixture():
    pairs = gen_linear_action_pairs(ORACLE_N, ORACLE_D, seed=0)
    return pairs, records_for_ids(pairs.ids)


@pytest.fixture(scope="session")
def p_equivariance_oracle(linear_action_fixture):
    pairs, records = linear_action_fixture
    t0 = time.time()
    report = eval_p_equivariance(pairs, records, probe_kind="mlp", target_name="latent-action")
    elapsed = time.time() - t0
    t0 = time.time()
    shuffled = eval_p_equivariance(
        shuffle_params(pairs, seed=1), records, probe_kind="mlp", target_name="shuffled"
    )
    return {
        "report": report,
        "rmse": report.metrics["rmse"],
        "shuffled_rmse": shuffled.metrics["rmse"],
        "param_std": float(np.std(pairs.params_normalized)),
        "elapsed": elapsed + (time.time() - t0),
    }


@pytest.fixture(scope="session")
def r_equivariance_oracle(linear_action_fixture):
    pairs, records = linear_action_fixture
    t0 = time.time()
    report = eval_r_equivariance(pairs, records, target_name="latent-action")
    elapsed = time.time() - t0
    t0 = time.time()
    shuffled_pairs = shuffle_transformed(pairs, seed=2)
    shuffled = eval_r_equivariance(shuffled_pairs, records, target_name="shuffled")
    # best constant predictor of unit vectors: the mean direction of the
    # training targets; its mean cosine to the test targets is the floor
    sizes = shuffled.config["split_sizes"]
    n_train = sizes["train"]
    z_prime = shuffled_pairs.z_transformed.matrix.astype(np.float64)
    z_prime /= np.linalg.norm(z_prime, axis=1, keepdims=True)
    mean_dir = z_prime[:n_train].mean(axis=0)
    mean_dir /= np.linalg.norm(mean_dir)
    test_rows = z_prime[ORACLE_N - sizes["test"] :]
    baseline = float((test_rows @ mean_dir).mean())
    return {
        "report": report,
        "cosine": report.metrics["cosine_mean"],
        "mse": report.metrics["mse"],
        "shuffled_cosine": shuffled.metrics["cosine_mean"],
        "shuffled_baseline": baseline,
        "elapsed": elapsed + (time.time() - t0),
    }


@pytest.fixture(scope="session")
def block_store_fixture():
    fx = gen_disentangled_store(ORACLE_N, ORACLE_D, {"fv_x": 4, "fv_y": 4}, seed=0)
    spec = LatentTransformSpec(
        name="LatentShift", fv_target="fv_y", range=(-1.0, 1.0), seed=7
    )
    embedder = LatentShiftEmbedder(fx.store, fx.shift_directions["fv_y"])
    return fx, spec, embedder


@pytest.fixture(scope="session")
def invariance_oracle(block_store_fixture):
    fx, spec, embedder = block_store_fixture
    t0 = time.time()
    report = eval_invariance(fx.records, spec, embedder)
    neutral_points = [value for param, value in report.curve if param == 0.0]
    return {
        "report": report,
        "neutral_cosine": neutral_points[0] if neutral_points else None,
        "elapsed": time.time() - t0,
    }


@pytest.fixture(scope="session")
def disentanglement_oracle(block_store_fixture):
    fx, spec, embedder = block_store_fixture
    t0 = time.time()
    probe, _ = train_fv_probe(fx.store, fx.records, "fv_x", probe_kind="slp")
    block_report = eval_disentanglement(
        probe, "fv_x", fx.records, spec, embedder, probe_kind="slp"
    )

    efx = gen_entangled_store(ORACLE_N, ORACLE_D, seed=0)
    espec = LatentTransformSpec(
        name="LatentShift", fv_target="fv_y", range=(-1.0, 1.0), seed=7
    )
    eembedder = LatentShiftEmbedder(efx.store, efx.shift_directions["fv_y"])
    eprobe, _ = train_fv_probe(efx.store, efx.records, "fv_x", probe_kind="slp")
    entangled_report = eval_disentanglement(
        eprobe, "fv_x", efx.records, espec, eembedder, probe_kind="slp"
    )
    return {
        "block_report": block_report,
        "entangled_report": entangled_report,
        "block_deltas": {b.label: b.delta_rmse for b in block_report.grid.buckets},
        "entangled_deltas": {
            b.label: b.delta_rmse for b in entangled_report.grid.buckets
        },
        "elapsed": time.time() - t0,
    }
