import numpy as np
import pytest

from repaxes.errors import ConfigurationError, ValidationError
from repaxes.fixtures import (
    LatentShiftEmbedder,
    LatentTransformSpec,
    gen_disentangled_store,
    gen_entangled_store,
    gen_linear_action_pairs,
    records_for_ids,
    shuffle_params,
    shuffle_transformed,
    split_for_index,
)
from repaxes.io import SampleRecord, materialize_pairs, split_records


def test_split_assignment_fractions():
    n = 1000
    splits = [split_for_index(i, n) for i in range(n)]
    assert splits.count("train") == 700
    assert splits.count("val") == 150
    assert splits.count("test") == 150
    # contiguous: no split reappears after it ends
    assert splits == sorted(splits, key=["train", "val", "test"].index)


def test_disentangled_store_block_structure():
    fx = gen_disentangled_store(200, 16, {"fv_x": 4, "fv_y": 4}, seed=3)
    assert fx.store.matrix.shape == (200, 16)
    x = fx.fv_values["fv_x"]
    y = fx.fv_values["fv_y"]
    assert np.abs(fx.store.matrix[:, :4] - x[:, None]).max() < 0.06
    assert np.abs(fx.store.matrix[:, 4:8] - y[:, None]).max() < 0.06
    assert np.abs(fx.store.matrix[:, 8:]).max() < 0.06
    np.testing.assert_array_equal(fx.shift_directions["fv_y"][:4], 0.0)
    np.testing.assert_array_equal(fx.shift_directions["fv_y"][4:8], 1.0)


def test_disentangled_store_deterministic():
    a = gen_disentangled_store(100, 8, {"fv_x": 2}, seed=9)
    b = gen_disentangled_store(100, 8, {"fv_x": 2}, seed=9)
    c = gen_disentangled_store(100, 8, {"fv_x": 2}, seed=10)
    np.testing.assert_array_equal(a.store.matrix, b.store.matrix)
    assert a.store.ids == b.store.ids
    assert np.any(a.store.matrix != c.store.matrix)


def test_disentangled_store_records_carry_ground_truth():
    fx = gen_disentangled_store(100, 8, {"fv_x": 2, "fv_y": 2}, seed=0)
    by_split = split_records(fx.records)
    assert {s: len(r) for s, r in by_split.items()} == {"train": 70, "val": 15, "test": 15}
    for i, record in enumerate(fx.records):
        assert record.fv_values["fv_x"] == pytest.approx(fx.fv_values["fv_x"][i])
        assert record.id in fx.store


@pytest.mark.parametrize(
    "n,d,fv_dims",
    [
        (5, 8, {"fv_x": 2}),
        (100, 4, {"fv_x": 3, "fv_y": 2}),
        (100, 8, {}),
        (100, 8, {"fv_x": 0}),
    ],
)
def test_disentangled_store_rejects_bad_shapes(n, d, fv_dims):
    with pytest.raises(ConfigurationError):
        gen_disentangled_store(n, d, fv_dims, seed=0)


def test_entangled_store_shares_one_block():
    fx = gen_entangled_store(500, 16, seed=2)
    x, y = fx.fv_values["fv_x"], fx.fv_values["fv_y"]
    block = fx.store.matrix[:, :4].mean(axis=1)
    # the block moves with both values
    assert np.corrcoef(block, x)[0, 1] > 0.4
    assert np.corrcoef(block, y)[0, 1] > 0.4
    # direction magnitudes are the two rotation components
    cx = fx.shift_directions["fv_x"][0]
    cy = fx.shift_directions["fv_y"][0]
    assert cx**2 + cy**2 == pytest.approx(1.0, abs=1e-12)
    assert min(cx, cy) > 0.4
    predicted = cx * x + cy * y
    np.testing.assert_allclose(block, predicted, atol=0.06)


def test_entangled_store_rejects_bad_config():
    with pytest.raises(ConfigurationError):
        gen_entangled_store(100, 8, fv_x="same", fv_y="same")
    with pytest.raises(ConfigurationError):
        gen_entangled_store(100, 8, block_dim=9)


def test_linear_action_pairs_geometry():
    pairs = gen_linear_action_pairs(300, 16, seed=1)
    z = pairs.z_clean.matrix.astype(np.float64)
    zp = pairs.z_transformed.matrix.astype(np.float64)
    np.testing.assert_allclose(np.linalg.norm(z, axis=1), 1.0, atol=1e-6)
    np.testing.assert_allclose(np.linalg.norm(zp, axis=1), 1.0, atol=1e-6)
    np.testing.assert_array_equal(pairs.params_raw, pairs.params_normalized)
    # displacement magnitude grows with the parameter
    disp = np.linalg.norm(zp - z, axis=1)
    lo = pairs.params_raw < 0.2
    hi = pairs.params_raw > 0.8
    assert disp[hi].mean() > disp[lo].mean()


def test_linear_action_zero_param_is_exact_copy():
    params = np.array([0.0, 0.5, 0.0, 1.0])
    pairs = gen_linear_action_pairs(4, 8, seed=0, params=params)
    np.testing.assert_array_equal(pairs.z_transformed.matrix[0], pairs.z_clean.matrix[0])
    np.testing.assert_array_equal(pairs.z_transformed.matrix[2], pairs.z_clean.matrix[2])
    assert np.any(pairs.z_transformed.matrix[1] != pairs.z_clean.matrix[1])


def test_linear_action_rejects_bad_params():
    with pytest.raises(ValidationError):
        gen_linear_action_pairs(4, 8, seed=0, params=np.array([0.0, 0.5, 1.5, 0.2]))
    with pytest.raises(ValidationError):
        gen_linear_action_pairs(4, 8, seed=0, params=np.zeros(3))
    with pytest.raises(ConfigurationError):
        gen_linear_action_pairs(1, 8, seed=0)


def test_shuffle_params_permutes_only_params():
    pairs = gen_linear_action_pairs(50, 8, seed=4)
    mixed = shuffle_params(pairs, seed=1)
    np.testing.assert_array_equal(mixed.z_clean.matrix, pairs.z_clean.matrix)
    assert sorted(mixed.params_raw) == sorted(pairs.params_raw)
    assert np.any(mixed.params_raw != pairs.params_raw)
    again = shuffle_params(pairs, seed=1)
    np.testing.assert_array_equal(mixed.params_raw, again.params_raw)


def test_shuffle_transformed_permutes_rows():
    pairs = gen_linear_action_pairs(50, 8, seed=4)
    mixed = shuffle_transformed(pairs, seed=1)
    np.testing.assert_array_equal(mixed.z_clean.matrix, pairs.z_clean.matrix)
    np.testing.assert_array_equal(
        np.sort(mixed.z_transformed.matrix, axis=0),
        np.sort(pairs.z_transformed.matrix, axis=0),
    )
    assert np.any(mixed.z_transformed.matrix != pairs.z_transformed.matrix)


def test_latent_spec_draws_like_a_transform_spec():
    spec = LatentTransformSpec(name="LatentShift", fv_target="fv_y", range=(-1.0, 1.0), seed=5)
    raw = spec.draw_param("s00001")
    assert -1.0 <= raw <= 1.0
    assert raw == spec.draw_param("s00001")
    assert spec.normalized(-1.0) == 0.0
    assert spec.normalized(1.0) == 1.0
    assert spec.raw_from_normalized(spec.normalized(raw)) == pytest.approx(raw)


def test_latent_spec_rejects_bad_ranges():
    with pytest.raises(ConfigurationError):
        LatentTransformSpec(name="x", fv_target="y", range=(1.0, -1.0))
    with pytest.raises(ConfigurationError):
        LatentTransformSpec(name="x", fv_target="y", range=(0.0, 1.0), neutral=2.0)


def test_latent_shift_embedder_moves_along_direction():
    fx = gen_disentangled_store(50, 8, {"fv_x": 2, "fv_y": 2}, seed=0)
    embedder = LatentShiftEmbedder(fx.store, fx.shift_directions["fv_y"])
    record = fx.records[3]
    clean, moved = embedder.embed_pair(record, 0.25, sample_seed=0)
    np.testing.assert_array_equal(clean, fx.store.row(record.id))
    np.testing.assert_allclose(moved - clean, 0.25 * fx.shift_directions["fv_y"], atol=1e-6)
    same, unmoved = embedder.embed_pair(record, 0.0, sample_seed=0)
    np.testing.assert_array_equal(unmoved, same)


def test_latent_shift_embedder_with_materialize():
    fx = gen_disentangled_store(100, 8, {"fv_x": 2, "fv_y": 2}, seed=0)
    spec = LatentTransformSpec(name="LatentShift", fv_target="fv_y", range=(-1.0, 1.0), seed=7)
    embedder = LatentShiftEmbedder(fx.store, fx.shift_directions["fv_y"])
    pairs = materialize_pairs(fx.records, spec, embedder)
    assert pairs.count == 100
    assert pairs.z_clean.extractor_id == "latent:shift"
    np.testing.assert_array_equal(pairs.z_clean.matrix, fx.store.matrix)
    deltas = pairs.z_transformed.matrix[:, 2] - pairs.z_clean.matrix[:, 2]
    np.testing.assert_allclose(deltas, pairs.params_raw, atol=1e-6)


def test_latent_shift_embedder_rejects_bad_direction():
    fx = gen_disentangled_store(20, 8, {"fv_x": 2}, seed=0)
    with pytest.raises(ConfigurationError):
        LatentShiftEmbedder(fx.store, np.ones(5))


def test_records_for_ids_without_values():
    records = records_for_ids(["a", "b", "c", "d", "e", "f", "g", "h", "i", "j"])
    assert all(isinstance(r, SampleRecord) for r in records)
    assert [r.split for r in records].count("train") == 7
    assert records[0].fv_values == {}
