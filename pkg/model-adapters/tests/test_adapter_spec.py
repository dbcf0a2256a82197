import json
from pathlib import Path

import pytest

from model_adapters import (
    AdapterError,
    MODELS,
    adapter_spec,
    load_adapter_spec,
    model_info,
    parse_checkpoint,
)


def test_registry_declares_published_widths():
    assert model_info("resnet18").dim == 512
    assert model_info("resnet34").dim == 512
    assert model_info("resnet50").dim == 2048
    assert model_info("resnet101").dim == 2048
    assert model_info("vit_b_16").dim == 768
    assert model_info("vit_l_16").dim == 1024
    assert model_info("wav2vec2").dim == 768
    assert model_info("hubert").dim == 768


def test_registry_modalities():
    image = {name for name, info in MODELS.items() if info.modality == "image"}
    audio = {name for name, info in MODELS.items() if info.modality == "audio"}
    assert "resnet50" in image and "vit_b_32" in image
    assert audio == {"wav2vec2", "hubert"}


def test_unknown_model_rejected():
    with pytest.raises(AdapterError, match="unknown model"):
        model_info("alexnet")


def test_default_pooling_per_architecture():
    assert adapter_spec("resnet50", checkpoint="random:0").pooling == "global-average"
    assert adapter_spec("vit_b_16", checkpoint="random:0").pooling == "class-token"
    assert adapter_spec("wav2vec2", checkpoint="random:0").pooling == "mean-over-time"


def test_pooling_must_fit_architecture():
    with pytest.raises(AdapterError, match="supports pooling"):
        adapter_spec("resnet50", checkpoint="random:0", pooling="class-token")
    with pytest.raises(AdapterError, match="supports pooling"):
        adapter_spec("wav2vec2", checkpoint="random:0", pooling="global-average")


def test_declared_dim_must_match_registry():
    with pytest.raises(AdapterError, match="produces dim 2048"):
        adapter_spec("resnet50", checkpoint="random:0", dim=512)


def test_extractor_id_records_pooling_and_layer():
    spec = adapter_spec("vit_b_16", checkpoint="random:3", pooling="mean-over-time", layer=5)
    assert "mean-over-time" in spec.extractor_id
    assert "layer=5" in spec.extractor_id
    assert spec.extractor_id.startswith("vit_b_16:random:3")


def test_checkpoint_forms():
    assert parse_checkpoint("pretrained") == ("pretrained", None)
    assert parse_checkpoint("random:7") == ("random", 7)
    kind, path = parse_checkpoint("file:weights/model.pt")
    assert kind == "file" and path == Path("weights/model.pt")


@pytest.mark.parametrize("value", ["", "latest", "random:", "random:x", "random:-1", "file:"])
def test_bad_checkpoint_forms_rejected(value):
    with pytest.raises(AdapterError):
        parse_checkpoint(value)


def test_layer_and_batch_size_validation():
    with pytest.raises(AdapterError, match="layer"):
        adapter_spec("resnet18", checkpoint="random:0", layer="last")
    with pytest.raises(AdapterError, match="batch_size"):
        adapter_spec("resnet18", checkpoint="random:0", batch_size=0)
    with pytest.raises(AdapterError, match="batch_size"):
        adapter_spec("resnet18", checkpoint="random:0", batch_size=True)


def test_load_spec_round_trip(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({
        "model": "resnet50",
        "checkpoint": "random:4",
        "pooling": "global-average",
        "dim": 2048,
        "batch_size": 4,
    }))
    spec = load_adapter_spec(path)
    assert spec.model == "resnet50"
    assert spec.checkpoint == "random:4"
    assert spec.dim == 2048
    assert spec.layer == -1
    assert spec.batch_size == 4


def test_load_spec_fills_defaults(tmp_path):
    path = tmp_path / "spec.json"
    path.write_text(json.dumps({"model": "hubert", "checkpoint": "random:0"}))
    spec = load_adapter_spec(path)
    assert spec.pooling == "mean-over-time"
    assert spec.dim == 768


@pytest.mark.parametrize("doc,message", [
    ("[]", "JSON object"),
    ('{"checkpoint": "pretrained"}', "missing 'model'"),
    ('{"model": "resnet18", "size": 8}', "unknown keys"),
    ("{not json", "not valid JSON"),
])
def test_load_spec_rejects_malformed(tmp_path, doc, message):
    path = tmp_path / "spec.json"
    path.write_text(doc)
    with pytest.raises(AdapterError, match=message):
        load_adapter_spec(path)


def test_load_spec_missing_file(tmp_path):
    with pytest.raises(AdapterError, match="cannot read"):
        load_adapter_spec(tmp_path / "absent.json")
