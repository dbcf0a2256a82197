import dataclasses
import json

import numpy as np
import pytest
from scipy.io import wavfile

from repaxes.io import SampleRecord, read_embeddings, write_manifest

import model_adapters.registry as registry
import model_adapters.vision as vision
from model_adapters import AdapterError, adapter_spec, export_embeddings
from model_adapters.cli import main


def _verdict(capsys, name, ok, detail):
    with capsys.disabled():
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    assert ok, detail


def test_conformance_image_export(image_corpus, tmp_path, capsys):
    spec = adapter_spec("resnet50", checkpoint="random:0")
    out = export_embeddings(image_corpus["manifest"], spec, tmp_path / "r50.emb")
    store = read_embeddings(out)
    ok = (
        store.count == 8
        and store.dim == 2048
        and store.ids == image_corpus["ids"]
        and bool(np.all(np.isfinite(store.matrix)))
    )
    _verdict(capsys, "adapter-conformance",
             ok, f"count={store.count} dim={store.dim} ids_match={store.ids == image_corpus['ids']}")


def test_conformance_repeated_export(image_corpus, tmp_path, capsys):
    spec = adapter_spec("resnet18", checkpoint="random:0")
    first = read_embeddings(export_embeddings(image_corpus["manifest"], spec, tmp_path / "a.emb"))
    second = read_embeddings(export_embeddings(image_corpus["manifest"], spec, tmp_path / "b.emb"))
    gap = float(np.abs(first.matrix - second.matrix).max())
    _verdict(capsys, "adapter-determinism", gap <= 1e-5, f"max abs diff {gap:.3g}")


def test_vit_class_token_and_mean_pooling_differ(image_corpus, tmp_path):
    cls = adapter_spec("vit_b_16", checkpoint="random:0")
    mean = adapter_spec("vit_b_16", checkpoint="random:0", pooling="mean-over-time")
    a = read_embeddings(export_embeddings(image_corpus["manifest"], cls, tmp_path / "cls.emb"))
    b = read_embeddings(export_embeddings(image_corpus["manifest"], mean, tmp_path / "mean.emb"))
    assert a.dim == 768 and b.dim == 768
    assert float(np.abs(a.matrix - b.matrix).max()) > 1e-3
    assert "class-token" in cls.extractor_id and "mean-over-time" in mean.extractor_id


def test_vit_intermediate_layer_changes_output(image_corpus, tmp_path):
    final = adapter_spec("vit_b_16", checkpoint="random:0")
    early = adapter_spec("vit_b_16", checkpoint="random:0", layer=0)
    a = read_embeddings(export_embeddings(image_corpus["manifest"], final, tmp_path / "f.emb"))
    b = read_embeddings(export_embeddings(image_corpus["manifest"], early, tmp_path / "e.emb"))
    assert float(np.abs(a.matrix - b.matrix).max()) > 1e-3


def test_vit_layer_out_of_range(image_corpus, tmp_path):
    spec = adapter_spec("vit_b_16", checkpoint="random:0", layer=99)
    with pytest.raises(AdapterError, match="encoder blocks"):
        export_embeddings(image_corpus["manifest"], spec, tmp_path / "x.emb")


def test_resnet_rejects_layer_selection(image_corpus, tmp_path):
    spec = adapter_spec("resnet18", checkpoint="random:0", layer=2)
    with pytest.raises(AdapterError, match="layer must be -1"):
        export_embeddings(image_corpus["manifest"], spec, tmp_path / "x.emb")


def test_speech_export(audio_corpus, tmp_path):
    spec = adapter_spec("wav2vec2", checkpoint="random:0")
    store = read_embeddings(export_embeddings(audio_corpus["manifest"], spec, tmp_path / "w.emb"))
    assert store.count == 6
    assert store.dim == 768
    assert store.ids == audio_corpus["ids"]
    again = read_embeddings(export_embeddings(audio_corpus["manifest"], spec, tmp_path / "w2.emb"))
    assert float(np.abs(store.matrix - again.matrix).max()) <= 1e-5


def test_speech_rejects_wrong_sample_rate(tmp_path):
    (tmp_path / "media").mkdir()
    wavfile.write(tmp_path / "media" / "c.wav", 8_000, np.zeros(8_000, dtype=np.int16))
    write_manifest([SampleRecord(id="c", split="test", media_path="media/c.wav")],
                   tmp_path / "m.json")
    spec = adapter_spec("wav2vec2", checkpoint="random:0")
    with pytest.raises(AdapterError, match="16000"):
        export_embeddings(tmp_path / "m.json", spec, tmp_path / "x.emb")


def test_speech_rejects_stereo(tmp_path):
    (tmp_path / "media").mkdir()
    stereo = np.zeros((16_000, 2), dtype=np.int16)
    wavfile.write(tmp_path / "media" / "c.wav", 16_000, stereo)
    write_manifest([SampleRecord(id="c", split="test", media_path="media/c.wav")],
                   tmp_path / "m.json")
    spec = adapter_spec("wav2vec2", checkpoint="random:0")
    with pytest.raises(AdapterError, match="mono"):
        export_embeddings(tmp_path / "m.json", spec, tmp_path / "x.emb")


def test_missing_media_names_the_id(image_corpus, tmp_path):
    records = [SampleRecord(id="ghost", split="test", media_path="media/ghost.png")]
    manifest = tmp_path / "m.json"
    write_manifest(records, manifest)
    spec = adapter_spec("resnet18", checkpoint="random:0")
    with pytest.raises(AdapterError, match="ghost"):
        export_embeddings(manifest, spec, tmp_path / "x.emb")


def test_empty_manifest_rejected(tmp_path):
    manifest = tmp_path / "m.json"
    manifest.write_text("")
    spec = adapter_spec("resnet18", checkpoint="random:0")
    with pytest.raises(AdapterError, match="no records"):
        export_embeddings(manifest, spec, tmp_path / "x.emb")


def test_produced_dim_must_match_declared(image_corpus, tmp_path, monkeypatch):
    # pretend the registry expects a different width than the network yields
    fake = dataclasses.replace(registry.model_info("resnet18"), dim=100)
    monkeypatch.setitem(registry.MODELS, "resnet18", fake)
    spec = adapter_spec("resnet18", checkpoint="random:0")
    assert spec.dim == 100
    with pytest.raises(AdapterError, match="produced dim 512"):
        export_embeddings(image_corpus["manifest"], spec, tmp_path / "x.emb")


def test_checkpoint_fetch_failure_is_an_export_error(image_corpus, tmp_path, monkeypatch):
    def unreachable(name):
        def ctor(**kwargs):
            raise OSError("network unreachable")
        return ctor

    monkeypatch.setattr(vision, "_ctor", unreachable)
    spec = adapter_spec("resnet18", checkpoint="pretrained")
    with pytest.raises(AdapterError, match="could not fetch"):
        export_embeddings(image_corpus["manifest"], spec, tmp_path / "x.emb")


def test_checkpoint_file_missing_is_an_export_error(image_corpus, tmp_path):
    spec = adapter_spec("resnet18", checkpoint=f"file:{tmp_path / 'absent.pt'}")
    with pytest.raises(AdapterError, match="could not load checkpoint file"):
        export_embeddings(image_corpus["manifest"], spec, tmp_path / "x.emb")


def test_cli_export_round_trip(image_corpus, tmp_path, capsys):
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(json.dumps({"model": "resnet18", "checkpoint": "random:0"}))
    out = tmp_path / "cli.emb"
    code = main(["export", str(spec_path), str(image_corpus["manifest"]), str(out)])
    assert code == 0
    assert "resnet18:random:0" in capsys.readouterr().out
    assert read_embeddings(out).count == 8


def test_cli_reports_errors(image_corpus, tmp_path, capsys):
    spec_path = tmp_path / "spec.json"
    spec_path.write_text(json.dumps({"model": "resnet9000"}))
    code = main(["export", str(spec_path), str(image_corpus["manifest"]), str(tmp_path / "x.emb")])
    assert code == 1
    assert "unknown model" in capsys.readouterr().err


def test_cli_lists_models(capsys):
    assert main(["models"]) == 0
    out = capsys.readouterr().out
    assert "resnet50" in out and "2048" in out
    assert "wav2vec2" in out
