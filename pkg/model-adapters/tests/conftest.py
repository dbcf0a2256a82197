import numpy as np
import pytest
from PIL import Image
from scipy.io import wavfile

from repaxes.io import SampleRecord, write_manifest


@pytest.fixture(scope="session")
def image_corpus(tmp_path_factory):
    """Eight small synthetic photos plus a manifest pointing at them."""
    root = tmp_path_factory.mktemp("image_corpus")
    (root / "media").mkdir()
    rng = np.random.default_rng(501)
    records = []
    ramp = np.linspace(0.0, 1.0, 96)[None, :] * np.ones((96, 1))
    for i in range(8):
        channels = [
            ramp * rng.uniform(0.3, 1.0),
            ramp[::-1] * rng.uniform(0.2, 1.0),
            np.full_like(ramp, rng.uniform(0.0, 1.0)),
        ]
        arr = (np.stack(channels, axis=-1) * 255).astype(np.uint8)
        name = f"img{i}.png"
        Image.fromarray(arr).save(root / "media" / name)
        records.append(SampleRecord(id=f"img{i}", split="test", media_path=f"media/{name}"))
    manifest = root / "manifest.json"
    write_manifest(records, manifest)
    return {"root": root, "manifest": manifest, "ids": [r.id for r in records]}


@pytest.fixture(scope="session")
def audio_corpus(tmp_path_factory):
    """Six mono 16 kHz clips of varying length plus a manifest."""
    root = tmp_path_factory.mktemp("audio_corpus")
    (root / "media").mkdir()
    rng = np.random.default_rng(502)
    records = []
    for i in range(6):
        n = 12_000 + 2_000 * i
        t = np.arange(n) / 16_000.0
        x = 0.3 * np.sin(2 * np.pi * (180 + 40 * i) * t)
        x += 0.05 * rng.standard_normal(n)
        name = f"clip{i}.wav"
        wavfile.write(root / "media" / name, 16_000, (x * 16_000).astype(np.int16))
        records.append(SampleRecord(id=f"clip{i}", split="test", media_path=f"media/{name}"))
    manifest = root / "manifest.json"
    write_manifest(records, manifest)
    return {"root": root, "manifest": manifest, "ids": [r.id for r in records]}
