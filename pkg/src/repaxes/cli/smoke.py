"""Build the self-contained smoke workspace: synthetic media, manifests,
and a run config that exercises all five axes with toy extractors.

Everything is generated from fixed seeds, so two builds of the same
workspace are byte-identical and a run over it is fully deterministic.
"""

import json
import numpy as np
from pathlib import Path

from ..fixtures import gen_speckle_image, gen_speech_like_clip, speech_clip_profile
from ..fixtures.media import DEFAULT_SAMPLE_RATE
from ..image.color import rgb_to_hsv
from ..io import SampleRecord, save_clip_wav, save_image_png, write_manifest

IMAGE_COUNT = 32
CLIP_COUNT = 16
IMAGE_SIZE = 32
CLIP_SECONDS = 2.0

CONFIG_NAME = "smoke.json"


def _split_for(index: int, total: int) -> str:
    train_end = round(total * 0.70)
    val_end = round(total * 0.85)
    if index < train_end:
        return "train"
    return "val" if index < val_end else "test"


def _image_values(img: np.ndarray) -> dict[str, float]:
    hsv = rgb_to_hsv(img)
    angles = hsv[..., 0].astype(np.float64) * 2.0 * np.pi
    mean_vector = np.mean(np.exp(1j * angles))
    hue_mean = float((np.angle(mean_vector) / (2.0 * np.pi)) % 1.0)
    return {
        "hue_mean": hue_mean,
        "saturation_mean": float(hsv[..., 1].mean()),
        "brightness_mean": float(hsv[..., 2].mean()),
    }


def _build_images(root: Path) -> None:
    media_dir = root / "images"
    media_dir.mkdir(parents=True, exist_ok=True)
    records = []
    for i in range(IMAGE_COUNT):
        img = gen_speckle_image(i, IMAGE_SIZE, IMAGE_SIZE)
        name = f"img_{i:03d}.png"
        save_image_png(img, media_dir / name)
        records.append(
            SampleRecord(
                id=f"img{i:03d}",
                split=_split_for(i, IMAGE_COUNT),
                media_path=name,
                fv_values=_image_values(img),
            )
        )
    write_manifest(records, media_dir / "manifest.jsonl")


def _build_audio(root: Path) -> None:
    media_dir = root / "audio"
    media_dir.mkdir(parents=True, exist_ok=True)
    records = []
    for i in range(CLIP_COUNT):
        clip = gen_speech_like_clip(i, CLIP_SECONDS, DEFAULT_SAMPLE_RATE)
        name = f"clip_{i:03d}.wav"
        save_clip_wav(clip, media_dir / name, DEFAULT_SAMPLE_RATE)
        profile = speech_clip_profile(i, CLIP_SECONDS)
        words = int(profile["word_count"])
        records.append(
            SampleRecord(
                id=f"clip{i:03d}",
                split=_split_for(i, CLIP_COUNT),
                media_path=name,
                fv_values={"speech_rate": words / CLIP_SECONDS},
                duration_s=CLIP_SECONDS,
                transcript=" ".join(["la"] * words),
            )
        )
    write_manifest(records, media_dir / "manifest.jsonl")


def smoke_config() -> dict:
    return {
        "schema_version": 1,
        "output_dir": "results",
        "datasets": {
            "images": {"manifest": "images/manifest.jsonl", "media_root": "images"},
            "audio": {"manifest": "audio/manifest.jsonl", "media_root": "audio"},
        },
        "extractors": {
            "toy-image": {"kind": "toy_image", "seed": 0, "dim": 64},
            "toy-audio": {"kind": "toy_audio", "seed": 0, "dim": 64},
        },
        "transforms": {
            "hue": {
                "name": "HueShift", "fv_target": "hue_mean",
                "range": [-0.5, 0.5], "neutral": 0.0, "seed": 101,
            },
            "brightness": {
                "name": "BrightnessShift", "fv_target": "brightness_mean",
                "range": [-0.5, 0.5], "neutral": 0.0, "seed": 103,
            },
            "stretch": {
                "name": "TimeStretch", "fv_target": "speech_rate",
                "range": [0.5, 2.0], "neutral": 1.0, "seed": 107,
            },
        },
        "jobs": [
            {
                "id": "informativeness-speech-rate", "axis": "informativeness",
                "dataset": "audio", "extractor": "toy-audio",
                "fv": "speech_rate", "probe": "slp", "probe_seed": 0,
            },
            {
                "id": "p-equivariance-hue", "axis": "p_equivariance",
                "dataset": "images", "extractor": "toy-image",
                "transform": "hue", "probe": "mlp", "probe_seed": 0,
            },
            {
                "id": "r-equivariance-hue", "axis": "r_equivariance",
                "dataset": "images", "extractor": "toy-image",
                "transform": "hue", "probe": "mlp", "probe_seed": 0,
            },
            {
                "id": "invariance-stretch", "axis": "invariance",
                "dataset": "audio", "extractor": "toy-audio",
                "transform": "stretch", "grid_points": 11,
            },
            {
                "id": "disentanglement-brightness", "axis": "disentanglement",
                "dataset": "images", "extractor": "toy-image",
                "fv": "saturation_mean", "transform": "brightness",
                "probe": "slp", "probe_seed": 0,
            },
        ],
    }


def build_smoke_workspace(root) -> Path:
    """Write media, manifests, and the smoke config; returns the config path."""
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    _build_images(root)
    _build_audio(root)
    config_path = root / CONFIG_NAME
    config_path.write_text(
        json.dumps(smoke_config(), indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    return config_path
