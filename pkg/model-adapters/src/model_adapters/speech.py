"""Speech embedders backed by transformer speech encoders.

Clips are processed one at a time because they vary in length and
mean-over-time pooling must not average over padding. ``layer`` indexes
the encoder's hidden states, where 0 is the convolutional front end's
output and ``-1`` the final hidden state.
"""

import numpy as np
from scipy.io import wavfile

from .errors import AdapterError
from .spec import AdapterSpec, parse_checkpoint

EXPECTED_SAMPLE_RATE = 16_000

HF_CHECKPOINTS = {
    "wav2vec2": "facebook/wav2vec2-base",
    "hubert": "facebook/hubert-base-ls960",
}


def _model_classes(name):
    if name == "wav2vec2":
        from transformers import Wav2Vec2Config, Wav2Vec2Model

        return Wav2Vec2Config, Wav2Vec2Model
    from transformers import HubertConfig, HubertModel

    return HubertConfig, HubertModel


def _build_model(spec: AdapterSpec):
    import torch

    config_cls, model_cls = _model_classes(spec.model)
    kind, detail = parse_checkpoint(spec.checkpoint)
    if kind == "pretrained":
        try:
            model = model_cls.from_pretrained(HF_CHECKPOINTS[spec.model])
        except Exception as exc:
            raise AdapterError(
                f"could not fetch pretrained checkpoint for {spec.model}: {exc}"
            ) from exc
    elif kind == "random":
        torch.manual_seed(detail)
        model = model_cls(config_cls())
    else:
        model = model_cls(config_cls())
        try:
            state = torch.load(detail, map_location="cpu", weights_only=True)
            model.load_state_dict(state)
        except Exception as exc:
            raise AdapterError(f"could not load checkpoint file {detail}: {exc}") from exc
    return model.eval()


def _load_waveform(path) -> np.ndarray:
    try:
        rate, data = wavfile.read(path)
    except Exception as exc:
        raise AdapterError(f"cannot decode audio {path}: {exc}") from exc
    if rate != EXPECTED_SAMPLE_RATE:
        raise AdapterError(
            f"{path} is sampled at {rate} Hz; speech checkpoints expect {EXPECTED_SAMPLE_RATE}"
        )
    if data.ndim != 1:
        raise AdapterError(f"{path} has {data.shape[1]} channels; expected mono")
    if data.dtype == np.int16:
        return data.astype(np.float32) / 32768.0
    return data.astype(np.float32)


def embed_clips(spec: AdapterSpec, paths) -> np.ndarray:
    """Run every clip through the checkpoint, returning (n, dim) float32."""
    import torch

    model = _build_model(spec)
    rows = []
    with torch.no_grad():
        for path in paths:
            wave = torch.from_numpy(_load_waveform(path))[None, :]
            if spec.layer == -1:
                hidden = model(wave).last_hidden_state
            else:
                states = model(wave, output_hidden_states=True).hidden_states
                if not 0 <= spec.layer < len(states):
                    raise AdapterError(
                        f"{spec.model} exposes {len(states)} hidden states; "
                        f"layer must be -1 or 0..{len(states) - 1}"
                    )
                hidden = states[spec.layer]
            pooled = hidden.mean(dim=1)[0]
            rows.append(pooled.cpu().numpy().astype(np.float32, copy=False))
    return np.stack(rows)
