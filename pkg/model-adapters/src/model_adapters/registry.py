"""Catalog of supported checkpoints.

Each entry records the modality, the embedding width the published
checkpoint produces, and which pooling strategies make sense for the
architecture. The first listed pooling is the default.
"""

from dataclasses import dataclass

from .errors import AdapterError

MEAN_OVER_TIME = "mean-over-time"
CLASS_TOKEN = "class-token"
GLOBAL_AVERAGE = "global-average"

POOLINGS = (MEAN_OVER_TIME, CLASS_TOKEN, GLOBAL_AVERAGE)


@dataclass(frozen=True)
class ModelInfo:
    name: str
    modality: str
    dim: int
    poolings: tuple[str, ...]

    @property
    def default_pooling(self) -> str:
        return self.poolings[0]


def _image(name, dim, poolings):
    return ModelInfo(name=name, modality="image", dim=dim, poolings=poolings)


def _audio(name, dim):
    return ModelInfo(name=name, modality="audio", dim=dim, poolings=(MEAN_OVER_TIME,))


MODELS = {
    m.name: m
    for m in (
        _image("resnet18", 512, (GLOBAL_AVERAGE,)),
        _image("resnet34", 512, (GLOBAL_AVERAGE,)),
        _image("resnet50", 2048, (GLOBAL_AVERAGE,)),
        _image("resnet101", 2048, (GLOBAL_AVERAGE,)),
        _image("vit_b_16", 768, (CLASS_TOKEN, MEAN_OVER_TIME)),
        _image("vit_b_32", 768, (CLASS_TOKEN, MEAN_OVER_TIME)),
        _image("vit_l_16", 1024, (CLASS_TOKEN, MEAN_OVER_TIME)),
        _image("vit_l_32", 1024, (CLASS_TOKEN, MEAN_OVER_TIME)),
        _audio("wav2vec2", 768),
        _audio("hubert", 768),
    )
}


def model_info(name: str) -> ModelInfo:
    try:
        return MODELS[name]
    except KeyError:
        known = ", ".join(sorted(MODELS))
        raise AdapterError(f"unknown model {name!r}; supported: {known}") from None
