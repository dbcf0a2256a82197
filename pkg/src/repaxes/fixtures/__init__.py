from .latent import LatentShiftEmbedder, LatentTransformSpec
from .media import (
    gen_gradient_image,
    gen_sine_clip,
    gen_speckle_image,
    gen_speech_like_clip,
    speech_clip_profile,
)
from .stores import (
    STORE_NOISE_SIGMA,
    StoreFixture,
    gen_disentangled_store,
    gen_entangled_store,
    gen_linear_action_pairs,
    records_for_ids,
    shuffle_params,
    shuffle_transformed,
    split_for_index,
)

__all__ = [
    "LatentShiftEmbedder",
    "LatentTransformSpec",
    "STORE_NOISE_SIGMA",
    "StoreFixture",
    "gen_disentangled_store",
    "gen_entangled_store",
    "gen_gradient_image",
    "gen_linear_action_pairs",
    "gen_sine_clip",
    "gen_speckle_image",
    "gen_speech_like_clip",
    "speech_clip_profile",
    "records_for_ids",
    "shuffle_params",
    "shuffle_transformed",
    "split_for_index",
]
