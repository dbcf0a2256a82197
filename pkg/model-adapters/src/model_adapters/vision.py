"""Image embedders backed by torchvision classifiers.

ResNets expose their globally pooled final features. ViTs expose the
encoder token sequence, pooled either by class token or by averaging the
patch tokens; ``layer`` can select an intermediate encoder block, where
``-1`` means the full encoder including its final layer norm.
"""

import numpy as np
from PIL import Image

from .errors import AdapterError
from .registry import CLASS_TOKEN, GLOBAL_AVERAGE
from .spec import AdapterSpec, parse_checkpoint

ARCH_KIND = {
    "resnet18": "resnet",
    "resnet34": "resnet",
    "resnet50": "resnet",
    "resnet101": "resnet",
    "vit_b_16": "vit",
    "vit_b_32": "vit",
    "vit_l_16": "vit",
    "vit_l_32": "vit",
}

# standard ImageNet evaluation statistics
_MEAN = (0.485, 0.456, 0.406)
_STD = (0.229, 0.224, 0.225)


def _ctor(name):
    import torchvision.models

    return getattr(torchvision.models, name)


def _build_model(spec: AdapterSpec):
    import torch

    ctor = _ctor(spec.model)
    kind, detail = parse_checkpoint(spec.checkpoint)
    if kind == "pretrained":
        try:
            model = ctor(weights="DEFAULT")
        except Exception as exc:
            raise AdapterError(
                f"could not fetch pretrained checkpoint for {spec.model}: {exc}"
            ) from exc
    elif kind == "random":
        torch.manual_seed(detail)
        model = ctor(weights=None)
    else:
        model = ctor(weights=None)
        try:
            state = torch.load(detail, map_location="cpu", weights_only=True)
            model.load_state_dict(state)
        except Exception as exc:
            raise AdapterError(f"could not load checkpoint file {detail}: {exc}") from exc
    if ARCH_KIND[spec.model] == "resnet":
        # drop the classifier so the forward pass returns pooled features
        model.fc = torch.nn.Identity()
    return model.eval()


def _load_image(path):
    import torch
    from torchvision import transforms

    try:
        with Image.open(path) as img:
            rgb = img.convert("RGB")
    except Exception as exc:
        raise AdapterError(f"cannot decode image {path}: {exc}") from exc
    pipeline = transforms.Compose([
        transforms.Resize(256),
        transforms.CenterCrop(224),
        transforms.ToTensor(),
        transforms.Normalize(mean=_MEAN, std=_STD),
    ])
    return pipeline(rgb)


def _resnet_features(model, batch, spec):
    if spec.layer != -1:
        raise AdapterError(
            f"{spec.model} exposes only its pooled final features; layer must be -1"
        )
    return model(batch)


def _vit_features(model, batch, spec):
    import torch

    # torchvision's ViT keeps patch embedding in _process_input; reuse it
    # rather than re-deriving the patch grid
    tokens = model._process_input(batch)
    cls = model.class_token.expand(tokens.shape[0], -1, -1)
    seq = torch.cat([cls, tokens], dim=1)
    encoder = model.encoder
    depth = len(encoder.layers)
    if spec.layer == -1:
        seq = encoder(seq)
    else:
        if not 0 <= spec.layer < depth:
            raise AdapterError(
                f"{spec.model} has {depth} encoder blocks; layer must be -1 or 0..{depth - 1}"
            )
        seq = encoder.dropout(seq + encoder.pos_embedding)
        for index, block in enumerate(encoder.layers):
            seq = block(seq)
            if index == spec.layer:
                break
    if spec.pooling == CLASS_TOKEN:
        return seq[:, 0]
    return seq[:, 1:].mean(dim=1)


def embed_images(spec: AdapterSpec, paths) -> np.ndarray:
    """Run every image through the checkpoint, returning (n, dim) float32."""
    import torch

    model = _build_model(spec)
    kind = ARCH_KIND[spec.model]
    rows = []
    with torch.no_grad():
        for start in range(0, len(paths), spec.batch_size):
            chunk = paths[start:start + spec.batch_size]
            batch = torch.stack([_load_image(p) for p in chunk])
            if kind == "resnet":
                if spec.pooling != GLOBAL_AVERAGE:
                    raise AdapterError(f"{spec.model} supports only global-average pooling")
                feats = _resnet_features(model, batch, spec)
            else:
                feats = _vit_features(model, batch, spec)
            rows.append(feats.cpu().numpy().astype(np.float32, copy=False))
    return np.vstack(rows)
