"""Single-record and single-image prediction plus feature-map extraction."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..health.pipeline import HealthRecord, ScalerParams, categorize
from ..images.pipeline import decode_image_bytes
from ..nn import ModelGraph
from .architectures import demented_score

LABEL_DEMENTED = "Demented"
LABEL_NON_DEMENTED = "NonDemented"

MAX_IMAGE_BYTES = 10 * 1024 * 1024


@dataclass
class PredictionResult:
    score: float
    label: str
    model_id: str

    def __post_init__(self):
        # label is derived from the score by the strict > 0.5 rule, always
        expected = LABEL_DEMENTED if self.score > 0.5 else LABEL_NON_DEMENTED
        if self.label != expected:
            raise ValueError(f"label {self.label!r} inconsistent with score {self.score}")

    @property
    def binary(self) -> int:
        return 1 if self.label == LABEL_DEMENTED else 0


def classify(score: float, model_id: str) -> PredictionResult:
    label = LABEL_DEMENTED if score > 0.5 else LABEL_NON_DEMENTED
    return PredictionResult(score=float(score), label=label, model_id=model_id)


def predict_health(model: ModelGraph, record: HealthRecord,
                   scaler: ScalerParams) -> PredictionResult:
    """Categorize, scale with the training statistics, and run the 1D net."""
    vec = scaler.transform(categorize(record))
    batch = vec.astype(np.float32).reshape(1, -1, 1)
    out = model.forward(batch, training=False)
    score = float(demented_score(model, out)[0])
    return classify(score, "MOD1D")


def predict_face(model: ModelGraph, image_bytes: bytes) -> PredictionResult:
    """Decode, resize to the model's input size, rescale, and run the 2D net."""
    if len(image_bytes) > MAX_IMAGE_BYTES:
        raise ValueError(
            f"image payload of {len(image_bytes)} bytes exceeds the "
            f"{MAX_IMAGE_BYTES}-byte limit"
        )
    size = model.input_shape[0]
    pixels = decode_image_bytes(image_bytes, size=size)
    out = model.forward(pixels[None, ...], training=False)
    score = float(demented_score(model, out)[0])
    return classify(score, "MOD2D")


def extract_feature_maps(model: ModelGraph, pixels: np.ndarray, layer_index: int):
    """Per-filter activation maps of one conv layer, min-max scaled to [0, 1].

    pixels is a single [H, W, 3] image; the return value is a list with one
    [h, w] map per filter. Constant maps normalize to all zeros.
    """
    if not 0 <= layer_index < len(model.specs):
        raise IndexError(f"layer index {layer_index} out of range")
    if model.specs[layer_index].kind != "Conv2D":
        raise ValueError(
            f"layer {layer_index} is {model.specs[layer_index].kind}, not Conv2D"
        )
    x = np.asarray(pixels, dtype=model.dtype)[None, ...]
    for layer in model.layers[: layer_index + 1]:
        x = layer.forward(x, training=False)
    maps = []
    for f in range(x.shape[3]):
        fmap = x[0, :, :, f].astype(np.float64)
        lo, hi = fmap.min(), fmap.max()
        if hi > lo:
            fmap = (fmap - lo) / (hi - lo)
        else:
            fmap = np.zeros_like(fmap)
        maps.append(fmap)
    return maps
