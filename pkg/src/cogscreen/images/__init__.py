"""Facial-image loading, preprocessing and augmentation for the 2D predictor."""

from .pipeline import (
    AugmentConfig,
    ImageSample,
    augment,
    batches,
    decode_image_bytes,
    horizontal_flip,
    load_dataset,
)

__all__ = [
    "AugmentConfig",
    "ImageSample",
    "augment",
    "batches",
    "decode_image_bytes",
    "horizontal_flip",
    "load_dataset",
]
