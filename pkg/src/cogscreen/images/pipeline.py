"""Directory-structured image corpus loading plus affine augmentation.

Layout: ``<root>/{train,test,validation}/{demented,non_demented}/*.{png,jpg}``.
Images are decoded to RGB (grayscale widened to three channels), resized with
bilinear interpolation and rescaled by 1/255. The demented class is label 1
regardless of directory iteration order.
"""

from __future__ import annotations

import io
import logging
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError
from scipy import ndimage

log = logging.getLogger(__name__)

SPLITS = ("train", "test", "validation")
CLASS_LABELS = {"demented": 1, "non_demented": 0}
IMAGE_EXTENSIONS = {".png", ".jpg", ".jpeg"}
DEFAULT_SIZE = 224


@dataclass
class ImageSample:
    pixels: np.ndarray  # [H, W, 3] float32 in [0, 1]
    label: int
    source_path: str = ""


@dataclass
class AugmentConfig:
    rotation_max_deg: float = 20.0
    width_shift_frac: float = 0.1
    height_shift_frac: float = 0.1
    shear_max_deg: float = 10.0
    zoom_range: float = 0.1
    horizontal_flip: bool = True

    def __post_init__(self):
        for name in ("rotation_max_deg", "width_shift_frac", "height_shift_frac",
                     "shear_max_deg", "zoom_range"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")

    @classmethod
    def identity(cls):
        return cls(0.0, 0.0, 0.0, 0.0, 0.0, horizontal_flip=False)


def _to_pixels(img: Image.Image, size: int) -> np.ndarray:
    img = img.convert("RGB").resize((size, size), Image.BILINEAR)
    return np.asarray(img, dtype=np.float32) / 255.0


def decode_image_bytes(data: bytes, size: int = DEFAULT_SIZE) -> np.ndarray:
    """Decode PNG/JPEG bytes into a [size, size, 3] array in [0, 1]."""
    try:
        with Image.open(io.BytesIO(data)) as img:
            return _to_pixels(img, size)
    except UnidentifiedImageError as exc:
        raise ValueError("payload is not a decodable PNG or JPEG image") from exc


def load_dataset(root_dir, image_size: int = DEFAULT_SIZE):
    """Load every split; returns ({split: [ImageSample]}, per-split class counts)."""
    root = Path(root_dir)
    samples: dict[str, list[ImageSample]] = {}
    counts: dict[str, dict[str, int]] = {}
    for split_name in SPLITS:
        split_dir = root / split_name
        if not split_dir.is_dir():
            raise FileNotFoundError(f"missing split directory: {split_dir}")
        split_samples = []
        split_counts = {"skipped": 0}
        for class_name, label in sorted(CLASS_LABELS.items()):
            class_dir = split_dir / class_name
            if not class_dir.is_dir():
                raise FileNotFoundError(f"missing class directory: {class_dir}")
            files = sorted(
                p for p in class_dir.iterdir() if p.suffix.lower() in IMAGE_EXTENSIONS
            )
            if not files:
                raise ValueError(f"class directory {class_dir} contains no images")
            loaded = 0
            for path in files:
                try:
                    with Image.open(path) as img:
                        pixels = _to_pixels(img, image_size)
                except (OSError, UnidentifiedImageError):
                    log.warning("skipping undecodable image %s", path)
                    split_counts["skipped"] += 1
                    continue
                split_samples.append(ImageSample(pixels, label, str(path)))
                loaded += 1
            split_counts[class_name] = loaded
        samples[split_name] = split_samples
        counts[split_name] = split_counts
    return samples, counts


def horizontal_flip(pixels: np.ndarray) -> np.ndarray:
    return np.flip(pixels, axis=1).copy()


def _affine_params(config: AugmentConfig, rng):
    angle = math.radians(rng.uniform(-config.rotation_max_deg, config.rotation_max_deg))
    tx = rng.uniform(-config.width_shift_frac, config.width_shift_frac)
    ty = rng.uniform(-config.height_shift_frac, config.height_shift_frac)
    shear = math.radians(rng.uniform(-config.shear_max_deg, config.shear_max_deg))
    zoom = 1.0 + rng.uniform(-config.zoom_range, config.zoom_range)
    flip = bool(config.horizontal_flip and rng.random() < 0.5)
    return angle, tx, ty, shear, zoom, flip


def augment(sample: ImageSample, config: AugmentConfig, rng) -> ImageSample:
    """One random affine transform (reflect-edge fill); label is unchanged."""
    angle, tx, ty, shear, zoom, flip = _affine_params(config, rng)
    pixels = sample.pixels
    if flip:
        pixels = horizontal_flip(pixels)
    identity = angle == 0.0 and tx == 0.0 and ty == 0.0 and shear == 0.0 and zoom == 1.0
    if not identity:
        h, w = pixels.shape[:2]
        cos_a, sin_a = math.cos(angle), math.sin(angle)
        rot = np.array([[cos_a, -sin_a], [sin_a, cos_a]])
        sh = np.array([[1.0, math.tan(shear)], [0.0, 1.0]])
        zm = np.array([[zoom, 0.0], [0.0, zoom]])
        fwd = rot @ sh @ zm
        inv = np.linalg.inv(fwd)
        center = np.array([(h - 1) / 2.0, (w - 1) / 2.0])
        shift = np.array([ty * h, tx * w])
        offset = center - inv @ (center + shift)
        out = np.empty_like(pixels)
        for c in range(pixels.shape[2]):
            out[:, :, c] = ndimage.affine_transform(
                pixels[:, :, c], inv, offset=offset, order=1, mode="reflect",
                output=np.float32,
            )
        pixels = np.clip(out, 0.0, 1.0)
    elif not flip:
        pixels = pixels.copy()
    return ImageSample(pixels=pixels, label=sample.label, source_path=sample.source_path)


def batches(samples, batch_size=32, augment_on=False, config=None, rng=None):
    """Yield ([b, H, W, 3], label vector) pairs covering each sample once."""
    samples = list(samples)
    if not samples:
        raise ValueError("cannot batch an empty sample set")
    if augment_on and config is None:
        config = AugmentConfig()
    n = len(samples)
    order = np.arange(n) if rng is None else rng.permutation(n)
    for start in range(0, n, batch_size):
        idx = order[start : start + batch_size]
        chunk = [samples[i] for i in idx]
        if augment_on:
            chunk = [augment(s, config, rng) for s in chunk]
        x = np.stack([s.pixels for s in chunk]).astype(np.float32)
        y = np.array([s.label for s in chunk], dtype=np.int64)
        yield x, y
