"""Seeded synthetic corpora for desk-scale training and the acceptance suite.

Health records carry a strong class signal through the categorization ranges
(each feature lands in its label-typical class with high probability), so the
downstream pipeline can reach high test accuracy. Images are two separable
texture families: smooth low-frequency blobs vs. high-frequency checkers.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image

from .health.pipeline import HealthRecord

# per-feature class typical for each label; classes are the categorization codes
_TYPICAL = {
    1: {"diabetic": 1, "blood_oxygen": 1, "body_temp": 3, "heart_rate": 3, "weight": 1, "age": 3},
    0: {"diabetic": 0, "blood_oxygen": 2, "body_temp": 2, "heart_rate": 2, "weight": 2, "age": 1},
}

_CLASS_RANGES = {
    "blood_oxygen": {1: (88.0, 94.9), 2: (95.0, 100.0), 3: (100.1, 102.0)},
    "body_temp": {1: (35.0, 36.4), 2: (36.5, 37.5), 3: (37.6, 39.5)},
    "heart_rate": {1: (40.0, 59.5), 2: (60.0, 100.0), 3: (100.5, 140.0)},
    "weight": {1: (35.0, 49.5), 2: (50.0, 70.0), 3: (70.5, 110.0)},
    "age": {1: (40.0, 64.5), 2: (65.0, 74.5), 3: (75.0, 90.0)},
}

SIGNAL_STRENGTH = 0.92  # probability a feature falls in its label-typical class


def synth_health_records(n, seed, demented_fraction=0.3):
    """Generate n labeled records with separable categorized features."""
    rng = np.random.default_rng(seed)
    records = []
    for _ in range(n):
        label = int(rng.random() < demented_fraction)
        typical = _TYPICAL[label]
        values = {}
        for feature, ranges in _CLASS_RANGES.items():
            if rng.random() < SIGNAL_STRENGTH:
                cls = typical[feature]
            else:
                cls = int(rng.integers(1, 4))
            lo, hi = ranges[cls]
            values[feature] = float(rng.uniform(lo, hi))
        if rng.random() < SIGNAL_STRENGTH:
            diabetic = typical["diabetic"]
        else:
            diabetic = int(rng.integers(0, 2))
        records.append(
            HealthRecord(
                age=values["age"],
                blood_oxygen=values["blood_oxygen"],
                heart_rate=values["heart_rate"],
                body_temp=values["body_temp"],
                weight=values["weight"],
                diabetic=diabetic,
                dementia_label=label,
            )
        )
    return records


def texture_pixels(label, rng, size=224):
    """One [size, size, 3] float32 texture image in [0, 1] for the given class."""
    if label == 0:
        # smooth: coarse noise grid upsampled bilinearly
        coarse = rng.uniform(0.15, 0.85, size=(7, 7, 3))
        img = Image.fromarray((coarse * 255).astype(np.uint8), mode="RGB")
        img = img.resize((size, size), Image.BILINEAR)
        pixels = np.asarray(img, dtype=np.float32) / 255.0
    else:
        tile = max(2, size // 28)
        px, py = int(rng.integers(tile)), int(rng.integers(tile))
        yy, xx = np.mgrid[0:size, 0:size]
        checker = (((yy + py) // tile + (xx + px) // tile) % 2).astype(np.float32)
        base = 0.2 + 0.6 * checker
        noise = rng.normal(0.0, 0.05, size=(size, size, 3)).astype(np.float32)
        pixels = np.clip(base[:, :, None] + noise, 0.0, 1.0)
    return pixels


def synth_image_samples(n_per_class, seed, size=224):
    """In-memory list of (pixels, label) pairs, n per class, interleaved."""
    rng = np.random.default_rng(seed)
    samples = []
    for i in range(n_per_class):
        for label in (0, 1):
            samples.append((texture_pixels(label, rng, size), label))
    return samples


def corpus_split_sizes(n_train_per_class):
    """Per-class split sizes with the 7:2:1 train/test/validation ratio
    (630 train per class gives 180 test and 90 validation)."""
    return {
        "train": n_train_per_class,
        "test": max(1, n_train_per_class * 2 // 7),
        "validation": max(1, n_train_per_class // 7),
    }


def write_image_corpus(root_dir, n_train_per_class, seed, size=224):
    """Write a train/test/validation PNG corpus in the loader's layout.

    Returns the per-split per-class counts.
    """
    root = Path(root_dir)
    rng = np.random.default_rng(seed)
    split_sizes = corpus_split_sizes(n_train_per_class)
    counts = {}
    for split_name, n in split_sizes.items():
        counts[split_name] = {}
        for class_name, label in (("non_demented", 0), ("demented", 1)):
            class_dir = root / split_name / class_name
            class_dir.mkdir(parents=True, exist_ok=True)
            for i in range(n):
                pixels = texture_pixels(label, rng, size)
                img = Image.fromarray((pixels * 255).astype(np.uint8), mode="RGB")
                img.save(class_dir / f"{class_name}_{i:04d}.png")
            counts[split_name][class_name] = n
    return counts
