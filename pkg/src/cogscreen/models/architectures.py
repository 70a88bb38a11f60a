"""Builders for the two fixed classifier architectures.

The 1D network reads a six-feature standardized health vector shaped [6, 1]
and ends in a two-unit sigmoid head (one-hot targets; the demented
probability is the unit at index 1). The 2D network reads [S, S, 3] images
and ends in a single sigmoid unit. Both are trained with binary
cross-entropy under Adam.
"""

from __future__ import annotations

import numpy as np

from ..nn import LayerSpec, ModelGraph

ARCH_1D = "MOD1D"
ARCH_2D = "MOD2D"

# probability-of-demented output locations
DEMENTED_UNIT_1D = 1

MOD1D_DROPOUT = 0.2
MOD2D_DROPOUT = 0.5

MOD1D_INPUT_SHAPE = (6, 1)
MOD2D_DEFAULT_SIZE = 224


def mod1d_specs(dropout_rate=MOD1D_DROPOUT):
    return [
        LayerSpec("Conv1D", kernel=2, units=64, activation="relu"),
        LayerSpec("Conv1D", kernel=2, units=64, activation="relu"),
        LayerSpec("Dropout", rate=dropout_rate),
        LayerSpec("MaxPool1D"),
        LayerSpec("Flatten"),
        LayerSpec("Dense", units=100, activation="relu"),
        LayerSpec("Dense", units=2, activation="sigmoid"),
    ]


def mod2d_specs(dropout_rate=MOD2D_DROPOUT):
    return [
        LayerSpec("Conv2D", kernel=(3, 3), units=32, activation="relu"),
        LayerSpec("MaxPool2D"),
        LayerSpec("Conv2D", kernel=(3, 3), units=64, activation="relu"),
        LayerSpec("MaxPool2D"),
        LayerSpec("Conv2D", kernel=(3, 3), units=128, activation="relu"),
        LayerSpec("MaxPool2D"),
        LayerSpec("Conv2D", kernel=(3, 3), units=256, activation="relu"),
        LayerSpec("MaxPool2D"),
        LayerSpec("Flatten"),
        LayerSpec("Dense", units=512, activation="relu"),
        LayerSpec("Dropout", rate=dropout_rate),
        LayerSpec("Dense", units=256, activation="relu"),
        LayerSpec("Dropout", rate=dropout_rate),
        LayerSpec("Dense", units=1, activation="sigmoid"),
    ]


def build_mod1d(seed, dtype=np.float32) -> ModelGraph:
    """Two stacked length-2 convolutions over the six health features."""
    return ModelGraph(mod1d_specs(), MOD1D_INPUT_SHAPE, seed=seed, dtype=dtype)


MOD2D_MIN_SIZE = 46  # smallest extent that survives the four conv/pool stages


def build_mod2d(seed, input_size=MOD2D_DEFAULT_SIZE, dtype=np.float32) -> ModelGraph:
    """Four conv/pool stages then a three-layer dense head over face images.

    input_size defaults to 224; smaller sizes keep the same layer stack with
    the dense head scaled by the reduced flatten width (used for smoke runs).
    """
    if input_size < MOD2D_MIN_SIZE:
        raise ValueError(f"input_size must be at least {MOD2D_MIN_SIZE}, got {input_size}")
    return ModelGraph(mod2d_specs(), (input_size, input_size, 3), seed=seed, dtype=dtype)


KIND_SEQUENCES = {
    ARCH_1D: tuple(s.kind for s in mod1d_specs()),
    ARCH_2D: tuple(s.kind for s in mod2d_specs()),
}


def architecture_id_for(model: ModelGraph):
    """Identify which of the two architectures a graph instantiates, or None."""
    kinds = tuple(s.kind for s in model.specs)
    for arch, seq in KIND_SEQUENCES.items():
        if kinds == seq:
            return arch
    return None


def demented_score(model: ModelGraph, output: np.ndarray) -> np.ndarray:
    """Per-sample probability of the demented class from a forward output."""
    if output.shape[1] == 2:
        return output[:, DEMENTED_UNIT_1D]
    return output[:, 0]


def targets_for_labels(model: ModelGraph, labels: np.ndarray) -> np.ndarray:
    """BCE targets for binary labels: one-hot for the 2-unit head, else [y]."""
    labels = np.asarray(labels)
    if model.output_shape == (2,):
        return np.stack([1.0 - labels, labels], axis=1).astype(np.float32)
    return labels.reshape(-1, 1).astype(np.float32)
