"""Deterministic tensor/layer engine: forward passes, manual backprop, Adam."""

from .adam import AdamState, adam_step
from .errors import (
    NonFiniteGradientError,
    NoRetainedActivationsError,
    ShapeMismatchError,
)
from .layers import Parameter, dropout_mask
from .losses import bce_loss
from .model import KINDS, LayerSpec, ModelGraph

__all__ = [
    "AdamState",
    "adam_step",
    "bce_loss",
    "dropout_mask",
    "KINDS",
    "LayerSpec",
    "ModelGraph",
    "Parameter",
    "NonFiniteGradientError",
    "NoRetainedActivationsError",
    "ShapeMismatchError",
]
