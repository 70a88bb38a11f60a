"""Sequential model graph: shape propagation, forward/backward, parameters.

A graph is declared as a list of :class:`LayerSpec` and instantiated against a
fixed input shape. Weights are initialized deterministically from the graph
seed (uniform Glorot bounds, zero biases), so two graphs built from the same
spec and seed are bitwise identical.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import layers as L
from .errors import NoRetainedActivationsError, ShapeMismatchError

KINDS = ("Conv1D", "Conv2D", "MaxPool1D", "MaxPool2D", "Flatten", "Dense", "Dropout")


@dataclass(frozen=True)
class LayerSpec:
    """Declarative description of one layer.

    kernel applies to convolutions (an int for 1D, a (kh, kw) pair for 2D);
    units to Conv (filter count) and Dense; rate to Dropout. Activation is
    one of None / "relu" / "sigmoid".
    """

    kind: str
    kernel: object = None
    units: int | None = None
    activation: str | None = None
    rate: float | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown layer kind {self.kind!r}")
        if self.activation not in L.ACTIVATIONS:
            raise ValueError(f"unknown activation {self.activation!r}")

    def to_dict(self):
        d = {"kind": self.kind}
        if self.kernel is not None:
            d["kernel"] = list(self.kernel) if isinstance(self.kernel, (tuple, list)) else self.kernel
        if self.units is not None:
            d["units"] = self.units
        if self.activation is not None:
            d["activation"] = self.activation
        if self.rate is not None:
            d["rate"] = self.rate
        return d

    @classmethod
    def from_dict(cls, d):
        kernel = d.get("kernel")
        if isinstance(kernel, list):
            kernel = tuple(kernel)
        return cls(
            kind=d["kind"],
            kernel=kernel,
            units=d.get("units"),
            activation=d.get("activation"),
            rate=d.get("rate"),
        )


def _build_layer(spec: LayerSpec, input_shape, rng, dtype):
    if spec.kind == "Conv1D":
        return L.Conv1D(input_shape, spec.kernel, spec.units, spec.activation, rng, dtype)
    if spec.kind == "Conv2D":
        return L.Conv2D(input_shape, spec.kernel, spec.units, spec.activation, rng, dtype)
    if spec.kind == "MaxPool1D":
        return L.MaxPool1D(input_shape)
    if spec.kind == "MaxPool2D":
        return L.MaxPool2D(input_shape)
    if spec.kind == "Flatten":
        return L.Flatten(input_shape)
    if spec.kind == "Dense":
        return L.Dense(input_shape, spec.units, spec.activation, rng, dtype)
    if spec.kind == "Dropout":
        return L.Dropout(input_shape, spec.rate)
    raise ValueError(f"unknown layer kind {spec.kind!r}")


class ModelGraph:
    """An ordered layer stack with parameters and deterministic init."""

    def __init__(self, specs, input_shape, seed, dtype=np.float32):
        self.specs = list(specs)
        self.input_shape = tuple(input_shape)
        self.seed = int(seed)
        self.dtype = np.dtype(dtype)
        self.layers: list[L.Layer] = []
        rng = np.random.default_rng(self.seed)
        shape = self.input_shape
        for i, spec in enumerate(self.specs):
            layer = _build_layer(spec, shape, rng, self.dtype)
            layer.index = i
            shape = layer.output_shape(shape)
            self.layers.append(layer)
        self.output_shape = shape
        self._training_pass_done = False

    # -- introspection -------------------------------------------------

    def parameters(self) -> list[L.Parameter]:
        out = []
        for i, layer in enumerate(self.layers):
            for p in layer.params():
                p.name = f"layer{i}.{p.name.split('.')[-1]}"
                out.append(p)
        return out

    def param_count(self) -> int:
        return sum(int(p.value.size) for p in self.parameters())

    def layer_table(self):
        """Rows of (kind, output shape, parameter count) per layer."""
        rows = []
        shape = self.input_shape
        for spec, layer in zip(self.specs, self.layers):
            shape = layer.output_shape(shape)
            n_params = sum(int(p.value.size) for p in layer.params())
            rows.append((spec.kind, shape, n_params))
        return rows

    # -- execution -----------------------------------------------------

    def forward(self, batch, training=False, rng=None):
        batch = np.asarray(batch, dtype=self.dtype)
        if tuple(batch.shape[1:]) != self.input_shape:
            raise ShapeMismatchError(-1, self.input_shape, batch.shape[1:])
        x = batch
        for layer in self.layers:
            x = layer.forward(x, training=training, rng=rng)
        if training:
            self._training_pass_done = True
        return x

    def backward(self, loss_gradient):
        """Backpropagate and return per-parameter gradients.

        Requires a preceding training-mode forward; the dropout masks and
        cached activations from that pass are reused.
        """
        if not self._training_pass_done:
            raise NoRetainedActivationsError(
                "backward() requires a prior forward(training=True)"
            )
        dy = np.asarray(loss_gradient, dtype=self.dtype)
        for layer in reversed(self.layers):
            dy = layer.backward(dy)
        self._training_pass_done = False
        return [p.grad for p in self.parameters()]

    def clear_caches(self):
        for layer in self.layers:
            layer.clear_cache()
        self._training_pass_done = False

    def set_parameters(self, values):
        params = self.parameters()
        if len(values) != len(params):
            raise ValueError(f"expected {len(params)} tensors, got {len(values)}")
        for p, v in zip(params, values):
            v = np.asarray(v, dtype=self.dtype)
            if v.shape != p.value.shape:
                raise ValueError(
                    f"parameter {p.name}: expected shape {p.value.shape}, got {v.shape}"
                )
            p.value = v
