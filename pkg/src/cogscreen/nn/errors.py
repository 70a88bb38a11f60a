"""Errors raised by the tensor/layer engine."""


class ShapeMismatchError(ValueError):
    """Input extents do not match what a layer expects.

    Carries the layer index so callers can point at the offending layer.
    """

    def __init__(self, layer_index, expected, actual):
        self.layer_index = layer_index
        self.expected = tuple(expected)
        self.actual = tuple(actual)
        super().__init__(
            f"layer {layer_index}: expected input extents {self.expected}, "
            f"got {self.actual}"
        )


class NoRetainedActivationsError(RuntimeError):
    """backward() called without a preceding training-mode forward pass."""


class NonFiniteGradientError(ValueError):
    """A gradient tensor contains NaN or infinity."""

    def __init__(self, param_name):
        self.param_name = param_name
        super().__init__(f"non-finite gradient for parameter '{param_name}'")
