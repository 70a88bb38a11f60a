"""Layer implementations with hand-written forward and backward passes.

Conventions: batches are channels-last (``[N, L, C]`` for 1D, ``[N, H, W, C]``
for 2D). Convolutions are valid (no padding), stride 1; pooling uses window 2,
stride 2 with trailing odd rows/columns dropped. Activations (ReLU / Sigmoid)
are folded into the owning layer. Caches needed by backward() are written only
during training-mode forwards, so inference never mutates a layer.
"""

from __future__ import annotations

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from .errors import ShapeMismatchError

ACTIVATIONS = (None, "relu", "sigmoid")


class Parameter:
    """A weight or bias tensor plus its gradient buffer."""

    def __init__(self, name: str, value: np.ndarray):
        self.name = name
        self.value = value
        self.grad: np.ndarray | None = None

    @property
    def shape(self):
        return self.value.shape

    def __repr__(self):
        return f"Parameter({self.name}, shape={self.value.shape})"


def glorot_uniform(shape, fan_in, fan_out, rng, dtype):
    bound = np.sqrt(6.0 / (fan_in + fan_out))
    return rng.uniform(-bound, bound, size=shape).astype(dtype)


def _activate(z, activation):
    if activation is None:
        return z
    if activation == "relu":
        return np.maximum(z, 0.0)
    if activation == "sigmoid":
        return 1.0 / (1.0 + np.exp(-z))
    raise ValueError(f"unknown activation {activation!r}")


def _activation_backward(dy, z, out, activation):
    if activation is None:
        return dy
    if activation == "relu":
        return dy * (z > 0.0)
    if activation == "sigmoid":
        return dy * out * (1.0 - out)
    raise ValueError(f"unknown activation {activation!r}")


class Layer:
    """Base class: shape propagation plus forward/backward contracts."""

    index: int = -1  # position in the owning graph, set at build time

    def params(self) -> list[Parameter]:
        return []

    def output_shape(self, input_shape: tuple) -> tuple:
        raise NotImplementedError

    def forward(self, x, training=False, rng=None):
        raise NotImplementedError

    def backward(self, dy):
        raise NotImplementedError

    def clear_cache(self):
        pass

    def _check_input(self, x, expected_inner):
        if tuple(x.shape[1:]) != tuple(expected_inner):
            raise ShapeMismatchError(self.index, expected_inner, x.shape[1:])


class Conv1D(Layer):
    """Valid 1D convolution, stride 1, over [N, L, C] inputs."""

    def __init__(self, input_shape, kernel, filters, activation, rng, dtype):
        self.input_shape = tuple(input_shape)
        length, channels = self.input_shape
        if length < kernel:
            raise ShapeMismatchError(self.index, (kernel, channels), self.input_shape)
        self.kernel = kernel
        self.filters = filters
        self.activation = activation
        fan_in = kernel * channels
        self.w = Parameter(
            "conv1d.w", glorot_uniform((kernel, channels, filters), fan_in, filters, rng, dtype)
        )
        self.b = Parameter("conv1d.b", np.zeros(filters, dtype=dtype))
        self._cache = None

    def params(self):
        return [self.w, self.b]

    def output_shape(self, input_shape):
        length, _ = input_shape
        return (length - self.kernel + 1, self.filters)

    def forward(self, x, training=False, rng=None):
        self._check_input(x, self.input_shape)
        n = x.shape[0]
        out_len = x.shape[1] - self.kernel + 1
        # windows: [N, OL, C, K] -> [N, OL, K, C] so columns follow the
        # (kernel step, channel) layout of the weight tensor
        win = sliding_window_view(x, self.kernel, axis=1)
        cols = np.ascontiguousarray(np.swapaxes(win, 2, 3)).reshape(n * out_len, -1)
        z = cols @ self.w.value.reshape(-1, self.filters)
        z = z.reshape(n, out_len, self.filters) + self.b.value
        out = _activate(z, self.activation)
        if training:
            self._cache = (x.shape, cols, z, out)
        return out

    def backward(self, dy):
        in_shape, cols, z, out = self._cache
        n, out_len, _ = dy.shape
        dz = _activation_backward(dy, z, out, self.activation)
        dz_flat = dz.reshape(n * out_len, self.filters)
        self.w.grad = (cols.T @ dz_flat).reshape(self.w.value.shape)
        self.b.grad = dz.sum(axis=(0, 1))
        dcols = (dz_flat @ self.w.value.reshape(-1, self.filters).T).reshape(
            n, out_len, self.kernel, in_shape[2]
        )
        dx = np.zeros(in_shape, dtype=dy.dtype)
        for k in range(self.kernel):
            dx[:, k : k + out_len, :] += dcols[:, :, k, :]
        return dx

    def clear_cache(self):
        self._cache = None


class Conv2D(Layer):
    """Valid 2D convolution, stride 1, over [N, H, W, C] inputs."""

    def __init__(self, input_shape, kernel, filters, activation, rng, dtype):
        self.input_shape = tuple(input_shape)
        h, w, channels = self.input_shape
        kh, kw = kernel
        if h < kh or w < kw:
            raise ShapeMismatchError(self.index, (kh, kw, channels), self.input_shape)
        self.kernel = (kh, kw)
        self.filters = filters
        self.activation = activation
        fan_in = kh * kw * channels
        self.w = Parameter(
            "conv2d.w",
            glorot_uniform((kh, kw, channels, filters), fan_in, filters, rng, dtype),
        )
        self.b = Parameter("conv2d.b", np.zeros(filters, dtype=dtype))
        self._cache = None

    def params(self):
        return [self.w, self.b]

    def output_shape(self, input_shape):
        h, w, _ = input_shape
        kh, kw = self.kernel
        return (h - kh + 1, w - kw + 1, self.filters)

    def _im2col(self, x):
        kh, kw = self.kernel
        n = x.shape[0]
        oh = x.shape[1] - kh + 1
        ow = x.shape[2] - kw + 1
        # [N, OH, OW, C, KH, KW] -> [N, OH, OW, KH, KW, C]
        win = sliding_window_view(x, (kh, kw), axis=(1, 2))
        cols = np.ascontiguousarray(win.transpose(0, 1, 2, 4, 5, 3))
        return cols.reshape(n * oh * ow, kh * kw * x.shape[3]), oh, ow

    def forward(self, x, training=False, rng=None):
        self._check_input(x, self.input_shape)
        n = x.shape[0]
        cols, oh, ow = self._im2col(x)
        z = cols @ self.w.value.reshape(-1, self.filters)
        z = z.reshape(n, oh, ow, self.filters) + self.b.value
        out = _activate(z, self.activation)
        if training:
            self._cache = (x.shape, cols, z, out)
        return out

    def backward(self, dy):
        in_shape, cols, z, out = self._cache
        n, oh, ow, _ = dy.shape
        kh, kw = self.kernel
        dz = _activation_backward(dy, z, out, self.activation)
        dz_flat = dz.reshape(n * oh * ow, self.filters)
        self.w.grad = (cols.T @ dz_flat).reshape(self.w.value.shape)
        self.b.grad = dz.sum(axis=(0, 1, 2))
        dcols = (dz_flat @ self.w.value.reshape(-1, self.filters).T).reshape(
            n, oh, ow, kh, kw, in_shape[3]
        )
        dx = np.zeros(in_shape, dtype=dy.dtype)
        for p in range(kh):
            for q in range(kw):
                dx[:, p : p + oh, q : q + ow, :] += dcols[:, :, :, p, q, :]
        return dx

    def clear_cache(self):
        self._cache = None


class MaxPool1D(Layer):
    """Window-2, stride-2 max pooling; a trailing odd element is dropped."""

    def __init__(self, input_shape):
        self.input_shape = tuple(input_shape)
        self._cache = None

    def output_shape(self, input_shape):
        length, channels = input_shape
        return (length // 2, channels)

    def forward(self, x, training=False, rng=None):
        self._check_input(x, self.input_shape)
        n, length, channels = x.shape
        out_len = length // 2
        windows = x[:, : out_len * 2, :].reshape(n, out_len, 2, channels)
        idx = windows.argmax(axis=2)
        out = np.take_along_axis(windows, idx[:, :, None, :], axis=2)[:, :, 0, :]
        if training:
            self._cache = (x.shape, idx)
        return out

    def backward(self, dy):
        in_shape, idx = self._cache
        n, length, channels = in_shape
        out_len = length // 2
        dwin = np.zeros((n, out_len, 2, channels), dtype=dy.dtype)
        np.put_along_axis(dwin, idx[:, :, None, :], dy[:, :, None, :], axis=2)
        dx = np.zeros(in_shape, dtype=dy.dtype)
        dx[:, : out_len * 2, :] = dwin.reshape(n, out_len * 2, channels)
        return dx

    def clear_cache(self):
        self._cache = None


class MaxPool2D(Layer):
    """2x2, stride-2 max pooling; trailing odd rows/columns are dropped."""

    def __init__(self, input_shape):
        self.input_shape = tuple(input_shape)
        self._cache = None

    def output_shape(self, input_shape):
        h, w, channels = input_shape
        return (h // 2, w // 2, channels)

    def forward(self, x, training=False, rng=None):
        self._check_input(x, self.input_shape)
        n, h, w, channels = x.shape
        oh, ow = h // 2, w // 2
        windows = (
            x[:, : oh * 2, : ow * 2, :]
            .reshape(n, oh, 2, ow, 2, channels)
            .transpose(0, 1, 3, 5, 2, 4)
            .reshape(n, oh, ow, channels, 4)
        )
        idx = windows.argmax(axis=4)
        out = np.take_along_axis(windows, idx[..., None], axis=4)[..., 0]
        if training:
            self._cache = (x.shape, idx)
        return out

    def backward(self, dy):
        in_shape, idx = self._cache
        n, h, w, channels = in_shape
        oh, ow = h // 2, w // 2
        dwin = np.zeros((n, oh, ow, channels, 4), dtype=dy.dtype)
        np.put_along_axis(dwin, idx[..., None], dy[..., None], axis=4)
        dx = np.zeros(in_shape, dtype=dy.dtype)
        dx[:, : oh * 2, : ow * 2, :] = (
            dwin.reshape(n, oh, ow, channels, 2, 2)
            .transpose(0, 1, 4, 2, 5, 3)
            .reshape(n, oh * 2, ow * 2, channels)
        )
        return dx

    def clear_cache(self):
        self._cache = None


class Flatten(Layer):
    def __init__(self, input_shape):
        self.input_shape = tuple(input_shape)
        self._cache = None

    def output_shape(self, input_shape):
        return (int(np.prod(input_shape)),)

    def forward(self, x, training=False, rng=None):
        self._check_input(x, self.input_shape)
        if training:
            self._cache = x.shape
        return x.reshape(x.shape[0], -1)

    def backward(self, dy):
        return dy.reshape(self._cache)

    def clear_cache(self):
        self._cache = None


class Dense(Layer):
    """Fully connected layer over [N, D] inputs."""

    def __init__(self, input_shape, units, activation, rng, dtype):
        self.input_shape = tuple(input_shape)
        (in_features,) = self.input_shape
        self.units = units
        self.activation = activation
        self.w = Parameter(
            "dense.w", glorot_uniform((in_features, units), in_features, units, rng, dtype)
        )
        self.b = Parameter("dense.b", np.zeros(units, dtype=dtype))
        self._cache = None

    def params(self):
        return [self.w, self.b]

    def output_shape(self, input_shape):
        return (self.units,)

    def forward(self, x, training=False, rng=None):
        self._check_input(x, self.input_shape)
        z = x @ self.w.value + self.b.value
        out = _activate(z, self.activation)
        if training:
            self._cache = (x, z, out)
        return out

    def backward(self, dy):
        x, z, out = self._cache
        dz = _activation_backward(dy, z, out, self.activation)
        self.w.grad = x.T @ dz
        self.b.grad = dz.sum(axis=0)
        return dz @ self.w.value.T

    def clear_cache(self):
        self._cache = None


def dropout_mask(shape, rate, rng):
    """Inverted-dropout mask: 0 with probability ``rate``, else 1/(1-rate)."""
    if not 0.0 <= rate < 1.0:
        raise ValueError(f"dropout rate must lie in [0, 1), got {rate}")
    if rate == 0.0:
        return np.ones(shape, dtype=np.float64)
    keep = rng.random(shape) >= rate
    return keep.astype(np.float64) / (1.0 - rate)


class Dropout(Layer):
    """Inverted dropout: scales at train time so inference is the identity."""

    def __init__(self, input_shape, rate):
        if not 0.0 <= rate < 1.0:
            raise ValueError(f"dropout rate must lie in [0, 1), got {rate}")
        self.input_shape = tuple(input_shape)
        self.rate = rate
        self._mask = None
        # test hook: when set, forward() uses this mask instead of sampling
        self.fixed_mask: np.ndarray | None = None

    def output_shape(self, input_shape):
        return tuple(input_shape)

    def forward(self, x, training=False, rng=None):
        self._check_input(x, self.input_shape)
        if not training:
            return x
        if self.fixed_mask is not None:
            mask = self.fixed_mask
        elif self.rate == 0.0:
            mask = np.ones(x.shape, dtype=x.dtype)
        else:
            if rng is None:
                raise ValueError("training-mode dropout requires an rng stream")
            mask = dropout_mask(x.shape, self.rate, rng).astype(x.dtype)
        self._mask = mask
        return x * mask

    def backward(self, dy):
        return dy * self._mask

    def clear_cache(self):
        self._mask = None
