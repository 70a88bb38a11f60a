"""Central finite-difference oracle for every layer kind and the loss.

All checks run in float64 so truncation error of the h=1e-4 central stencil
dominates. The oracle perturbs one scalar at a time and never reuses the
analytic path it is checking.
"""

import numpy as np
import pytest

from cogscreen.nn import LayerSpec, ModelGraph, bce_loss

H = 1e-4
REL_TOL = 1e-4


def numerical_param_grads(model, x, targets, loss_fn):
    """Central finite differences of loss w.r.t. every parameter scalar."""
    grads = []
    for p in model.parameters():
        g = np.zeros_like(p.value)
        flat = p.value.reshape(-1)
        gflat = g.reshape(-1)
        for i in range(flat.size):
            orig = flat[i]
            flat[i] = orig + H
            plus, _ = loss_fn(model.forward(x, training=False), targets)
            flat[i] = orig - H
            minus, _ = loss_fn(model.forward(x, training=False), targets)
            flat[i] = orig
            gflat[i] = (plus - minus) / (2 * H)
        grads.append(g)
    return grads


def numerical_input_grad(model, x, targets, loss_fn):
    g = np.zeros_like(x)
    flat = x.reshape(-1)
    gflat = g.reshape(-1)
    for i in range(flat.size):
        orig = flat[i]
        flat[i] = orig + H
        plus, _ = loss_fn(model.forward(x, training=False), targets)
        flat[i] = orig - H
        minus, _ = loss_fn(model.forward(x, training=False), targets)
        flat[i] = orig
        gflat[i] = (plus - minus) / (2 * H)
    return g


def sse_loss(pred, targets):
    """0.5 * sum((pred - t)^2): simple, smooth, nonzero everywhere."""
    diff = pred - targets
    return 0.5 * float((diff * diff).sum()), diff


def relative_error(a, b):
    denom = max(np.abs(a).max(), np.abs(b).max(), 1e-8)
    return np.abs(a - b).max() / denom


def check_model(model, x, seed, fix_dropout=False):
    rng = np.random.default_rng(seed + 1)
    targets = rng.normal(size=(x.shape[0],) + model.output_shape)
    if fix_dropout:
        from cogscreen.nn.layers import Dropout, dropout_mask

        for layer in model.layers:
            if isinstance(layer, Dropout):
                mask_shape = (x.shape[0],) + layer.input_shape
                layer.fixed_mask = dropout_mask(mask_shape, layer.rate, rng)
    out = model.forward(x, training=True, rng=rng)
    _, dy = sse_loss(out, targets)
    analytic_input = None
    # capture dx by hand: run layer backwards manually to also get input grad
    grads_analytic = model.backward(dy)
    # numeric side: dropout fixed masks make forward(training=False) differ,
    # so evaluate the numeric loss through training=True with the same masks
    if fix_dropout:
        def loss_at(inp):
            return sse_loss(model.forward(inp, training=True, rng=None), targets)[0]
    else:
        def loss_at(inp):
            return sse_loss(model.forward(inp, training=False), targets)[0]

    grads_numeric = []
    for p in model.parameters():
        g = np.zeros_like(p.value)
        flat, gflat = p.value.reshape(-1), g.reshape(-1)
        for i in range(flat.size):
            orig = flat[i]
            flat[i] = orig + H
            plus = loss_at(x)
            flat[i] = orig - H
            minus = loss_at(x)
            flat[i] = orig
            gflat[i] = (plus - minus) / (2 * H)
        grads_numeric.append(g)
    for p, ga, gn in zip(model.parameters(), grads_analytic, grads_numeric):
        err = relative_error(ga, gn)
        assert err < REL_TOL, f"{p.name}: relative error {err:.2e}"
    return analytic_input


def single_layer_model(spec, input_shape, seed, dtype=np.float64):
    return ModelGraph([spec], input_shape, seed=seed, dtype=dtype)


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("activation", [None, "relu", "sigmoid"])
def test_dense_gradients(seed, activation):
    rng = np.random.default_rng(100 + seed)
    din = int(rng.integers(3, 8))
    units = int(rng.integers(2, 7))
    model = single_layer_model(
        LayerSpec("Dense", units=units, activation=activation), (din,), seed
    )
    x = rng.normal(size=(3, din))
    check_model(model, x, seed)


@pytest.mark.parametrize("seed", range(5))
def test_conv1d_gradients(seed):
    rng = np.random.default_rng(200 + seed)
    length = int(rng.integers(4, 8))
    channels = int(rng.integers(1, 4))
    filters = int(rng.integers(2, 5))
    model = single_layer_model(
        LayerSpec("Conv1D", kernel=2, units=filters, activation="relu"),
        (length, channels),
        seed,
    )
    x = rng.normal(size=(2, length, channels))
    check_model(model, x, seed)


@pytest.mark.parametrize("seed", range(5))
def test_conv2d_gradients(seed):
    rng = np.random.default_rng(300 + seed)
    h = int(rng.integers(4, 7))
    w = int(rng.integers(4, 7))
    channels = int(rng.integers(1, 3))
    filters = int(rng.integers(2, 4))
    model = single_layer_model(
        LayerSpec("Conv2D", kernel=(3, 3), units=filters, activation="relu"),
        (h, w, channels),
        seed,
    )
    x = rng.normal(size=(2, h, w, channels))
    check_model(model, x, seed)


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("kind,shape", [("MaxPool1D", "1d"), ("MaxPool2D", "2d")])
def test_maxpool_input_gradients(seed, kind, shape):
    # pooling has no parameters; check the input gradient through a Dense head
    rng = np.random.default_rng(400 + seed)
    if shape == "1d":
        length = int(rng.integers(4, 9))
        channels = int(rng.integers(1, 4))
        input_shape = (length, channels)
        specs = [LayerSpec(kind), LayerSpec("Flatten"), LayerSpec("Dense", units=3)]
    else:
        h, w = int(rng.integers(4, 7)), int(rng.integers(4, 7))
        channels = int(rng.integers(1, 3))
        input_shape = (h, w, channels)
        specs = [LayerSpec(kind), LayerSpec("Flatten"), LayerSpec("Dense", units=3)]
    model = ModelGraph(specs, input_shape, seed=seed, dtype=np.float64)
    x = rng.normal(size=(2,) + input_shape)
    targets = rng.normal(size=(2,) + model.output_shape)

    out = model.forward(x, training=True)
    _, dy = sse_loss(out, targets)
    dx = dy
    for layer in reversed(model.layers):
        dx = layer.backward(dx)

    def loss_at(inp):
        return sse_loss(model.forward(inp, training=False), targets)[0]

    g = np.zeros_like(x)
    flat, gflat = x.reshape(-1), g.reshape(-1)
    for i in range(flat.size):
        orig = flat[i]
        flat[i] = orig + H
        plus = loss_at(x)
        flat[i] = orig - H
        minus = loss_at(x)
        flat[i] = orig
        gflat[i] = (plus - minus) / (2 * H)
    assert relative_error(dx, g) < REL_TOL


@pytest.mark.parametrize("seed", range(5))
def test_dropout_fixed_mask_gradients(seed):
    rng = np.random.default_rng(500 + seed)
    din = int(rng.integers(4, 8))
    model = ModelGraph(
        [LayerSpec("Dense", units=5, activation="relu"), LayerSpec("Dropout", rate=0.4)],
        (din,),
        seed=seed,
        dtype=np.float64,
    )
    x = rng.normal(size=(3, din))
    check_model(model, x, seed, fix_dropout=True)


@pytest.mark.parametrize("seed", range(5))
def test_multilayer_stack_gradients(seed):
    # conv -> pool -> flatten -> dense, jointly
    rng = np.random.default_rng(600 + seed)
    model = ModelGraph(
        [
            LayerSpec("Conv1D", kernel=2, units=3, activation="relu"),
            LayerSpec("MaxPool1D"),
            LayerSpec("Flatten"),
            LayerSpec("Dense", units=2, activation="sigmoid"),
        ],
        (6, 1),
        seed=seed,
        dtype=np.float64,
    )
    x = rng.normal(size=(2, 6, 1))
    check_model(model, x, seed)


@pytest.mark.parametrize("seed", range(5))
def test_bce_gradient_matches_finite_differences(seed):
    rng = np.random.default_rng(700 + seed)
    p = rng.uniform(0.05, 0.95, size=(4, 3))
    t = rng.integers(0, 2, size=(4, 3)).astype(np.float64)
    _, grad = bce_loss(p, t)
    g = np.zeros_like(p)
    flat, gflat = p.reshape(-1), g.reshape(-1)
    for i in range(flat.size):
        orig = flat[i]
        flat[i] = orig + H
        plus, _ = bce_loss(p, t)
        flat[i] = orig - H
        minus, _ = bce_loss(p, t)
        flat[i] = orig
        gflat[i] = (plus - minus) / (2 * H)
    assert relative_error(grad, g) < REL_TOL


def test_linear_regression_gradient_analytic():
    # single dense layer, identity activation, L = mean((y-t)^2)/2
    rng = np.random.default_rng(42)
    model = ModelGraph([LayerSpec("Dense", units=1)], (3,), seed=7, dtype=np.float64)
    x = rng.normal(size=(5, 3))
    t = rng.normal(size=(5, 1))
    y = model.forward(x, training=True)
    n = y.size
    dy = (y - t) / n
    grads = model.backward(dy)
    expected_w = x.T @ (y - t) / n
    expected_b = (y - t).sum(axis=0) / n
    np.testing.assert_allclose(grads[0], expected_w, rtol=1e-12)
    np.testing.assert_allclose(grads[1], expected_b, rtol=1e-12)


def test_zero_upstream_gradient_gives_zero_param_gradients():
    model = ModelGraph(
        [
            LayerSpec("Conv1D", kernel=2, units=4, activation="relu"),
            LayerSpec("Flatten"),
            LayerSpec("Dense", units=2),
        ],
        (6, 1),
        seed=3,
        dtype=np.float64,
    )
    x = np.random.default_rng(0).normal(size=(2, 6, 1))
    model.forward(x, training=True)
    grads = model.backward(np.zeros((2, 2)))
    for g in grads:
        assert np.all(g == 0.0)
