"""Shared fixtures: stub-trained models with forced scores, fake clock."""

import base64
import io

import numpy as np
import pytest
from PIL import Image

from cogscreen.models import build_mod1d, build_mod2d, save_weights


class FakeClock:
    """Monotonic clock the tests can advance by hand."""

    def __init__(self, start=0.0):
        self.now = float(start)

    def __call__(self):
        return self.now

    def advance(self, dt):
        self.now += dt
        return self.now


def make_stub_1d(score):
    """A 1D model that outputs the given demented probability for any input."""
    logit = float(np.log(score / (1.0 - score)))
    model = build_mod1d(seed=0)
    for p in model.parameters():
        p.value[:] = 0.0
    model.parameters()[-1].value[:] = np.array([0.0, logit], dtype=np.float32)
    return model


def make_stub_2d(score, input_size=48):
    logit = float(np.log(score / (1.0 - score)))
    model = build_mod2d(seed=0, input_size=input_size)
    for p in model.parameters():
        p.value[:] = 0.0
    model.parameters()[-1].value[:] = logit
    return model


def write_stub_weights(tmp_path, score_1d, score_2d):
    """Two stub weight files (with scaler stats) for registry loading."""
    p1 = tmp_path / f"stub1d_{score_1d}.modw"
    p2 = tmp_path / f"stub2d_{score_2d}.modw"
    save_weights(
        make_stub_1d(score_1d), "MOD1D", p1,
        preprocessing={"mean": [0.0] * 6, "std": [1.0] * 6},
    )
    save_weights(make_stub_2d(score_2d), "MOD2D", p2)
    return p1, p2


def png_base64(size=32, seed=0):
    rng = np.random.default_rng(seed)
    arr = (rng.random((size, size, 3)) * 255).astype(np.uint8)
    buf = io.BytesIO()
    Image.fromarray(arr).save(buf, format="PNG")
    return base64.b64encode(buf.getvalue()).decode("ascii")


@pytest.fixture
def fake_clock():
    return FakeClock()
