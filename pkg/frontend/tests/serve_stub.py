"""Start the screening service with stub-trained models for UI tests.

The 1D stub always scores 0.2 (NonDemented) and the 2D stub 0.8 (Demented),
so the full failure journey lands on the (0, 1) decision row. Memorization
windows are shortened so the journeys run quickly; countdowns stay long so
they never expire mid-test.
"""

import sys
import tempfile
from dataclasses import replace
from pathlib import Path

import numpy as np
import uvicorn

from cogscreen.game import DEFAULT_LEVELS
from cogscreen.models import build_mod1d, build_mod2d, save_weights
from cogscreen.service import ModelRegistry, SessionStore, create_app


def stub_1d(score):
    logit = float(np.log(score / (1.0 - score)))
    model = build_mod1d(seed=0)
    for p in model.parameters():
        p.value[:] = 0.0
    model.parameters()[-1].value[:] = np.array([0.0, logit], dtype=np.float32)
    return model


def stub_2d(score):
    logit = float(np.log(score / (1.0 - score)))
    model = build_mod2d(seed=0, input_size=48)
    for p in model.parameters():
        p.value[:] = 0.0
    model.parameters()[-1].value[:] = logit
    return model


def main():
    port = int(sys.argv[1]) if len(sys.argv) > 1 else 8931
    tmp = Path(tempfile.mkdtemp(prefix="cogscreen-ui-stub-"))
    p1 = tmp / "stub1d.modw"
    p2 = tmp / "stub2d.modw"
    save_weights(stub_1d(0.2), "MOD1D", p1,
                 preprocessing={"mean": [0.0] * 6, "std": [1.0] * 6})
    save_weights(stub_2d(0.8), "MOD2D", p2)
    registry = ModelRegistry.from_files(p1, p2)
    levels = {
        1: replace(DEFAULT_LEVELS[1], show_timer_s=0.3, countdown_s=600.0),
        2: replace(DEFAULT_LEVELS[2], show_timer_s=0.3, countdown_s=600.0),
    }
    store = SessionStore(levels=levels, ttl_s=1800.0)
    app = create_app(registry, store)
    uvicorn.run(app, host="127.0.0.1", port=port, log_level="warning")


if __name__ == "__main__":
    main()
