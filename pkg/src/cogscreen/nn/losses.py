"""Binary cross-entropy loss. Reductions accumulate in float64."""

from __future__ import annotations

import numpy as np

CLAMP_EPS = 1e-7


def bce_loss(predictions, targets):
    """Mean binary cross-entropy and its elementwise gradient.

    Predictions are clamped into [eps, 1-eps] before the log; the gradient is
    evaluated at the clamped values. Returns (scalar loss, gradient array of
    the predictions' shape).
    """
    p = np.asarray(predictions)
    t = np.asarray(targets)
    if p.shape != t.shape:
        raise ValueError(f"prediction shape {p.shape} != target shape {t.shape}")
    pc = np.clip(p.astype(np.float64), CLAMP_EPS, 1.0 - CLAMP_EPS)
    t64 = t.astype(np.float64)
    n = pc.size
    loss = -(t64 * np.log(pc) + (1.0 - t64) * np.log1p(-pc)).sum() / n
    grad = (pc - t64) / (pc * (1.0 - pc)) / n
    return float(loss), grad.astype(p.dtype if p.dtype.kind == "f" else np.float64)
