"""Adam optimizer with bias correction (the only optimizer in this engine)."""

from __future__ import annotations

import numpy as np

from .errors import NonFiniteGradientError


class AdamState:
    """First/second moment buffers plus the shared step counter."""

    def __init__(self, params, learning_rate, beta1=0.9, beta2=0.999, epsilon=1e-8):
        if learning_rate <= 0:
            raise ValueError("learning_rate must be positive")
        self.learning_rate = float(learning_rate)
        self.beta1 = float(beta1)
        self.beta2 = float(beta2)
        self.epsilon = float(epsilon)
        self.step_count = 0
        self.first_moment = [np.zeros_like(p.value) for p in params]
        self.second_moment = [np.zeros_like(p.value) for p in params]


def adam_step(params, grads, state: AdamState):
    """Apply one in-place Adam update: p -= lr * m_hat / (sqrt(v_hat) + eps)."""
    if len(params) != len(grads) or len(params) != len(state.first_moment):
        raise ValueError("params, grads and state must have matching lengths")
    state.step_count += 1
    t = state.step_count
    b1, b2 = state.beta1, state.beta2
    bias1 = 1.0 - b1**t
    bias2 = 1.0 - b2**t
    for i, (p, g) in enumerate(zip(params, grads)):
        g = np.asarray(g)
        if g.shape != p.value.shape:
            raise ValueError(
                f"gradient shape {g.shape} does not match parameter "
                f"{p.name} shape {p.value.shape}"
            )
        if not np.all(np.isfinite(g)):
            raise NonFiniteGradientError(p.name)
        m = state.first_moment[i]
        v = state.second_moment[i]
        m *= b1
        m += (1.0 - b1) * g
        v *= b2
        v += (1.0 - b2) * np.square(g)
        m_hat = m / bias1
        v_hat = v / bias2
        p.value -= (state.learning_rate * m_hat / (np.sqrt(v_hat) + state.epsilon)).astype(
            p.value.dtype
        )
    return params, state
