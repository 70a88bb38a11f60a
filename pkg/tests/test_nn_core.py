"""Forward-pass shape laws, dropout masks, Adam, and BCE behavior."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cogscreen.nn import (
    AdamState,
    LayerSpec,
    ModelGraph,
    NonFiniteGradientError,
    NoRetainedActivationsError,
    Parameter,
    ShapeMismatchError,
    adam_step,
    bce_loss,
    dropout_mask,
)


class TestForwardShapes:
    def test_conv1d_shape_reduction(self):
        model = ModelGraph(
            [LayerSpec("Conv1D", kernel=2, units=64, activation="relu")], (6, 1), seed=0
        )
        out = model.forward(np.zeros((1, 6, 1)))
        assert out.shape == (1, 5, 64)

    def test_conv2d_shape_reduction(self):
        model = ModelGraph(
            [LayerSpec("Conv2D", kernel=(3, 3), units=32, activation="relu")],
            (224, 224, 3),
            seed=0,
        )
        out = model.forward(np.zeros((1, 224, 224, 3), dtype=np.float32))
        assert out.shape == (1, 222, 222, 32)

    def test_pool_floors_odd_extent(self):
        model = ModelGraph([LayerSpec("MaxPool2D")], (109, 109, 4), seed=0)
        assert model.output_shape == (54, 54, 4)

    def test_zero_weights_output_is_activated_bias(self):
        model = ModelGraph(
            [LayerSpec("Dense", units=3, activation="sigmoid")], (5,), seed=0
        )
        w, b = model.parameters()
        w.value[:] = 0.0
        b.value[:] = np.array([0.0, 1.0, -1.0], dtype=np.float32)
        out = model.forward(np.random.default_rng(1).normal(size=(4, 5)))
        expected = 1.0 / (1.0 + np.exp(-b.value))
        np.testing.assert_allclose(out, np.tile(expected, (4, 1)), rtol=1e-6)

    def test_shape_mismatch_names_layer(self):
        model = ModelGraph(
            [LayerSpec("Conv1D", kernel=2, units=4, activation="relu")], (6, 1), seed=0
        )
        with pytest.raises(ShapeMismatchError) as exc:
            model.forward(np.zeros((1, 7, 1)))
        assert exc.value.expected == (6, 1)
        assert exc.value.actual == (7, 1)

    def test_backward_without_training_forward_raises(self):
        model = ModelGraph([LayerSpec("Dense", units=2)], (3,), seed=0)
        model.forward(np.zeros((1, 3)))
        with pytest.raises(NoRetainedActivationsError):
            model.backward(np.zeros((1, 2)))

    def test_inference_is_pure_and_repeatable(self):
        model = ModelGraph(
            [
                LayerSpec("Dense", units=4, activation="relu"),
                LayerSpec("Dropout", rate=0.5),
                LayerSpec("Dense", units=1, activation="sigmoid"),
            ],
            (3,),
            seed=5,
        )
        x = np.random.default_rng(2).normal(size=(2, 3))
        a = model.forward(x, training=False)
        b = model.forward(x, training=False)
        np.testing.assert_array_equal(a, b)

    def test_dropout_identity_at_inference(self):
        model = ModelGraph([LayerSpec("Dropout", rate=0.9)], (10,), seed=0)
        x = np.random.default_rng(0).normal(size=(4, 10)).astype(np.float32)
        np.testing.assert_array_equal(model.forward(x, training=False), x)

    def test_same_seed_same_init(self):
        a = ModelGraph([LayerSpec("Dense", units=8)], (5,), seed=11)
        b = ModelGraph([LayerSpec("Dense", units=8)], (5,), seed=11)
        for pa, pb in zip(a.parameters(), b.parameters()):
            np.testing.assert_array_equal(pa.value, pb.value)


class TestDropoutMask:
    def test_rate_zero_is_all_ones(self):
        mask = dropout_mask((100,), 0.0, np.random.default_rng(0))
        np.testing.assert_array_equal(mask, np.ones(100))

    def test_mask_mean_near_one(self):
        mask = dropout_mask((100_000,), 0.5, np.random.default_rng(123))
        assert 0.98 <= mask.mean() <= 1.02
        assert set(np.unique(mask)) <= {0.0, 2.0}

    def test_same_seed_identical_masks(self):
        a = dropout_mask((1000,), 0.3, np.random.default_rng(7))
        b = dropout_mask((1000,), 0.3, np.random.default_rng(7))
        np.testing.assert_array_equal(a, b)

    @pytest.mark.parametrize("rate", [-0.1, 1.0, 1.5])
    def test_invalid_rate_rejected(self, rate):
        with pytest.raises(ValueError):
            dropout_mask((10,), rate, np.random.default_rng(0))


class TestAdam:
    @staticmethod
    def scalar_param(value):
        return Parameter("w", np.array([value], dtype=np.float64))

    def test_zero_gradient_leaves_params_unchanged(self):
        p = self.scalar_param(3.0)
        state = AdamState([p], learning_rate=0.1)
        for _ in range(5):
            adam_step([p], [np.zeros(1)], state)
        assert p.value[0] == 3.0
        assert state.step_count == 5

    def test_first_step_magnitude_is_learning_rate(self):
        for g in (0.5, -2.0, 1e-3):
            p = self.scalar_param(0.0)
            state = AdamState([p], learning_rate=0.01)
            adam_step([p], [np.array([g])], state)
            assert p.value[0] == pytest.approx(-0.01 * np.sign(g), abs=1e-5)

    def test_quadratic_descent_matches_hand_stepped_oracle(self):
        # f(w) = w^2, grad = 2w, from w = 1, lr = 0.1
        p = self.scalar_param(1.0)
        state = AdamState([p], learning_rate=0.1)
        # independent oracle: plain-python Adam recurrence
        w, m, v = 1.0, 0.0, 0.0
        b1, b2, eps, lr = 0.9, 0.999, 1e-8, 0.1
        prev = abs(w)
        for t in range(1, 11):
            g = 2.0 * p.value[0]
            adam_step([p], [np.array([g])], state)
            gm = 2.0 * w
            m = b1 * m + (1 - b1) * gm
            v = b2 * v + (1 - b2) * gm * gm
            w -= lr * (m / (1 - b1**t)) / (np.sqrt(v / (1 - b2**t)) + eps)
            assert p.value[0] == pytest.approx(w, abs=1e-12)
            assert abs(p.value[0]) < prev
            prev = abs(p.value[0])

    def test_nonfinite_gradient_identifies_parameter(self):
        p = self.scalar_param(1.0)
        state = AdamState([p], learning_rate=0.1)
        with pytest.raises(NonFiniteGradientError) as exc:
            adam_step([p], [np.array([np.nan])], state)
        assert "w" in str(exc.value)

    def test_moments_match_param_shapes(self):
        model = ModelGraph(
            [LayerSpec("Conv1D", kernel=2, units=4, activation="relu")], (6, 1), seed=0
        )
        state = AdamState(model.parameters(), learning_rate=0.001)
        for p, m, v in zip(model.parameters(), state.first_moment, state.second_moment):
            assert m.shape == p.value.shape
            assert v.shape == p.value.shape


class TestBCE:
    def test_half_prediction_is_ln2(self):
        loss, _ = bce_loss(np.array([0.5]), np.array([1.0]))
        assert loss == pytest.approx(np.log(2.0), abs=1e-12)

    def test_perfect_prediction_loss_tiny(self):
        p = np.array([0.0, 1.0, 1.0, 0.0])
        t = np.array([0.0, 1.0, 1.0, 0.0])
        loss, _ = bce_loss(p, t)
        assert 0.0 <= loss <= -np.log1p(-1e-7) + 1e-12

    def test_matches_direct_summation_oracle(self):
        rng = np.random.default_rng(99)
        p = rng.uniform(1e-6, 1 - 1e-6, size=500)
        t = rng.integers(0, 2, size=500).astype(float)
        loss, _ = bce_loss(p, t)
        eps = 1e-7
        total = 0.0
        for pi, ti in zip(p, t):
            pc = min(max(pi, eps), 1 - eps)
            total += -(ti * np.log(pc) + (1 - ti) * np.log(1 - pc))
        assert loss == pytest.approx(total / 500, abs=1e-9)

    def test_shape_mismatch_rejected(self):
        with pytest.raises(ValueError):
            bce_loss(np.zeros(3), np.zeros(4))

    @given(
        st.lists(st.floats(min_value=1e-6, max_value=1 - 1e-6), min_size=1, max_size=50),
        st.data(),
    )
    @settings(max_examples=50, deadline=None)
    def test_nonnegative_and_zero_iff_perfect(self, probs, data):
        p = np.array(probs)
        t = data.draw(
            st.lists(st.sampled_from([0.0, 1.0]), min_size=len(probs), max_size=len(probs))
        )
        t = np.array(t)
        loss, _ = bce_loss(p, t)
        assert loss >= 0.0
        if np.array_equal(p, t):
            assert loss <= 1e-6


class TestDeterminism:
    def test_identical_seed_training_is_bitwise_identical(self):
        def run():
            model = ModelGraph(
                [
                    LayerSpec("Conv1D", kernel=2, units=4, activation="relu"),
                    LayerSpec("Dropout", rate=0.3),
                    LayerSpec("Flatten"),
                    LayerSpec("Dense", units=2, activation="sigmoid"),
                ],
                (6, 1),
                seed=21,
            )
            state = AdamState(model.parameters(), learning_rate=0.01)
            rng = np.random.default_rng(77)
            x = np.random.default_rng(5).normal(size=(8, 6, 1)).astype(np.float32)
            t = np.random.default_rng(6).integers(0, 2, size=(8, 2)).astype(np.float32)
            for _ in range(10):
                out = model.forward(x, training=True, rng=rng)
                _, dy = bce_loss(out, t)
                grads = model.backward(dy)
                adam_step(model.parameters(), grads, state)
            return [p.value.copy() for p in model.parameters()]

        a, b = run(), run()
        for pa, pb in zip(a, b):
            np.testing.assert_array_equal(pa, pb)
