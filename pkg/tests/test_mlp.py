import math

import numpy as np
import pytest

from ftsf import MlpModel, mlp_gradients, mlp_init, mlp_loss, mlp_predict, mlp_train
from ftsf.errors import DimensionMismatch, DivergedLoss, LengthMismatch
from ftsf.mlp import model_from_text, model_to_text


class TestInit:
    def test_deterministic(self):
        a = mlp_init(2, 2, 42)
        b = mlp_init(2, 2, 42)
        assert np.array_equal(a.weights_ih, b.weights_ih)
        assert np.array_equal(a.weights_ho, b.weights_ho)

    def test_zero_biases(self):
        model = mlp_init(2, 2, 7)
        assert np.all(model.bias_h == 0.0)
        assert model.bias_o == 0.0

    def test_weight_bound(self):
        model = mlp_init(3, 3, 7)
        assert np.abs(model.weights_ih).max() <= 1.0 / math.sqrt(3)
        assert np.abs(model.weights_ho).max() <= 1.0 / math.sqrt(3)

    def test_hidden_defaults_to_input_dim(self):
        model = mlp_init(4, seed=0)
        assert model.hidden_dim == 4

    def test_validation(self):
        with pytest.raises(ValueError):
            mlp_init(0, 2, 0)
        with pytest.raises(ValueError):
            mlp_init(2, 0, 0)
        with pytest.raises(ValueError):
            mlp_init(2, 2, 0, activation="relu")


class TestTrain:
    def test_constant_targets(self):
        model = mlp_init(2, 2, 1)
        trained = mlp_train(model, [(0.0, 1.0), (1.0, 0.0), (2.0, 2.0)],
                            [3.0, 3.0, 3.0], 0.2, 20000)
        for x in ((0.0, 1.0), (1.0, 0.0), (2.0, 2.0)):
            assert mlp_predict(trained, x) == pytest.approx(3.0, abs=1e-2)

    def test_single_row_fits_exactly(self):
        model = mlp_init(2, 2, 5)
        trained = mlp_train(model, [(1.0, 2.0)], [0.7], 0.1, 5000)
        assert trained.loss_trace[-1] < 1e-6

    def test_xor_representable(self):
        inputs = [(0.0, 0.0), (0.0, 1.0), (1.0, 0.0), (1.0, 1.0)]
        targets = [0.0, 1.0, 1.0, 0.0]
        final = []
        for seed in range(10):
            trained = mlp_train(mlp_init(2, 2, seed), inputs, targets, 0.5, 5000)
            final.append(trained.loss_trace[-1])
            if final[-1] < 0.05:
                break
        assert min(final) < 0.05

    def test_loss_trace_non_increasing_small_lr(self):
        rng = np.random.default_rng(2)
        inputs = rng.normal(size=(12, 2))
        targets = rng.normal(size=12)
        trained = mlp_train(mlp_init(2, 2, 3), inputs, targets, 1e-3, 500)
        trace = trained.loss_trace
        assert all(b <= a + 1e-12 for a, b in zip(trace, trace[1:]))

    def test_determinism(self):
        rng = np.random.default_rng(4)
        inputs = rng.normal(size=(8, 2))
        targets = rng.normal(size=8)
        a = mlp_train(mlp_init(2, 2, 9), inputs, targets, 0.05, 300)
        b = mlp_train(mlp_init(2, 2, 9), inputs, targets, 0.05, 300)
        assert np.array_equal(a.weights_ih, b.weights_ih)
        assert np.array_equal(a.weights_ho, b.weights_ho)
        assert a.bias_o == b.bias_o
        assert a.loss_trace == b.loss_trace

    def test_diverged_loss(self):
        model = mlp_init(1, 1, 0)
        with pytest.raises(DivergedLoss):
            mlp_train(model, [(1.0,), (2.0,)], [1.0, -1.0], 1e8, 200)

    def test_errors(self):
        model = mlp_init(2, 2, 0)
        with pytest.raises(LengthMismatch):
            mlp_train(model, [(0.0, 1.0)], [1.0, 2.0], 0.1, 10)
        with pytest.raises(DimensionMismatch):
            mlp_train(model, [(0.0,)], [1.0], 0.1, 10)
        with pytest.raises(ValueError):
            mlp_train(model, [(0.0, 1.0)], [1.0], 0.1, 0)


class TestGradients:
    @pytest.mark.parametrize("dims,activation,seed", [
        ((2, 3), "tanh", 0),
        ((3, 2), "tanh", 1),
        ((1, 1), "tanh", 2),
        ((2, 2), "sigmoid", 3),
    ])
    def test_matches_central_differences(self, dims, activation, seed):
        input_dim, hidden_dim = dims
        rng = np.random.default_rng(seed)
        model = mlp_init(input_dim, hidden_dim, seed, activation)
        inputs = rng.normal(size=(5, input_dim))
        targets = rng.normal(size=5)
        gW1, gb1, gw2, gb2 = mlp_gradients(model, inputs, targets)
        step = 1e-5

        def loss_with(W1, b1, w2, b2):
            probe = MlpModel(weights_ih=W1, bias_h=b1, weights_ho=w2,
                             bias_o=b2, hidden_activation=activation)
            return mlp_loss(probe, inputs, targets)

        def check(analytic, numeric):
            scale = max(abs(analytic), abs(numeric), 1e-8)
            assert abs(analytic - numeric) / scale <= 1e-4

        for i in range(input_dim):
            for j in range(hidden_dim):
                up = model.weights_ih.copy(); up[i, j] += step
                dn = model.weights_ih.copy(); dn[i, j] -= step
                numeric = (loss_with(up, model.bias_h.copy(), model.weights_ho.copy(), model.bias_o)
                           - loss_with(dn, model.bias_h.copy(), model.weights_ho.copy(), model.bias_o)) / (2 * step)
                check(gW1[i, j], numeric)
        for j in range(hidden_dim):
            up = model.bias_h.copy(); up[j] += step
            dn = model.bias_h.copy(); dn[j] -= step
            numeric = (loss_with(model.weights_ih.copy(), up, model.weights_ho.copy(), model.bias_o)
                       - loss_with(model.weights_ih.copy(), dn, model.weights_ho.copy(), model.bias_o)) / (2 * step)
            check(gb1[j], numeric)
            up = model.weights_ho.copy(); up[j] += step
            dn = model.weights_ho.copy(); dn[j] -= step
            numeric = (loss_with(model.weights_ih.copy(), model.bias_h.copy(), up, model.bias_o)
                       - loss_with(model.weights_ih.copy(), model.bias_h.copy(), dn, model.bias_o)) / (2 * step)
            check(gw2[j], numeric)
        numeric = (loss_with(model.weights_ih.copy(), model.bias_h.copy(), model.weights_ho.copy(), model.bias_o + step)
                   - loss_with(model.weights_ih.copy(), model.bias_h.copy(), model.weights_ho.copy(), model.bias_o - step)) / (2 * step)
        check(gb2, numeric)


class TestPredict:
    def test_zero_weights_give_output_bias(self):
        model = MlpModel(weights_ih=np.zeros((2, 2)), bias_h=np.zeros(2),
                         weights_ho=np.zeros(2), bias_o=0.8)
        assert mlp_predict(model, (5.0, -3.0)) == pytest.approx(0.8)

    def test_zero_output_weights_constant(self):
        model = mlp_init(2, 2, 6)
        flat = MlpModel(weights_ih=model.weights_ih.copy(), bias_h=model.bias_h.copy(),
                        weights_ho=np.zeros(2), bias_o=1.5)
        assert mlp_predict(flat, (0.0, 0.0)) == mlp_predict(flat, (9.0, -9.0)) == 1.5

    def test_purity(self):
        model = mlp_init(2, 2, 8)
        assert mlp_predict(model, (0.3, 0.4)) == mlp_predict(model, (0.3, 0.4))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            mlp_predict(mlp_init(2, 2, 0), (1.0,))


class TestSerialization:
    def test_round_trip_exact(self):
        rng = np.random.default_rng(21)
        trained = mlp_train(mlp_init(2, 3, 13), rng.normal(size=(6, 2)),
                            rng.normal(size=6), 0.05, 200)
        again = model_from_text(model_to_text(trained))
        assert np.array_equal(again.weights_ih, trained.weights_ih)
        assert np.array_equal(again.bias_h, trained.bias_h)
        assert np.array_equal(again.weights_ho, trained.weights_ho)
        assert again.bias_o == trained.bias_o
        assert again.hidden_activation == trained.hidden_activation
