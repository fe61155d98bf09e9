# -*- coding: utf-8 -*-
import json

import numpy as np
import pytest
from hypothesis import given, strategies as st

from smfp.exceptions import DegenerateData, DimensionMismatch, InvalidArgument, ParseError
from smfp.features import FeatureVector, LabeledSet
from smfp.learn import (
    LinearModel,
    MlpModel,
    cross_validate,
    evaluate_accuracy,
    kfold_indices,
    load_model,
    precision_recall_f1,
    predict_linear,
    predict_mlp,
    predict_proba_mlp,
    ratio_split,
    ros_indices,
    ros_oversample,
    save_model,
    softmax,
    systematic_sample,
    systematic_split,
    tanh_activation,
    train_linear_svm,
    train_mlp,
)
from smfp.learn.mlp import class_probabilities, mlp_gradients, mlp_loss
from smfp.learn.svm import svm_objective, targets

from .strategies import float_vectors, label_lists

XOR = LabeledSet.from_dense([[0, 0], [0, 1], [1, 0], [1, 1]], [0, 1, 1, 0])


def _blobs(n=200, seed=0):
    rng = np.random.default_rng(seed)
    labels = np.arange(n) % 2
    centers = np.where(labels[:, None] == 1, 2.0, -2.0)
    points = centers + np.clip(rng.normal(0.0, 0.3, (n, 2)), -0.9, 0.9)
    return LabeledSet.from_dense(points.tolist(), labels.tolist())


class ConstantClassifier(object):
    def __init__(self, predictions):
        self.predictions = np.asarray(predictions)

    def predict_many(self, matrix):
        return self.predictions[: matrix.shape[0]]


@pytest.fixture(scope="module")
def blobs():
    return _blobs()


def test_tanh_activation_matches_numpy():
    z = np.linspace(-5, 5, 41)
    np.testing.assert_allclose(tanh_activation(z), np.tanh(z), atol=1e-12)
    assert tanh_activation(0.0) == 0.0
    assert tanh_activation(1000.0) == 1.0
    assert tanh_activation(-1000.0) == -1.0


@given(float_vectors())
def test_tanh_activation_is_odd_and_bounded(values):
    z = np.asarray(values)
    result = tanh_activation(z)
    np.testing.assert_array_equal(tanh_activation(-z), -result)
    assert np.all(np.abs(result) <= 1.0)


@given(float_vectors(bound=500.0))
def test_softmax_is_a_distribution(values):
    probabilities = softmax(values)
    assert probabilities.sum() == pytest.approx(1.0)
    assert np.all(probabilities >= 0.0)
    shifted = softmax(np.asarray(values) + 3.0)
    np.testing.assert_allclose(shifted, probabilities, atol=1e-12)


def test_softmax_rejects_empty_input():
    with pytest.raises(InvalidArgument):
        softmax([])


def test_svm_separates_blobs(blobs):
    model = train_linear_svm(blobs, c=0.1, epochs=50, lr=0.01, seed=0)
    assert evaluate_accuracy(model, blobs) == 1.0
    assert model.c == 0.1
    assert len(model.history) == 50


def test_svm_batch_mode_descends(blobs):
    model = train_linear_svm(blobs, c=0.1, epochs=200, lr=1e-4, batch=True)
    t = targets(blobs.label_array())
    start = svm_objective(np.zeros(2), 0.0, blobs.to_matrix(), t, 0.1)
    assert model.history[-1] < model.history[0] < start


def test_svm_objective_descends_every_epoch(blobs):
    model = train_linear_svm(blobs, c=0.1, epochs=20, lr=1e-4, batch=True)
    t = targets(blobs.label_array())
    start = svm_objective(np.zeros(2), 0.0, blobs.to_matrix(), t, 0.1)
    history = (start,) + model.history
    assert all(later < earlier for (earlier, later) in zip(history, history[1:]))


def test_svm_is_deterministic_per_seed(blobs):
    first = train_linear_svm(blobs, epochs=5, seed=3)
    second = train_linear_svm(blobs, epochs=5, seed=3)
    np.testing.assert_array_equal(first.w, second.w)
    assert first.w0 == second.w0


def test_svm_rejects_single_class():
    data = LabeledSet.from_dense([[1.0], [2.0]], [1, 1])
    with pytest.raises(DegenerateData):
        train_linear_svm(data)
    with pytest.raises(DegenerateData):
        train_linear_svm(LabeledSet(vectors=(), labels=(), dimension=3))


def test_svm_rejects_bad_hyperparameters(blobs):
    with pytest.raises(InvalidArgument):
        train_linear_svm(blobs, c=0.0)
    with pytest.raises(InvalidArgument):
        train_linear_svm(blobs, lr=float(len(blobs)))


def test_predict_linear():
    model = LinearModel(w=np.array([1.0, -1.0]), w0=0.0)
    assert predict_linear(model, [1.0, 1.0]) == 1
    assert predict_linear(model, [0.0, 2.0]) == 0
    assert model.predict(FeatureVector(indices=(0,), dimension=2)) == 1
    with pytest.raises(DimensionMismatch):
        predict_linear(model, [1.0, 2.0, 3.0])
    with pytest.raises(DimensionMismatch):
        model.predict(FeatureVector(indices=(0,), dimension=3))


small_ints = st.integers(min_value=-20, max_value=20)


@given(
    st.lists(st.tuples(small_ints, small_ints), min_size=1, max_size=6),
    small_ints,
    st.sampled_from([0.25, 0.5, 2.0, 8.0, 1024.0]),
)
def test_predict_linear_ignores_positive_scaling(pairs, bias, scale):
    w = np.array([float(weight) for (weight, _) in pairs])
    x = [float(value) for (_, value) in pairs]
    model = LinearModel(w=w, w0=float(bias))
    scaled = LinearModel(w=scale * w, w0=scale * bias)
    assert predict_linear(model, x) == predict_linear(scaled, x)


def test_predict_linear_boundary_is_positive():
    assert predict_linear(LinearModel(w=np.array([1.0, -1.0]), w0=0.0), [2.0, 2.0]) == 1
    assert predict_linear(LinearModel(w=np.array([2.0]), w0=-4.0), [2.0]) == 1


def test_mlp_learns_xor():
    accuracies = []
    for seed in range(5):
        model = train_mlp(
            XOR, hidden=4, epochs=5000, lr=0.5, seed=seed, batch_size=None, init_scale=1.0
        )
        accuracies.append(evaluate_accuracy(model, XOR))
        if accuracies[-1] == 1.0:
            break
    assert max(accuracies) == 1.0


def test_mlp_with_one_hidden_unit_separates_blobs(blobs):
    model = train_mlp(blobs, hidden=1, epochs=100, lr=0.5, batch_size=20, init_scale=0.5)
    assert evaluate_accuracy(model, blobs) == 1.0
    assert model.config["hidden"] == 1


def _rebuilt(params):
    return MlpModel(W1=params["W1"], b1=params["b1"], W2=params["W2"], b2=params["b2"][0])


@pytest.mark.parametrize("seed", range(5))
def test_mlp_gradients_match_finite_differences(seed):
    rng = np.random.default_rng(seed)
    matrix = rng.normal(size=(6, 4))
    labels = np.array([0.0, 1.0, 1.0, 0.0, 1.0, 0.0])
    model = MlpModel(
        W1=rng.normal(0.0, 0.5, (3, 4)),
        b1=rng.normal(0.0, 0.5, 3),
        W2=rng.normal(0.0, 0.5, 3),
        b2=float(rng.normal(0.0, 0.5)),
    )
    analytic = mlp_gradients(model, matrix, labels)
    step = 1e-5
    for (name, values) in model.parameters().items():
        numeric = np.zeros_like(values)
        for index in np.ndindex(values.shape):
            params = {key: array.copy() for (key, array) in model.parameters().items()}
            params[name][index] += step
            upper = mlp_loss(_rebuilt(params), matrix, labels)
            params[name][index] -= 2 * step
            lower = mlp_loss(_rebuilt(params), matrix, labels)
            numeric[index] = (upper - lower) / (2 * step)
        np.testing.assert_allclose(analytic[name], numeric, rtol=1e-4, atol=1e-8)


def test_mlp_probabilities_agree():
    model = MlpModel(W1=[[1.0, -2.0]], b1=[0.5], W2=[2.0], b2=-0.25)
    x = [0.3, 0.1]
    probability = predict_proba_mlp(model, x)
    np.testing.assert_allclose(
        class_probabilities(model, x), [1 - probability, probability]
    )
    assert predict_mlp(model, x) == int(probability >= 0.5)


def test_mlp_with_zero_weights_predicts_one():
    model = MlpModel(W1=np.zeros((3, 2)), b1=np.zeros(3), W2=np.zeros(3), b2=0.0)
    assert predict_proba_mlp(model, [5.0, -3.0]) == 0.5
    assert predict_mlp(model, [5.0, -3.0]) == 1


def test_mlp_rejects_mismatched_shapes():
    with pytest.raises(DimensionMismatch):
        MlpModel(W1=[[1.0, 2.0]], b1=[0.0, 0.0], W2=[1.0], b2=0.0)
    model = MlpModel(W1=[[1.0, 2.0]], b1=[0.0], W2=[1.0], b2=0.0)
    with pytest.raises(DimensionMismatch):
        predict_mlp(model, [1.0])


def test_mlp_rejects_single_class():
    with pytest.raises(DegenerateData):
        train_mlp(LabeledSet.from_dense([[1.0], [0.0]], [0, 0]), hidden=2, epochs=1)


def test_systematic_sample_arithmetic():
    sample = systematic_sample(1048575, 10)
    assert len(sample) == 104857
    assert sample[:2] == [9, 19]
    train, test = systematic_split(len(sample), 5)
    assert (len(test), len(train)) == (20971, 83886)
    assert test[0] == 4


@pytest.mark.parametrize("n_total, every", [(5, 0), (-1, 3)])
def test_systematic_sample_rejects_bad_arguments(n_total, every):
    with pytest.raises(InvalidArgument):
        systematic_sample(n_total, every)


def test_ros_balances_skewed_counts():
    labels = [1] * 3540 + [0] * 6460
    indices = ros_indices(labels, seed=0)
    assert len(indices) - len(labels) == 2920
    drawn = [labels[i] for i in indices]
    assert drawn.count(1) == drawn.count(0) == 6460


@given(label_lists(), st.integers(min_value=0, max_value=2 ** 16))
def test_ros_properties(labels, seed):
    indices = ros_indices(labels, seed=seed)
    majority = max(labels.count(0), labels.count(1))
    assert indices[: len(labels)] == list(range(len(labels)))
    drawn = [labels[i] for i in indices]
    assert drawn.count(0) == drawn.count(1) == majority
    assert ros_indices(labels, seed=seed) == indices


def test_ros_oversample_rejects_single_class():
    with pytest.raises(DegenerateData):
        ros_indices([1, 1, 1])
    data = LabeledSet.from_dense([[1.0], [2.0], [3.0]], [1, 0, 0])
    balanced = ros_oversample(data, seed=1)
    assert balanced.labels == (1, 0, 0, 1)


@given(st.integers(min_value=0, max_value=500), st.floats(min_value=0.0, max_value=1.0))
def test_ratio_split_partitions(n_total, fraction):
    train, test = ratio_split(n_total, fraction, seed=4)
    assert len(test) == int(round(n_total * fraction))
    assert sorted(train + test) == list(range(n_total))
    assert train == sorted(train) and test == sorted(test)


def test_ratio_split_rejects_bad_fraction():
    with pytest.raises(InvalidArgument):
        ratio_split(10, 1.5)


def test_accuracy_and_metrics():
    data = LabeledSet.from_dense([[0.0]] * 4, [1, 1, 0, 0])
    classifier = ConstantClassifier([1, 0, 1, 0])
    assert evaluate_accuracy(classifier, data) == 0.5
    metrics = precision_recall_f1(classifier, data)
    assert metrics == (0.5, 0.5, 0.5)
    assert precision_recall_f1(ConstantClassifier([0, 0, 0, 0]), data) == (0.0, 0.0, 0.0)


def test_accuracy_rejects_empty_test_set():
    with pytest.raises(InvalidArgument):
        evaluate_accuracy(ConstantClassifier([]), LabeledSet((), (), 1))


@given(st.integers(min_value=2, max_value=60), st.integers(min_value=2, max_value=10))
def test_kfold_indices_partition(n_total, k):
    if k > n_total:
        with pytest.raises(InvalidArgument):
            kfold_indices(n_total, k)
        return
    folds = kfold_indices(n_total, k, seed=2)
    tested = sorted(i for (_, test) in folds for i in test)
    assert tested == list(range(n_total))
    sizes = [len(test) for (_, test) in folds]
    assert max(sizes) - min(sizes) <= 1
    for (train, test) in folds:
        assert sorted(train + test) == list(range(n_total))


def test_cross_validate_trains_once_per_fold(blobs):
    trained = []

    def train(data):
        trained.append(len(data))
        return train_linear_svm(data, epochs=5)

    scores = cross_validate(blobs, train, k=4)
    assert len(scores) == 4
    assert trained == [150, 150, 150, 150]
    assert all(0.0 <= score <= 1.0 for score in scores)


def test_models_round_trip_through_files(blobs, tmp_path):
    svm = train_linear_svm(blobs, epochs=3)
    mlp = train_mlp(blobs, hidden=3, epochs=3)
    for model in (svm, mlp):
        path = tmp_path / f"{type(model).__name__}.json"
        save_model(model, path)
        loaded = load_model(path)
        assert type(loaded) is type(model)
        matrix = blobs.to_matrix()
        np.testing.assert_array_equal(
            loaded.predict_many(matrix), model.predict_many(matrix)
        )
        assert loaded.to_dict() == json.loads(path.read_text())


@pytest.mark.parametrize(
    "content",
    ["not json", '{"type": "tree"}', '{"type": "svm", "w": [1.0]}', "[1, 2]"],
)
def test_load_model_rejects_bad_documents(tmp_path, content):
    path = tmp_path / "model.json"
    path.write_text(content)
    with pytest.raises(ParseError):
        load_model(path)
