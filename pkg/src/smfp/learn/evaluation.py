# Copyright (c) 2019 Dan Ryan
# MIT License <https://opensource.org/licenses/mit>

import logging
from typing import Any, Callable, List, NamedTuple, Tuple

import numpy as np

from smfp.exceptions import InvalidArgument
from smfp.features import LabeledSet

log = logging.getLogger(__name__)


# anything with predict_many(csr_matrix) -> ndarray
Classifier = Any


class Metrics(NamedTuple):
    precision: float
    recall: float
    f1: float


def _predictions(model: Classifier, test: LabeledSet) -> Tuple[np.ndarray, np.ndarray]:
    if len(test) == 0:
        raise InvalidArgument("cannot evaluate on an empty test set")
    predicted = np.asarray(model.predict_many(test.to_matrix()), dtype=int)
    return predicted, np.asarray(test.labels, dtype=int)


def evaluate_accuracy(model: Classifier, test: LabeledSet) -> float:
    """
    Fraction of ``test`` the model labels correctly.

    :raises InvalidArgument: If ``test`` is empty
    """

    predicted, actual = _predictions(model, test)
    correct = int((predicted == actual).sum())
    return correct / len(actual)


def precision_recall_f1(model: Classifier, test: LabeledSet) -> Metrics:
    """Precision, recall and F1 of the positive class; undefined ratios are 0."""
    predicted, actual = _predictions(model, test)
    true_pos = int(((predicted == 1) & (actual == 1)).sum())
    pred_pos = int((predicted == 1).sum())
    real_pos = int((actual == 1).sum())
    precision = true_pos / pred_pos if pred_pos else 0.0
    recall = true_pos / real_pos if real_pos else 0.0
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    return Metrics(precision, recall, f1)


def kfold_indices(
    n_total: int, k: int, seed: int = 0
) -> List[Tuple[List[int], List[int]]]:
    """
    Seeded (train, test) index pairs for ``k``-fold cross-validation.

    Fold sizes differ by at most one and every index is tested exactly once.
    """

    if k < 2:
        raise InvalidArgument(f"cross-validation needs at least 2 folds, got {k}")
    if k > n_total:
        raise InvalidArgument(f"{k} folds cannot be drawn from {n_total} samples")
    order = np.random.default_rng(seed).permutation(n_total)
    folds = np.array_split(order, k)
    pairs = []
    for i, fold in enumerate(folds):
        test = sorted(int(j) for j in fold)
        train = sorted(int(j) for (m, other) in enumerate(folds) if m != i for j in other)
        pairs.append((train, test))
    return pairs


def cross_validate(
    data: LabeledSet,
    train: Callable[[LabeledSet], Classifier],
    k: int = 10,
    seed: int = 0,
) -> List[float]:
    """
    Train on ``k - 1`` folds and score accuracy on the remaining one, ``k`` times.

    :param LabeledSet data: The full labeled set
    :param train: Callable fitting a model to a labeled set
    :param int k: Number of folds
    :param int seed: Seed of the fold assignment
    :return: Accuracy per fold, in fold order
    :rtype: List[float]
    """

    scores = []
    for fold, (train_idx, test_idx) in enumerate(kfold_indices(len(data), k, seed)):
        model = train(data.subset(train_idx))
        scores.append(evaluate_accuracy(model, data.subset(test_idx)))
        log.info(f"fold {fold + 1}/{k} accuracy {scores[-1]:.4f}")
    return scores


__all__ = [
    "Classifier",
    "Metrics",
    "evaluate_accuracy",
    "precision_recall_f1",
    "kfold_indices",
    "cross_validate",
]
