# Copyright (c) 2019 Dan Ryan
# MIT License <https://opensource.org/licenses/mit>

"""
Linear soft-margin SVM trained in the primal by stochastic subgradient descent.

The objective is ``0.5 * ||w||^2 + c * sum(max(0, 1 - t_i (w.x_i + w0)))`` with
targets ``t = 2y - 1``; the bias is not regularized.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Sequence, Tuple, Union

import numpy as np
import scipy.sparse

from smfp.exceptions import DegenerateData, DimensionMismatch, InvalidArgument
from smfp.features import FeatureVector, LabeledSet

log = logging.getLogger(__name__)

VectorLike = Union[FeatureVector, Sequence[float], np.ndarray]

DEFAULT_C = 0.1


@dataclass(frozen=True, eq=False)
class LinearModel:

    """
    Trained separating hyperplane.

    ``history`` holds the training objective after every epoch.
    """

    w: np.ndarray
    w0: float
    c: float = DEFAULT_C
    seed: int = 0
    history: Tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.c <= 0:
            raise InvalidArgument(f"penalty c must be positive, got {self.c}")
        object.__setattr__(self, "w", np.asarray(self.w, dtype=float))
        object.__setattr__(self, "w0", float(self.w0))

    @property
    def dimension(self) -> int:
        return int(self.w.shape[0])

    def decision(self, x: VectorLike) -> float:
        if isinstance(x, FeatureVector):
            if x.dimension != self.dimension:
                raise DimensionMismatch(
                    f"vector of dimension {x.dimension} for a model of {self.dimension}"
                )
            weights = self.w[list(x.indices)]
            values = np.ones(len(x.indices)) if x.values is None else np.asarray(x.values)
            return float(weights @ values) + self.w0
        dense = np.asarray(x, dtype=float)
        if dense.shape != self.w.shape:
            raise DimensionMismatch(
                f"vector of shape {dense.shape} for a model of {self.dimension}"
            )
        return float(self.w @ dense) + self.w0

    def predict(self, x: VectorLike) -> int:
        return predict_linear(self, x)

    def predict_many(self, matrix: scipy.sparse.csr_matrix) -> np.ndarray:
        if matrix.shape[1] != self.dimension:
            raise DimensionMismatch(
                f"matrix of width {matrix.shape[1]} for a model of {self.dimension}"
            )
        return (matrix @ self.w + self.w0 >= 0).astype(int)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "type": "svm",
            "dimension": self.dimension,
            "w": [float(v) for v in self.w],
            "w0": self.w0,
            "seed": self.seed,
            "config": {"c": self.c},
        }

    @classmethod
    def from_dict(cls, record: Dict[str, Any]) -> "LinearModel":
        w = np.asarray(record["w"], dtype=float)
        if w.shape != (int(record["dimension"]),):
            raise DimensionMismatch("weight vector does not match the stored dimension")
        return cls(
            w=w, w0=record["w0"], c=record["config"]["c"], seed=int(record.get("seed", 0))
        )


def predict_linear(model: LinearModel, x: VectorLike) -> int:
    """
    Classify ``x`` as 1 when ``w.x + w0 >= 0``, else 0.

    :raises DimensionMismatch: If ``x`` does not match the model dimension
    """

    return 1 if model.decision(x) >= 0 else 0


def targets(labels: np.ndarray) -> np.ndarray:
    """Map labels in {0, 1} to targets in {-1, +1}."""
    return 2.0 * labels - 1.0


def check_two_classes(data: LabeledSet) -> None:
    if len(data) == 0:
        raise DegenerateData("training data is empty")
    if len(set(data.labels)) < 2:
        raise DegenerateData(f"training data holds a single class {data.labels[0]!r}")


def svm_objective(
    w: np.ndarray, w0: float, matrix: scipy.sparse.csr_matrix, t: np.ndarray, c: float
) -> float:
    margins = t * (matrix @ w + w0)
    return float(0.5 * w @ w + c * np.maximum(0.0, 1.0 - margins).sum())


def train_linear_svm(
    data: LabeledSet,
    c: float = DEFAULT_C,
    epochs: int = 50,
    lr: float = 0.01,
    seed: int = 0,
    batch: bool = False,
) -> LinearModel:
    """
    Fit a linear SVM by subgradient descent.

    In the default stochastic mode every epoch visits the samples in a fresh seeded
    order, each step descending ``0.5 * ||w||^2 / n + c * hinge_i``. With ``batch``
    every epoch is one deterministic full-gradient step.

    :param LabeledSet data: Training vectors with labels in {0, 1}
    :param float c: Penalty on the hinge loss
    :param int epochs: Passes over the data
    :param float lr: Step size
    :param int seed: Seed of the shuffling generator
    :param bool batch: Use full-batch steps instead of per-sample steps
    :raises DegenerateData: If the data lacks either class
    :return: The final iterate
    :rtype: LinearModel
    """

    check_two_classes(data)
    if c <= 0:
        raise InvalidArgument(f"penalty c must be positive, got {c}")
    matrix = data.to_matrix()
    t = targets(data.label_array())
    n = matrix.shape[0]
    if not batch and lr >= n:
        raise InvalidArgument(
            f"learning rate {lr} must be smaller than the sample count {n}"
        )
    rng = np.random.default_rng(seed)
    w = np.zeros(data.dimension)
    w0 = 0.0
    history = []
    for epoch in range(epochs):
        if batch:
            violated = t * (matrix @ w + w0) < 1.0
            grad_w = w - c * (matrix[violated].T @ t[violated])
            w = w - lr * np.asarray(grad_w).ravel()
            w0 += lr * c * t[violated].sum()
        else:
            # w is kept as scale * v so the shrink step stays O(1)
            scale, v = 1.0, w.copy()
            shrink = 1.0 - lr / n
            for i in rng.permutation(n):
                start, end = matrix.indptr[i], matrix.indptr[i + 1]
                cols = matrix.indices[start:end]
                vals = matrix.data[start:end]
                margin = t[i] * (scale * (v[cols] @ vals) + w0)
                scale *= shrink
                if margin < 1.0:
                    v[cols] += lr * c * t[i] * vals / scale
                    w0 += lr * c * t[i]
                if scale < 1e-9:
                    v *= scale
                    scale = 1.0
            w = scale * v
        history.append(svm_objective(w, w0, matrix, t, c))
        log.debug(f"svm epoch {epoch + 1}/{epochs} objective {history[-1]:.6f}")
    log.info(f"trained linear svm on {n} samples for {epochs} epochs")
    return LinearModel(w=w, w0=w0, c=c, seed=seed, history=tuple(history))


__all__ = [
    "DEFAULT_C",
    "LinearModel",
    "predict_linear",
    "svm_objective",
    "train_linear_svm",
]
