# Copyright (c) 2019 Dan Ryan
# MIT License <https://opensource.org/licenses/mit>

"""
One-hidden-layer perceptron with a tanh hidden layer and a sigmoid output, trained
on binary cross-entropy.
"""

import logging
from dataclasses import dataclass
from typing import Any, Dict, Optional, Sequence, Union

import numpy as np
import scipy.sparse
import scipy.special

from smfp.exceptions import DimensionMismatch, InvalidArgument
from smfp.features import FeatureVector, LabeledSet
from smfp.learn.svm import check_two_classes

log = logging.getLogger(__name__)

Matrix = Union[np.ndarray, scipy.sparse.spmatrix]
VectorLike = Union[FeatureVector, Sequence[float], np.ndarray]

DEFAULT_HIDDEN = 500
DEFAULT_INIT_SCALE = 0.01
THRESHOLD = 0.5


def tanh_activation(z: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    """
    Hyperbolic tangent ``(e^z - e^-z) / (e^z + e^-z)``.

    Evaluated on ``|z|`` as ``(1 - e^-2|z|) / (1 + e^-2|z|)`` with the sign restored,
    which never overflows and is exactly odd.
    """

    values = np.asarray(z, dtype=float)
    decay = np.exp(-2.0 * np.abs(values))
    result = np.sign(values) * (1.0 - decay) / (1.0 + decay)
    if np.ndim(result) == 0:
        return float(result)
    return result


def softmax(z: Sequence[float]) -> np.ndarray:
    """
    ``exp(z_i) / sum(exp(z_l))`` computed after subtracting the maximum.

    :raises InvalidArgument: If ``z`` is empty
    """

    values = np.asarray(z, dtype=float)
    if values.size == 0:
        raise InvalidArgument("softmax of an empty vector")
    shifted = np.exp(values - values.max())
    return shifted / shifted.sum()


def sigmoid(z: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    return scipy.special.expit(z)


@dataclass(frozen=True, eq=False)
class MlpModel:

    """
    Parameters ``W1`` (hidden x dim), ``b1`` (hidden), ``W2`` (hidden) and ``b2``.
    """

    W1: np.ndarray
    b1: np.ndarray
    W2: np.ndarray
    b2: float
    seed: int = 0
    config: Optional[Dict[str, Any]] = None

    def __post_init__(self) -> None:
        W1 = np.asarray(self.W1, dtype=float)
        b1 = np.asarray(self.b1, dtype=float)
        W2 = np.asarray(self.W2, dtype=float)
        if W1.ndim != 2 or W1.shape[0] < 1:
            raise DimensionMismatch(f"W1 must be a hidden x dim matrix, got {W1.shape}")
        if b1.shape != (W1.shape[0],) or W2.shape != (W1.shape[0],):
            raise DimensionMismatch(
                f"b1 {b1.shape} and W2 {W2.shape} must match {W1.shape[0]} hidden units"
            )
        object.__setattr__(self, "W1", W1)
        object.__setattr__(self, "b1", b1)
        object.__setattr__(self, "W2", W2)
        object.__setattr__(self, "b2", float(self.b2))

    @property
    def hidden(self) -> int:
        return int(self.W1.shape[0])

    @property
    def dimension(self) -> int:
        return int(self.W1.shape[1])

    def parameters(self) -> Dict[str, np.ndarray]:
        """The parameter arrays by name; ``b2`` is returned as a copy."""
        return {"W1": self.W1, "b1": self.b1, "W2": self.W2, "b2": np.array([self.b2])}

    def logits(self, matrix: Matrix) -> np.ndarray:
        if matrix.shape[1] != self.dimension:
            raise DimensionMismatch(
                f"input of width {matrix.shape[1]} for a model of {self.dimension}"
            )
        hidden = tanh_activation(np.asarray(matrix @ self.W1.T) + self.b1)
        return hidden @ self.W2 + self.b2

    def predict_proba_many(self, matrix: Matrix) -> np.ndarray:
        return sigmoid(self.logits(matrix))

    def predict_many(self, matrix: Matrix) -> np.ndarray:
        return (self.predict_proba_many(matrix) >= THRESHOLD).astype(int)

    def predict(self, x: VectorLike) -> int:
        return predict_mlp(self, x)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "type": "mlp",
            "hidden": self.hidden,
            "dimension": self.dimension,
            "W1": [float(v) for v in self.W1.ravel()],
            "b1": [float(v) for v in self.b1],
            "W2": [float(v) for v in self.W2],
            "b2": self.b2,
            "seed": self.seed,
            "config": dict(self.config or {}),
        }

    @classmethod
    def from_dict(cls, record: Dict[str, Any]) -> "MlpModel":
        hidden, dimension = int(record["hidden"]), int(record["dimension"])
        flat = np.asarray(record["W1"], dtype=float)
        if flat.size != hidden * dimension:
            raise DimensionMismatch(
                "W1 does not match the stored hidden x dimension shape"
            )
        return cls(
            W1=flat.reshape(hidden, dimension),
            b1=record["b1"],
            W2=record["W2"],
            b2=record["b2"],
            seed=int(record.get("seed", 0)),
            config=record.get("config"),
        )


def _as_row(model: MlpModel, x: VectorLike) -> np.ndarray:
    dense = x.to_dense() if isinstance(x, FeatureVector) else np.asarray(x, dtype=float)
    if dense.shape != (model.dimension,):
        raise DimensionMismatch(
            f"vector of shape {dense.shape} for a model of {model.dimension}"
        )
    return dense.reshape(1, -1)


def predict_proba_mlp(model: MlpModel, x: VectorLike) -> float:
    return float(model.predict_proba_many(_as_row(model, x))[0])


def predict_mlp(model: MlpModel, x: VectorLike) -> int:
    """
    Classify ``x`` as 1 when the sigmoid output reaches 0.5.

    :raises DimensionMismatch: If ``x`` does not match the model dimension
    """

    return 1 if predict_proba_mlp(model, x) >= THRESHOLD else 0


def class_probabilities(model: MlpModel, x: VectorLike) -> np.ndarray:
    """``[P(0), P(1)]`` for ``x``; the softmax over ``[0, logit]`` equals the sigmoid."""
    logit = float(model.logits(_as_row(model, x))[0])
    return softmax([0.0, logit])


def mlp_loss(model: MlpModel, matrix: Matrix, labels: np.ndarray) -> float:
    """Mean binary cross-entropy of the model over a batch."""
    z = model.logits(matrix)
    return float(np.mean(np.logaddexp(0.0, z) - labels * z))


def mlp_gradients(
    model: MlpModel, matrix: Matrix, labels: np.ndarray
) -> Dict[str, np.ndarray]:
    """
    Backpropagated gradients of :func:`mlp_loss` for every parameter.

    :return: Arrays shaped like :meth:`MlpModel.parameters`
    """

    n = matrix.shape[0]
    hidden = tanh_activation(np.asarray(matrix @ model.W1.T) + model.b1)
    p = sigmoid(hidden @ model.W2 + model.b2)
    dz2 = (p - labels) / n
    dz1 = np.outer(dz2, model.W2) * (1.0 - hidden ** 2)
    return {
        "W1": np.asarray(matrix.T @ dz1).T,
        "b1": dz1.sum(axis=0),
        "W2": hidden.T @ dz2,
        "b2": np.array([dz2.sum()]),
    }


def train_mlp(
    data: LabeledSet,
    hidden: int = DEFAULT_HIDDEN,
    epochs: int = 100,
    lr: float = 0.1,
    seed: int = 0,
    batch_size: Optional[int] = 32,
    init_scale: float = DEFAULT_INIT_SCALE,
) -> MlpModel:
    """
    Fit the perceptron by mini-batch gradient descent on binary cross-entropy.

    Every parameter starts from a seeded ``N(0, init_scale)`` draw, and each epoch
    visits the mini-batches in a fresh seeded order.

    :param LabeledSet data: Training vectors with labels in {0, 1}
    :param int hidden: Hidden units
    :param int epochs: Passes over the data
    :param float lr: Step size
    :param int seed: Seed for initialization and shuffling
    :param batch_size: Samples per step, None for full-batch steps
    :param float init_scale: Standard deviation of the initial parameters
    :raises DegenerateData: If the data lacks either class
    :rtype: MlpModel
    """

    check_two_classes(data)
    if hidden < 1:
        raise InvalidArgument(f"hidden units must be at least 1, got {hidden}")
    matrix = data.to_matrix()
    labels = data.label_array()
    n = matrix.shape[0]
    rng = np.random.default_rng(seed)
    model = MlpModel(
        W1=rng.normal(0.0, init_scale, (hidden, data.dimension)),
        b1=rng.normal(0.0, init_scale, hidden),
        W2=rng.normal(0.0, init_scale, hidden),
        b2=float(rng.normal(0.0, init_scale)),
        seed=seed,
        config={
            "hidden": hidden,
            "epochs": epochs,
            "lr": lr,
            "batch_size": batch_size,
            "init_scale": init_scale,
        },
    )
    params = model.parameters()
    step = n if not batch_size else min(batch_size, n)
    for epoch in range(epochs):
        order = rng.permutation(n)
        for start in range(0, n, step):
            rows = order[start : start + step]
            grads = mlp_gradients(model, matrix[rows], labels[rows])
            for name in ("W1", "b1", "W2"):
                params[name] -= lr * grads[name]
            params["b2"] -= lr * grads["b2"]
            object.__setattr__(model, "b2", float(params["b2"][0]))
        if log.isEnabledFor(logging.DEBUG):
            loss = mlp_loss(model, matrix, labels)
            log.debug(f"mlp epoch {epoch + 1}/{epochs} loss {loss:.6f}")
    log.info(f"trained mlp with {hidden} hidden units on {n} samples for {epochs} epochs")
    return model


__all__ = [
    "MlpModel",
    "tanh_activation",
    "softmax",
    "sigmoid",
    "predict_mlp",
    "predict_proba_mlp",
    "class_probabilities",
    "mlp_loss",
    "mlp_gradients",
    "train_mlp",
]
