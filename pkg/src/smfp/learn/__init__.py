# Copyright (c) 2019 Dan Ryan
# MIT License <https://opensource.org/licenses/mit>

from .evaluation import (
    cross_validate,
    evaluate_accuracy,
    kfold_indices,
    precision_recall_f1,
)
from .mlp import (
    MlpModel,
    predict_mlp,
    predict_proba_mlp,
    softmax,
    tanh_activation,
    train_mlp,
)
from .persistence import load_model, save_model
from .sampling import (
    ratio_split,
    ros_indices,
    ros_oversample,
    systematic_sample,
    systematic_split,
)
from .svm import LinearModel, predict_linear, train_linear_svm

__all__ = [
    "LinearModel",
    "MlpModel",
    "train_linear_svm",
    "predict_linear",
    "train_mlp",
    "predict_mlp",
    "predict_proba_mlp",
    "tanh_activation",
    "softmax",
    "systematic_sample",
    "systematic_split",
    "ratio_split",
    "ros_indices",
    "ros_oversample",
    "evaluate_accuracy",
    "precision_recall_f1",
    "kfold_indices",
    "cross_validate",
    "save_model",
    "load_model",
]
