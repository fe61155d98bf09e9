# Copyright (c) 2019 Dan Ryan
# MIT License <https://opensource.org/licenses/mit>

import json
import logging
import pathlib
from typing import Union

from smfp.exceptions import ParseError, SmfpException
from smfp.learn.mlp import MlpModel
from smfp.learn.svm import LinearModel

log = logging.getLogger(__name__)

PathLike = Union[str, pathlib.Path]
Model = Union[LinearModel, MlpModel]

MODEL_TYPES = {"svm": LinearModel, "mlp": MlpModel}


def save_model(model: Model, path: PathLike) -> None:
    """Write ``model`` as one JSON document; floats are stored with full precision."""
    path = pathlib.Path(path)
    try:
        path.write_text(json.dumps(model.to_dict(), sort_keys=True), encoding="utf-8")
    except OSError as exc:
        raise SmfpException(f"error occured on file from {path.as_posix()!r}, {exc!s}")
    log.info(f"saved {model.to_dict()['type']} model to {path.as_posix()!r}")


def load_model(path: PathLike) -> Model:
    """
    Read a model written by :func:`save_model`.

    :raises ParseError: If the document is not a model of a known type
    """

    path = pathlib.Path(path)
    try:
        record = json.loads(path.read_text(encoding="utf-8"))
    except OSError as exc:
        raise SmfpException(f"error occured on file from {path.as_posix()!r}, {exc!s}")
    except ValueError as exc:
        raise ParseError(f"{path.as_posix()!r} is not valid JSON: {exc!s}") from exc
    if not isinstance(record, dict) or record.get("type") not in MODEL_TYPES:
        raise ParseError(f"{path.as_posix()!r} does not hold an svm or mlp model")
    try:
        return MODEL_TYPES[record["type"]].from_dict(record)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, SmfpException):
            raise
        raise ParseError(f"{path.as_posix()!r} is missing model fields: {exc!s}") from exc


__all__ = ["Model", "save_model", "load_model"]
