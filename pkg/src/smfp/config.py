# Copyright (c) 2019 Dan Ryan
# MIT License <https://opensource.org/licenses/mit>

"""
Run configuration for the end-to-end pipeline.

A :class:`PipelineConfig` is usually read from JSON with :meth:`PipelineConfig.from_json`;
relative paths in the file are resolved against the file's directory.
"""

import dataclasses
import hashlib
import json
import pathlib
from typing import Any, Dict, Mapping, Optional, Sequence, Tuple, Union

from smfp.enrich import EnrichmentMode
from smfp.exceptions import ConfigError
from smfp.features import LabeledSet
from smfp.kb import parse_source_spec
from smfp.learn.mlp import DEFAULT_HIDDEN, DEFAULT_INIT_SCALE, train_mlp
from smfp.learn.persistence import Model
from smfp.learn.svm import DEFAULT_C, train_linear_svm

PathLike = Union[str, pathlib.Path]

MODEL_TYPES = ("svm", "mlp")
VOCAB_SOURCES = ("train", "all")
CORPUS_FORMATS = ("csv", "jsonl")
OUTCOME_NEUTRAL = ("workers", "report_path")


def parse_ngram_spec(spec: Union[str, Sequence[int]]) -> Tuple[int, ...]:
    """
    Parse ``"1,2"`` into ``(1, 2)``.

    :raises ConfigError: On an empty spec or a size below 1
    """

    if isinstance(spec, str):
        parts = [part.strip() for part in spec.split(",") if part.strip()]
        try:
            sizes = [int(part) for part in parts]
        except ValueError:
            raise ConfigError(f"n-gram spec {spec!r} must list integers like '1,2'")
    else:
        sizes = [int(n) for n in spec]
    if not sizes or any(n < 1 for n in sizes):
        raise ConfigError(f"n-gram spec {spec!r} needs sizes of at least 1")
    return tuple(sorted(set(sizes)))


def parse_top_k_spec(spec: Union[str, Mapping[Any, Any]]) -> Dict[int, int]:
    """
    Parse ``"1:50000,2:150000"`` into ``{1: 50000, 2: 150000}``.

    :raises ConfigError: On malformed pairs or non-positive cutoffs
    """

    if isinstance(spec, str):
        pairs = []
        for part in spec.split(","):
            if not part.strip():
                continue
            n, sep, k = part.partition(":")
            if not sep:
                raise ConfigError(f"top-K entry {part!r} must look like '<n>:<k>'")
            pairs.append((n, k))
    else:
        pairs = list(spec.items())
    try:
        top_k = {int(n): int(k) for (n, k) in pairs}
    except ValueError:
        raise ConfigError(f"top-K spec {spec!r} must map integers to integers")
    if not top_k or any(k < 1 for k in top_k.values()):
        raise ConfigError(f"top-K spec {spec!r} needs positive cutoffs")
    return top_k


def _check_keys(cls: type, record: Mapping[str, Any]) -> None:
    known = {f.name for f in dataclasses.fields(cls)}
    unknown = sorted(set(record) - known)
    if unknown:
        raise ConfigError(f"unknown {cls.__name__} keys: {', '.join(unknown)}")


@dataclasses.dataclass(frozen=True)
class ModelSpec:

    """
    Classifier choice and its training hyperparameters.
    """

    type: str = "svm"
    c: float = DEFAULT_C
    hidden: int = DEFAULT_HIDDEN
    epochs: int = 50
    lr: float = 0.01
    batch_size: Optional[int] = 32
    init_scale: float = DEFAULT_INIT_SCALE

    def __post_init__(self) -> None:
        if self.type not in MODEL_TYPES:
            raise ConfigError(f"model type {self.type!r} is not one of {MODEL_TYPES}")
        if self.c <= 0 or self.lr <= 0:
            raise ConfigError("model c and lr must be positive")
        if self.hidden < 1 or self.epochs < 0:
            raise ConfigError("model hidden must be at least 1 and epochs not negative")
        if self.batch_size is not None and self.batch_size < 1:
            raise ConfigError(f"batch size must be at least 1, got {self.batch_size}")

    @classmethod
    def from_dict(cls, record: Mapping[str, Any]) -> "ModelSpec":
        _check_keys(cls, record)
        return cls(**record)

    def to_dict(self) -> Dict[str, Any]:
        return dataclasses.asdict(self)

    def train(self, data: LabeledSet, seed: int = 0) -> Model:
        if self.type == "svm":
            return train_linear_svm(
                data, c=self.c, epochs=self.epochs, lr=self.lr, seed=seed
            )
        return train_mlp(
            data,
            hidden=self.hidden,
            epochs=self.epochs,
            lr=self.lr,
            seed=seed,
            batch_size=self.batch_size,
            init_scale=self.init_scale,
        )


@dataclasses.dataclass(frozen=True)
class PipelineConfig:

    """
    Everything one pipeline run depends on.

    Paths left as None fall back to the bundled or NLTK defaults; the report records
    the checksum of every file that was actually read.
    """

    mode: str = EnrichmentMode.SMFP.value
    kb_paths: Tuple[str, ...] = ()
    wordlist_path: Optional[str] = None
    freq_path: Optional[str] = None
    stoplist_path: Optional[str] = None
    remove_stopwords: bool = False
    emoticon_paths: Tuple[str, ...] = ()
    polarity_path: Optional[str] = None
    ngrams: Tuple[int, ...] = (1, 2)
    top_k: Mapping[int, int] = dataclasses.field(
        default_factory=lambda: {1: 50000, 2: 150000}
    )
    model: ModelSpec = dataclasses.field(default_factory=ModelSpec)
    seed: int = 0
    train_path: Optional[str] = None
    test_path: Optional[str] = None
    corpus_format: str = "jsonl"
    report_path: Optional[str] = None
    vocab_from: str = "train"
    oversample: bool = False
    workers: int = 1
    cv_folds: Optional[int] = None

    def __post_init__(self) -> None:
        try:
            object.__setattr__(self, "mode", EnrichmentMode(self.mode).value)
        except ValueError:
            raise ConfigError(f"mode {self.mode!r} is not 'smfp' or 'baseline'")
        object.__setattr__(self, "kb_paths", tuple(self.kb_paths))
        object.__setattr__(self, "emoticon_paths", tuple(self.emoticon_paths))
        object.__setattr__(self, "ngrams", parse_ngram_spec(self.ngrams))
        object.__setattr__(self, "top_k", parse_top_k_spec(self.top_k))
        missing = [n for n in self.ngrams if n not in self.top_k]
        if missing:
            raise ConfigError(f"no top-K cutoff for n-gram sizes {missing}")
        if isinstance(self.model, Mapping):
            object.__setattr__(self, "model", ModelSpec.from_dict(self.model))
        if self.vocab_from not in VOCAB_SOURCES:
            raise ConfigError(
                f"vocab_from {self.vocab_from!r} is not one of {VOCAB_SOURCES}"
            )
        if self.corpus_format not in CORPUS_FORMATS:
            raise ConfigError(f"corpus_format {self.corpus_format!r} is not csv or jsonl")
        if self.workers < 1:
            raise ConfigError(f"workers must be at least 1, got {self.workers}")
        if self.cv_folds is not None and self.cv_folds < 2:
            raise ConfigError(f"cv_folds must be at least 2, got {self.cv_folds}")

    @classmethod
    def from_dict(
        cls, record: Mapping[str, Any], base_dir: Optional[PathLike] = None
    ) -> "PipelineConfig":
        """
        Build a config from plain data.

        :param record: Field values; unknown keys are rejected
        :param base_dir: Directory that relative paths are resolved against
        :raises ConfigError: On unknown keys or invalid values
        """

        _check_keys(cls, record)
        values = dict(record)
        if base_dir is not None:
            base = pathlib.Path(base_dir)

            def resolve(path: str) -> str:
                candidate = pathlib.Path(path)
                if not candidate.is_absolute():
                    candidate = base / candidate
                return candidate.as_posix()

            for key in ("wordlist_path", "freq_path", "stoplist_path", "polarity_path",
                        "train_path", "test_path", "report_path"):
                if values.get(key):
                    values[key] = resolve(values[key])
            values["emoticon_paths"] = [
                resolve(path) for path in values.get("emoticon_paths", ())
            ]
            kb_paths = []
            for spec in values.get("kb_paths", ()):
                name, path = parse_source_spec(spec)
                kb_paths.append(f"{name}:{resolve(path.as_posix())}")
            values["kb_paths"] = kb_paths
        try:
            return cls(**values)
        except TypeError as exc:
            raise ConfigError(f"invalid pipeline config: {exc!s}") from exc

    @classmethod
    def from_json(cls, path: PathLike) -> "PipelineConfig":
        path = pathlib.Path(path)
        try:
            record = json.loads(path.read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"error occured on file from {path.as_posix()!r}, {exc!s}")
        except ValueError as exc:
            raise ConfigError(f"{path.as_posix()!r} is not valid JSON: {exc!s}") from exc
        if not isinstance(record, dict):
            raise ConfigError(f"{path.as_posix()!r} must hold a JSON object")
        return cls.from_dict(record, base_dir=path.absolute().parent)

    def to_dict(self) -> Dict[str, Any]:
        record = dataclasses.asdict(self)
        record["kb_paths"] = list(self.kb_paths)
        record["emoticon_paths"] = list(self.emoticon_paths)
        record["ngrams"] = list(self.ngrams)
        record["top_k"] = {str(n): k for (n, k) in sorted(self.top_k.items())}
        return record

    def digest(self) -> str:
        """
        sha256 of the canonical JSON form of the config.

        Settings that cannot change results, the worker count and the report path,
        are left out.
        """

        record = {k: v for (k, v) in self.to_dict().items() if k not in OUTCOME_NEUTRAL}
        canonical = json.dumps(record, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()

    def data_paths(self) -> Dict[str, Optional[str]]:
        """Every referenced input file by a stable name."""
        paths: Dict[str, Optional[str]] = {
            "wordlist": self.wordlist_path,
            "freq": self.freq_path,
            "stoplist": self.stoplist_path,
            "polarity": self.polarity_path,
            "train": self.train_path,
            "test": self.test_path,
        }
        for spec in self.kb_paths:
            name, path = parse_source_spec(spec)
            paths[f"kb:{name}"] = path.as_posix()
        for index, path in enumerate(self.emoticon_paths):
            paths[f"emoticons:{index}"] = path
        return paths

    def validate(self) -> None:
        """
        Check that every referenced input exists.

        :raises ConfigError: Naming the first missing file
        """

        for (name, path) in sorted(self.data_paths().items()):
            if path is not None and not pathlib.Path(path).is_file():
                raise ConfigError(f"{name} file {path!r} does not exist")


__all__ = [
    "ModelSpec",
    "PipelineConfig",
    "parse_ngram_spec",
    "parse_top_k_spec",
]
