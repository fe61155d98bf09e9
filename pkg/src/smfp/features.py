# Copyright (c) 2019 Dan Ryan
# MIT License <https://opensource.org/licenses/mit>

"""
N-gram extraction, top-K vocabulary selection and sparse binary vectors.
"""

import collections
import concurrent.futures
import csv
import json
import logging
import pathlib
from dataclasses import dataclass, field
from typing import (
    Any,
    Counter,
    Dict,
    Iterable,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

import numpy as np
import pandas as pd
import scipy.sparse

from smfp.exceptions import DimensionMismatch, InvalidArgument, ParseError, SmfpException

log = logging.getLogger(__name__)

PathLike = Union[str, pathlib.Path]
Gram = Tuple[str, ...]


@dataclass(frozen=True)
class Vocabulary:

    """
    Column index of the selected n-grams.

    Columns are numbered block by block in ascending ``n``; inside a block grams
    are ordered by descending corpus frequency, then lexicographically.
    """

    grams: Mapping[Gram, int] = field(default_factory=dict)
    n_sizes: Tuple[int, ...] = ()
    k_per_n: Mapping[int, int] = field(default_factory=dict)

    def __len__(self) -> int:
        return len(self.grams)

    def __contains__(self, gram: object) -> bool:
        return gram in self.grams

    def __getitem__(self, gram: Gram) -> int:
        return self.grams[gram]


@dataclass(frozen=True)
class FeatureVector:

    """
    Sparse vector as strictly increasing active indices.

    ``values`` is None for binary presence vectors; real-valued vectors carry one
    value per index.
    """

    indices: Tuple[int, ...]
    dimension: int
    values: Optional[Tuple[float, ...]] = None

    def __post_init__(self) -> None:
        indices = tuple(int(i) for i in self.indices)
        if any(b <= a for a, b in zip(indices, indices[1:])):
            raise InvalidArgument(f"indices {indices!r} are not strictly increasing")
        if indices and (indices[0] < 0 or indices[-1] >= self.dimension):
            raise DimensionMismatch(f"index out of range for dimension {self.dimension}")
        if self.values is not None and len(self.values) != len(indices):
            raise DimensionMismatch("values and indices differ in length")
        object.__setattr__(self, "indices", indices)
        if self.values is not None:
            object.__setattr__(self, "values", tuple(float(v) for v in self.values))

    @classmethod
    def from_dense(cls, values: Sequence[float]) -> "FeatureVector":
        dense = np.asarray(values, dtype=float)
        active = np.flatnonzero(dense)
        return cls(
            indices=tuple(int(i) for i in active),
            dimension=int(dense.shape[0]),
            values=tuple(float(v) for v in dense[active]),
        )

    def to_dense(self) -> np.ndarray:
        dense = np.zeros(self.dimension)
        if self.indices:
            dense[list(self.indices)] = self.values if self.values is not None else 1.0
        return dense

    def to_dict(self) -> Dict[str, Any]:
        record: Dict[str, Any] = {
            "indices": list(self.indices),
            "dimension": self.dimension,
        }
        if self.values is not None:
            record["values"] = list(self.values)
        return record


def extract_ngrams(tokens: Sequence[str], n: int) -> List[Gram]:
    """
    All contiguous windows of ``n`` tokens, in order.

    :raises InvalidArgument: If ``n`` is smaller than 1
    """

    if n < 1:
        raise InvalidArgument(f"n-gram size must be at least 1, got {n}")
    return [tuple(tokens[i : i + n]) for i in range(len(tokens) - n + 1)]


def count_grams(corpus: Iterable[Sequence[str]], n: int) -> Counter[Gram]:
    """Corpus frequency of every n-gram of one size."""
    counts: Counter[Gram] = collections.Counter()
    for tokens in corpus:
        counts.update(extract_ngrams(tokens, n))
    return counts


def _sharded_counts(
    corpus: Sequence[Sequence[str]], n: int, workers: int
) -> Counter[Gram]:
    if workers <= 1 or len(corpus) < 2:
        return count_grams(corpus, n)
    size = -(-len(corpus) // workers)
    shards = [corpus[i : i + size] for i in range(0, len(corpus), size)]
    total: Counter[Gram] = collections.Counter()
    with concurrent.futures.ThreadPoolExecutor(max_workers=workers) as executor:
        for counts in executor.map(lambda shard: count_grams(shard, n), shards):
            total.update(counts)
    return total


def build_vocab(
    corpus: Sequence[Sequence[str]],
    n_sizes: Iterable[int],
    k_per_n: Mapping[int, int],
    workers: int = 1,
) -> Vocabulary:
    """
    Select the top-K most frequent n-grams for every requested size.

    :param corpus: Token lists, one per document
    :param n_sizes: The n-gram sizes to use
    :param k_per_n: The cutoff K for each size
    :param int workers: Threads used for counting, the merged counts are exact
    :raises InvalidArgument: If a size has no positive cutoff
    :rtype: Vocabulary
    """

    sizes = tuple(sorted(set(n_sizes)))
    for n in sizes:
        if n < 1:
            raise InvalidArgument(f"n-gram size must be at least 1, got {n}")
        if k_per_n.get(n, 0) < 1:
            raise InvalidArgument(f"no positive top-K cutoff given for n={n}")
    grams: Dict[Gram, int] = {}
    for n in sizes:
        counts = _sharded_counts(corpus, n, workers)
        ranked = sorted(counts.items(), key=lambda item: (-item[1], item[0]))
        for (gram, _) in ranked[: k_per_n[n]]:
            grams[gram] = len(grams)
        log.info(f"kept {min(len(ranked), k_per_n[n])} of {len(ranked)} {n}-grams")
    return Vocabulary(grams=grams, n_sizes=sizes, k_per_n={n: k_per_n[n] for n in sizes})


def vectorize(tokens: Sequence[str], vocab: Vocabulary) -> FeatureVector:
    """
    Binary presence vector of the vocabulary grams found in ``tokens``.

    :rtype: FeatureVector
    """

    active = set()
    for n in vocab.n_sizes:
        for gram in extract_ngrams(tokens, n):
            index = vocab.grams.get(gram)
            if index is not None:
                active.add(index)
    return FeatureVector(indices=tuple(sorted(active)), dimension=len(vocab))


def save_vocab(vocab: Vocabulary, path: PathLike) -> None:
    """Write a vocabulary as ``<n>\\t<gram joined by space>\\t<index>`` rows."""
    rows = [(len(gram), " ".join(gram), index) for (gram, index) in vocab.grams.items()]
    frame = pd.DataFrame(rows, columns=["n", "gram", "column"]).sort_values("column")
    frame.to_csv(
        pathlib.Path(path).as_posix(),
        sep="\t",
        header=False,
        index=False,
        quoting=csv.QUOTE_NONE,
        encoding="utf-8",
    )


def load_vocab(path: PathLike) -> Vocabulary:
    """
    Read a vocabulary written by :func:`save_vocab`.

    :raises ParseError: If indices are not ``0..N-1`` without gaps
    """

    path = pathlib.Path(path)
    try:
        frame = pd.read_csv(
            path.as_posix(),
            sep="\t",
            header=None,
            names=["n", "gram", "column"],
            dtype={"n": int, "gram": str, "column": int},
            quoting=csv.QUOTE_NONE,
            keep_default_na=False,
            encoding="utf-8",
        )
    except pd.errors.EmptyDataError:
        return Vocabulary()
    except (ValueError, pd.errors.ParserError) as exc:
        raise ParseError(
            f"malformed vocabulary file {path.as_posix()!r}: {exc!s}"
        ) from exc
    frame = frame.sort_values("column")
    if list(frame["column"]) != list(range(len(frame))):
        raise ParseError(f"vocabulary indices in {path.as_posix()!r} have gaps")
    grams: Dict[Gram, int] = {}
    k_per_n: Dict[int, int] = collections.Counter()
    for row in frame.itertuples(index=False):
        gram = tuple(row.gram.split(" "))
        if len(gram) != row.n:
            raise ParseError(
                f"gram {row.gram!r} is not a {row.n}-gram", line=int(row.column) + 1
            )
        grams[gram] = int(row.column)
        k_per_n[int(row.n)] += 1
    return Vocabulary(grams=grams, n_sizes=tuple(sorted(k_per_n)), k_per_n=dict(k_per_n))


@dataclass(frozen=True)
class LabeledSet:

    """
    Feature vectors paired with binary labels.
    """

    vectors: Tuple[FeatureVector, ...]
    labels: Tuple[int, ...]
    dimension: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "vectors", tuple(self.vectors))
        object.__setattr__(self, "labels", tuple(int(y) for y in self.labels))
        if len(self.vectors) != len(self.labels):
            raise DimensionMismatch(
                f"{len(self.vectors)} vectors but {len(self.labels)} labels"
            )
        for vector in self.vectors:
            if vector.dimension != self.dimension:
                raise DimensionMismatch(
                    f"vector of dimension {vector.dimension} in a set of {self.dimension}"
                )
        if any(y not in (0, 1) for y in self.labels):
            raise InvalidArgument("labels must be 0 or 1")

    def __len__(self) -> int:
        return len(self.labels)

    @classmethod
    def from_dense(
        cls, rows: Sequence[Sequence[float]], labels: Sequence[int]
    ) -> "LabeledSet":
        vectors = tuple(FeatureVector.from_dense(row) for row in rows)
        dimension = vectors[0].dimension if vectors else 0
        return cls(vectors=vectors, labels=tuple(labels), dimension=dimension)

    def subset(self, indices: Sequence[int]) -> "LabeledSet":
        return LabeledSet(
            vectors=tuple(self.vectors[i] for i in indices),
            labels=tuple(self.labels[i] for i in indices),
            dimension=self.dimension,
        )

    def to_matrix(self) -> scipy.sparse.csr_matrix:
        """The vectors stacked into a CSR matrix of shape ``(len(self), dimension)``."""
        indptr = [0]
        indices: List[int] = []
        data: List[float] = []
        for vector in self.vectors:
            indices.extend(vector.indices)
            if vector.values is None:
                data.extend([1.0] * len(vector.indices))
            else:
                data.extend(vector.values)
            indptr.append(len(indices))
        return scipy.sparse.csr_matrix(
            (np.asarray(data, dtype=float), np.asarray(indices, dtype=np.int64), indptr),
            shape=(len(self.vectors), self.dimension),
        )

    def label_array(self) -> np.ndarray:
        return np.asarray(self.labels, dtype=float)


def save_labeled_set(data: LabeledSet, path: PathLike) -> None:
    """Write one JSON object per vector, each with its label and dimension."""
    with pathlib.Path(path).open("w", encoding="utf-8") as fh:
        for (vector, label) in zip(data.vectors, data.labels):
            record = vector.to_dict()
            record["label"] = label
            fh.write(json.dumps(record, sort_keys=True) + "\n")


def load_labeled_set(path: PathLike, dimension: Optional[int] = None) -> LabeledSet:
    """
    Read a labeled set written by :func:`save_labeled_set`.

    :param dimension: The expected dimension, needed for empty files
    :raises ParseError: On malformed lines
    """

    path = pathlib.Path(path)
    vectors: List[FeatureVector] = []
    labels: List[int] = []
    try:
        fh = path.open("r", encoding="utf-8")
    except OSError as exc:
        raise SmfpException(
            f"error occured on file from {path.as_posix()!r}, {exc!s}"
        ) from exc
    with fh:
        for line_no, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
                vector = FeatureVector(
                    indices=tuple(record["indices"]),
                    dimension=int(record["dimension"]),
                    values=tuple(record["values"]) if "values" in record else None,
                )
                label = int(record["label"])
            except (ValueError, KeyError, TypeError) as exc:
                raise ParseError(
                    f"malformed feature vector: {exc!s}", line=line_no
                ) from exc
            vectors.append(vector)
            labels.append(label)
    if dimension is None:
        dimension = vectors[0].dimension if vectors else 0
    return LabeledSet(vectors=tuple(vectors), labels=tuple(labels), dimension=dimension)


__all__ = [
    "Vocabulary",
    "FeatureVector",
    "LabeledSet",
    "extract_ngrams",
    "count_grams",
    "build_vocab",
    "vectorize",
    "save_vocab",
    "load_vocab",
    "save_labeled_set",
    "load_labeled_set",
]
