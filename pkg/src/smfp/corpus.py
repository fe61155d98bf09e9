# Copyright (c) 2019 Dan Ryan
# MIT License <https://opensource.org/licenses/mit>

"""
File-based ingestion and persistence of labeled posts.

Two formats are understood: CSV with the header ``label,text`` and JSON Lines with
one ``{"label": 0|1, "text": "..."}`` object per line. The label is optional in
both, so unlabeled inference files load too.
"""

import csv
import enum
import json
import logging
import pathlib
import re
from dataclasses import dataclass, field
from typing import Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union

import pandas as pd

from smfp.exceptions import ParseError, SmfpException, ValidationError
from smfp.normalize import RawPost
from smfp.resources import file_checksum

log = logging.getLogger(__name__)

PathLike = Union[str, pathlib.Path]

CSV_COLUMNS = ["label", "text"]
PANDAS_LINE_RE = re.compile(r"line (\d+)")


class CorpusFormat(str, enum.Enum):
    CSV = "csv"
    JSONL = "jsonl"


class CorpusOrigin(NamedTuple):
    path: str
    format: CorpusFormat
    checksum: str


@dataclass(frozen=True)
class Corpus:

    """
    Posts in file order.

    Two corpora are equal when their posts are; where they came from is ignored.
    """

    posts: Tuple[RawPost, ...] = ()
    origin: Optional[CorpusOrigin] = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "posts", tuple(self.posts))

    def __len__(self) -> int:
        return len(self.posts)

    def __iter__(self) -> Iterator[RawPost]:
        return iter(self.posts)

    @property
    def labeled(self) -> bool:
        return all(post.label is not None for post in self.posts)

    def subset(self, indices: Sequence[int]) -> "Corpus":
        return Corpus(posts=tuple(self.posts[i] for i in indices), origin=self.origin)


def _io_error(path: pathlib.Path, exc: Exception) -> SmfpException:
    return SmfpException(f"error occured on file from {path.as_posix()!r}, {exc!s}")


def _parse_label(raw: object, row: int) -> Optional[int]:
    if raw is None or raw == "":
        return None
    if isinstance(raw, bool):
        raise ValidationError(f"label {raw!r} is not 0 or 1", line=row)
    if isinstance(raw, str):
        if raw.strip() not in ("0", "1"):
            raise ValidationError(f"label {raw!r} is not 0 or 1", line=row)
        return int(raw)
    if isinstance(raw, int) and raw in (0, 1):
        return raw
    raise ValidationError(f"label {raw!r} is not 0 or 1", line=row)


def _read_csv(path: pathlib.Path) -> List[RawPost]:
    try:
        frame = pd.read_csv(
            path,
            dtype=str,
            encoding="utf-8",
            keep_default_na=False,
            na_filter=False,
            quoting=csv.QUOTE_MINIMAL,
        )
    except pd.errors.EmptyDataError:
        raise ParseError(f"{path.as_posix()!r} has no 'label,text' header", line=1)
    except pd.errors.ParserError as exc:
        match = PANDAS_LINE_RE.search(str(exc))
        row = int(match.group(1)) - 1 if match else None
        raise ParseError(f"malformed CSV row in {path.as_posix()!r}", line=row) from exc
    except (OSError, UnicodeDecodeError) as exc:
        raise _io_error(path, exc) from exc
    if list(frame.columns) != CSV_COLUMNS:
        raise ParseError(
            f"expected header 'label,text' in {path.as_posix()!r}, "
            f"got {','.join(map(str, frame.columns))!r}",
            line=1,
        )
    return [
        RawPost(text=row.text, label=_parse_label(row.label, row_no))
        for row_no, row in enumerate(frame.itertuples(index=False), 1)
    ]


def _read_jsonl(path: pathlib.Path) -> List[RawPost]:
    posts = []
    try:
        fh = path.open("r", encoding="utf-8")
    except OSError as exc:
        raise _io_error(path, exc) from exc
    with fh:
        for row, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except ValueError as exc:
                raise ParseError(
                    f"invalid JSON in {path.as_posix()!r}", line=row
                ) from exc
            if not isinstance(record, dict) or not isinstance(record.get("text"), str):
                raise ParseError(
                    f"expected an object with a 'text' string in {path.as_posix()!r}",
                    line=row,
                )
            label = _parse_label(record.get("label"), row)
            posts.append(RawPost(text=record["text"], label=label))
    return posts


def load_corpus(
    path: PathLike, format: Union[str, CorpusFormat] = CorpusFormat.JSONL
) -> Corpus:
    """
    Load labeled or unlabeled posts, keeping file order.

    :param path: The corpus file
    :param format: ``csv`` or ``jsonl``
    :raises ParseError: On a malformed row, with its 1-based row number
    :raises ValidationError: On a label outside {0, 1}
    :rtype: Corpus
    """

    path = pathlib.Path(path)
    fmt = CorpusFormat(format)
    posts = _read_csv(path) if fmt is CorpusFormat.CSV else _read_jsonl(path)
    origin = CorpusOrigin(path=path.as_posix(), format=fmt, checksum=file_checksum(path))
    log.info(f"loaded {len(posts)} posts from {path.as_posix()!r}")
    return Corpus(posts=tuple(posts), origin=origin)


def write_corpus(
    corpus: Corpus, path: PathLike, format: Union[str, CorpusFormat] = CorpusFormat.JSONL
) -> None:
    """
    Write ``corpus`` so that :func:`load_corpus` reads back an equal corpus.

    Unlabeled posts get an empty CSV label field or no ``label`` key in JSONL.
    """

    path = pathlib.Path(path)
    fmt = CorpusFormat(format)
    try:
        if fmt is CorpusFormat.CSV:
            frame = pd.DataFrame.from_records(
                [
                    ("" if post.label is None else str(post.label), post.text)
                    for post in corpus.posts
                ],
                columns=CSV_COLUMNS,
            )
            frame.to_csv(path, index=False, encoding="utf-8", quoting=csv.QUOTE_MINIMAL)
        else:
            with path.open("w", encoding="utf-8") as fh:
                for post in corpus.posts:
                    record = {"text": post.text}
                    if post.label is not None:
                        record["label"] = post.label
                    fh.write(json.dumps(record, sort_keys=True) + "\n")
    except OSError as exc:
        raise _io_error(path, exc) from exc
    log.info(f"wrote {len(corpus)} posts to {path.as_posix()!r}")


__all__ = [
    "Corpus",
    "CorpusFormat",
    "CorpusOrigin",
    "load_corpus",
    "write_corpus",
]
