# Copyright (c) 2019 Dan Ryan
# MIT License <https://opensource.org/licenses/mit>

"""
Readers for the plain-text and TSV data files the pipeline depends on.

Each reader accepts an explicit path; the English word list, stop words and the
frequency table fall back to the copies bundled under ``smfp/data``.
"""

import hashlib
import logging
import pathlib
from typing import Dict, FrozenSet, Iterator, Mapping, Optional, Tuple, Union

from smfp.exceptions import ParseError, ResourceError, ValidationError

log = logging.getLogger(__name__)

PathLike = Union[str, pathlib.Path]

DATA_DIR = pathlib.Path(__file__).absolute().parent / "data"
DEFAULT_EMOTICONS = DATA_DIR / "emoticons.tsv"
SAMPLE_LEXICON = DATA_DIR / "lexicons" / "sample.jsonl"
DEFAULT_WORDLIST = DATA_DIR / "words.txt"
DEFAULT_FREQUENCIES = DATA_DIR / "freq.tsv"
DEFAULT_STOPLIST = DATA_DIR / "stopwords.txt"

BUNDLED_DATA = {
    "emoticons": DEFAULT_EMOTICONS,
    "sample_lexicon": SAMPLE_LEXICON,
    "wordlist": DEFAULT_WORDLIST,
    "freq": DEFAULT_FREQUENCIES,
    "stoplist": DEFAULT_STOPLIST,
}


def _read_lines(path: PathLike) -> Iterator[Tuple[int, str]]:
    path = pathlib.Path(path)
    try:
        with path.open("r", encoding="utf-8") as fh:
            for line_no, line in enumerate(fh, 1):
                yield line_no, line.rstrip("\r\n")
    except OSError as exc:
        raise ResourceError(
            f"error occured reading {path.as_posix()!r}, {exc!s}"
        ) from exc


def _read_tsv(path: PathLike) -> Iterator[Tuple[int, str, str]]:
    for line_no, line in _read_lines(path):
        if not line.strip():
            continue
        key, sep, value = line.partition("\t")
        if not sep or not key or not value.strip():
            raise ParseError(f"expected '<key>\\t<value>' in {str(path)!r}", line=line_no)
        yield line_no, key, value.strip()


def file_checksum(path: PathLike) -> str:
    """
    Compute the sha256 hex digest of a file.

    :param path: The file to hash
    :return: The hex digest
    :rtype: str
    """

    digest = hashlib.sha256()
    with pathlib.Path(path).open("rb") as fh:
        for chunk in iter(lambda: fh.read(65536), b""):
            digest.update(chunk)
    return digest.hexdigest()




def load_wordlist(path: Optional[PathLike] = None) -> FrozenSet[str]:
    """
    Load the English word list used to tell words from out-of-vocabulary tokens.

    :param path: A UTF-8 file with one lowercase word per line, defaults to the
        bundled ``words.txt``
    :return: The lowercase words
    :rtype: FrozenSet[str]
    """

    if path is None:
        path = DEFAULT_WORDLIST
    seen = set()
    for line_no, line in _read_lines(path):
        word = line.strip()
        if not word:
            continue
        if word != word.lower() or len(word.split()) != 1:
            raise ValidationError(
                "word list entries must be single lowercase words", line_no
            )
        if word in seen:
            log.warning(f"duplicate word {word!r} in {str(path)!r} at line {line_no}")
        seen.add(word)
    log.info(f"loaded {len(seen)} words from {str(path)!r}")
    return frozenset(seen)


def load_frequencies(path: Optional[PathLike] = None) -> Dict[str, int]:
    """
    Load the word frequency table used to rank spelling candidates.

    :param path: A UTF-8 TSV of ``<word>\\t<count>``, defaults to the bundled
        ``freq.tsv``
    :return: A mapping of word to count
    :rtype: Dict[str, int]
    """

    if path is None:
        path = DEFAULT_FREQUENCIES
    freq: Dict[str, int] = {}
    for line_no, word, count in _read_tsv(path):
        try:
            value = int(count)
        except ValueError as exc:
            raise ParseError(
                f"count {count!r} is not an integer", line=line_no
            ) from exc
        if value < 0:
            raise ValidationError(f"count for {word!r} is negative", line=line_no)
        freq[word.strip().lower()] = freq.get(word.strip().lower(), 0) + value
    return freq


def load_stopwords(path: Optional[PathLike] = None) -> FrozenSet[str]:
    """
    Load a stop list, one lowercase word per line.

    Without a path the bundled English stop list is used.
    """

    if path is None:
        path = DEFAULT_STOPLIST
    return frozenset(
        line.strip().lower() for _, line in _read_lines(path) if line.strip()
    )


def load_emoticons(path: PathLike = DEFAULT_EMOTICONS) -> Dict[str, str]:
    """
    Load an emoticon map of ``<emoticon>\\t<meaning>`` lines.

    Keys are lowercased so they match cleaned text; the first definition of an
    emoticon within one file wins. Two spellings differing only in case (``:P``
    and ``:p``) share one key, and a warning is logged when their meanings differ.
    """

    emoticons: Dict[str, str] = {}
    spellings: Dict[str, str] = {}
    for line_no, emoticon, meaning in _read_tsv(path):
        key = emoticon.strip().lower()
        if not key or len(key.split()) != 1:
            raise ParseError(
                f"emoticon {emoticon!r} must be a single token", line=line_no
            )
        if key in emoticons:
            if spellings[key] != emoticon.strip() and emoticons[key] != meaning:
                log.warning(
                    f"emoticon {emoticon.strip()!r} at line {line_no} collides with "
                    f"{spellings[key]!r} once lowercased, keeping {emoticons[key]!r}"
                )
            else:
                log.debug(f"ignoring repeated emoticon {key!r} at line {line_no}")
            continue
        emoticons[key] = meaning
        spellings[key] = emoticon.strip()
    return emoticons


def load_polarity(path: PathLike) -> Dict[str, int]:
    """
    Load a slang polarity lexicon of ``<term>\\t<+1|-1>`` lines.

    Terms are stored under their knowledge-base lookup key.
    """

    from smfp.kb import normalize_key

    polarity: Dict[str, int] = {}
    for line_no, term, value in _read_tsv(path):
        if value not in ("+1", "1", "-1"):
            raise ValidationError(f"polarity {value!r} is not +1 or -1", line=line_no)
        polarity[normalize_key(term)] = 1 if value in ("+1", "1") else -1
    return polarity


def data_checksums(paths: Mapping[str, Optional[PathLike]]) -> Dict[str, str]:
    """Checksums for every named data file that exists, for reports and ``--version``."""
    checksums: Dict[str, str] = {}
    for (name, path) in sorted(paths.items()):
        if path is not None and pathlib.Path(path).is_file():
            checksums[name] = file_checksum(path)
    return checksums
