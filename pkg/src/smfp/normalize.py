# Copyright (c) 2019 Dan Ryan
# MIT License <https://opensource.org/licenses/mit>

"""
Data cleaner and transformer: strip structural noise from raw posts, split them
into tokens and stem the tokens.
"""

import functools
import re
from dataclasses import dataclass
from typing import AbstractSet, Iterable, List, Optional, Pattern, Sequence, Tuple

from nltk.stem import PorterStemmer

from smfp.exceptions import ValidationError

URL_RE = re.compile(r"(?:https?://|www\.)\S*", re.IGNORECASE)
MENTION_RE = re.compile(r"@\w+")
NON_ASCII_RE = re.compile(r"[^\x00-\x7f]")
# case-insensitive so that lowercasing afterwards can never form a new run
REPEAT_RE = re.compile(r"([a-z])\1{2,}", re.IGNORECASE)
PUNCT_RE = re.compile(r"[^a-z0-9\s']")
LOOSE_APOSTROPHE_RE = re.compile(r"(?<![a-z0-9])'|'(?![a-z0-9])")

# Martin's revision of the reference algorithm; it leaves words of one or two
# letters unstemmed
_stemmer = PorterStemmer(PorterStemmer.MARTIN_EXTENSIONS)


@dataclass(frozen=True)
class RawPost:
    text: str
    label: Optional[int] = None

    def __post_init__(self) -> None:
        if self.label is not None and self.label not in (0, 1):
            raise ValidationError(f"label {self.label!r} is not 0 or 1")


@dataclass(frozen=True)
class TokenizedText:
    tokens: Tuple[str, ...]
    provenance: Optional[RawPost] = None

    def __iter__(self):
        return iter(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)


@functools.lru_cache(maxsize=64)
def _emoticon_pattern(emoticons: Tuple[str, ...]) -> Optional[Pattern]:
    if not emoticons:
        return None
    ordered = sorted(emoticons, key=len, reverse=True)
    alternatives = "|".join(re.escape(emoticon) for emoticon in ordered)
    return re.compile(rf"(?<!\S)(?:{alternatives})(?!\S)", re.IGNORECASE)


def _clean_segment(text: str) -> str:
    text = URL_RE.sub(" ", text)
    text = MENTION_RE.sub(" ", text)
    text = text.replace("#", "")
    text = NON_ASCII_RE.sub("", text)
    text = REPEAT_RE.sub(r"\1\1", text)
    text = text.lower()
    text = PUNCT_RE.sub(" ", text)
    text = LOOSE_APOSTROPHE_RE.sub(" ", text)
    return text


def clean(text: str, emoticons: Iterable[str] = ()) -> str:
    """
    Remove links, mentions, hash marks, non-ASCII characters, letter repeats and
    punctuation from a post.

    Whitespace-delimited emoticons listed in ``emoticons`` survive verbatim (apart
    from lowercasing). The result is lowercase with single spaces and is a fixed
    point: cleaning it again changes nothing.

    :param str text: The raw post text
    :param emoticons: Emoticons to protect, usually ``kb.emoticons``
    :return: The cleaned text
    :rtype: str
    """

    pattern = _emoticon_pattern(tuple(sorted({e for e in emoticons if e.strip()})))
    if pattern is None:
        return " ".join(_clean_segment(text).split())
    pieces: List[str] = []
    position = 0
    for match in pattern.finditer(text):
        pieces.append(_clean_segment(text[position : match.start()]))
        pieces.append(f" {match.group(0).lower()} ")
        position = match.end()
    pieces.append(_clean_segment(text[position:]))
    return " ".join("".join(pieces).split())


def tokenize(text: str, provenance: Optional[RawPost] = None) -> TokenizedText:
    """Split cleaned text on whitespace."""
    return TokenizedText(tokens=tuple(text.split()), provenance=provenance)


def stem(token: str) -> str:
    """
    Porter-stem a lowercase word token.

    :param str token: The token to stem
    :return: The stem
    :rtype: str
    """

    return _stemmer.stem(token)


def remove_stopwords(tokens: Sequence[str], stoplist: AbstractSet[str]) -> List[str]:
    return [token for token in tokens if token not in stoplist]


__all__ = [
    "RawPost",
    "TokenizedText",
    "clean",
    "tokenize",
    "stem",
    "remove_stopwords",
]
