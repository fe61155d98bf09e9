# Copyright (c) 2019 Dan Ryan
# MIT License <https://opensource.org/licenses/mit>

"""
The integrated knowledge base: slang, abbreviation and acronym lexicons merged
under normalized lookup keys, together with an emoticon meaning map.
"""

import enum
import json
import pathlib
import types
from dataclasses import dataclass, field
from typing import (
    Any,
    Dict,
    Iterable,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from smfp.exceptions import (
    ConfigError,
    InvalidTerm,
    ParseError,
    SmfpException,
    ValidationError,
)
from smfp.log import LoggingMixin
from smfp.resources import load_emoticons

PathLike = Union[str, pathlib.Path]


class Source(str, enum.Enum):
    URBAN = "urban"
    NAIJALINGO = "naijalingo"
    INTERNETSLANG = "internetslang"
    CUSTOM = "custom"

    @classmethod
    def coerce(cls, name: str) -> "Source":
        """Map a source name onto a known source, anything else is ``custom``."""
        try:
            return cls(name.lower())
        except ValueError:
            return cls.CUSTOM


@dataclass(frozen=True)
class Sense:

    """
    One glossed meaning of a term: its definition, a usage example and related terms.

    ``origin`` records the source name and file line the sense was read from.
    """

    definition: str
    usage: str
    related: Tuple[str, ...] = ()
    source: Source = Source.CUSTOM
    origin: Tuple[str, int] = ("custom", 0)

    def __post_init__(self) -> None:
        if not self.definition.strip():
            raise ValidationError("sense definition is empty")
        if not self.usage.strip():
            raise ValidationError("sense usage example is empty")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "definition": self.definition,
            "usage": self.usage,
            "related": list(self.related),
            "source": self.origin[0],
        }


@dataclass(frozen=True)
class LexiconEntry:
    term: str
    key: str
    senses: Tuple[Sense, ...]

    def __post_init__(self) -> None:
        if not self.senses:
            raise ValidationError(f"term {self.term!r} has no senses")


@dataclass(frozen=True)
class KnowledgeBase:

    """
    Immutable lookup structure over merged lexicons.

    ``entries`` maps normalized keys to entries, ``emoticons`` maps lowercased
    emoticons to their meaning text.
    """

    entries: Mapping[str, LexiconEntry] = field(default_factory=dict)
    emoticons: Mapping[str, str] = field(default_factory=dict)
    source_precedence: Tuple[str, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", types.MappingProxyType(dict(self.entries)))
        object.__setattr__(
            self, "emoticons", types.MappingProxyType(dict(self.emoticons))
        )
        object.__setattr__(self, "source_precedence", tuple(self.source_precedence))

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, token: object) -> bool:
        return isinstance(token, str) and lookup(self, token) is not None

    def lookup(self, token: str) -> Optional[LexiconEntry]:
        return lookup(self, token)


class LexiconSource(NamedTuple):
    name: str
    entries: Sequence[LexiconEntry]
    emoticons: Mapping[str, str] = {}


def normalize_key(term: str) -> str:
    """
    Normalize a surface form into a lookup key.

    Lowercases, removes every period and trims surrounding whitespace, so that
    ``S.T.O.P`` and ``stop`` share a key.

    :param str term: The raw term
    :raises InvalidTerm: If nothing remains after normalization
    :return: The lookup key
    :rtype: str
    """

    key = term.lower().replace(".", "").strip()
    if not key:
        raise InvalidTerm(f"term {term!r} is empty after normalization")
    return key


def lookup(kb: KnowledgeBase, token: str) -> Optional[LexiconEntry]:
    """
    Find the entry for a token, ignoring case and embedded periods.

    :param KnowledgeBase kb: The knowledge base to search
    :param str token: The token to look up
    :return: The matching entry or None
    :rtype: Optional[LexiconEntry]
    """

    try:
        key = normalize_key(token)
    except InvalidTerm:
        return None
    return kb.entries.get(key)


def _parse_sense(raw: Any, source: str, line_no: int) -> Sense:
    if not isinstance(raw, dict):
        raise ParseError("each sense must be an object", line=line_no)
    for required in ("definition", "usage"):
        if not isinstance(raw.get(required), str):
            raise ParseError(f"sense is missing a {required!r} string", line=line_no)
    related = raw.get("related", [])
    if not isinstance(related, list) or not all(isinstance(r, str) for r in related):
        raise ParseError("'related' must be a list of strings", line=line_no)
    sense_source = raw.get("source", source)
    if not isinstance(sense_source, str) or not sense_source:
        raise ParseError("'source' must be a non-empty string", line=line_no)
    try:
        return Sense(
            definition=raw["definition"],
            usage=raw["usage"],
            related=tuple(related),
            source=Source.coerce(sense_source),
            origin=(sense_source, line_no),
        )
    except ValidationError as exc:
        raise ValidationError(str(exc), line=line_no) from exc


def load_lexicon(path: PathLike, source: str) -> List[LexiconEntry]:
    """
    Read a JSON Lines lexicon file.

    Every non-blank line holds ``{"term": ..., "senses": [...]}``; repeated terms
    have their senses concatenated in the order they are encountered.

    :param path: The lexicon file
    :param str source: The name of the source the file belongs to
    :raises ParseError: On malformed lines, carrying the line number
    :raises ValidationError: On entries with no senses or empty glosses
    :return: The entries in first-appearance order
    :rtype: List[LexiconEntry]
    """

    path = pathlib.Path(path)
    terms: Dict[str, str] = {}
    senses: Dict[str, List[Sense]] = {}
    try:
        fh = path.open("r", encoding="utf-8")
    except OSError as exc:
        raise SmfpException(
            f"error occured on lexicon from {path.as_posix()!r}, {exc!s}"
        ) from exc
    with fh:
        for line_no, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except ValueError as exc:
                raise ParseError(f"invalid json: {exc!s}", line=line_no) from exc
            if not isinstance(record, dict) or not isinstance(record.get("term"), str):
                raise ParseError("entry is missing a 'term' string", line=line_no)
            if not isinstance(record.get("senses"), list):
                raise ParseError("entry is missing a 'senses' list", line=line_no)
            if not record["senses"]:
                raise ValidationError(
                    f"term {record['term']!r} has no senses", line=line_no
                )
            try:
                key = normalize_key(record["term"])
            except InvalidTerm as exc:
                raise InvalidTerm(str(exc), line=line_no) from exc
            parsed = [_parse_sense(raw, source, line_no) for raw in record["senses"]]
            terms.setdefault(key, record["term"])
            senses.setdefault(key, []).extend(parsed)
    return [
        LexiconEntry(term=terms[key], key=key, senses=tuple(senses[key]))
        for key in terms
    ]


def save_lexicon(kb: KnowledgeBase, path: PathLike) -> int:
    """
    Write the entries of a knowledge base as a JSON Lines lexicon.

    Senses keep their source name so the file reloads with its provenance.

    :return: The number of entries written
    :rtype: int
    """

    path = pathlib.Path(path)
    try:
        with path.open("w", encoding="utf-8") as fh:
            for key in sorted(kb.entries):
                entry = kb.entries[key]
                senses = [sense.to_dict() for sense in entry.senses]
                record = {"term": entry.term, "senses": senses}
                fh.write(json.dumps(record, ensure_ascii=False) + "\n")
    except OSError as exc:
        raise SmfpException(
            f"error occured writing lexicon to {path.as_posix()!r}, {exc!s}"
        ) from exc
    return len(kb.entries)


class KnowledgeBaseBuilder(LoggingMixin):

    """
    Merges lexicon sources in a declared precedence.
    """

    def __init__(self, precedence: Optional[Sequence[str]] = None) -> None:
        self.precedence: Optional[Tuple[str, ...]] = (
            tuple(precedence) if precedence is not None else None
        )
        self._sources: Dict[str, LexiconSource] = {}
        self._order: List[str] = []

    def add(
        self,
        name: str,
        entries: Iterable[LexiconEntry],
        emoticons: Optional[Mapping[str, str]] = None,
    ) -> "KnowledgeBaseBuilder":
        if name in self._sources:
            raise ConfigError(f"source {name!r} was given more than once")
        self._sources[name] = LexiconSource(name, list(entries), dict(emoticons or {}))
        self._order.append(name)
        return self

    def _resolve_precedence(self) -> Tuple[str, ...]:
        if self.precedence is None:
            return tuple(self._order)
        if len(set(self.precedence)) != len(self.precedence):
            raise ConfigError(f"precedence {self.precedence!r} repeats a source")
        missing = [name for name in self._order if name not in self.precedence]
        if missing:
            raise ConfigError(f"sources {missing!r} are absent from the precedence list")
        return tuple(name for name in self.precedence if name in self._sources)

    def build(self) -> KnowledgeBase:
        precedence = self._resolve_precedence()
        terms: Dict[str, str] = {}
        senses: Dict[str, List[Sense]] = {}
        emoticons: Dict[str, str] = {}
        for name in precedence:
            source = self._sources[name]
            for entry in source.entries:
                terms.setdefault(entry.key, entry.term)
                senses.setdefault(entry.key, []).extend(entry.senses)
            spellings: Dict[str, str] = {}
            for (emoticon, meaning) in source.emoticons.items():
                key = emoticon.lower()
                if key in spellings and meaning != emoticons[key]:
                    self.log.warning(
                        f"emoticons {spellings[key]!r} and {emoticon!r} of source "
                        f"{name!r} collide once lowercased, keeping {emoticons[key]!r}"
                    )
                spellings.setdefault(key, emoticon)
                emoticons.setdefault(key, meaning)
        entries = {
            key: LexiconEntry(term=terms[key], key=key, senses=tuple(senses[key]))
            for key in sorted(terms)
        }
        if not entries:
            self.log.warning(f"knowledge base built from {list(precedence)!r} is empty")
        self.log.info(
            f"merged {len(entries)} terms and {len(emoticons)} emoticons "
            f"from sources {list(precedence)!r}"
        )
        return KnowledgeBase(
            entries=entries,
            emoticons=dict(sorted(emoticons.items())),
            source_precedence=precedence,
        )


def merge(
    sources: Sequence[Union[LexiconSource, Tuple[str, Sequence[LexiconEntry]]]],
    precedence: Optional[Sequence[str]] = None,
) -> KnowledgeBase:
    """
    Merge lexicon sources into a knowledge base.

    Entries sharing a key are unioned with senses ordered by source precedence,
    then by their order within the source. Emoticons from higher precedence
    sources win on conflict.

    :param sources: ``(name, entries)`` pairs or :class:`LexiconSource` triples
    :param precedence: Source names from highest to lowest precedence, defaults to
        the order of ``sources``
    :raises ConfigError: If a source name repeats or is missing from ``precedence``
    :rtype: KnowledgeBase
    """

    builder = KnowledgeBaseBuilder(precedence)
    for source in sources:
        if isinstance(source, LexiconSource):
            builder.add(source.name, source.entries, source.emoticons)
        else:
            name, entries = source
            builder.add(name, entries)
    return builder.build()


def parse_source_spec(spec: str) -> Tuple[str, pathlib.Path]:
    """
    Split a ``name:path`` (optionally prefixed ``source=``) source spec; a bare path
    is named after its stem.
    """

    if spec.startswith("source="):
        spec = spec[len("source="):]
    name, found, rest = spec.partition(":")
    if found and name and rest and not pathlib.Path(spec).exists():
        return name, pathlib.Path(rest)
    path = pathlib.Path(spec)
    return path.stem, path


def split_source_specs(values: Iterable[str]) -> List[str]:
    """Flatten comma separated source spec lists, ``a:x.jsonl,b:y.jsonl``."""
    return [spec.strip() for value in values for spec in value.split(",") if spec.strip()]


def load_knowledge_base(
    specs: Sequence[str], emoticon_paths: Sequence[PathLike] = ()
) -> KnowledgeBase:
    """
    Load and merge lexicon files, highest precedence first.

    Emoticon maps are attached to the first source so that earlier files win.

    :param specs: ``name:path`` specs or bare paths
    :param emoticon_paths: Emoticon TSV files, highest precedence first
    :rtype: KnowledgeBase
    """

    sources: List[LexiconSource] = []
    for spec in specs:
        name, path = parse_source_spec(spec)
        sources.append(LexiconSource(name, load_lexicon(path, name)))
    emoticons: Dict[str, str] = {}
    for emoticon_path in emoticon_paths:
        for (emoticon, meaning) in load_emoticons(emoticon_path).items():
            emoticons.setdefault(emoticon, meaning)
    if emoticons:
        if sources:
            first = sources[0]
            sources[0] = LexiconSource(first.name, first.entries, emoticons)
        else:
            sources.append(LexiconSource("emoticons", [], emoticons))
    return merge(sources)


__all__ = [
    "Source",
    "Sense",
    "LexiconEntry",
    "KnowledgeBase",
    "LexiconSource",
    "KnowledgeBaseBuilder",
    "normalize_key",
    "lookup",
    "load_lexicon",
    "save_lexicon",
    "merge",
    "parse_source_spec",
    "split_source_specs",
    "load_knowledge_base",
]
