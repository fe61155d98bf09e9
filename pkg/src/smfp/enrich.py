# Copyright (c) 2019 Dan Ryan
# MIT License <https://opensource.org/licenses/mit>

"""
Data enrichment: definition substitution, spelling correction and emoticon
replacement, plus the plain baseline used for comparison.
"""

import concurrent.futures
import enum
import re
import string
from dataclasses import dataclass
from typing import (
    AbstractSet,
    Any,
    Dict,
    Iterable,
    Iterator,
    List,
    Mapping,
    NamedTuple,
    Optional,
    Sequence,
    Set,
    Tuple,
)

from smfp.exceptions import SmfpException
from smfp.kb import KnowledgeBase, normalize_key
from smfp.lesk import Disambiguation, disambiguate_all
from smfp.log import LoggingMixin
from smfp.normalize import RawPost, clean, stem, tokenize
from smfp.oovfilter import ClassifiedToken, TokenClass, classify_all

SLANG_POSITIVE = "slang_pos"
SLANG_NEGATIVE = "slang_neg"
SENTINELS = frozenset({SLANG_POSITIVE, SLANG_NEGATIVE})

ALPHABET = string.ascii_lowercase
CORRECTABLE_RE = re.compile(r"[a-z]+(?:'[a-z]+)*")


class EnrichmentMode(str, enum.Enum):
    SMFP = "smfp"
    BASELINE = "baseline"


class EditKind(str, enum.Enum):
    KB_SUBSTITUTION = "kb-substitution"
    SPELLFIX = "spellfix"
    EMOTICON = "emoticon"
    SLANG_POLARITY = "slang-polarity"


class Edit(NamedTuple):

    """
    Replacement of ``before`` at ``position`` by ``after``.

    Positions refer to the token list as it stands once every earlier edit of the
    same trace has been applied.
    """

    kind: EditKind
    position: int
    before: Tuple[str, ...]
    after: Tuple[str, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.kind.value,
            "position": self.position,
            "before": list(self.before),
            "after": list(self.after),
        }


@dataclass(frozen=True)
class EnrichedPost:
    source_tokens: Tuple[str, ...] = ()
    tokens: Tuple[str, ...] = ()
    trace: Tuple[Edit, ...] = ()
    stems: Tuple[str, ...] = ()
    disambiguations: Tuple[Disambiguation, ...] = ()
    label: Optional[int] = None

    def to_dict(self) -> Dict[str, Any]:
        record: Dict[str, Any] = {
            "tokens": list(self.tokens),
            "stems": list(self.stems),
            "trace": [edit.to_dict() for edit in self.trace],
            "disambiguations": [d.to_dict() for d in self.disambiguations],
        }
        if self.label is not None:
            record["label"] = self.label
        return record


def replay_trace(tokens: Sequence[str], trace: Iterable[Edit]) -> List[str]:
    """
    Apply a trace of edits to a token list.

    :raises SmfpException: If an edit does not match the tokens it claims to replace
    """

    replayed = list(tokens)
    for edit in trace:
        end = edit.position + len(edit.before)
        if tuple(replayed[edit.position : end]) != edit.before:
            raise SmfpException(f"edit {edit!r} does not apply to {replayed!r}")
        replayed[edit.position : end] = list(edit.after)
    return replayed


def _definition_tokens(text: str) -> Tuple[str, ...]:
    return tuple(clean(text).split())


def _substitute(
    tokens: Sequence[str], disambiguations: Sequence[Disambiguation]
) -> Tuple[List[str], List[Edit], List[bool]]:
    pending = list(disambiguations)
    output: List[str] = []
    edits: List[Edit] = []
    # marks the tokens that came from the post itself
    original: List[bool] = []
    for token in tokens:
        if pending and pending[0].term == token:
            replacement = _definition_tokens(pending.pop(0).definition)
            edits.append(
                Edit(EditKind.KB_SUBSTITUTION, len(output), (token,), replacement)
            )
            output.extend(replacement)
            original.extend([False] * len(replacement))
        else:
            output.append(token)
            original.append(True)
    return output, edits, original


def substitute_definitions(
    tokens: Sequence[str], disambiguations: Sequence[Disambiguation]
) -> List[str]:
    """
    Replace each disambiguated term in place by the words of its chosen definition.

    :param tokens: The tokens the disambiguations were computed from
    :param disambiguations: Results in post order
    :rtype: List[str]
    """

    return _substitute(tokens, disambiguations)[0]


class SpellChecker(LoggingMixin):

    """
    Unigram spelling corrector over a closed word list.

    Candidates one edit away are preferred over candidates two edits away; within
    a distance the most frequent word wins, ties going to the alphabetically first.
    """

    def __init__(self, wordlist: AbstractSet[str], freq: Mapping[str, int]) -> None:
        self.wordlist = wordlist
        self.freq = freq
        self._cache: Dict[str, str] = {}

    @staticmethod
    def edits1(word: str) -> Set[str]:
        splits = [(word[:i], word[i:]) for i in range(len(word) + 1)]
        deletes = [left + right[1:] for left, right in splits if right]
        transposes = [
            left + right[1] + right[0] + right[2:]
            for left, right in splits
            if len(right) > 1
        ]
        replaces = [
            left + c + right[1:] for left, right in splits if right for c in ALPHABET
        ]
        inserts = [left + c + right for left, right in splits for c in ALPHABET]
        return set(deletes + transposes + replaces + inserts)

    def edits2(self, word: str) -> Iterator[str]:
        return (e2 for e1 in self.edits1(word) for e2 in self.edits1(e1))

    def known(self, words: Iterable[str]) -> Set[str]:
        return {w for w in words if w in self.wordlist}

    def best(self, candidates: Iterable[str]) -> str:
        return min(candidates, key=lambda w: (-self.freq.get(w, 0), w))

    def correct(self, token: str) -> str:
        """
        Correct a single out-of-vocabulary token.

        :param str token: The token to correct
        :return: The correction, or ``token`` when it is known or nothing is close
        :rtype: str
        """

        if token in self.wordlist or not CORRECTABLE_RE.fullmatch(token):
            return token
        if token in self._cache:
            return self._cache[token]
        candidates = self.known(self.edits1(token)) or self.known(self.edits2(token))
        corrected = self.best(candidates) if candidates else token
        if corrected != token:
            self.log.debug(f"corrected {token!r} to {corrected!r}")
        self._cache[token] = corrected
        return corrected


def spell_correct(token: str, wordlist: AbstractSet[str], freq: Mapping[str, int]) -> str:
    return SpellChecker(wordlist, freq).correct(token)


def _replace_emoticons(
    tokens: Sequence[str], emoticons: Mapping[str, str]
) -> Tuple[List[str], List[Edit]]:
    output: List[str] = []
    edits: List[Edit] = []
    for token in tokens:
        if token in emoticons:
            meaning = _definition_tokens(emoticons[token])
            edits.append(Edit(EditKind.EMOTICON, len(output), (token,), meaning))
            output.extend(meaning)
        else:
            output.append(token)
    return output, edits


def replace_emoticons(tokens: Sequence[str], kb: KnowledgeBase) -> List[str]:
    """Replace every emoticon token by the words of its meaning."""
    return _replace_emoticons(tokens, kb.emoticons)[0]


def stem_tokens(
    tokens: Iterable[str], emoticons: AbstractSet[str] = frozenset()
) -> List[str]:
    """Stem word tokens, leaving emoticons and polarity sentinels untouched."""
    return [t if t in emoticons or t in SENTINELS else stem(t) for t in tokens]


def _enrich_smfp(
    classified: Sequence[ClassifiedToken], kb: KnowledgeBase, checker: SpellChecker
) -> Tuple[List[str], List[Edit], List[Disambiguation]]:
    tokens = [item.token for item in classified]
    disambiguations = disambiguate_all(classified, kb)
    tokens, edits, original = _substitute(tokens, disambiguations)
    oov = {item.token for item in classified if item.klass is TokenClass.OOV}
    for (position, token) in enumerate(tokens):
        if not original[position] or token not in oov:
            continue
        corrected = checker.correct(token)
        if corrected != token:
            edits.append(Edit(EditKind.SPELLFIX, position, (token,), (corrected,)))
            tokens[position] = corrected
    tokens, emoticon_edits = _replace_emoticons(tokens, kb.emoticons)
    edits.extend(emoticon_edits)
    return tokens, edits, disambiguations


def _enrich_baseline(
    classified: Sequence[ClassifiedToken], polarity: Optional[Mapping[str, int]]
) -> Tuple[List[str], List[Edit]]:
    output: List[str] = []
    edits: List[Edit] = []
    for item in classified:
        if item.klass is not TokenClass.KBTERM or polarity is None:
            output.append(item.token)
            continue
        value = polarity.get(normalize_key(item.token))
        after: Tuple[str, ...] = ()
        if value is not None:
            after = (SLANG_POSITIVE if value > 0 else SLANG_NEGATIVE,)
        edits.append(Edit(EditKind.SLANG_POLARITY, len(output), (item.token,), after))
        output.extend(after)
    return output, edits


def enrich_post(
    raw: RawPost,
    kb: KnowledgeBase,
    wordlist: AbstractSet[str],
    freq: Mapping[str, int],
    mode: EnrichmentMode = EnrichmentMode.SMFP,
    polarity: Optional[Mapping[str, int]] = None,
    spellchecker: Optional[SpellChecker] = None,
) -> EnrichedPost:
    """
    Run one post through the enrichment workflow.

    ``smfp`` mode cleans, tokenizes, classifies, disambiguates and substitutes
    knowledge-base terms, corrects out-of-vocabulary words, replaces emoticons and
    stems. ``baseline`` mode only cleans, tokenizes, optionally swaps slang terms
    for polarity sentinels and stems.

    :param RawPost raw: The post
    :param KnowledgeBase kb: The knowledge base
    :param wordlist: English words
    :param freq: Word frequencies for spelling correction
    :param EnrichmentMode mode: ``smfp`` or ``baseline``
    :param polarity: Slang polarity lexicon for the baseline, keyed by lookup key
    :param spellchecker: A shared corrector, built from ``wordlist`` and ``freq`` if
        not given
    :rtype: EnrichedPost
    """

    mode = EnrichmentMode(mode)
    source = tokenize(clean(raw.text, kb.emoticons), provenance=raw)
    classified = classify_all(source.tokens, kb, wordlist)
    disambiguations: List[Disambiguation] = []
    if mode is EnrichmentMode.SMFP:
        checker = spellchecker or SpellChecker(wordlist, freq)
        tokens, edits, disambiguations = _enrich_smfp(classified, kb, checker)
    else:
        tokens, edits = _enrich_baseline(classified, polarity)
    return EnrichedPost(
        source_tokens=source.tokens,
        tokens=tuple(tokens),
        trace=tuple(edits),
        stems=tuple(stem_tokens(tokens, kb.emoticons.keys())),
        disambiguations=tuple(disambiguations),
        label=raw.label,
    )


class Enricher(LoggingMixin):

    """
    Enriches many posts with shared read-only resources.

    Posts fan out across a thread pool; results keep the input order.
    """

    def __init__(
        self,
        kb: KnowledgeBase,
        wordlist: AbstractSet[str],
        freq: Mapping[str, int],
        mode: EnrichmentMode = EnrichmentMode.SMFP,
        polarity: Optional[Mapping[str, int]] = None,
        workers: int = 1,
    ) -> None:
        self.kb = kb
        self.wordlist = wordlist
        self.freq = freq
        self.mode = EnrichmentMode(mode)
        self.polarity = polarity
        self.workers = max(1, workers)
        self.spellchecker = SpellChecker(wordlist, freq)

    def enrich(self, post: RawPost) -> EnrichedPost:
        return enrich_post(
            post,
            self.kb,
            self.wordlist,
            self.freq,
            mode=self.mode,
            polarity=self.polarity,
            spellchecker=self.spellchecker,
        )

    def enrich_many(self, posts: Sequence[RawPost]) -> List[EnrichedPost]:
        self.log.info(
            f"enriching {len(posts)} posts in {self.mode.value!r} mode "
            f"with {self.workers} worker(s)"
        )
        if self.workers == 1:
            return [self.enrich(post) for post in posts]
        with concurrent.futures.ThreadPoolExecutor(max_workers=self.workers) as executor:
            return list(executor.map(self.enrich, posts))


__all__ = [
    "SLANG_POSITIVE",
    "SLANG_NEGATIVE",
    "EnrichmentMode",
    "EditKind",
    "Edit",
    "EnrichedPost",
    "replay_trace",
    "substitute_definitions",
    "SpellChecker",
    "spell_correct",
    "replace_emoticons",
    "stem_tokens",
    "enrich_post",
    "Enricher",
]
