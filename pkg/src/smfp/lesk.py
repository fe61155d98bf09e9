# Copyright (c) 2019 Dan Ryan
# MIT License <https://opensource.org/licenses/mit>

"""
Gloss-overlap disambiguation of slang, abbreviation and acronym terms.

Each sense is scored by the number of distinct words its usage example shares
with the whole post; the best scoring sense supplies the definition that replaces
the term.
"""

import functools
import logging
from dataclasses import dataclass
from typing import Any, Dict, FrozenSet, Iterable, List, NamedTuple, Sequence, Tuple

from smfp.exceptions import EmptySenses
from smfp.kb import KnowledgeBase, LexiconEntry, lookup
from smfp.normalize import clean
from smfp.oovfilter import ClassifiedToken, TokenClass

log = logging.getLogger(__name__)


class SenseScore(NamedTuple):
    sense_index: int
    overlap: int


@dataclass(frozen=True)
class Disambiguation:

    """
    The outcome of disambiguating one term occurrence.

    ``chosen`` is the smallest sense index attaining the best overlap, and
    ``confident`` is False when no usage example shares any word with the post.
    """

    term: str
    chosen: int
    definition: str
    scores: Tuple[SenseScore, ...]
    confident: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "term": self.term,
            "chosen": self.chosen,
            "scores": [score.overlap for score in self.scores],
            "definition": self.definition,
            "confident": self.confident,
        }


@functools.lru_cache(maxsize=4096)
def usage_tokens(usage: str) -> FrozenSet[str]:
    """The distinct cleaned tokens of a usage example."""
    return frozenset(clean(usage).split())


def relatedness(context_tokens: Iterable[str], usage_tokens: Iterable[str]) -> int:
    """
    Count the distinct words two token lists share.

    Repeated tokens count once and the target term itself is not excluded.

    :param context_tokens: The tokens of the post
    :param usage_tokens: The tokens of a usage example
    :return: The size of the intersection of both token sets
    :rtype: int
    """

    return len(set(context_tokens).intersection(usage_tokens))


def disambiguate_term(
    term: str, post_tokens: Sequence[str], entry: LexiconEntry
) -> Disambiguation:
    """
    Pick the sense of ``term`` whose usage example best overlaps the post.

    :param str term: The term as it appears in the post
    :param post_tokens: Cleaned tokens of the whole post
    :param LexiconEntry entry: The knowledge-base entry for ``term``
    :raises EmptySenses: If the entry carries no senses
    :rtype: Disambiguation
    """

    if not entry.senses:
        raise EmptySenses(f"entry {entry.key!r} has no senses to choose from")
    context = frozenset(post_tokens)
    scores = tuple(
        SenseScore(index, relatedness(context, usage_tokens(sense.usage)))
        for (index, sense) in enumerate(entry.senses)
    )
    best = max(score.overlap for score in scores)
    chosen = next(score.sense_index for score in scores if score.overlap == best)
    log.debug(f"disambiguated {term!r} to sense {chosen} with scores {scores!r}")
    return Disambiguation(
        term=term,
        chosen=chosen,
        definition=entry.senses[chosen].definition,
        scores=scores,
        confident=best > 0,
    )


def disambiguate_all(
    classified: Sequence[ClassifiedToken], kb: KnowledgeBase
) -> List[Disambiguation]:
    """
    Disambiguate every knowledge-base term of a post against the original post.

    :param classified: The classified tokens of one post
    :param KnowledgeBase kb: The knowledge base the terms were found in
    :return: One result per ``kbterm`` token, in post order
    :rtype: List[Disambiguation]
    """

    post_tokens = [item.token for item in classified]
    results: List[Disambiguation] = []
    for item in classified:
        if item.klass is not TokenClass.KBTERM:
            continue
        entry = lookup(kb, item.token)
        if entry is None:
            continue
        results.append(disambiguate_term(item.token, post_tokens, entry))
    return results


__all__ = [
    "SenseScore",
    "Disambiguation",
    "usage_tokens",
    "relatedness",
    "disambiguate_term",
    "disambiguate_all",
]
