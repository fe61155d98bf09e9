# Copyright (c) 2019 Dan Ryan
# MIT License <https://opensource.org/licenses/mit>

import enum
from typing import AbstractSet, Iterable, List, NamedTuple

from smfp.kb import KnowledgeBase, lookup


class TokenClass(str, enum.Enum):
    WORD = "word"
    KBTERM = "kbterm"
    EMOTICON = "emoticon"
    OOV = "oov"


class ClassifiedToken(NamedTuple):
    token: str
    klass: TokenClass


def classify_token(
    token: str, kb: KnowledgeBase, wordlist: AbstractSet[str]
) -> ClassifiedToken:
    """
    Route a token to the enrichment step that handles it.

    Emoticons win over knowledge-base terms, which win over dictionary words, so a
    standard English word that is also a slang term is treated as slang.

    :param str token: A lowercase token
    :param KnowledgeBase kb: The knowledge base
    :param wordlist: English words
    :rtype: ClassifiedToken
    """

    if token in kb.emoticons:
        return ClassifiedToken(token, TokenClass.EMOTICON)
    if lookup(kb, token) is not None:
        return ClassifiedToken(token, TokenClass.KBTERM)
    if token in wordlist:
        return ClassifiedToken(token, TokenClass.WORD)
    return ClassifiedToken(token, TokenClass.OOV)


def classify_all(
    tokens: Iterable[str], kb: KnowledgeBase, wordlist: AbstractSet[str]
) -> List[ClassifiedToken]:
    return [classify_token(token, kb, wordlist) for token in tokens]


__all__ = ["TokenClass", "ClassifiedToken", "classify_token", "classify_all"]
