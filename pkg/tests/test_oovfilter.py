# -*- coding: utf-8 -*-
import pytest

from smfp.oovfilter import TokenClass, classify_all, classify_token


@pytest.mark.parametrize(
    "token, klass",
    [
        (":)", TokenClass.EMOTICON),
        ("pale", TokenClass.KBTERM),
        ("lol", TokenClass.KBTERM),
        ("your", TokenClass.WORD),
        ("wrok", TokenClass.OOV),
        ("smh", TokenClass.KBTERM),
    ],
)
def test_classify_token(pale_kb, wordlist, token, klass):
    assert classify_token(token, pale_kb, wordlist).klass is klass


def test_slang_wins_over_dictionary_words(pale_kb):
    assert classify_token("pale", pale_kb, {"pale"}).klass is TokenClass.KBTERM


def test_classify_all_preserves_order(pale_kb, wordlist):
    tokens = ["sam", "your", "pale", "wrok", ":)"]
    classified = classify_all(tokens, pale_kb, wordlist)
    assert [c.token for c in classified] == tokens
    assert [c.klass for c in classified] == [
        TokenClass.WORD,
        TokenClass.WORD,
        TokenClass.KBTERM,
        TokenClass.OOV,
        TokenClass.EMOTICON,
    ]
