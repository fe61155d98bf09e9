# -*- coding: utf-8 -*-
import pytest
from hypothesis import given, settings, strategies as st

from smfp.exceptions import EmptySenses
from smfp.kb import LexiconEntry, Sense
from smfp.lesk import disambiguate_all, disambiguate_term, relatedness, usage_tokens
from smfp.normalize import clean
from smfp.oovfilter import classify_all

from .conftest import PALE_DEFINITION, PALE_POST
from .strategies import GLOSS_VOCAB, gloss_instances


def _entry(usages):
    senses = tuple(
        Sense(definition=f"meaning {index}", usage=usage)
        for (index, usage) in enumerate(usages)
    )
    return LexiconEntry(term="term", key="term", senses=senses)


def test_relatedness_counts_distinct_shared_words():
    post = clean(PALE_POST).split()
    assert relatedness(post, usage_tokens("Ugonna your father don come from work o")) == 4
    skin = "Having a pale skin isn't bad neither is having a tan skin"
    assert relatedness(post, usage_tokens(skin)) == 1


def test_relatedness_ignores_repeats():
    assert relatedness(["a", "a", "b"], ["a", "a", "a"]) == 1


def test_disambiguate_pale(pale_senses):
    entry = LexiconEntry(term="pale", key="pale", senses=tuple(pale_senses))
    result = disambiguate_term("pale", clean(PALE_POST).split(), entry)
    assert [score.overlap for score in result.scores] == [4, 1, 1, 1]
    assert result.chosen == 0
    assert result.definition == PALE_DEFINITION
    assert result.confident
    assert result.to_dict()["scores"] == [4, 1, 1, 1]


def test_disambiguate_without_overlap_falls_back_to_first_sense():
    entry = _entry(["alpha beta", "gamma delta"])
    result = disambiguate_term("term", ["unrelated", "words"], entry)
    assert result.chosen == 0
    assert result.definition == "meaning 0"
    assert not result.confident


def test_disambiguate_breaks_ties_on_smallest_index():
    entry = _entry(["x one", "y one", "z one two"])
    result = disambiguate_term("term", ["one", "two"], entry)
    assert result.chosen == 2
    result = disambiguate_term("term", ["one"], entry)
    assert result.chosen == 0


def test_disambiguate_rejects_entry_without_senses():
    entry = LexiconEntry(term="x", key="x", senses=(Sense("d", "u"),))
    object.__setattr__(entry, "senses", ())
    with pytest.raises(EmptySenses):
        disambiguate_term("x", ["x"], entry)


def test_disambiguate_all_uses_whole_post(pale_kb, wordlist):
    tokens = clean("lol your pale has come back from work smh").split()
    results = disambiguate_all(classify_all(tokens, pale_kb, wordlist), pale_kb)
    assert [result.term for result in results] == ["lol", "pale", "smh"]
    assert results[1].definition == PALE_DEFINITION


@given(gloss_instances())
@settings(max_examples=1000, derandomize=True)
def test_disambiguate_matches_exhaustive_scoring(instance):
    usages, post = instance
    result = disambiguate_term("term", post, _entry(usages))
    expected = [len(set(post) & set(usage.split())) for usage in usages]
    best = max(expected)
    assert [score.overlap for score in result.scores] == expected
    assert result.chosen == expected.index(best)
    assert result.confident == (best > 0)
    assert result.definition == f"meaning {result.chosen}"


@given(
    st.lists(st.sampled_from(GLOSS_VOCAB), max_size=20),
    st.lists(st.sampled_from(GLOSS_VOCAB), max_size=20),
)
def test_relatedness_is_symmetric_and_bounded(left, right):
    score = relatedness(left, right)
    assert score == relatedness(right, left)
    assert score <= min(len(set(left)), len(set(right)))


@given(gloss_instances(), st.data())
def test_adding_a_private_word_only_raises_its_sense(instance, data):
    usages, post = instance
    index = data.draw(st.integers(min_value=0, max_value=len(usages) - 1))
    usages = list(usages)
    usages[index] = usages[index] + " private"
    entry = _entry(usages)
    before = disambiguate_term("term", post, entry).scores
    after = disambiguate_term("term", post + ["private"], entry).scores
    for (old, new) in zip(before, after):
        if old.sense_index == index:
            assert new.overlap == old.overlap + 1
        else:
            assert new.overlap == old.overlap
