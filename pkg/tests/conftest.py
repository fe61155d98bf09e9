# -*- coding: utf-8 -*-
import json
import pathlib
from typing import Iterable, List, NamedTuple

import pytest

from smfp.enrich import SpellChecker
from smfp.kb import Sense, load_knowledge_base
from smfp.resources import load_frequencies, load_wordlist

TEST_ROOT = pathlib.Path(__file__).absolute().parent
FIXTURE_DIR = TEST_ROOT / "fixtures"
LEXICON_DIR = FIXTURE_DIR / "lexicons"

PALE_POST = "Sam, your pale has come back from work"
PALE_DEFINITION = "The male parent that gave birth to you"


class LexiconFile(NamedTuple):
    name: str
    path: pathlib.Path

    @property
    def spec(self) -> str:
        return f"{self.name}:{self.path.as_posix()}"


def _lexicon_files() -> List[LexiconFile]:
    return [
        LexiconFile(name, LEXICON_DIR / f"{name}.jsonl")
        for name in ("naijalingo", "urban", "internetslang")
    ]


def write_jsonl(path: pathlib.Path, records: Iterable[dict]) -> pathlib.Path:
    with path.open("w", encoding="utf-8") as fh:
        for record in records:
            fh.write(json.dumps(record) + "\n")
    return path


@pytest.fixture(scope="session")
def fixture_dir():
    return FIXTURE_DIR


@pytest.fixture(scope="session")
def lexicon_files():
    return _lexicon_files()


@pytest.fixture(params=_lexicon_files(), ids=lambda lexicon: lexicon.name)
def lexicon_file(request):
    return request.param


@pytest.fixture(scope="session")
def wordlist():
    return load_wordlist(FIXTURE_DIR / "words.txt")


@pytest.fixture(scope="session")
def freq():
    return load_frequencies(FIXTURE_DIR / "freq.tsv")


@pytest.fixture(scope="session")
def spelling_words():
    return FIXTURE_DIR.joinpath("spelling_words.txt").read_text().split()


@pytest.fixture()
def spellchecker(wordlist, freq):
    return SpellChecker(wordlist, freq)


@pytest.fixture(scope="session")
def pale_senses():
    return [
        Sense(
            definition=PALE_DEFINITION,
            usage="Ugonna your father don come from work o",
            related=("old man", "papa", "patriarch", "daddy", "pa"),
        ),
        Sense(
            definition="Having a white skin",
            usage="Having a pale skin isn't bad neither is having a tan skin",
            related=("white", "tan", "beauty", "skin", "change", "dull", "boring"),
        ),
        Sense(
            definition="A really bad hangover",
            usage="I feel so pale with what happened last night",
            related=("whitie", "pale", "white", "white boy"),
        ),
        Sense(
            definition="A platonic soulmate",
            usage="I am really pale for Gamzee. Help",
            related=("homestuck", "quadrants"),
        ),
    ]


@pytest.fixture(scope="session")
def pale_kb():
    return load_knowledge_base(
        [lexicon.spec for lexicon in _lexicon_files()], [FIXTURE_DIR / "emoticons.tsv"]
    )


@pytest.fixture()
def corpus_path(tmp_path):
    return tmp_path / "corpus.jsonl"
