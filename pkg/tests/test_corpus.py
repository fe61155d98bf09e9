# -*- coding: utf-8 -*-
import pytest
from hypothesis import HealthCheck, given, settings, strategies as st

from smfp.corpus import Corpus, CorpusFormat, load_corpus, write_corpus
from smfp.exceptions import ParseError, SmfpException, ValidationError
from smfp.normalize import RawPost

from .conftest import PALE_POST
from .strategies import raw_posts

POSTS = (
    RawPost(PALE_POST, 1),
    RawPost('she said "no, never"\nthen left', 0),
    RawPost("unlabeled, but kept", None),
)


@pytest.mark.parametrize("fmt", list(CorpusFormat))
def test_corpus_round_trip(tmp_path, fmt):
    path = tmp_path / f"posts.{fmt.value}"
    write_corpus(Corpus(POSTS), path, fmt)
    loaded = load_corpus(path, fmt)
    assert loaded.posts == POSTS
    assert loaded.origin.format is fmt
    assert len(loaded.origin.checksum) == 64
    assert not loaded.labeled


@given(st.lists(raw_posts(), max_size=8), st.sampled_from(list(CorpusFormat)))
@settings(
    max_examples=1000,
    deadline=None,
    suppress_health_check=[HealthCheck.function_scoped_fixture],
)
def test_written_corpus_reads_back_equal(tmp_path, posts, fmt):
    path = tmp_path / f"fuzz.{fmt.value}"
    corpus = Corpus(tuple(posts))
    write_corpus(corpus, path, fmt)
    assert load_corpus(path, fmt) == corpus


def test_jsonl_omits_missing_labels(corpus_path):
    write_corpus(Corpus((RawPost("a"), RawPost("b", 1))), corpus_path)
    assert corpus_path.read_text().splitlines() == [
        '{"text": "a"}',
        '{"label": 1, "text": "b"}',
    ]


def test_jsonl_skips_blank_lines(corpus_path):
    corpus_path.write_text('{"label": 1, "text": "a"}\n\n{"label": 0, "text": "b"}\n')
    corpus = load_corpus(corpus_path)
    assert [post.label for post in corpus] == [1, 0]
    assert corpus.labeled


@pytest.mark.parametrize(
    "content, line",
    [
        ('{"label": 1, "text": "a"}\n{"label": 1\n', 2),
        ('{"label": 1}\n', 1),
        ('["text"]\n', 1),
    ],
)
def test_jsonl_parse_errors_carry_rows(corpus_path, content, line):
    corpus_path.write_text(content)
    with pytest.raises(ParseError) as excinfo:
        load_corpus(corpus_path)
    assert excinfo.value.line == line


@pytest.mark.parametrize("label", ["2", "true", "-1"])
def test_csv_rejects_bad_labels(tmp_path, label):
    path = tmp_path / "posts.csv"
    path.write_text(f"label,text\n1,ok\n{label},bad\n")
    with pytest.raises(ValidationError) as excinfo:
        load_corpus(path, "csv")
    assert excinfo.value.line == 2


@pytest.mark.parametrize("label", [2, True, 0.5])
def test_jsonl_rejects_bad_labels(corpus_path, label):
    corpus_path.write_text(f'{{"label": {str(label).lower()}, "text": "x"}}\n')
    with pytest.raises(ValidationError):
        load_corpus(corpus_path)


def test_csv_requires_header(tmp_path):
    path = tmp_path / "posts.csv"
    path.write_text("text,label\nhello,1\n")
    with pytest.raises(ParseError) as excinfo:
        load_corpus(path, "csv")
    assert excinfo.value.line == 1
    path.write_text("")
    with pytest.raises(ParseError):
        load_corpus(path, "csv")


def test_csv_reports_malformed_row(tmp_path):
    path = tmp_path / "posts.csv"
    path.write_text("label,text\n1,fine\n0,too,many\n")
    with pytest.raises(ParseError) as excinfo:
        load_corpus(path, "csv")
    assert excinfo.value.line == 2


def test_missing_file_is_reported(tmp_path):
    with pytest.raises(SmfpException):
        load_corpus(tmp_path / "absent.jsonl")


def test_subset_keeps_order():
    corpus = Corpus(POSTS)
    assert corpus.subset([2, 0]).posts == (POSTS[2], POSTS[0])
    assert list(corpus)[1] == POSTS[1]
