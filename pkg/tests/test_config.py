# -*- coding: utf-8 -*-
import json

import pytest

from smfp.config import ModelSpec, PipelineConfig, parse_ngram_spec, parse_top_k_spec
from smfp.exceptions import ConfigError
from smfp.features import LabeledSet
from smfp.learn import LinearModel, MlpModel


@pytest.mark.parametrize(
    "spec, expected",
    [("1,2", (1, 2)), ("2, 1, 2", (1, 2)), ([3], (3,)), ((1,), (1,))],
)
def test_parse_ngram_spec(spec, expected):
    assert parse_ngram_spec(spec) == expected


@pytest.mark.parametrize("spec", ["", "a,b", "0,1", []])
def test_parse_ngram_spec_rejects(spec):
    with pytest.raises(ConfigError):
        parse_ngram_spec(spec)


@pytest.mark.parametrize(
    "spec, expected",
    [
        ("1:50000,2:150000", {1: 50000, 2: 150000}),
        ({"1": 10}, {1: 10}),
        ({2: 5}, {2: 5}),
    ],
)
def test_parse_top_k_spec(spec, expected):
    assert parse_top_k_spec(spec) == expected


@pytest.mark.parametrize("spec", ["1", "1:x", "1:0", "", {}])
def test_parse_top_k_spec_rejects(spec):
    with pytest.raises(ConfigError):
        parse_top_k_spec(spec)


def test_defaults():
    config = PipelineConfig()
    assert config.mode == "smfp"
    assert config.ngrams == (1, 2)
    assert config.top_k == {1: 50000, 2: 150000}
    assert config.model == ModelSpec(type="svm", c=0.1)
    assert config.vocab_from == "train"


@pytest.mark.parametrize(
    "record",
    [
        {"mode": "fancy"},
        {"ngrams": [1, 3], "top_k": {"1": 5}},
        {"vocab_from": "test"},
        {"corpus_format": "xml"},
        {"workers": 0},
        {"cv_folds": 1},
        {"model": {"type": "forest"}},
        {"model": {"type": "svm", "gamma": 1}},
        {"model": {"c": -1.0}},
        {"unknown": True},
    ],
)
def test_invalid_configs(record):
    with pytest.raises(ConfigError):
        PipelineConfig.from_dict(record)


def test_from_json_resolves_relative_paths(tmp_path):
    (tmp_path / "data").mkdir()
    path = tmp_path / "run.json"
    path.write_text(
        json.dumps(
            {
                "kb_paths": ["urban:data/urban.jsonl", "/abs/naija.jsonl"],
                "wordlist_path": "data/words.txt",
                "emoticon_paths": ["data/emoticons.tsv"],
                "model": {"type": "mlp", "hidden": 8},
            }
        )
    )
    config = PipelineConfig.from_json(path)
    assert config.kb_paths == (
        f"urban:{(tmp_path / 'data' / 'urban.jsonl').as_posix()}",
        "naija:/abs/naija.jsonl",
    )
    assert config.wordlist_path == (tmp_path / "data" / "words.txt").as_posix()
    assert config.emoticon_paths == ((tmp_path / "data" / "emoticons.tsv").as_posix(),)
    assert isinstance(config.model, ModelSpec)
    assert config.model.hidden == 8


@pytest.mark.parametrize("content", ["{not json", "[1, 2]"])
def test_from_json_rejects_bad_files(tmp_path, content):
    path = tmp_path / "run.json"
    path.write_text(content)
    with pytest.raises(ConfigError):
        PipelineConfig.from_json(path)


def test_from_json_reports_missing_file(tmp_path):
    with pytest.raises(ConfigError):
        PipelineConfig.from_json(tmp_path / "absent.json")


def test_digest_is_stable_and_sensitive():
    first = PipelineConfig(seed=1)
    assert first.digest() == PipelineConfig.from_dict({"seed": 1}).digest()
    assert first.digest() != PipelineConfig(seed=2).digest()
    assert first.to_dict()["top_k"] == {"1": 50000, "2": 150000}
    json.dumps(first.to_dict())


def test_validate_names_missing_file(tmp_path, fixture_dir):
    config = PipelineConfig(
        wordlist_path=(fixture_dir / "words.txt").as_posix(),
        kb_paths=(f"urban:{(tmp_path / 'absent.jsonl').as_posix()}",),
    )
    with pytest.raises(ConfigError) as excinfo:
        config.validate()
    assert "kb:urban" in str(excinfo.value)
    PipelineConfig(wordlist_path=(fixture_dir / "words.txt").as_posix()).validate()


def test_data_paths_names_every_input():
    config = PipelineConfig(kb_paths=("urban:/u.jsonl",), emoticon_paths=("/e.tsv",))
    paths = config.data_paths()
    assert paths["kb:urban"] == "/u.jsonl"
    assert paths["emoticons:0"] == "/e.tsv"
    assert paths["train"] is None


@pytest.mark.parametrize("kind, model_type", [("svm", LinearModel), ("mlp", MlpModel)])
def test_model_spec_trains_configured_model(kind, model_type):
    rows = [[1.0, 0.0], [0.0, 1.0], [1.0, 0.1], [0.1, 1.0]]
    data = LabeledSet.from_dense(rows, [1, 0, 1, 0])
    spec = ModelSpec.from_dict({"type": kind, "hidden": 2, "epochs": 2})
    assert isinstance(spec.train(data, seed=0), model_type)
    assert ModelSpec.from_dict(spec.to_dict()) == spec


def test_model_spec_defaults():
    spec = ModelSpec()
    assert spec.init_scale == 0.01
    assert spec.hidden == 500
