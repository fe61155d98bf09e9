# Copyright (c) 2019 Dan Ryan
# MIT License <https://opensource.org/licenses/mit>

"""
End-to-end run: enrich, featurize, optionally rebalance, train and evaluate.
"""

import json
import pathlib
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from smfp import __version__
from smfp.config import PipelineConfig
from smfp.corpus import Corpus
from smfp.enrich import EnrichedPost, Enricher, EnrichmentMode
from smfp.exceptions import DegenerateData, ValidationError
from smfp.features import LabeledSet, Vocabulary, build_vocab, vectorize
from smfp.kb import KnowledgeBase, load_knowledge_base, parse_source_spec
from smfp.learn import (
    cross_validate,
    evaluate_accuracy,
    precision_recall_f1,
    ros_oversample,
)
from smfp.learn.persistence import Model
from smfp.log import LoggingMixin
from smfp.resources import (
    DEFAULT_EMOTICONS,
    DEFAULT_FREQUENCIES,
    DEFAULT_STOPLIST,
    DEFAULT_WORDLIST,
    SAMPLE_LEXICON,
    data_checksums,
    load_frequencies,
    load_polarity,
    load_stopwords,
    load_wordlist,
)

PathLike = Union[str, pathlib.Path]


class Pipeline(LoggingMixin):

    """
    Runs one configured experiment.

    Resources are loaded once on first use and shared by the training and test
    passes. Without ``kb_paths`` the bundled sample lexicon is used; without
    ``emoticon_paths`` the bundled emoticon map is.

    :param PipelineConfig config: The run configuration
    """

    def __init__(self, config: PipelineConfig) -> None:
        self.config = config
        self._enricher: Optional[Enricher] = None
        self._stoplist: frozenset = frozenset()
        self._checksums: Dict[str, str] = {}

    @property
    def kb_specs(self) -> Tuple[str, ...]:
        return self.config.kb_paths or (f"sample:{SAMPLE_LEXICON.as_posix()}",)

    @property
    def emoticon_paths(self) -> Tuple[str, ...]:
        return self.config.emoticon_paths or (DEFAULT_EMOTICONS.as_posix(),)

    def data_paths(self) -> Dict[str, Optional[str]]:
        """The configured input files with the bundled defaults filled in."""
        paths = {
            name: path
            for (name, path) in self.config.data_paths().items()
            if not name.startswith(("kb:", "emoticons:"))
        }
        paths["wordlist"] = paths["wordlist"] or DEFAULT_WORDLIST.as_posix()
        paths["freq"] = paths["freq"] or DEFAULT_FREQUENCIES.as_posix()
        if self.config.remove_stopwords:
            paths["stoplist"] = paths["stoplist"] or DEFAULT_STOPLIST.as_posix()
        for spec in self.kb_specs:
            name, path = parse_source_spec(spec)
            paths[f"kb:{name}"] = path.as_posix()
        for (index, emoticon_path) in enumerate(self.emoticon_paths):
            paths[f"emoticons:{index}"] = emoticon_path
        return paths

    def load_knowledge_base(self) -> KnowledgeBase:
        kb = load_knowledge_base(self.kb_specs, self.emoticon_paths)
        if len(kb) == 0:
            self.log.warning("the knowledge base holds no terms")
        return kb

    @property
    def enricher(self) -> Enricher:
        if self._enricher is None:
            config = self.config
            kb = self.load_knowledge_base()
            wordlist = load_wordlist(config.wordlist_path)
            freq = load_frequencies(config.freq_path)
            polarity = None
            if config.polarity_path:
                polarity = load_polarity(config.polarity_path)
            if config.remove_stopwords:
                self._stoplist = load_stopwords(config.stoplist_path)
            self._checksums = data_checksums(self.data_paths())
            self.log.info(
                f"loaded {len(kb)} terms, {len(kb.emoticons)} emoticons "
                f"and {len(wordlist)} words"
            )
            self._enricher = Enricher(
                kb,
                wordlist,
                freq,
                mode=EnrichmentMode(config.mode),
                polarity=polarity,
                workers=config.workers,
            )
        return self._enricher

    @property
    def checksums(self) -> Dict[str, str]:
        self.enricher
        return dict(self._checksums)

    def features(self, post: EnrichedPost) -> List[str]:
        """The stems a post contributes to n-gram extraction."""
        if not self._stoplist:
            return list(post.stems)
        return [
            stemmed
            for (token, stemmed) in zip(post.tokens, post.stems)
            if token not in self._stoplist
        ]

    def documents(self, corpus: Corpus) -> List[List[str]]:
        return [self.features(post) for post in self.enricher.enrich_many(corpus.posts)]

    def labeled_set(
        self, documents: Sequence[Sequence[str]], corpus: Corpus, vocab: Vocabulary
    ) -> LabeledSet:
        for (row, post) in enumerate(corpus.posts, 1):
            if post.label is None:
                raise ValidationError("post has no label", line=row)
        return LabeledSet(
            vectors=tuple(vectorize(doc, vocab) for doc in documents),
            labels=tuple(post.label for post in corpus.posts),
            dimension=len(vocab),
        )

    def train(self, data: LabeledSet) -> Model:
        if self.config.oversample:
            data = ros_oversample(data, seed=self.config.seed)
        return self.config.model.train(data, seed=self.config.seed)

    def run(self, train_corpus: Corpus, test_corpus: Corpus) -> Dict[str, Any]:
        """
        Execute the experiment and build its report.

        :raises DegenerateData: If the training corpus is empty or single-class
        :rtype: Dict[str, Any]
        """

        config = self.config
        if len(train_corpus) == 0:
            raise DegenerateData("the training corpus is empty")
        train_docs = self.documents(train_corpus)
        test_docs = self.documents(test_corpus)
        vocab_docs = train_docs
        if config.vocab_from == "all":
            vocab_docs = train_docs + test_docs
        vocab = build_vocab(
            vocab_docs, config.ngrams, config.top_k, workers=config.workers
        )
        train_set = self.labeled_set(train_docs, train_corpus, vocab)
        test_set = self.labeled_set(test_docs, test_corpus, vocab)
        model = self.train(train_set)
        accuracy = evaluate_accuracy(model, test_set)
        metrics = precision_recall_f1(model, test_set)
        self.log.info(f"{config.mode} {config.model.type} accuracy {accuracy:.4f}")
        report: Dict[str, Any] = {
            "version": __version__,
            "mode": config.mode,
            "model": config.model.type,
            "config_digest": config.digest(),
            "seed": config.seed,
            "train_size": len(train_set),
            "test_size": len(test_set),
            "vocab_size": len(vocab),
            "accuracy": accuracy,
            "precision": metrics.precision,
            "recall": metrics.recall,
            "f1": metrics.f1,
            "checksums": self.checksums,
        }
        if config.cv_folds:
            report["cv_accuracy"] = cross_validate(
                train_set, self.train, k=config.cv_folds, seed=config.seed
            )
        return report


def run_pipeline(
    config: PipelineConfig, train_corpus: Corpus, test_corpus: Corpus
) -> Dict[str, Any]:
    """
    Run the configured experiment on already loaded corpora.

    :param PipelineConfig config: The run configuration
    :param Corpus train_corpus: Labeled training posts
    :param Corpus test_corpus: Labeled test posts
    :return: The report ``{mode, model, config_digest, seed, train_size, test_size,
        accuracy, ...}``
    :rtype: Dict[str, Any]
    """

    return Pipeline(config).run(train_corpus, test_corpus)


def dump_report(report: Dict[str, Any]) -> str:
    """Canonical JSON text of a report; equal reports give identical text."""
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


__all__ = ["Pipeline", "run_pipeline", "dump_report"]
