# Copyright (c) 2019 Dan Ryan
# MIT License <https://opensource.org/licenses/mit>

"""
The ``smfp`` command.

Every subcommand writes machine-readable output (JSON or JSON Lines) to a file or
to standard output; logging goes to standard error. Errors raised by the toolkit
exit with status 1, usage errors with status 2.
"""

import argparse
import contextlib
import json
import logging
import pathlib
import sys
from typing import Any, Callable, Dict, Iterable, Iterator, List, Optional, Sequence

from smfp import __version__
from smfp.config import ModelSpec, PipelineConfig, parse_ngram_spec, parse_top_k_spec
from smfp.corpus import Corpus, CorpusFormat, load_corpus, write_corpus
from smfp.enrich import Enricher, EnrichmentMode
from smfp.exceptions import ParseError, SmfpException
from smfp.features import (
    LabeledSet,
    build_vocab,
    load_labeled_set,
    load_vocab,
    save_labeled_set,
    save_vocab,
    vectorize,
)
from smfp.kb import load_knowledge_base, lookup, save_lexicon, split_source_specs
from smfp.learn import (
    cross_validate,
    evaluate_accuracy,
    load_model,
    precision_recall_f1,
    ratio_split,
    ros_oversample,
    save_model,
    systematic_sample,
    systematic_split,
)
from smfp.lesk import disambiguate_all
from smfp.log import configure_logging
from smfp.normalize import clean, tokenize
from smfp.oovfilter import classify_all
from smfp.pipeline import Pipeline, dump_report
from smfp.resources import (
    BUNDLED_DATA,
    DEFAULT_EMOTICONS,
    SAMPLE_LEXICON,
    data_checksums,
    load_frequencies,
    load_polarity,
    load_wordlist,
)

log = logging.getLogger("smfp.cli")


class VersionAction(argparse.Action):
    def __init__(self, option_strings, dest=argparse.SUPPRESS, **kwargs):
        super(VersionAction, self).__init__(
            option_strings, dest=dest, nargs=0, help="print versions and data checksums"
        )

    def __call__(self, parser, namespace, values, option_string=None):
        checksums = data_checksums(BUNDLED_DATA)
        lines = [f"smfp {__version__}"]
        lines.extend(f"{name} sha256:{digest}" for (name, digest) in checksums.items())
        sys.stdout.write("\n".join(lines) + "\n")
        parser.exit()


def _mtime(path: str) -> Optional[int]:
    try:
        return pathlib.Path(path).stat().st_mtime_ns
    except OSError:
        return None


@contextlib.contextmanager
def removing_on_error(*paths: Optional[str]) -> Iterator[None]:
    """Delete output files the wrapped block created or rewrote if it fails."""
    before = {path: _mtime(path) for path in paths if path}
    try:
        yield
    except BaseException:
        for (path, mtime) in before.items():
            current = _mtime(path)
            if current is not None and current != mtime:
                log.debug(f"removing partial output {path!r}")
                pathlib.Path(path).unlink()
        raise


def _write_lines(records: Iterable[Dict[str, Any]], out: Optional[str]) -> None:
    lines = (json.dumps(record, sort_keys=True) + "\n" for record in records)
    if out is None:
        sys.stdout.writelines(lines)
        return
    with pathlib.Path(out).open("w", encoding="utf-8") as fh:
        fh.writelines(lines)


def _write_json(record: Any, out: Optional[str]) -> None:
    text = json.dumps(record, sort_keys=True, indent=2) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        pathlib.Path(out).write_text(text, encoding="utf-8")


def _kb(args: argparse.Namespace):
    specs = split_source_specs(getattr(args, "sources", None) or [])
    specs.extend(split_source_specs(args.kb or []))
    if not specs:
        specs = [f"sample:{SAMPLE_LEXICON.as_posix()}"]
    emoticons = args.emoticons or [DEFAULT_EMOTICONS.as_posix()]
    return load_knowledge_base(specs, emoticons)


def _load_posts(args: argparse.Namespace) -> Corpus:
    return load_corpus(args.input, CorpusFormat(args.format))


def _model_spec(args: argparse.Namespace) -> ModelSpec:
    return ModelSpec(
        type=args.model_type,
        c=args.c,
        hidden=args.hidden,
        epochs=args.epochs,
        lr=args.lr,
        batch_size=args.batch_size,
        init_scale=args.init_scale,
    )


def cmd_kb_validate(args: argparse.Namespace) -> int:
    kb = _kb(args)
    senses = sum(len(entry.senses) for entry in kb.entries.values())
    _write_json(
        {
            "terms": len(kb),
            "senses": senses,
            "emoticons": len(kb.emoticons),
            "sources": list(kb.source_precedence),
        },
        None,
    )
    return 0


def cmd_kb_lookup(args: argparse.Namespace) -> int:
    entry = lookup(_kb(args), args.term)
    if entry is None:
        sys.stderr.write(f"{args.term!r} is not in the knowledge base\n")
        return 1
    _write_json(
        {
            "term": entry.term,
            "key": entry.key,
            "senses": [sense.to_dict() for sense in entry.senses],
        },
        None,
    )
    return 0


def cmd_kb_merge(args: argparse.Namespace) -> int:
    with removing_on_error(args.out):
        count = save_lexicon(_kb(args), args.out)
    log.info(f"wrote {count} entries to {args.out!r}")
    return 0


def cmd_clean(args: argparse.Namespace) -> int:
    emoticons = _kb(args).emoticons
    corpus = _load_posts(args)
    records = []
    for post in corpus:
        record: Dict[str, Any] = {"tokens": list(tokenize(clean(post.text, emoticons)))}
        if post.label is not None:
            record["label"] = post.label
        records.append(record)
    with removing_on_error(args.out):
        _write_lines(records, args.out)
    return 0


def cmd_disambiguate(args: argparse.Namespace) -> int:
    kb = _kb(args)
    wordlist = load_wordlist(args.wordlist)
    records = []
    for post in _load_posts(args):
        tokens = tokenize(clean(post.text, kb.emoticons)).tokens
        results = disambiguate_all(classify_all(tokens, kb, wordlist), kb)
        records.append({"disambiguations": [d.to_dict() for d in results]})
    with removing_on_error(args.out):
        _write_lines(records, args.out)
    return 0


def cmd_enrich(args: argparse.Namespace) -> int:
    enricher = Enricher(
        _kb(args),
        load_wordlist(args.wordlist),
        load_frequencies(args.freq),
        mode=EnrichmentMode(args.mode),
        polarity=load_polarity(args.polarity) if args.polarity else None,
        workers=args.workers,
    )
    enriched = enricher.enrich_many(_load_posts(args).posts)
    with removing_on_error(args.out):
        _write_lines((post.to_dict() for post in enriched), args.out)
    return 0


def _read_documents(path: str) -> List[Dict[str, Any]]:
    records = []
    with pathlib.Path(path).open("r", encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, 1):
            if not line.strip():
                continue
            try:
                record = json.loads(line)
            except ValueError as exc:
                raise ParseError(f"invalid JSON in {path!r}", line=line_no) from exc
            if not isinstance(record, dict) or not isinstance(record.get("stems"), list):
                raise ParseError(f"expected an enriched post in {path!r}", line=line_no)
            if record.get("label") not in (0, 1) or isinstance(record.get("label"), bool):
                raise ParseError(
                    f"enriched post has no 0/1 label in {path!r}", line=line_no
                )
            records.append(record)
    return records


def cmd_featurize(args: argparse.Namespace) -> int:
    records = _read_documents(args.input)
    documents = [record["stems"] for record in records]
    if args.vocab_in:
        vocab = load_vocab(args.vocab_in)
    else:
        vocab = build_vocab(
            documents,
            parse_ngram_spec(args.ngrams),
            parse_top_k_spec(args.top_k),
            workers=args.workers,
        )
    data = LabeledSet(
        vectors=tuple(vectorize(doc, vocab) for doc in documents),
        labels=tuple(record["label"] for record in records),
        dimension=len(vocab),
    )
    with removing_on_error(args.out, args.vocab_out):
        if args.vocab_out:
            save_vocab(vocab, args.vocab_out)
        save_labeled_set(data, args.out)
    return 0


def cmd_train(args: argparse.Namespace) -> int:
    model = _model_spec(args).train(load_labeled_set(args.train), seed=args.seed)
    with removing_on_error(args.model_out):
        save_model(model, args.model_out)
    return 0


def cmd_eval(args: argparse.Namespace) -> int:
    model = load_model(args.model)
    test = load_labeled_set(args.test, dimension=model.dimension)
    metrics = precision_recall_f1(model, test)
    _write_json(
        {
            "accuracy": evaluate_accuracy(model, test),
            "precision": metrics.precision,
            "recall": metrics.recall,
            "f1": metrics.f1,
            "test_size": len(test),
        },
        args.out,
    )
    return 0


def cmd_cv(args: argparse.Namespace) -> int:
    spec = _model_spec(args)
    data = load_labeled_set(args.train)
    scores = cross_validate(
        data, lambda part: spec.train(part, seed=args.seed), k=args.folds, seed=args.seed
    )
    _write_json(
        {
            "folds": args.folds,
            "seed": args.seed,
            "accuracy": scores,
            "mean_accuracy": sum(scores) / len(scores),
        },
        args.out,
    )
    return 0


def cmd_sample(args: argparse.Namespace) -> int:
    corpus = _load_posts(args)
    with removing_on_error(args.out):
        sample = corpus.subset(systematic_sample(len(corpus), args.every))
        write_corpus(sample, args.out, args.format)
    return 0


def cmd_split(args: argparse.Namespace) -> int:
    corpus = _load_posts(args)
    if args.test_fraction is not None:
        train, test = ratio_split(len(corpus), args.test_fraction, seed=args.seed)
    else:
        train, test = systematic_split(len(corpus), args.test_every)
    with removing_on_error(args.train_out, args.test_out):
        write_corpus(corpus.subset(train), args.train_out, args.format)
        write_corpus(corpus.subset(test), args.test_out, args.format)
    log.info(f"split {len(corpus)} posts into {len(train)} train and {len(test)} test")
    return 0


def cmd_ros(args: argparse.Namespace) -> int:
    data = ros_oversample(load_labeled_set(args.input), seed=args.seed)
    with removing_on_error(args.out):
        save_labeled_set(data, args.out)
    return 0


def cmd_pipeline(args: argparse.Namespace) -> int:
    config = PipelineConfig.from_json(args.config)
    overrides: Dict[str, Any] = {}
    if args.seed is not None:
        overrides["seed"] = args.seed
    if args.workers is not None:
        overrides["workers"] = args.workers
    if args.vocab_from is not None:
        overrides["vocab_from"] = args.vocab_from
    if args.report is not None:
        overrides["report_path"] = args.report
    if overrides:
        record = config.to_dict()
        record.update(overrides)
        record["model"] = config.model.to_dict()
        config = PipelineConfig.from_dict(record)
    config.validate()
    if not config.train_path or not config.test_path:
        raise SmfpException("the pipeline config needs train_path and test_path")
    train = load_corpus(config.train_path, config.corpus_format)
    test = load_corpus(config.test_path, config.corpus_format)
    with removing_on_error(config.report_path):
        report = Pipeline(config).run(train, test)
        text = dump_report(report)
        if config.report_path:
            pathlib.Path(config.report_path).write_text(text, encoding="utf-8")
        else:
            sys.stdout.write(text)
    return 0


def _add_kb_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--kb",
        action="append",
        metavar="NAME:PATH[,...]",
        help="lexicon files, highest precedence first (default: bundled sample)",
    )
    parser.add_argument(
        "--emoticons",
        action="append",
        metavar="PATH",
        help="emoticon TSV file, highest precedence first (default: bundled map)",
    )


def _add_corpus_options(parser: argparse.ArgumentParser, output: bool = True) -> None:
    parser.add_argument("--in", dest="input", required=True, help="corpus file")
    parser.add_argument(
        "--format", choices=[f.value for f in CorpusFormat], default="jsonl"
    )
    if output:
        parser.add_argument("--out", help="output file (default: standard output)")


def _add_model_options(parser: argparse.ArgumentParser) -> None:
    defaults = ModelSpec()
    parser.add_argument(
        "--model", dest="model_type", choices=["svm", "mlp"], default="svm"
    )
    parser.add_argument("--c", type=float, default=defaults.c)
    parser.add_argument("--hidden", type=int, default=defaults.hidden)
    parser.add_argument("--epochs", type=int, default=defaults.epochs)
    parser.add_argument("--lr", type=float, default=defaults.lr)
    parser.add_argument("--batch-size", type=int, default=defaults.batch_size)
    parser.add_argument("--init-scale", type=float, default=defaults.init_scale)
    parser.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="smfp", description="Social media feed pre-processing toolkit"
    )
    parser.add_argument("--version", action=VersionAction)
    parser.add_argument(
        "--log-level",
        default=None,
        help="logging level (default: $SMFP_LOG_LEVEL or WARNING)",
    )
    commands = parser.add_subparsers(dest="command", metavar="COMMAND")
    commands.required = True

    kb = commands.add_parser("kb", help="knowledge base tools")
    kb_commands = kb.add_subparsers(dest="kb_command", metavar="ACTION")
    kb_commands.required = True
    validate = kb_commands.add_parser("validate", help="load and summarize lexicons")
    validate.add_argument(
        "sources", nargs="*", metavar="file", help="lexicon file or NAME:PATH spec"
    )
    _add_kb_options(validate)
    validate.set_defaults(func=cmd_kb_validate)
    lookup_ = kb_commands.add_parser("lookup", help="print the senses of a term")
    _add_kb_options(lookup_)
    lookup_.add_argument("term")
    lookup_.set_defaults(func=cmd_kb_lookup)
    merge = kb_commands.add_parser("merge", help="merge lexicons into one file")
    merge.add_argument(
        "sources",
        nargs="+",
        metavar="source=NAME:PATH",
        help="lexicon sources, highest precedence first",
    )
    _add_kb_options(merge)
    merge.add_argument("--out", required=True)
    merge.set_defaults(func=cmd_kb_merge)

    clean_ = commands.add_parser("clean", help="clean and tokenize posts")
    _add_kb_options(clean_)
    _add_corpus_options(clean_)
    clean_.set_defaults(func=cmd_clean)

    disambiguate = commands.add_parser("disambiguate", help="choose senses of kb terms")
    _add_kb_options(disambiguate)
    _add_corpus_options(disambiguate)
    disambiguate.add_argument(
        "--wordlist", help="English word list (default: bundled words.txt)"
    )
    disambiguate.set_defaults(func=cmd_disambiguate)

    enrich = commands.add_parser("enrich", help="enrich posts")
    _add_kb_options(enrich)
    _add_corpus_options(enrich)
    enrich.add_argument(
        "--mode", choices=[m.value for m in EnrichmentMode], default="smfp"
    )
    enrich.add_argument(
        "--wordlist", help="English word list (default: bundled words.txt)"
    )
    enrich.add_argument("--freq", help="word frequency TSV (default: bundled freq.tsv)")
    enrich.add_argument("--polarity", help="slang polarity TSV for baseline mode")
    enrich.add_argument("--workers", type=int, default=1)
    enrich.set_defaults(func=cmd_enrich)

    featurize = commands.add_parser("featurize", help="vectorize enriched posts")
    featurize.add_argument("--in", dest="input", required=True, help="enriched JSONL")
    featurize.add_argument("--out", required=True, help="labeled vector JSONL")
    featurize.add_argument("--ngrams", default="1,2")
    featurize.add_argument("--top-k", default="1:50000,2:150000")
    featurize.add_argument("--vocab-in", help="reuse a saved vocabulary")
    featurize.add_argument("--vocab-out", help="save the vocabulary as TSV")
    featurize.add_argument("--workers", type=int, default=1)
    featurize.set_defaults(func=cmd_featurize)

    train = commands.add_parser("train", help="train a classifier")
    _add_model_options(train)
    train.add_argument("--train", required=True, help="labeled vector JSONL")
    train.add_argument("--model-out", required=True)
    train.set_defaults(func=cmd_train)

    evaluate = commands.add_parser("eval", help="evaluate a saved classifier")
    evaluate.add_argument("--model", required=True)
    evaluate.add_argument("--test", required=True, help="labeled vector JSONL")
    evaluate.add_argument("--out")
    evaluate.set_defaults(func=cmd_eval)

    cv = commands.add_parser("cv", help="k-fold cross-validation")
    _add_model_options(cv)
    cv.add_argument("--train", required=True, help="labeled vector JSONL")
    cv.add_argument("--folds", type=int, default=10)
    cv.add_argument("--out")
    cv.set_defaults(func=cmd_cv)

    sample = commands.add_parser("sample", help="keep every N-th post")
    _add_corpus_options(sample, output=False)
    sample.add_argument("--every", type=int, required=True)
    sample.add_argument("--out", required=True)
    sample.set_defaults(func=cmd_sample)

    split = commands.add_parser("split", help="split a corpus into train and test")
    _add_corpus_options(split, output=False)
    how = split.add_mutually_exclusive_group()
    how.add_argument("--test-every", type=int, default=5)
    how.add_argument("--test-fraction", type=float)
    split.add_argument("--seed", type=int, default=0)
    split.add_argument("--train-out", required=True)
    split.add_argument("--test-out", required=True)
    split.set_defaults(func=cmd_split)

    ros = commands.add_parser("ros", help="random oversampling of labeled vectors")
    ros.add_argument("--in", dest="input", required=True, help="labeled vector JSONL")
    ros.add_argument("--out", required=True)
    ros.add_argument("--seed", type=int, default=0)
    ros.set_defaults(func=cmd_ros)

    pipeline = commands.add_parser("pipeline", help="run an end-to-end experiment")
    pipeline.add_argument("--config", required=True, help="pipeline config JSON")
    pipeline.add_argument("--report", help="report path (overrides the config)")
    pipeline.add_argument("--seed", type=int)
    pipeline.add_argument("--workers", type=int)
    pipeline.add_argument(
        "--vocab-from",
        choices=["all", "train"],
        help="posts the vocabulary is built from (overrides the config)",
    )
    pipeline.set_defaults(func=cmd_pipeline)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    func: Callable[[argparse.Namespace], int] = args.func
    try:
        configure_logging(args.log_level)
        return func(args)
    except (SmfpException, OSError) as exc:
        log.error(f"smfp {args.command} failed: {exc!s}")
        sys.stderr.write(f"error: {exc!s}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
