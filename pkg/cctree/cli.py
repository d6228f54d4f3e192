# File path: cctree/cli.py
"""Command-line interface: `cctree <subcommand> ...`."""
import argparse
import json
import logging
import os
import sys
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel

from cctree import __version__
from cctree.core.config import Settings
from cctree.core.exceptions import CCTreeError, CorruptFileError, RecordError
from cctree.core.manifest import RunManifest
from cctree.models.ast import AstNode
from cctree.models.embedding import EmbedConfig, EmbeddingModel
from cctree.models.enums import ClassifierKind, RankMode, RepresentationMode
from cctree.models.evaluation import EvalConfig
from cctree.models.record import ChangeRecord
from cctree.models.vocabulary import OovPolicy, Vocabulary
from cctree.parsing.java_parser import NODE_KINDS, NODE_KINDS_VERSION
from cctree.repositories.feature_repository import FeatureRepository
from cctree.repositories.model_repository import ModelRepository
from cctree.repositories.record_repository import RecordRepository
from cctree.repositories.report_repository import ReportRepository
from cctree.repositories.vocabulary_repository import VocabularyRepository
from cctree.services.change_tree_service import ChangeTreeService
from cctree.services.corpus_service import CorpusService
from cctree.services.demo_service import DemoService
from cctree.services.embedding_service import EmbeddingService
from cctree.services.evaluation_service import EvaluationService
from cctree.services.feature_service import FeatureService
from cctree.services.parser_service import ParserService
from cctree.services.token_service import TokenService
from cctree.services.tree_service import TreeService

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_DATA_ERROR = 1
EXIT_USAGE = 2
VOCAB_SUFFIX = ".vocab.tsv"


def vocab_sidecar(model_path) -> Path:
    model_path = Path(model_path)
    return model_path.with_name(model_path.name + VOCAB_SUFFIX)


def _parse_modes(value: str) -> List[RepresentationMode]:
    if value == "all":
        return list(RepresentationMode)
    try:
        return [RepresentationMode(part.strip()) for part in value.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid modes: {value!r}")


def _parse_classifiers(value: str) -> List[ClassifierKind]:
    if value == "all":
        return list(ClassifierKind)
    try:
        return [ClassifierKind(part.strip()) for part in value.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid classifiers: {value!r}")


def _feature_source(value: str) -> str:
    mode, _, path = value.partition("=")
    if not path or mode not in {m.value for m in RepresentationMode}:
        raise argparse.ArgumentTypeError(f"expected MODE=PATH, got {value!r}")
    return value


def _emit(text: str) -> None:
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _outline(root: AstNode) -> str:
    lines = []
    stack = [(root, 0)]
    while stack:
        node, depth = stack.pop()
        label = node.kind if node.token is None else f"{node.kind} {json.dumps(node.token)}"
        lines.append("  " * depth + label)
        stack.extend((child, depth + 1) for child in reversed(node.children))
    return "\n".join(lines)


def resolve_configs(args: argparse.Namespace) -> None:
    """Validate option values into the config objects the handlers run with; raises ValueError."""
    if hasattr(args, "min_df") and not 0 < args.min_df <= 1:
        raise ValueError("--min-df must be in (0, 1]")
    if hasattr(args, "oov_symbol"):
        args.policy = OovPolicy(args.oov_symbol)
    if hasattr(args, "dim"):
        args.embed_config = EmbedConfig(
            dim=args.dim,
            epochs=args.epochs,
            negative=args.negative,
            learning_rate=args.learning_rate,
            seed=args.seed,
            infer_epochs=args.infer_epochs,
            workers=args.threads,
        )
    if hasattr(args, "folds"):
        args.eval_config = EvalConfig(
            folds=args.folds,
            seed=args.seed,
            classifiers=args.classifiers,
            positive_rate_for_baseline=args.positive_rate,
            threads=args.threads,
        )


def _run_config(args: argparse.Namespace) -> Dict[str, Any]:
    """Raw options plus the resolved config objects, as plain JSON values."""
    config = {}
    for key, value in sorted(vars(args).items()):
        if key in ("handler", "policy"):
            continue
        if isinstance(value, BaseModel):
            value = json.loads(value.json())
        elif isinstance(value, list):
            value = [getattr(item, "value", item) for item in value]
        else:
            value = getattr(value, "value", value)
        config[key] = value
    return config


def _input_paths(config: Dict[str, Any]) -> List[str]:
    paths = []
    for key in FILE_INPUTS:
        value = config.get(key)
        if isinstance(value, list):
            paths.extend(item.partition("=")[2] for item in value)
        elif value:
            paths.append(value)
    return paths


# Subcommand handlers


def cmd_parse(args: argparse.Namespace) -> int:
    if args.kinds:
        _emit(f"# node kinds, version {NODE_KINDS_VERSION}\n" + "\n".join(NODE_KINDS))
        return EXIT_OK
    ast = ParserService.parse_compilation_unit(Path(args.file).read_text(encoding="utf-8"))
    if args.method:
        ast = ParserService.find_method(ast, args.method).ast
    if args.json:
        _emit(json.dumps(TreeService.export_tree(ast), indent=2))
    else:
        _emit(_outline(ast.root))
    return EXIT_OK


def cmd_diff(args: argparse.Namespace) -> int:
    diff = ChangeTreeService.diff_sources(
        Path(args.pre).read_text(encoding="utf-8"),
        Path(args.post).read_text(encoding="utf-8"),
        args.method,
        RankMode(args.rank_mode),
    )
    if args.emit == "tree":
        _emit(json.dumps({
            "pre": TreeService.export_tree(diff.pre_tree.root) if not diff.pre_tree.is_empty else None,
            "post": TreeService.export_tree(diff.post_tree.root) if not diff.post_tree.is_empty else None,
        }, indent=2))
    elif args.emit == "tokens":
        tokens = {
            "pre": list(ChangeTreeService.flatten_change_tree(diff.pre_tree)),
            "post": list(ChangeTreeService.flatten_change_tree(diff.post_tree)),
        }
        if args.json:
            _emit(json.dumps(tokens, indent=2))
        else:
            for side, items in tokens.items():
                _emit(f"{side} ({len(items)} tokens): " + " ".join(items))
    else:
        sizes = CorpusService.change_size(diff.pre, diff.post, RankMode(args.rank_mode))
        if args.json:
            _emit(json.dumps({**sizes.dict(), "reduction": sizes.reduction}, indent=2, sort_keys=True))
        else:
            _emit(
                f"AST nodes:         before {sizes.pre_ast_nodes}, after {sizes.post_ast_nodes}\n"
                f"change tree nodes: before {sizes.pre_change_tree_nodes}, after {sizes.post_change_tree_nodes}\n"
                f"reduction:         {sizes.reduction:.1%}"
            )
    return EXIT_OK


def cmd_stats(args: argparse.Namespace) -> int:
    records = RecordRepository.read_records(args.records)
    stats = CorpusService.corpus_stats(records, RankMode(args.rank_mode))
    if args.json:
        _emit(stats.json(indent=2, sort_keys=True))
    else:
        _emit(
            f"records: {stats.records} ({stats.states} function states)\n"
            f"mean AST nodes per state:         {stats.mean_ast_nodes:.2f}\n"
            f"mean change-tree nodes per state: {stats.mean_change_tree_nodes:.2f}\n"
            f"reduction:                        {stats.reduction:.1%}"
        )
    return EXIT_OK


def cmd_vocab_build(args: argparse.Namespace) -> int:
    sequences = CorpusService.training_sequences(RecordRepository.read_corpus(args.corpus))
    vocab = TokenService.build_vocabulary(sequences, args.min_df, threads=args.threads)
    VocabularyRepository.save(vocab, args.output)
    return EXIT_OK


def train_embedding(documents, args: argparse.Namespace,
                    vocab: Optional[Vocabulary] = None) -> Tuple[EmbeddingModel, Vocabulary]:
    """Build (unless given) the vocabulary, apply OOV replacement and train the embedder."""
    sequences = CorpusService.training_sequences(documents)
    if vocab is None:
        vocab = TokenService.build_vocabulary(sequences, args.min_df, threads=args.threads)
    prepared = TokenService.preprocess_corpus(sequences, vocab, args.policy)
    return EmbeddingService.train(prepared, args.embed_config, vocab), vocab


def cmd_embed_train(args: argparse.Namespace) -> int:
    vocab = VocabularyRepository.load(args.vocab) if args.vocab else None
    model, vocab = train_embedding(RecordRepository.read_corpus(args.corpus), args, vocab)
    ModelRepository.save(model, args.output)
    VocabularyRepository.save(vocab, vocab_sidecar(args.output))
    return EXIT_OK


def load_embedding(model_path, vocab_path=None) -> Tuple[EmbeddingModel, Vocabulary]:
    """Load a model and the vocabulary it was trained with."""
    model = ModelRepository.load(model_path)
    vocab = VocabularyRepository.load(vocab_path or vocab_sidecar(model_path))
    if vocab.fingerprint() != model.vocab_fingerprint:
        raise CorruptFileError(f"vocabulary does not match model {model_path}")
    return model, vocab


def cmd_featurize(args: argparse.Namespace) -> int:
    mode = RepresentationMode(args.mode)
    records = RecordRepository.read_records(args.records)
    model, vocab = None, None
    if mode != RepresentationMode.METRICS:
        model, vocab = load_embedding(args.model, args.vocab)
    vectors = FeatureService.featurize_records(
        records, mode, model, RankMode(args.rank_mode), vocab, args.policy, args.threads
    )
    FeatureRepository.save(vectors, args.output)
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace) -> int:
    records = RecordRepository.read_records(args.records)
    modes = args.modes
    model, vocab = None, None
    if any(mode != RepresentationMode.METRICS for mode in modes):
        if args.model:
            model, vocab = load_embedding(args.model, args.vocab)
        else:
            logger.info("No --model given; training one on the records' function states")
            model, vocab = train_embedding(CorpusService.record_documents(records), args)

    report = EvaluationService.run_experiment(
        records, modes, args.eval_config, model, RankMode(args.rank_mode), vocab, args.policy, args.threads
    )
    ReportRepository.save(report, args.output)
    _emit(ReportRepository.to_markdown(report))
    return EXIT_OK


def cmd_evaluate_features(args: argparse.Namespace) -> int:
    datasets = {}
    for source in args.features:
        mode, _, path = source.partition("=")
        mode = RepresentationMode(mode)
        datasets[mode] = FeatureService.as_matrix(FeatureRepository.load(path, mode))
    report = EvaluationService.evaluate_features(datasets, args.eval_config)
    ReportRepository.save(report, args.output)
    _emit(ReportRepository.to_markdown(report))
    return EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    report = ReportRepository.load(args.report)
    _emit(ReportRepository.to_json(report) if args.json else ReportRepository.to_markdown(report))
    return EXIT_OK


def cmd_demo(args: argparse.Namespace) -> int:
    outcomes = DemoService.run_all()
    if args.json:
        _emit(json.dumps([json.loads(outcome.json()) for outcome in outcomes], indent=2))
    else:
        _emit("\n\n".join(DemoService.render(outcome) for outcome in outcomes))
    return EXIT_OK


def cmd_synth(args: argparse.Namespace) -> int:
    if args.kind == "clusters":
        documents = CorpusService.token_clusters(per_cluster=args.count // 2, seed=args.seed)
        with open(args.output, "w", encoding="utf-8") as handle:
            for index, (cluster, sequence) in enumerate(documents):
                handle.write(json.dumps({"id": f"doc-{index:04d}", "cluster": cluster, "tokens": list(sequence)}) + "\n")
        return EXIT_OK

    if args.kind == "changes":
        records: List[ChangeRecord] = CorpusService.synthetic_changes(args.count, args.seed)
    else:
        records = CorpusService.planted_vulnerabilities(args.count, args.positive_rate, args.seed)
    RecordRepository.write_records(records, args.output)
    return EXIT_OK


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    uvicorn.run("cctree.main:app", host=args.host, port=args.port, log_level=args.log_level.lower())
    return EXIT_OK


# Parser


def build_parser(settings: Optional[Settings] = None) -> argparse.ArgumentParser:
    """Every default comes from Settings, so each flag has a CCTREE_* equivalent."""
    s = settings or Settings()
    output_required = s.OUTPUT is None

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--log-level", default=s.LOG_LEVEL, help="logging level (CCTREE_LOG_LEVEL)")
    common.add_argument("--seed", type=int, default=s.SEED, help="random seed (CCTREE_SEED)")
    common.add_argument("--threads", type=int, default=s.THREADS,
                        help="worker threads; more than 1 gives up bit-exact training (CCTREE_THREADS)")

    rank = argparse.ArgumentParser(add_help=False)
    rank.add_argument("--rank-mode", choices=[m.value for m in RankMode], default=s.RANK_MODE,
                      help="include child ranks in node identifiers (CCTREE_RANK_MODE)")

    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("-o", "--output", default=s.OUTPUT, required=output_required,
                        help="output file (CCTREE_OUTPUT)")

    preprocessing = argparse.ArgumentParser(add_help=False)
    preprocessing.add_argument("--min-df", type=float, default=s.MIN_DF,
                               help="minimum document-frequency fraction (CCTREE_MIN_DF)")
    preprocessing.add_argument("--oov-symbol", default=s.OOV_SYMBOL, help="(CCTREE_OOV_SYMBOL)")
    preprocessing.add_argument("--vocab", default=s.VOCAB_PATH, help="vocabulary file (CCTREE_VOCAB_PATH)")

    embedding = argparse.ArgumentParser(add_help=False)
    embedding.add_argument("--dim", type=int, default=s.DIM, help="(CCTREE_DIM)")
    embedding.add_argument("--epochs", type=int, default=s.EPOCHS, help="(CCTREE_EPOCHS)")
    embedding.add_argument("--negative", type=int, default=s.NEGATIVE, help="(CCTREE_NEGATIVE)")
    embedding.add_argument("--learning-rate", type=float, default=s.LEARNING_RATE, help="(CCTREE_LEARNING_RATE)")
    embedding.add_argument("--infer-epochs", type=int, default=s.INFER_EPOCHS, help="(CCTREE_INFER_EPOCHS)")

    evaluation = argparse.ArgumentParser(add_help=False)
    evaluation.add_argument("--classifiers", type=_parse_classifiers, default=_parse_classifiers(s.CLASSIFIERS),
                            help="comma-separated classifiers or 'all' (CCTREE_CLASSIFIERS)")
    evaluation.add_argument("--folds", type=int, default=s.FOLDS, help="(CCTREE_FOLDS)")
    evaluation.add_argument("--positive-rate", type=float, default=s.POSITIVE_RATE,
                            help="positive rate of the random baseline (CCTREE_POSITIVE_RATE)")

    parser = argparse.ArgumentParser(
        prog="cctree", description="Code Change Trees for just-in-time vulnerability prediction."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    commands = parser.add_subparsers(dest="command", metavar="command")
    commands.required = True

    p = commands.add_parser("parse", parents=[common], help="parse a Java file and print its AST")
    p.add_argument("file", nargs="?")
    p.add_argument("--method", default=s.METHOD, help="only this method (CCTREE_METHOD)")
    p.add_argument("--kinds", action="store_true", help="print the node-kind table and exit")
    p.add_argument("--json", action="store_true", default=s.JSON, help="generic tree JSON (CCTREE_JSON)")
    p.set_defaults(handler=cmd_parse)

    p = commands.add_parser("diff", parents=[common, rank], help="Code Change Trees of two Java files")
    p.add_argument("pre")
    p.add_argument("post")
    p.add_argument("--method", default=s.METHOD, help="compare one method (CCTREE_METHOD)")
    p.add_argument("--emit", choices=["tree", "tokens", "stats"], default=s.EMIT, help="(CCTREE_EMIT)")
    p.add_argument("--json", action="store_true", default=s.JSON, help="(CCTREE_JSON)")
    p.set_defaults(handler=cmd_diff)

    p = commands.add_parser("stats", parents=[common, rank], help="mean AST vs change-tree size of a corpus")
    p.add_argument("records")
    p.add_argument("--json", action="store_true", default=s.JSON, help="(CCTREE_JSON)")
    p.set_defaults(handler=cmd_stats)

    vocab = commands.add_parser("vocab", help="vocabulary commands")
    vocab_commands = vocab.add_subparsers(dest="vocab_command", metavar="command")
    vocab_commands.required = True
    p = vocab_commands.add_parser("build", parents=[common, preprocessing, output], help="build a vocabulary")
    p.add_argument("corpus")
    p.set_defaults(handler=cmd_vocab_build)

    embed = commands.add_parser("embed", help="embedding commands")
    embed_commands = embed.add_subparsers(dest="embed_command", metavar="command")
    embed_commands.required = True
    p = embed_commands.add_parser("train", parents=[common, preprocessing, embedding, output],
                                  help="train a document embedding model")
    p.add_argument("corpus")
    p.set_defaults(handler=cmd_embed_train)

    p = commands.add_parser("featurize", parents=[common, rank, preprocessing, output],
                            help="feature vectors of change records")
    p.add_argument("records")
    p.add_argument("--mode", choices=[m.value for m in RepresentationMode], default=s.MODE, help="(CCTREE_MODE)")
    p.add_argument("--model", default=s.MODEL_PATH, help="embedding model (CCTREE_MODEL_PATH)")
    p.set_defaults(handler=cmd_featurize)

    p = commands.add_parser("evaluate", parents=[common, rank, preprocessing, embedding, evaluation, output],
                            help="cross-validate classifiers on each representation")
    p.add_argument("records")
    p.add_argument("--modes", type=_parse_modes, default=_parse_modes(s.MODES),
                   help="comma-separated modes or 'all' (CCTREE_MODES)")
    p.add_argument("--model", default=s.MODEL_PATH, help="embedding model (CCTREE_MODEL_PATH)")
    p.set_defaults(handler=cmd_evaluate)

    p = commands.add_parser("evaluate-features", parents=[common, evaluation, output],
                            help="cross-validate classifiers on feature files written by featurize")
    p.add_argument("features", nargs="+", type=_feature_source, metavar="MODE=PATH")
    p.set_defaults(handler=cmd_evaluate_features)

    p = commands.add_parser("report", parents=[common], help="print a saved evaluation report")
    p.add_argument("report")
    p.add_argument("--json", action="store_true", default=s.JSON, help="(CCTREE_JSON)")
    p.set_defaults(handler=cmd_report)

    p = commands.add_parser("demo-example", parents=[common], help="run the bundled hello-world change")
    p.add_argument("--json", action="store_true", default=s.JSON, help="(CCTREE_JSON)")
    p.set_defaults(handler=cmd_demo)

    p = commands.add_parser("synth", parents=[common, output], help="generate a synthetic corpus")
    p.add_argument("kind", choices=["changes", "planted", "clusters"])
    p.add_argument("-n", "--count", type=int, default=s.COUNT, help="(CCTREE_COUNT)")
    p.add_argument("--positive-rate", type=float, default=s.POSITIVE_RATE, help="(CCTREE_POSITIVE_RATE)")
    p.set_defaults(handler=cmd_synth)

    p = commands.add_parser("serve", parents=[common], help="serve the HTTP API")
    p.add_argument("--host", default=s.HOST, help="(CCTREE_HOST)")
    p.add_argument("--port", type=int, default=s.PORT, help="(CCTREE_PORT)")
    p.set_defaults(handler=cmd_serve)

    return parser


FILE_INPUTS = ("file", "pre", "post", "records", "corpus", "model", "vocab", "features", "report")


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "featurize" and args.mode != RepresentationMode.METRICS.value and not args.model:
            parser.error(f"--model is required for mode '{args.mode}'")
        if args.command == "parse" and not args.kinds and not args.file:
            parser.error("parse needs a file unless --kinds is given")
        try:
            resolve_configs(args)
        except ValueError as e:
            # Out-of-range option values, including those rejected by EmbedConfig and EvalConfig
            parser.error(str(e))
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    logging.basicConfig(
        level=args.log_level.upper(),
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
    )
    config = _run_config(args)
    manifest = RunManifest.start(
        subcommand=" ".join(filter(None, [args.command, getattr(args, "vocab_command", None),
                                          getattr(args, "embed_command", None)])),
        inputs=_input_paths(config),
        config=config,
    )

    try:
        code = args.handler(args)
    except RecordError as e:
        sys.stderr.write(f"error: record {e.record_id}: {e.cause}\n")
        return EXIT_DATA_ERROR
    except (CCTreeError, OSError) as e:
        sys.stderr.write(f"error: {e}\n")
        return EXIT_DATA_ERROR

    output = getattr(args, "output", None)
    if output and code == EXIT_OK:
        outputs = [output]
        if args.command == "embed":
            outputs.append(str(vocab_sidecar(output)))
        elif args.command.startswith("evaluate"):
            outputs.append(str(Path(output).with_suffix(".md")))
        manifest.finish(outputs).write(output)
    else:
        manifest.finish([])
        logger.info("Run manifest: %s", manifest.json(sort_keys=True))
    return code


def run() -> None:
    """Console entry point."""
    # gensim seeds inferred vectors from str hashes; a fixed hash seed keeps reruns byte-identical
    if os.environ.get("PYTHONHASHSEED", "random") == "random":
        os.environ["PYTHONHASHSEED"] = "0"
        os.execv(sys.executable, [sys.executable, "-m", "cctree", *sys.argv[1:]])
    sys.exit(main())


if __name__ == "__main__":
    run()
