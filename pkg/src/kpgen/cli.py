"""Command-line interface: prepare, predict, evaluate, demo.

One binary with subcommands sharing a config mechanism: ``--config FILE``
reads a YAML key-value file whose keys mirror the flags (dashes as
underscores); explicit flags always win. Exit codes: 0 success, 1 at
least one document failed during prediction, 2 configuration or I/O
errors.
"""

import argparse
import json
import sys
import tempfile
from pathlib import Path

import yaml

from . import corpus, evaluator
from .errors import ConfigError, CorpusError, EvaluationError, KpgenError
from .generation import BackendTokenCounter, HttpBackend, MockBackend
from .pipeline import PredictConfig, predict_corpus
from .segmenter import DEFAULT_BUDGET

_CONFIG_ONLY_KEYS = {"config", "seed"}


def _build_parser() -> tuple[argparse.ArgumentParser, dict[str, argparse.ArgumentParser]]:
    parser = argparse.ArgumentParser(
        prog="kpgen",
        description="Keyphrase generation pipeline toolkit.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    parser.add_argument("--config", metavar="FILE", help="YAML file mirroring the flags; explicit flags win")
    parser.add_argument("--seed", type=int, default=0, help="reserved; the mock backend is already deterministic")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    subparsers: dict[str, argparse.ArgumentParser] = {}

    p = sub.add_parser(
        "prepare",
        help="build training pairs from a corpus",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("--input", help="input corpus JSONL")
    p.add_argument("--output", help="output training-pair JSONL")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="paragraph token budget")
    p.add_argument("--token-counter", choices=["whitespace", "backend"], default="whitespace",
                   help="how paragraph tokens are counted")
    p.add_argument("--backend-url", default=None, help="server URL (required for --token-counter backend)")
    subparsers["prepare"] = p

    p = sub.add_parser(
        "predict",
        help="predict keyphrases for a corpus",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("--input", help="input corpus JSONL")
    p.add_argument("--output", help="output predictions JSONL")
    p.add_argument("--backend", choices=["mock", "http"], default="mock", help="generation backend")
    p.add_argument("--backend-url", default=None, help="server URL (required for --backend http)")
    p.add_argument("--n", type=int, default=10, help="max keyphrases per document")
    p.add_argument("--beams", type=int, default=20, help="beam size")
    p.add_argument("--beam-merge", choices=["all", "top1"], default="all",
                   help="derive paragraph lists from all beams or only the best one")
    p.add_argument("--epsilon-mode", choices=["per_occurrence", "per_keyphrase"], default="per_occurrence",
                   help="how the tie-break term enters the aggregate score")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="paragraph token budget")
    p.add_argument("--parallelism", type=int, default=4, help="documents in flight")
    p.add_argument("--stats", default=None, help="stats JSON path (default: <output>.stats.json)")
    subparsers["predict"] = p

    p = sub.add_parser(
        "evaluate",
        help="score predictions against gold keyphrases",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("--predictions", help="predictions JSONL ({'id', 'keyphrases'})")
    p.add_argument("--gold", help="gold corpus JSONL")
    p.add_argument("--stem", choices=["none", "porter"], default="none",
                   help="stem tokens before matching")
    p.add_argument("--precision-denominator", choices=["kept", "k"], default="kept",
                   help="precision divides by kept predictions or by k")
    p.add_argument("--report", default=None, help="report JSON path (default: <predictions>.report.json)")
    subparsers["evaluate"] = p

    p = sub.add_parser(
        "demo",
        help="run prepare -> predict(mock) -> evaluate on a built-in corpus",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("--n", type=int, default=10, help="max keyphrases per document")
    p.add_argument("--budget", type=int, default=25, help="paragraph token budget (small, to show packing)")
    p.add_argument("--output-dir", default=None, help="keep the demo files here instead of a temp dir")
    subparsers["demo"] = p

    return parser, subparsers


def _load_config_file(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            values = yaml.safe_load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config file {path}: {exc}") from exc
    except yaml.YAMLError as exc:
        raise ConfigError(f"config file {path} is not valid YAML: {exc}") from exc
    if values is None:
        return {}
    if not isinstance(values, dict):
        raise ConfigError(f"config file {path} must hold a mapping of flag names to values")
    return {str(key).replace("-", "_"): value for key, value in values.items()}


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [name for name in names if getattr(args, name, None) is None]
    if missing:
        raise ConfigError("missing required option(s): " + ", ".join(f"--{m.replace('_', '-')}" for m in missing))


def _require_positive_int(args: argparse.Namespace, name: str) -> int:
    value = getattr(args, name)
    if not isinstance(value, int) or isinstance(value, bool) or value < 1:
        raise ConfigError(f"--{name.replace('_', '-')} must be an integer >= 1, got {value!r}")
    return value


def _print_issues(issues) -> None:
    for issue in issues:
        print(f"  skipped line {issue.line} ({issue.doc_id}): {issue.reason}", file=sys.stderr)


def cmd_prepare(args: argparse.Namespace) -> int:
    _require(args, "input", "output")
    budget = _require_positive_int(args, "budget")
    if args.token_counter == "backend":
        _require(args, "backend_url")
        counter = BackendTokenCounter(HttpBackend(args.backend_url))
    elif args.token_counter == "whitespace":
        counter = None
    else:
        raise ConfigError(f"unknown token counter {args.token_counter!r}")
    issues: list[corpus.LoadIssue] = []
    docs = corpus.load_split(args.input, issues=issues)
    if issues:
        print(f"{len(issues)} record(s) skipped while loading:", file=sys.stderr)
        _print_issues(issues)
    result = corpus.prepare_training_pairs(docs, counter=counter, budget=budget)
    with open(args.output, "w", encoding="utf-8") as out:
        for pair in result.pairs:
            out.write(pair.to_json() + "\n")
    print(
        f"prepare: {len(docs)} docs in, {len(result.pairs)} pairs out, "
        f"{len(issues)} records skipped, {len(result.skipped_no_gold)} docs without gold"
    )
    return 0


def _make_backend(args: argparse.Namespace):
    if args.backend == "mock":
        return MockBackend()
    if args.backend == "http":
        _require(args, "backend_url")
        backend = HttpBackend(args.backend_url)
        if not backend.health():
            raise ConfigError(f"backend at {args.backend_url} failed the health check")
        return backend
    raise ConfigError(f"unknown backend {args.backend!r}")


def cmd_predict(args: argparse.Namespace) -> int:
    _require(args, "input", "output")
    config = PredictConfig(
        n=args.n,
        num_beams=args.beams,
        budget=args.budget,
        beam_merge=args.beam_merge,
        epsilon_mode=args.epsilon_mode,
        parallelism=args.parallelism,
    )
    config.validate()
    backend = _make_backend(args)
    issues: list[corpus.LoadIssue] = []
    docs = corpus.load_split(args.input, issues=issues)
    if issues:
        print(f"{len(issues)} record(s) skipped while loading:", file=sys.stderr)
        _print_issues(issues)
    stats_path = args.stats if args.stats is not None else f"{args.output}.stats.json"
    stats = predict_corpus(docs, backend, config, args.output, stats_path=stats_path)
    failed = len(stats.docs_failed)
    print(
        f"predict: {stats.docs_processed} docs, {failed} failed, "
        f"{stats.total_keyphrases} keyphrases, {stats.duration_seconds:.2f}s"
    )
    if failed:
        print("failed ids: " + ", ".join(stats.docs_failed), file=sys.stderr)
        return 1
    return 0


def _load_predictions(path: str) -> dict[str, list[str]]:
    predictions: dict[str, list[str]] = {}
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"{path}:{line_no}: malformed JSON: {exc}", line_no) from exc
            if not isinstance(obj, dict) or "id" not in obj or not isinstance(obj.get("keyphrases"), list):
                raise CorpusError(f"{path}:{line_no}: expected {{'id', 'keyphrases'}}", line_no)
            predictions[str(obj["id"])] = [str(p) for p in obj["keyphrases"]]
    return predictions


def cmd_evaluate(args: argparse.Namespace) -> int:
    _require(args, "predictions", "gold")
    stem = None if args.stem in (None, "none") else args.stem
    predictions = _load_predictions(args.predictions)
    issues: list[corpus.LoadIssue] = []
    docs = corpus.load_split(args.gold, issues=issues)
    if issues:
        print(f"{len(issues)} record(s) skipped while loading:", file=sys.stderr)
        _print_issues(issues)
    report = evaluator.evaluate_dataset(
        predictions, docs, stem=stem, precision_denominator=args.precision_denominator
    )
    _print_report(report)
    report_path = args.report if args.report is not None else f"{args.predictions}.report.json"
    with open(report_path, "w", encoding="utf-8") as fh:
        json.dump(report.to_dict(), fh, ensure_ascii=False, indent=2)
        fh.write("\n")
    print(f"report written to {report_path}")
    return 0


def _print_report(report: evaluator.EvalReport) -> None:
    rows = [
        ("present", "F@5", report.present_f_at_5, report.evaluated_present, report.skipped_present),
        ("present", "F@10", report.present_f_at_10, report.evaluated_present, report.skipped_present),
        ("absent", "R@10", report.absent_r_at_10, report.evaluated_absent, report.skipped_absent),
    ]
    print(f"{'partition':<10}{'metric':<8}{'value':<10}{'exact':<12}{'docs':<6}{'skipped'}")
    for partition, metric, value, evaluated, skipped in rows:
        exact = f"{value.numerator}/{value.denominator}"
        print(f"{partition:<10}{metric:<8}{float(value):<10.4f}{exact:<12}{evaluated:<6}{skipped}")


_DEMO_DOCS = [
    {
        "id": "demo-arrays",
        "title": "Cache-friendly array layouts",
        "abstract": "We compare row-major and column-major array layouts for stencil workloads. "
        "Loop tiling improves cache reuse on large grids. A roofline model explains the "
        "observed memory bandwidth limits. Our tiling heuristic is tuned per architecture.",
        "keywords": ["loop tiling", "cache reuse", "roofline model", "vectorization"],
    },
    {
        "id": "demo-queues",
        "title": "Fair scheduling for message queues",
        "abstract": "Weighted fair queueing balances latency across tenants. We present an "
        "approximation with constant-time dequeue decisions. Starvation is avoided by aging "
        "the per-tenant deficit counters. Experiments cover bursty and adversarial arrival patterns.",
        "keywords": ["weighted fair queueing", "starvation", "latency", "admission control"],
    },
    {
        "id": "demo-graphs",
        "title": "Streaming triangle counting",
        "abstract": "Counting triangles in edge streams supports community detection at scale. "
        "Our reservoir-based estimator keeps a bounded sample of edges. Accuracy degrades "
        "gracefully as the stream outgrows the reservoir. We prove variance bounds for the estimator.",
        "keywords": ["triangle counting", "edge streams", "reservoir sampling", "variance bounds"],
    },
]


def cmd_demo(args: argparse.Namespace) -> int:
    n = _require_positive_int(args, "n")
    budget = _require_positive_int(args, "budget")
    if args.output_dir is not None:
        Path(args.output_dir).mkdir(parents=True, exist_ok=True)
        return _run_demo(Path(args.output_dir), n, budget)
    with tempfile.TemporaryDirectory(prefix="kpgen-demo-") as tmp:
        return _run_demo(Path(tmp), n, budget)


def _run_demo(workdir: Path, n: int, budget: int) -> int:
    corpus_path = workdir / "corpus.jsonl"
    with open(corpus_path, "w", encoding="utf-8") as fh:
        for record in _DEMO_DOCS:
            fh.write(json.dumps(record, ensure_ascii=False) + "\n")

    print(f"demo corpus: {len(_DEMO_DOCS)} documents -> {corpus_path}")
    prepare_args = argparse.Namespace(
        input=str(corpus_path), output=str(workdir / "pairs.jsonl"),
        budget=budget, token_counter="whitespace", backend_url=None,
    )
    cmd_prepare(prepare_args)

    predict_args = argparse.Namespace(
        input=str(corpus_path), output=str(workdir / "predictions.jsonl"),
        backend="mock", backend_url=None, n=n, beams=20, beam_merge="all",
        epsilon_mode="per_occurrence", budget=budget, parallelism=1, stats=None,
    )
    status = cmd_predict(predict_args)
    if status != 0:
        return status

    with open(workdir / "predictions.jsonl", encoding="utf-8") as fh:
        for line in fh:
            obj = json.loads(line)
            shown = ", ".join(obj["keyphrases"][:5])
            more = ", ..." if len(obj["keyphrases"]) > 5 else ""
            print(f"  {obj['id']}: {shown}{more}")

    evaluate_args = argparse.Namespace(
        predictions=str(workdir / "predictions.jsonl"), gold=str(corpus_path),
        stem="none", precision_denominator="kept", report=None,
    )
    return cmd_evaluate(evaluate_args)


_COMMANDS = {
    "prepare": cmd_prepare,
    "predict": cmd_predict,
    "evaluate": cmd_evaluate,
    "demo": cmd_demo,
}


def _apply_config(argv: list[str], parser, subparsers) -> None:
    pre = argparse.ArgumentParser(add_help=False)
    pre.add_argument("--config", default=None)
    known, _ = pre.parse_known_args(argv)
    if known.config is None:
        return
    values = _load_config_file(known.config)
    dests = {
        name: {action.dest for action in sub._actions if action.dest != "help"}
        for name, sub in subparsers.items()
    }
    valid = set().union(*dests.values()) | _CONFIG_ONLY_KEYS
    unknown = sorted(set(values) - valid)
    if unknown:
        raise ConfigError("unknown config key(s): " + ", ".join(unknown))
    for name, sub in subparsers.items():
        sub.set_defaults(**{k: v for k, v in values.items() if k in dests[name]})
    if "seed" in values:
        parser.set_defaults(seed=values["seed"])


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:]) if argv is None else list(argv)
    parser, subparsers = _build_parser()
    try:
        _apply_config(argv, parser, subparsers)
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except (ConfigError, CorpusError, EvaluationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except KpgenError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
