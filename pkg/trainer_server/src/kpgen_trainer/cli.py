"""Command line entry point: init-tiny / train / serve / show-config."""

import argparse
import json
import logging
import sys

from .config import DEFAULT_BASE_MODEL, TrainConfig
from .data import load_pairs
from .errors import TrainerError
from .modeling import init_tiny_checkpoint
from .server import serve
from .train import finetune

_DEFAULTS = TrainConfig()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kpgen-trainer",
        description="Fine-tune an encoder-decoder model on prepared pairs and serve it over HTTP.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "init-tiny",
        help="create a small randomly initialized base checkpoint from a pairs file",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("--pairs", required=True, help="training pairs JSONL (vocabulary source)")
    p.add_argument("--output", required=True, help="checkpoint directory to create")
    p.add_argument("--max-source-tokens", type=int, default=_DEFAULTS.max_source_tokens)
    p.add_argument("--max-target-tokens", type=int, default=_DEFAULTS.max_target_tokens)
    p.add_argument("--seed", type=int, default=_DEFAULTS.seed)
    p.set_defaults(func=cmd_init_tiny)

    p = sub.add_parser(
        "train",
        help="fine-tune a base model on a pairs file",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("--pairs", required=True, help="training pairs JSONL")
    p.add_argument("--output", required=True, help="checkpoint directory to write")
    p.add_argument("--base-model", default=DEFAULT_BASE_MODEL,
                   help="checkpoint directory or model identifier to start from")
    p.add_argument("--epochs", type=int, default=_DEFAULTS.epochs)
    p.add_argument("--learning-rate", type=float, default=_DEFAULTS.learning_rate)
    p.add_argument("--train-batch-size", type=int, default=_DEFAULTS.train_batch_size)
    p.add_argument("--micro-batch-size", type=int, default=_DEFAULTS.micro_batch_size)
    p.add_argument("--max-steps", type=int, default=None,
                   help="optimizer step cap; unset means run all epochs")
    p.add_argument("--max-source-tokens", type=int, default=_DEFAULTS.max_source_tokens)
    p.add_argument("--max-target-tokens", type=int, default=_DEFAULTS.max_target_tokens)
    p.add_argument("--adam-beta1", type=float, default=_DEFAULTS.adam_beta1)
    p.add_argument("--adam-epsilon", type=float, default=_DEFAULTS.adam_epsilon)
    p.add_argument("--seed", type=int, default=_DEFAULTS.seed)
    p.set_defaults(func=cmd_train)

    p = sub.add_parser(
        "serve",
        help="serve a checkpoint over the generation wire protocol",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("--checkpoint", required=True, help="checkpoint directory to load")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--workers", type=int, default=1,
                   help="worker processes; inference is serialized within each")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("show-config", help="print the full default training configuration")
    p.set_defaults(func=cmd_show_config)

    return parser


def cmd_init_tiny(args) -> int:
    pairs = load_pairs(args.pairs)
    path = init_tiny_checkpoint(
        pairs,
        args.output,
        max_source_tokens=args.max_source_tokens,
        max_target_tokens=args.max_target_tokens,
        seed=args.seed,
    )
    print(f"init-tiny: wrote checkpoint to {path}")
    return 0


def cmd_train(args) -> int:
    config = TrainConfig(
        base_model=args.base_model,
        epochs=args.epochs,
        learning_rate=args.learning_rate,
        train_batch_size=args.train_batch_size,
        micro_batch_size=args.micro_batch_size,
        max_steps=args.max_steps,
        max_source_tokens=args.max_source_tokens,
        max_target_tokens=args.max_target_tokens,
        adam_beta1=args.adam_beta1,
        adam_epsilon=args.adam_epsilon,
        seed=args.seed,
    )
    path = finetune(args.pairs, config, args.output)
    print(f"train: wrote checkpoint to {path}")
    return 0


def cmd_serve(args) -> int:
    serve(args.checkpoint, host=args.host, port=args.port, workers=args.workers)
    return 0


def cmd_show_config(args) -> int:
    print(json.dumps(TrainConfig().dump(), indent=2))
    return 0


def main(argv=None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except TrainerError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
