import argparse

from cli.utils import echo_config, effective_config
from extsum.logging_config import get_logger
from extsum.repositories import load_vectors, read_corpus
from extsum.services.training import train

logger = get_logger(__name__)

HELP = """\
Train the sentence classifier on a labeled JSONL corpus.

Word vectors: UTF-8 text, one "<token> <f1> ... <fd>" per line, separated by
single spaces; an optional leading "<count> <dim>" header line is skipped.
Their dimension must equal the config's input_dim.

Config (--config): one "key = value" per line. Keys: epochs, learning_rate,
batch_size, seed, input_dim, hidden_dim, doc_dim, num_layers, gradient_clip,
shuffle, zero_head, holdout_fraction. Unknown keys are rejected.

The checkpoint (--out) is a magic line, a JSON header (format version, dims,
seed, tensor table) and the tensors as little-endian 64-bit floats.
"""


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(
        "train",
        help="train the GRU sentence classifier",
        description=HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--corpus", required=True, help="labeled JSONL corpus")
    parser.add_argument("--vectors", required=True, help="word-vector text file")
    parser.add_argument("--out", required=True, metavar="CHECKPOINT", help="checkpoint to write")
    parser.add_argument(
        "--monitor",
        metavar="CORPUS",
        help="labeled JSONL corpus whose loss is logged after every epoch (never trained on)",
    )
    return parser


def run(args: argparse.Namespace) -> int:
    config = effective_config(args)
    echo_config("train", args, config)

    corpus = read_corpus(args.corpus)
    monitor = read_corpus(args.monitor) if args.monitor else None
    vectors = load_vectors(args.vectors)

    _, report = train(corpus, vectors, config, checkpoint_path=args.out, monitor=monitor)
    logger.info(
        f"Trained {config.epochs} epochs in {report.seconds:.1f}s, "
        f"final loss {report.epoch_losses[-1]:.6f}; checkpoint at {report.checkpoint_path}"
    )
    return 0
