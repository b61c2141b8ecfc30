import argparse

from cli.utils import echo_config
from extsum.logging_config import get_logger
from extsum.processing.labeling import annotate_corpus
from extsum.repositories import read_corpus, write_labeled_corpus

logger = get_logger(__name__)

HELP = """\
Auto-annotate a corpus: every article with an abstractive summary gets binary
labels marking its top-N sentences by ROUGE-1 F1 against that summary, with
N = min(max(ceil(0.1 * sentences), 3), sentences). Articles without a usable
summary are skipped with a warning. Input and output are JSONL corpora; the
output has the "labels" field populated.
"""


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(
        "label",
        help="auto-label extractive summaries from abstractive ones",
        description=HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--input", required=True, metavar="CORPUS", help="JSONL corpus to label")
    parser.add_argument(
        "--output", required=True, metavar="CORPUS", help="where to write the labeled JSONL corpus"
    )
    return parser


def run(args: argparse.Namespace) -> int:
    echo_config("label", args)
    result = annotate_corpus(read_corpus(args.input))
    written = write_labeled_corpus(result.documents, args.output)
    logger.info(f"Wrote {written} labeled documents to {args.output}")
    return 0
