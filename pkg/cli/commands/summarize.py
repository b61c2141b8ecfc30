import argparse
from pathlib import Path

from cli.utils import UsageError, echo_config
from extsum.logging_config import get_logger
from extsum.repositories import load_params, load_vectors, read_article, read_corpus
from extsum.services.summarization import summarize_corpus, summarize_text

logger = get_logger(__name__)

HELP = """\
Select the top-N sentences of every article, N = min(max(ceil(0.1 * sentences), 3),
sentences), and emit them in article order.

Output (--output) is JSONL, one record per article:
  {"id": str, "selected": [int, ...], "probabilities": [float, ...], "summary": [str, ...]}

--lead writes the first N sentences instead (no model needed).
--text FILE summarizes one raw-text article and prints the selected sentences.
"""


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(
        "summarize",
        help="extract summaries with a trained model",
        description=HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--model", metavar="CHECKPOINT", help="checkpoint written by 'train'")
    parser.add_argument("--vectors", help="word-vector text file used for training")
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--input", metavar="CORPUS", help="JSONL corpus to summarize")
    source.add_argument("--text", metavar="FILE", help="raw UTF-8 article to summarize")
    parser.add_argument("--output", metavar="RESULTS", help="JSONL results file to write")
    parser.add_argument("--lead", action="store_true", help="lead-N baseline instead of the model")
    return parser


def run(args: argparse.Namespace) -> int:
    echo_config("summarize", args)
    if args.input and not args.output:
        raise UsageError("--input requires --output")
    if args.text and args.lead:
        raise UsageError("--lead works on a corpus (--input), not --text")
    if not args.lead and not (args.model and args.vectors):
        raise UsageError("--model and --vectors are required unless --lead is given")

    params = load_params(args.model) if not args.lead else None
    vectors = load_vectors(args.vectors) if not args.lead else None

    if args.text:
        text = read_article(args.text)
        result = summarize_text(params, vectors, text, doc_id=Path(args.text).stem)
        for sentence in result.summary_text:
            print(sentence)
        return 0

    run_result = summarize_corpus(
        params, vectors, read_corpus(args.input), args.output, lead=args.lead
    )
    logger.info(f"Wrote {len(run_result.results)} summaries to {args.output}")
    return 0
