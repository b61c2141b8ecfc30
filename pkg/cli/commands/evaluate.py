import argparse
from pathlib import Path

from cli.utils import echo_config
from extsum.logging_config import get_logger
from extsum.repositories import read_corpus, read_results
from extsum.services.evaluation import evaluate, render_report

logger = get_logger(__name__)

HELP = """\
Score summaries against a gold corpus: sentence matching against the gold
extractive summary (the label-1 sentences), ROUGE-1 and ROUGE-2 against the
same sentences. Prints a precision/recall/F1 table.

--aggregate macro averages per-article scores (default); micro pools counts.
--match index compares sentence positions (default); text compares
lowercased, whitespace-collapsed sentence text.
--report FILE also writes the table as JSON.
"""


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(
        "evaluate",
        help="score summaries against gold labels",
        description=HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--results", required=True, help="JSONL results from 'summarize'")
    parser.add_argument("--gold", required=True, metavar="CORPUS", help="labeled JSONL corpus")
    parser.add_argument("--aggregate", choices=("macro", "micro"), default="macro")
    parser.add_argument("--match", choices=("index", "text"), default="index")
    parser.add_argument("--report", metavar="FILE", help="write the report as JSON")
    parser.add_argument(
        "--per-document", action="store_true", help="include per-article rows in the JSON report"
    )
    return parser


def run(args: argparse.Namespace) -> int:
    echo_config("evaluate", args)
    report = evaluate(
        read_results(args.results),
        read_corpus(args.gold),
        aggregate=args.aggregate,
        matching=args.match,
        per_document=args.per_document,
    )
    text, record = render_report(report)
    print(text, end="")
    if args.report:
        Path(args.report).write_text(record, encoding="utf-8")
        logger.info(f"Report written to {args.report}")
    return 0
