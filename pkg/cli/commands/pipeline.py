import argparse

from cli.utils import echo_config, effective_config
from extsum.services.evaluation import render_report
from extsum.services.pipeline import run_pipeline

HELP = """\
Run label -> train -> summarize -> evaluate end to end. The labeled corpus is
split by article (seeded, holdout_fraction from the config, default 0.1);
the model is trained on one part and evaluated on the other.

The run directory receives labeled.jsonl, model.ckpt, results.jsonl,
report.txt, report.json and config.txt (the effective config).
"""


def register(subparsers) -> argparse.ArgumentParser:
    parser = subparsers.add_parser(
        "pipeline",
        help="label, train, summarize and evaluate in one run",
        description=HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("--corpus", required=True, help="JSONL corpus with abstractive summaries")
    parser.add_argument("--vectors", required=True, help="word-vector text file")
    parser.add_argument("--run-dir", required=True, help="directory for every artifact")
    return parser


def run(args: argparse.Namespace) -> int:
    config = effective_config(args)
    echo_config("pipeline", args, config)
    result = run_pipeline(args.corpus, args.vectors, config, args.run_dir)
    print(render_report(result.report)[0], end="")
    return 0
