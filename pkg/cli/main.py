import argparse
import sys

from cli.commands import COMMANDS
from cli.utils import EXIT_DATA, EXIT_OK, EXIT_USAGE, UsageError, add_global_options, setup_logging
from extsum.errors import ExtsumError

DESCRIPTION = """\
Extractive summarization: auto-label a corpus, train a bidirectional GRU
sentence classifier, summarize articles and evaluate the summaries.

Corpus files are JSONL, one article per line:
  {"id": str, "sentences": [str, ...], "abstractive": [str, ...], "labels": [0|1, ...]}
("abstractive" and "labels" are optional).
"""


class CliArgumentParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with code 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> CliArgumentParser:
    parser = CliArgumentParser(
        prog="extsum",
        description=DESCRIPTION,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    add_global_options(parser)

    subparsers = parser.add_subparsers(dest="command", metavar="COMMAND", required=True)
    for command in COMMANDS:
        sub = command.register(subparsers)
        add_global_options(sub)
        sub.set_defaults(handler=command.run)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    try:
        setup_logging(args)
        return args.handler(args) or EXIT_OK
    except UsageError as e:
        parser.print_usage(sys.stderr)
        print(f"extsum {args.command}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ExtsumError, OSError) as e:
        print(f"extsum {args.command}: {e}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
