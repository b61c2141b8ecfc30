import argparse

from pydantic import ValidationError

from extsum.config import GlobalOptions, TrainConfig, dump_config, load_config
from extsum.errors import ConfigError
from extsum.logging_config import get_logger, set_log_level

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2

LOG_LEVELS = ("error", "warn", "info", "debug")


class UsageError(Exception):
    """Bad flag combination detected after parsing; reported with exit code 1."""


def add_global_options(parser: argparse.ArgumentParser) -> None:
    # SUPPRESS keeps a subcommand from overwriting a value given before it
    parser.add_argument(
        "--seed",
        type=int,
        default=argparse.SUPPRESS,
        help="seed for initialization, shuffling and splits (default 13, overrides the config)",
    )
    parser.add_argument(
        "--log-level",
        choices=LOG_LEVELS,
        default=argparse.SUPPRESS,
        help="log verbosity (default info); the EXTSUM_LOG environment variable wins",
    )
    parser.add_argument(
        "--config",
        default=argparse.SUPPRESS,
        metavar="FILE",
        help="training config: UTF-8 text, one 'key = value' per line, '#' comments",
    )


def global_options(args: argparse.Namespace) -> GlobalOptions:
    values = {
        key: getattr(args, key)
        for key in ("seed", "log_level", "config")
        if getattr(args, key, None) is not None
    }
    try:
        return GlobalOptions(**values)
    except ValidationError as e:
        raise ConfigError(f"invalid global option: {e.errors()[0]['msg']}") from e


def setup_logging(args: argparse.Namespace) -> None:
    set_log_level(getattr(args, "log_level", None))


def effective_config(args: argparse.Namespace) -> TrainConfig:
    """Config file (or defaults) with the --seed flag applied on top."""
    options = global_options(args)
    overrides = {"seed": args.seed} if getattr(args, "seed", None) is not None else {}
    return load_config(options.config, **overrides)


def echo_config(command: str, args: argparse.Namespace, config: TrainConfig | None = None):
    options = global_options(args)
    seed = config.seed if config is not None else options.seed
    logger.info(f"{command}: seed={seed} log_level={options.log_level}")
    if config is not None:
        for line in dump_config(config).splitlines():
            logger.info(f"  {line}")
