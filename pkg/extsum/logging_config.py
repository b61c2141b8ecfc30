import logging
import os
from pathlib import Path

PACKAGE_LOGGER = "extsum"

LEVELS = {
    "error": logging.ERROR,
    "warn": logging.WARNING,
    "warning": logging.WARNING,
    "info": logging.INFO,
    "debug": logging.DEBUG,
}


def _resolve_level(level: str | None) -> int:
    # EXTSUM_LOG wins over whatever the caller asked for
    env = os.getenv("EXTSUM_LOG")
    name = env or level or "info"
    resolved = LEVELS.get(name.strip().lower())
    if resolved is None:
        source = "EXTSUM_LOG" if env else "log level"
        logging.getLogger(PACKAGE_LOGGER).warning(
            f"Ignoring unrecognized {source} {name!r}; expected one of error, warn, info, debug"
        )
        return logging.INFO
    return resolved


def _configure_package_logger() -> logging.Logger:
    root = logging.getLogger(PACKAGE_LOGGER)

    if root.handlers:
        return root  # Already configured

    log_to_file = os.getenv("EXTSUM_LOG_TO_FILE", "false").lower() == "true"

    formatter = logging.Formatter(
        "[%(asctime)s] [%(levelname)s] %(name)s: %(message)s", datefmt="%Y-%m-%d %H:%M:%S"
    )

    if log_to_file:
        log_dir = Path("logs")
        log_dir.mkdir(exist_ok=True, parents=True)
        handler = logging.FileHandler(log_dir / "extsum.log")
    else:
        handler = logging.StreamHandler()
    handler.setFormatter(formatter)
    root.addHandler(handler)

    root.setLevel(_resolve_level(None))
    return root


def get_logger(name: str = PACKAGE_LOGGER) -> logging.Logger:
    _configure_package_logger()
    if name != PACKAGE_LOGGER and not name.startswith(PACKAGE_LOGGER + "."):
        name = f"{PACKAGE_LOGGER}.{name}"
    return logging.getLogger(name)


def set_log_level(level: str | None) -> int:
    """Applies a CLI log level (error|warn|info|debug); EXTSUM_LOG overrides it."""
    resolved = _resolve_level(level)
    _configure_package_logger().setLevel(resolved)
    return resolved
