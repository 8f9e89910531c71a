#!/usr/bin/env python3
"""
Citation percentiles and percentile rank classes from the command line
"""
import logging
import os
import sys
from typing import Optional, Sequence

from config.config import LOG_FILE, LOG_FORMAT
from cli.handlers import run

logger = logging.getLogger(__name__)


def setup_logging(argv: Sequence[str], log_file: Optional[str] = LOG_FILE) -> None:
    """
    Configure logging to stderr, and to a file when PERCENTILE_LOG_FILE is set

    Args:
        argv: Command-line arguments, scanned for -v/--verbose and -q/--quiet
        log_file: Optional log file path
    """
    level = logging.INFO
    if "-v" in argv or "--verbose" in argv:
        level = logging.DEBUG
    elif "-q" in argv or "--quiet" in argv:
        level = logging.WARNING

    handlers = [logging.StreamHandler(sys.stderr)]
    if log_file:
        directory = os.path.dirname(log_file)
        if directory:
            os.makedirs(directory, exist_ok=True)
        file_handler = logging.FileHandler(log_file)
        file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
        handlers.append(file_handler)

    logging.basicConfig(format=LOG_FORMAT, level=level, handlers=handlers, force=True)


def main() -> int:
    """Run one command and return its exit code"""
    argv = sys.argv[1:]
    setup_logging(argv)
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
