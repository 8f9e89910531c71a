"""
Command definitions and argument parsing for the command-line interface
"""
import argparse
from typing import Any, Dict, List, Tuple

from models.run_config import ASSIGN_MODES, INPUT_FORMATS, OUTPUT_FORMATS

# Define available commands and their descriptions
COMMANDS = [
    ("percentiles", "Rank every reference set and emit per-publication percentiles"),
    ("classes", "Assign publications to percentile rank classes"),
    ("validate", "Check whether reference sets support a rank class scheme"),
    ("report", "Class shares against expected values, significance tests and distribution summaries"),
]

# Flags that map onto RunConfig fields; None means "not given on the command line"
_CONFIG_FLAGS = (
    "inputs", "input_format", "method", "tie_mode", "tie_break", "scheme",
    "assign", "output_format", "output", "force", "group_by", "inverted",
)


def get_command_list() -> List[Tuple[str, str]]:
    """
    Get the list of available commands

    Returns:
        List of (command, description) tuples
    """
    return COMMANDS


def _add_common_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("inputs", nargs="*", default=None,
                        help="input files (comma-separated table or JSON lines)")
    parser.add_argument("--format", dest="input_format", choices=INPUT_FORMATS + ("csv", "jsonl"),
                        help="input format (default: detected from the file extension)")
    parser.add_argument("--method",
                        help="percentile method: a, b, c (Hazen), d (Blom), e (Gringorten) or general:a=<0..0.5>")
    parser.add_argument("--tie-mode", dest="tie_mode", choices=("rank-average", "percentile-average"),
                        help="average ranks (default) or average percentiles of tied publications")
    parser.add_argument("--tie-break", dest="tie_break",
                        help="comma-separated tie-break chain: citations-per-page, journal-metric")
    parser.add_argument("--output-format", dest="output_format", choices=OUTPUT_FORMATS,
                        help="delimited table or JSON document")
    parser.add_argument("-o", "--output", help="output file (default: stdout)")
    parser.add_argument("--config", help="JSON file with run settings; flags override it")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging")
    parser.add_argument("-q", "--quiet", action="store_true", help="warnings and errors only")


def build_parser() -> argparse.ArgumentParser:
    """
    Build the argument parser with one subcommand per command

    Returns:
        Configured ArgumentParser
    """
    commands = "\n".join(f"  {name:<12} {description}" for name, description in get_command_list())
    parser = argparse.ArgumentParser(
        prog="citation-percentiles",
        description="Tie-aware citation percentiles and percentile rank classes",
        epilog=f"commands:\n{commands}",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    descriptions = dict(COMMANDS)
    for name, _ in COMMANDS:
        subparser = subparsers.add_parser(name, help=descriptions[name], description=descriptions[name])
        _add_common_arguments(subparser)
        if name in ("classes", "validate", "report"):
            subparser.add_argument("--scheme", help="pr2-10, pr2-50, pr6, esi, esi-bands or equal:<k>")
        if name in ("classes", "report"):
            subparser.add_argument("--assign", choices=ASSIGN_MODES, help="class assignment mode")
            subparser.add_argument("--force", action="store_true", default=None,
                                   help="assign crisp PR(6) classes even on sets too small for its 1%% class")
        if name == "report":
            subparser.add_argument("--group-by", dest="group_by",
                                   help="pool publications by this input column instead of by reference set")
            subparser.add_argument("--inverted", action="store_true", default=None,
                                   help="summarise inverted percentiles")
    return parser


def flag_values(args: argparse.Namespace) -> Dict[str, Any]:
    """
    RunConfig values given on the command line

    Args:
        args: Parsed arguments

    Returns:
        Dictionary without the flags that were not given
    """
    values = {name: getattr(args, name, None) for name in _CONFIG_FLAGS}
    if not values["inputs"]:
        values["inputs"] = None
    return {name: value for name, value in values.items() if value is not None}
