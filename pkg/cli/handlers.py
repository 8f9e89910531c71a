"""
Command handlers: each runs one pipeline and returns an exit code
"""
import logging
import os
import sys
from typing import Callable, Dict, List, Optional, Sequence

from config.config import (
    EXIT_CONFIG_ERROR,
    EXIT_INFEASIBLE,
    EXIT_INPUT_ERROR,
    EXIT_OK,
    OUTPUT_FORMAT_ENV,
)
from cli.commands import build_parser, flag_values
from models.run_config import RunConfig
from services.pipeline_service import PipelineService, ScoredSet
from utils.errors import ConfigError, InfeasibleSchemeError
from utils.formatters import format_feasibility, format_json, format_table, write_output

logger = logging.getLogger(__name__)

SCORE_COLUMNS = ["reference_set", "id", "citations", "rank", "percentile", "inverted_percentile", "method"]


def _fail(message: str, code: int) -> int:
    logger.debug(message, exc_info=True)
    print(f"Error: {message}", file=sys.stderr)
    return code


def _guarded(handler: Callable[[RunConfig], int]) -> Callable[[RunConfig], int]:
    """Map raised errors onto the exit-code contract"""
    def run(config: RunConfig) -> int:
        try:
            return handler(config)
        except InfeasibleSchemeError as e:
            return _fail(f"{e} (use --force to assign anyway)", EXIT_CONFIG_ERROR)
        except ConfigError as e:
            return _fail(str(e), EXIT_CONFIG_ERROR)
        except ValueError as e:
            # IngestError, CovariateError and validation failures
            return _fail(str(e), EXIT_INPUT_ERROR)
    run.__name__ = handler.__name__
    run.__doc__ = handler.__doc__
    return run


def _load_and_score(config: RunConfig, pipeline: PipelineService) -> List[ScoredSet]:
    if not config.inputs:
        raise ConfigError("no input files given")
    reference_sets = pipeline.load(config.inputs, config.input_format)
    return pipeline.score_sets(reference_sets, config.percentile_method, config.tie_mode_value, config.chain)


@_guarded
def cmd_percentiles(config: RunConfig) -> int:
    """Emit id, citations, rank, percentile and inverted percentile per reference set"""
    pipeline = PipelineService()
    scored = _load_and_score(config, pipeline)

    if config.output_format == "json":
        document = {
            "command": "percentiles",
            "method": config.percentile_method.label,
            "tie_mode": config.tie_mode,
            "tie_break": config.tie_break,
            "reference_sets": [
                {"key": item.label, "n": item.ranked.n, "scores": [score.to_dict() for score in item.scores]}
                for item in scored
            ],
        }
        write_output(format_json(document), config.output)
    else:
        rows = [{"reference_set": item.label, **score.to_dict()} for item in scored for score in item.scores]
        write_output(format_table(rows, SCORE_COLUMNS), config.output)
    return EXIT_OK


@_guarded
def cmd_classes(config: RunConfig) -> int:
    """Emit one class assignment per publication"""
    pipeline = PipelineService()
    scored = _load_and_score(config, pipeline)
    scheme = config.rank_class_scheme
    pipeline.check_feasibility(scored, scheme, config.assign, config.force)
    classified = pipeline.classify(scored, scheme, config.assign)

    if config.output_format == "json":
        document = {
            "command": "classes",
            "scheme": scheme.name,
            "assign": config.assign,
            "method": config.percentile_method.label,
            "reference_sets": [
                {"key": item.label, "n": item.ranked.n, "assignments": [a.to_dict() for a in assignments]}
                for item, assignments in classified
            ],
        }
        write_output(format_json(document), config.output)
        return EXIT_OK

    fractional = config.assign == "fractional" and not scheme.nested
    columns = ["reference_set", "id", "scheme"] + (scheme.labels if fractional else ["class"])
    rows = [
        {"reference_set": item.label, **assignment.to_dict()}
        for item, assignments in classified for assignment in assignments
    ]
    write_output(format_table(rows, columns), config.output)
    return EXIT_OK


@_guarded
def cmd_validate(config: RunConfig) -> int:
    """Print the feasibility report; exit 3 when any reference set cannot carry the scheme"""
    pipeline = PipelineService()
    scored = _load_and_score(config, pipeline)
    scheme = config.rank_class_scheme
    reports = [pipeline.rank_class_service.validate_feasibility(item.ranked, scheme) for item in scored]

    if config.output_format == "json":
        document = {"command": "validate", "scheme": scheme.name, "reference_sets": [r.to_dict() for r in reports]}
        write_output(format_json(document), config.output)
    else:
        write_output(format_feasibility(reports), config.output)

    infeasible = [report.group for report in reports if not report.feasible]
    if infeasible:
        logger.warning(f"{scheme.name} infeasible for {len(infeasible)} of {len(reports)} reference sets")
        return EXIT_INFEASIBLE
    return EXIT_OK


@_guarded
def cmd_report(config: RunConfig) -> int:
    """Emit class shares with expected values and tests, then distribution summaries, per group"""
    pipeline = PipelineService()
    scored = _load_and_score(config, pipeline)
    scheme = config.rank_class_scheme
    pipeline.check_feasibility(scored, scheme, config.assign, config.force)
    reports = pipeline.report(scored, scheme, config.assign, config.group_by, config.inverted)

    if config.output_format == "json":
        document = {
            "command": "report",
            "scheme": scheme.name,
            "assign": config.assign,
            "method": config.percentile_method.label,
            "inverted": config.inverted,
            "groups": [report.to_dict() for report in reports],
        }
        write_output(format_json(document), config.output)
        return EXIT_OK

    share_rows = [row for report in reports for row in report.shares.to_rows()]
    share_columns = ["group", "scheme", "n", "missing", "class", "mass", "observed", "expected",
                     "deviation", "z", "p_normal", "p_exact"]
    summary_rows = [report.summary.to_dict() for report in reports]
    text = format_table(share_rows, share_columns) + "\n" + format_table(summary_rows)
    write_output(text, config.output)
    return EXIT_OK


HANDLERS: Dict[str, Callable[[RunConfig], int]] = {
    "percentiles": cmd_percentiles,
    "classes": cmd_classes,
    "validate": cmd_validate,
    "report": cmd_report,
}


def build_config(args) -> RunConfig:
    """
    Merge config file, environment and flags into a RunConfig

    Args:
        args: Parsed command-line arguments

    Returns:
        Validated RunConfig
    """
    file_values = RunConfig.read_file(args.config) if args.config else None
    env_values = {"output_format": os.getenv(OUTPUT_FORMAT_ENV)}
    return RunConfig.build(file_values, env_values, flag_values(args))


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse arguments and run one command

    Args:
        argv: Command-line arguments without the program name

    Returns:
        Exit code
    """
    args = build_parser().parse_args(argv)
    try:
        config = build_config(args)
    except ConfigError as e:
        return _fail(str(e), EXIT_CONFIG_ERROR)
    logger.info(f"Running {args.command} on {len(config.inputs)} input file(s)")
    return HANDLERS[args.command](config)
