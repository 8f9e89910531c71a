"""
Utility functions for formatting and writing command output
"""
import json
import os
import sys
import tempfile
from typing import Any, Dict, List, Optional, Sequence

import pandas as pd

from models.rank_class import FeasibilityReport


def format_table(rows: Sequence[Dict[str, Any]], columns: Optional[List[str]] = None) -> str:
    """
    Format rows as a comma-separated table with a header line

    Args:
        rows: Table rows
        columns: Column order; taken from the first row when None

    Returns:
        Table text
    """
    if columns is None:
        columns = list(rows[0].keys()) if rows else []
    frame = pd.DataFrame(list(rows), columns=columns)
    return frame.to_csv(index=False, lineterminator="\n")


def format_json(document: Any) -> str:
    """
    Format a JSON document

    Args:
        document: JSON-serialisable object

    Returns:
        Indented JSON text ending in a newline
    """
    return json.dumps(document, indent=2, ensure_ascii=False) + "\n"


def format_feasibility(reports: Sequence[FeasibilityReport]) -> str:
    """
    Format feasibility reports as plain text, one block per reference set

    Args:
        reports: Feasibility reports

    Returns:
        Report text
    """
    blocks = []
    for report in reports:
        # without ties the n + 1 limit is the only one that binds equal classes
        tie_rule = "no ties, n + 1 applies" if report.largest_tie_group == 1 else "n / largest tie group"
        lines = [
            f"reference set: {report.group}",
            f"n: {report.n}",
            f"largest tie group: {report.largest_tie_group}",
            f"distinct citation values: {report.distinct_values}",
            f"max equal-size classes: {report.max_equal_classes} ({tie_rule})",
            f"max classes (n + 1): {report.max_classes}",
        ]
        for verdict in report.verdicts:
            status = "feasible" if verdict.feasible else "infeasible"
            lines.append(f"{verdict.scheme}: {status} ({verdict.reason})")
        lines.append(f"requested {report.scheme}: {'feasible' if report.feasible else 'infeasible'}")
        blocks.append("\n".join(lines))
    return "\n\n".join(blocks) + "\n"


def write_output(text: str, path: Optional[str] = None) -> None:
    """
    Write command output to a file or to stdout

    Files are written to a temporary name first and renamed, so a failed run never
    leaves a partial file behind.

    Args:
        text: Output text
        path: Output file; stdout when None
    """
    if path is None or path == "-":
        sys.stdout.write(text)
        sys.stdout.flush()
        return

    directory = os.path.dirname(os.path.abspath(path))
    temp_file = tempfile.NamedTemporaryFile("w", encoding="utf-8", dir=directory,
                                            suffix=".tmp", delete=False, newline="")
    try:
        with temp_file:
            temp_file.write(text)
        os.replace(temp_file.name, path)
    except Exception:
        os.unlink(temp_file.name)
        raise
