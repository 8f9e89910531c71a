"""
Service for reading publication records and grouping them into reference sets
"""
import io
import json
import logging
import math
import re
from collections import defaultdict
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import pandas as pd
from pandas.errors import EmptyDataError, ParserError
from pydantic import ValidationError

from models.record import OPTIONAL_COLUMNS, REQUIRED_COLUMNS, CitationRecord, ReferenceKey, ReferenceSet
from utils.errors import IngestError

_INTEGER = re.compile(r"^[+-]?\d+$")

DELIMITED = "delimited-table"
JSON_LINES = "json-lines"


class IngestService:
    """Service for parsing citation records"""

    def __init__(self):
        """Initialize the ingest service"""
        self.logger = logging.getLogger(__name__)

    def parse_records(self, data: bytes, input_format: str = DELIMITED) -> List[CitationRecord]:
        """
        Parse citation records from raw bytes

        Args:
            data: UTF-8 encoded file content
            input_format: "delimited-table" or "json-lines"

        Returns:
            One record per data row, in input order
        """
        try:
            text = data.decode("utf-8-sig")
        except UnicodeDecodeError as e:
            raise IngestError(f"input is not valid UTF-8 ({e.reason} at byte {e.start})")

        if input_format == DELIMITED:
            rows = self._read_delimited(text)
        elif input_format == JSON_LINES:
            rows = self._read_json_lines(text)
        else:
            raise IngestError(f"unknown input format '{input_format}'")

        records = []
        seen: Dict[str, int] = {}
        for row_number, row in rows:
            record = self._build_record(row, row_number)
            if record.id in seen:
                raise IngestError(f"duplicate id '{record.id}' (first seen in row {seen[record.id]})",
                                  row=row_number, field="id")
            seen[record.id] = row_number
            records.append(record)

        self.logger.info(f"Parsed {len(records)} records ({input_format})")
        return records

    def read_paths(self, paths: Sequence[str], input_format: Optional[str] = None) -> List[CitationRecord]:
        """
        Parse every input file and concatenate the records

        Args:
            paths: Input file paths
            input_format: Format for all files; detected from the extension when None

        Returns:
            Records of all files, file by file
        """
        records: List[CitationRecord] = []
        owners: Dict[str, str] = {}
        for path in paths:
            file_format = input_format or self.detect_format(path)
            try:
                with open(path, "rb") as f:
                    data = f.read()
            except OSError as e:
                raise IngestError(f"cannot read {path}: {e.strerror}")
            try:
                parsed = self.parse_records(data, file_format)
            except IngestError as e:
                raise IngestError(f"{path}: {e}") from e
            for record in parsed:
                if record.id in owners:
                    raise IngestError(f"{path}: id '{record.id}' already read from {owners[record.id]}")
                owners[record.id] = path
            records.extend(parsed)
        return records

    @staticmethod
    def detect_format(path: str) -> str:
        """Guess the input format from a file extension"""
        if path.lower().endswith((".jsonl", ".ndjson", ".json")):
            return JSON_LINES
        return DELIMITED

    def build_reference_sets(self, records: Iterable[CitationRecord]) -> Dict[ReferenceKey, ReferenceSet]:
        """
        Group records by (field, year, doctype)

        Args:
            records: Parsed records

        Returns:
            Reference sets in lexicographic key order
        """
        groups: Dict[ReferenceKey, List[CitationRecord]] = defaultdict(list)
        for record in records:
            groups[record.key].append(record)

        if not groups:
            raise IngestError("no records")

        reference_sets = {key: ReferenceSet(key=key, members=groups[key]) for key in sorted(groups)}
        self.logger.info(f"Built {len(reference_sets)} reference sets")
        return reference_sets

    def serialize_records(self, records: Sequence[CitationRecord], output_format: str = DELIMITED) -> bytes:
        """
        Write records in the dialect parse_records reads

        Args:
            records: Records to write
            output_format: "delimited-table" or "json-lines"

        Returns:
            UTF-8 encoded content
        """
        if output_format == JSON_LINES:
            lines = [json.dumps(self._record_to_row(record), ensure_ascii=False) for record in records]
            return ("\n".join(lines) + "\n").encode("utf-8") if lines else b""

        attribute_columns = sorted({key for record in records for key in record.attributes})
        columns = list(REQUIRED_COLUMNS) + list(OPTIONAL_COLUMNS) + attribute_columns
        rows = []
        for record in records:
            row = self._record_to_row(record)
            rows.append({column: self._cell(row.get(column)) for column in columns})
        frame = pd.DataFrame(rows, columns=columns, dtype=str)
        return frame.to_csv(index=False, lineterminator="\n").encode("utf-8")

    def _read_delimited(self, text: str) -> List[Tuple[int, Dict[str, Any]]]:
        """Read a comma-separated table with a header line"""
        if not text.strip():
            return []
        try:
            frame = pd.read_csv(io.StringIO(text), dtype=str, keep_default_na=False, skip_blank_lines=True)
        except EmptyDataError:
            return []
        except ParserError as e:
            raise IngestError(f"malformed table: {e}")

        frame.columns = [str(column).strip() for column in frame.columns]
        missing = [column for column in REQUIRED_COLUMNS if column not in frame.columns]
        if missing:
            raise IngestError(f"missing required column(s): {', '.join(missing)}")

        return [(index + 1, row) for index, row in enumerate(frame.to_dict("records"))]

    def _read_json_lines(self, text: str) -> List[Tuple[int, Dict[str, Any]]]:
        """Read one JSON object per line"""
        rows = []
        for line_number, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            try:
                row = json.loads(line)
            except json.JSONDecodeError as e:
                raise IngestError(f"invalid JSON ({e.msg})", row=line_number)
            if not isinstance(row, dict):
                raise IngestError("expected a JSON object", row=line_number)
            rows.append((line_number, row))
        return rows

    def _build_record(self, row: Dict[str, Any], row_number: int) -> CitationRecord:
        """Validate one row and turn it into a record"""
        for column in REQUIRED_COLUMNS:
            if self._is_blank(row.get(column)):
                raise IngestError("missing value", row=row_number, field=column)

        citations = self._parse_int(row["citations"], row_number, "citations")
        if citations < 0:
            raise IngestError("negative citations", row=row_number, field="citations")

        pages = None
        if not self._is_blank(row.get("pages")):
            pages = self._parse_int(row["pages"], row_number, "pages")
            if pages < 1:
                raise IngestError("pages must be at least 1", row=row_number, field="pages")

        journal_metric = None
        if not self._is_blank(row.get("journal_metric")):
            journal_metric = self._parse_float(row["journal_metric"], row_number, "journal_metric")
            if journal_metric < 0:
                raise IngestError("journal metric must not be negative", row=row_number, field="journal_metric")

        known = set(REQUIRED_COLUMNS) | set(OPTIONAL_COLUMNS)
        attributes = {
            key: value for key, value in row.items()
            if key not in known and not self._is_blank(value)
        }

        year = self._parse_int(row["year"], row_number, "year")
        try:
            return CitationRecord(
                id=str(row["id"]).strip(),
                citations=citations,
                field=str(row["field"]).strip(),
                year=year,
                doctype=str(row["doctype"]).strip(),
                pages=pages,
                journal_metric=journal_metric,
                attributes=attributes,
            )
        except ValidationError as e:
            first = e.errors()[0]
            field = ".".join(str(part) for part in first["loc"]) or None
            raise IngestError(first["msg"], row=row_number, field=field) from e

    @staticmethod
    def _is_blank(value: Any) -> bool:
        if value is None:
            return True
        if isinstance(value, float) and math.isnan(value):
            return True
        return isinstance(value, str) and not value.strip()

    @staticmethod
    def _parse_int(value: Any, row_number: int, field: str) -> int:
        if isinstance(value, bool):
            raise IngestError("expected a base-10 integer", row=row_number, field=field)
        if isinstance(value, int):
            return value
        if isinstance(value, str) and _INTEGER.match(value.strip()):
            return int(value.strip(), 10)
        raise IngestError(f"expected a base-10 integer, got '{value}'", row=row_number, field=field)

    @staticmethod
    def _parse_float(value: Any, row_number: int, field: str) -> float:
        if isinstance(value, bool):
            raise IngestError("expected a number", row=row_number, field=field)
        try:
            number = float(value)
        except (TypeError, ValueError):
            raise IngestError(f"expected a number, got '{value}'", row=row_number, field=field)
        if not math.isfinite(number):
            raise IngestError("expected a finite number", row=row_number, field=field)
        return number

    @staticmethod
    def _record_to_row(record: CitationRecord) -> Dict[str, Any]:
        """Flatten a record into the columns it was read from"""
        row: Dict[str, Any] = {
            "id": record.id,
            "citations": record.citations,
            "field": record.field,
            "year": record.year,
            "doctype": record.doctype,
        }
        if record.pages is not None:
            row["pages"] = record.pages
        if record.journal_metric is not None:
            row["journal_metric"] = record.journal_metric
        row.update(record.attributes)
        return row

    @staticmethod
    def _cell(value: Any) -> str:
        if value is None:
            return ""
        if isinstance(value, float):
            return repr(value)
        if isinstance(value, (dict, list)):
            return json.dumps(value, ensure_ascii=False)
        return str(value)
