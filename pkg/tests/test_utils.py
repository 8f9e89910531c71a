import json
import logging

import pytest

from models.rank_class import RankClassScheme
from services.rank_class_service import RankClassService
from services.ranking_service import RankingService
from utils.formatters import format_feasibility, format_json, format_table, write_output
from utils.timer import Timer

from tests.conftest import make_set


@pytest.mark.parametrize("milliseconds, text", [(850, "850ms"), (2400, "2.40s"), (65000, "1m 5.00s")])
def test_format_processing_time(milliseconds, text):
    assert Timer.format_processing_time(milliseconds) == text


def test_timer_logs_stage(caplog):
    with caplog.at_level(logging.INFO):
        with Timer("Scoring 3 reference sets") as timer:
            pass
    assert timer.elapsed_ms >= 0
    assert "Scoring 3 reference sets took" in caplog.text


def test_format_table_keeps_column_order():
    text = format_table([{"b": 1, "a": 2.5}, {"b": 3, "a": None}], ["a", "b"])
    assert text == "a,b\n2.5,1\n,3\n"


def test_format_table_without_rows_writes_header():
    assert format_table([], ["id", "class"]) == "id,class\n"


def test_format_json_ends_with_newline():
    text = format_json({"label": "10%"})
    assert text.endswith("\n")
    assert json.loads(text) == {"label": "10%"}


def test_write_output_replaces_file(tmp_path):
    target = tmp_path / "report.csv"
    target.write_text("old\n", encoding="utf-8")

    write_output("new\n", str(target))

    assert target.read_text(encoding="utf-8") == "new\n"
    assert [p.name for p in tmp_path.iterdir()] == ["report.csv"]


def test_write_output_to_stdout(capsys):
    write_output("x\n")
    assert capsys.readouterr().out == "x\n"


def test_feasibility_text_names_the_binding_rule():
    ranked = RankingService().rank_with_ties(make_set([1, 2, 3]))
    report = RankClassService().validate_feasibility(ranked, RankClassScheme.equal(4))

    text = format_feasibility([report])

    assert "max equal-size classes: 3 (no ties, n + 1 applies)" in text
    assert "max classes (n + 1): 4" in text
    assert "EQ(4): feasible" in text
