import io
import json

import pandas as pd
import pytest

from cli.commands import build_parser, flag_values, get_command_list
from cli.handlers import run
from config.config import EXIT_CONFIG_ERROR, EXIT_INFEASIBLE, EXIT_INPUT_ERROR, EXIT_OK, OUTPUT_FORMAT_ENV
from models.run_config import RunConfig
from utils.errors import ConfigError

from tests.conftest import GOLDEN_TOLERANCE, SAMPLE_PERCENTILES


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    monkeypatch.delenv(OUTPUT_FORMAT_ENV, raising=False)


def _table(text: str) -> pd.DataFrame:
    return pd.read_csv(io.StringIO(text), keep_default_na=False)


def test_command_list():
    assert [name for name, _ in get_command_list()] == ["percentiles", "classes", "validate", "report"]


def test_percentiles_reproduce_hazen_column(sample_csv, capsys):
    assert run(["percentiles", sample_csv, "--method", "c"]) == EXIT_OK

    frame = _table(capsys.readouterr().out)
    assert list(frame.columns) == ["reference_set", "id", "citations", "rank", "percentile",
                                   "inverted_percentile", "method"]
    assert len(frame) == 41
    assert set(frame["reference_set"]) == {"CHEM/2005/Article"}
    for _, row in frame.iterrows():
        assert row["percentile"] == pytest.approx(SAMPLE_PERCENTILES[row["citations"]][2], abs=GOLDEN_TOLERANCE)


def test_percentiles_json(sample_csv, capsys):
    assert run(["percentiles", sample_csv, "--method", "general:a=0.5", "--output-format", "json"]) == EXIT_OK

    document = json.loads(capsys.readouterr().out)
    assert document["command"] == "percentiles"
    assert document["method"] == "general:a=0.5"
    reference_set = document["reference_sets"][0]
    assert reference_set["n"] == 41
    assert reference_set["scores"][0]["percentile"] == pytest.approx(97.56097, abs=GOLDEN_TOLERANCE)


def test_environment_selects_json_and_flag_overrides_it(sample_csv, capsys, monkeypatch):
    monkeypatch.setenv(OUTPUT_FORMAT_ENV, "json")
    assert run(["percentiles", sample_csv]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["command"] == "percentiles"

    assert run(["percentiles", sample_csv, "--output-format", "delimited"]) == EXIT_OK
    assert capsys.readouterr().out.startswith("reference_set,id,")


def test_config_file_is_overridden_by_flags(sample_csv, tmp_path, capsys):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"method": "a", "output_format": "json"}), encoding="utf-8")

    assert run(["percentiles", sample_csv, "--config", str(config)]) == EXIT_OK
    document = json.loads(capsys.readouterr().out)
    assert document["method"] == "a"

    assert run(["percentiles", sample_csv, "--config", str(config), "--method", "b"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["method"] == "b"


def test_unknown_config_key_is_a_config_error(sample_csv, tmp_path, capsys):
    config = tmp_path / "run.json"
    config.write_text(json.dumps({"estimator": "c"}), encoding="utf-8")

    assert run(["percentiles", sample_csv, "--config", str(config)]) == EXIT_CONFIG_ERROR
    assert "estimator" in capsys.readouterr().err


@pytest.mark.parametrize("argv", [
    ["percentiles", "--method", "z"],
    ["percentiles", "--tie-break", "impact"],
    ["classes", "--scheme", "pr9"],
    ["percentiles"],
])
def test_invalid_settings_exit_with_config_error(sample_csv, capsys, argv):
    if argv != ["percentiles"]:
        argv = argv + [sample_csv]
    assert run(argv) == EXIT_CONFIG_ERROR
    assert capsys.readouterr().err.startswith("Error: ")


def test_bad_input_exits_with_input_error(tmp_path, capsys):
    path = tmp_path / "bad.csv"
    path.write_text("id,citations,field,year,doctype\nw1,-3,CHEM,2005,Article\n", encoding="utf-8")

    assert run(["percentiles", str(path)]) == EXIT_INPUT_ERROR
    err = capsys.readouterr().err
    assert "row 1" in err
    assert "negative citations" in err


def test_missing_covariate_exits_with_input_error(tmp_path, capsys):
    path = tmp_path / "ties.csv"
    path.write_text(
        "id,citations,field,year,doctype,pages\n"
        "w1,4,CHEM,2005,Article,10\n"
        "w2,4,CHEM,2005,Article,\n",
        encoding="utf-8",
    )
    assert run(["percentiles", str(path), "--tie-break", "citations-per-page"]) == EXIT_INPUT_ERROR
    assert "'w2'" in capsys.readouterr().err


def test_classes_crisp_up(sample_csv, capsys):
    assert run(["classes", sample_csv, "--scheme", "pr2-10", "--assign", "crisp-up"]) == EXIT_OK

    frame = _table(capsys.readouterr().out)
    assert list(frame.columns) == ["reference_set", "id", "scheme", "class"]
    assert (frame["class"] == "10%").sum() == 6


def test_classes_fractional_columns(sample_csv, capsys):
    assert run(["classes", sample_csv, "--scheme", "pr2-10", "--assign", "fractional"]) == EXIT_OK

    frame = _table(capsys.readouterr().out)
    assert list(frame.columns) == ["reference_set", "id", "scheme", "<90%", "10%"]
    assert frame["10%"].sum() == pytest.approx(4.1, abs=1e-9)


def test_infeasible_scheme_needs_force(sample_csv, capsys):
    assert run(["classes", sample_csv, "--scheme", "pr6"]) == EXIT_CONFIG_ERROR
    assert "101" in capsys.readouterr().err

    assert run(["classes", sample_csv, "--scheme", "pr6", "--force"]) == EXIT_OK
    assert len(_table(capsys.readouterr().out)) == 41


def test_validate_reports_limits(sample_csv, capsys):
    assert run(["validate", sample_csv, "--scheme", "pr2-10"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "max equal-size classes: 5" in out
    assert "largest tie group: 7" in out
    assert "requested PR(2,10): feasible" in out


def test_validate_infeasible_scheme_exits_three(sample_csv, capsys):
    assert run(["validate", sample_csv, "--scheme", "equal:6", "--output-format", "json"]) == EXIT_INFEASIBLE
    document = json.loads(capsys.readouterr().out)
    report = document["reference_sets"][0]
    assert report["scheme"] == "EQ(6)"
    assert report["feasible"] is False
    assert report["max_equal_classes"] == 5


def test_report_json_has_expected_column(sample_csv, capsys):
    argv = ["report", sample_csv, "--scheme", "pr6", "--force", "--output-format", "json"]
    assert run(argv) == EXIT_OK

    document = json.loads(capsys.readouterr().out)
    shares = document["groups"][0]["shares"]["shares"]
    assert [share["expected"] for share in shares] == [50.0, 25.0, 15.0, 5.0, 4.0, 1.0]
    summary = document["groups"][0]["summary"]
    assert summary["n"] == 41
    assert summary["median"] == 50.0


def test_report_delimited_has_shares_then_summary(sample_csv, capsys):
    assert run(["report", sample_csv, "--assign", "fractional"]) == EXIT_OK

    shares_text, summary_text = capsys.readouterr().out.split("\n\n")
    shares = _table(shares_text)
    assert list(shares["class"]) == ["<90%", "10%"]
    assert shares["observed"].tolist() == pytest.approx([90.0, 10.0])
    assert list(_table(summary_text)["group"]) == ["CHEM/2005/Article"]


def test_report_group_by_attribute(tmp_path, capsys):
    path = tmp_path / "two_sets.csv"
    rows = ["id,citations,field,year,doctype,unit"]
    for index in range(12):
        rows.append(f"a{index},{index},CHEM,2005,Article,{'north' if index % 2 else 'south'}")
        rows.append(f"b{index},{index * 2},PHYS,2006,Article,{'north' if index < 6 else 'south'}")
    path.write_text("\n".join(rows) + "\n", encoding="utf-8")

    argv = ["report", str(path), "--scheme", "pr2-50", "--group-by", "unit", "--inverted", "--output-format", "json"]
    assert run(argv) == EXIT_OK

    document = json.loads(capsys.readouterr().out)
    assert document["inverted"] is True
    assert [group["group"] for group in document["groups"]] == ["north", "south"]
    assert [group["summary"]["n"] for group in document["groups"]] == [12, 12]


def test_output_file_is_written(sample_csv, tmp_path, capsys):
    target = tmp_path / "out" / "scores.csv"
    target.parent.mkdir()

    assert run(["percentiles", sample_csv, "-o", str(target)]) == EXIT_OK
    assert capsys.readouterr().out == ""
    assert len(_table(target.read_text(encoding="utf-8"))) == 41
    assert list(target.parent.iterdir()) == [target]


def test_flag_values_skip_unset_flags():
    args = build_parser().parse_args(["report", "in.csv", "--scheme", "pr6"])
    assert flag_values(args) == {"inputs": ["in.csv"], "scheme": "pr6"}


def test_run_config_precedence():
    config = RunConfig.build({"method": "a", "scheme": "pr6"}, {"output_format": "json", "method": None},
                             {"method": "e"})
    assert config.method == "e"
    assert config.scheme == "pr6"
    assert config.output_format == "json"
    assert config.assign == "crisp-up"


def test_run_config_rejects_bad_values():
    with pytest.raises(ConfigError, match="assign"):
        RunConfig.build(flag_values={"assign": "sideways"})


def _write_table(tmp_path, name, rows):
    path = tmp_path / name
    path.write_text("\n".join(["id,citations,field,year,doctype"] + rows) + "\n", encoding="utf-8")
    return str(path)


def test_empty_input_file_exits_with_input_error(tmp_path, capsys):
    path = tmp_path / "empty.csv"
    path.write_text("", encoding="utf-8")

    assert run(["percentiles", str(path)]) == EXIT_INPUT_ERROR
    assert "no records" in capsys.readouterr().err


def test_single_record_lands_in_upper_half(tmp_path, capsys):
    path = _write_table(tmp_path, "one.csv", ["w1,5,CHEM,2005,Article"])

    assert run(["classes", path, "--scheme", "pr2-50"]) == EXIT_OK
    assert list(_table(capsys.readouterr().out)["class"]) == ["50%+"]


def test_fractional_report_on_small_set_keeps_exact_shares(tmp_path, capsys):
    path = _write_table(tmp_path, "small.csv", [f"p{c},{c},CHEM,2005,Article" for c in range(5)])

    assert run(["report", path, "--scheme", "pr2-10", "--assign", "fractional", "--output-format", "json"]) == EXIT_OK
    shares = json.loads(capsys.readouterr().out)["groups"][0]["shares"]["shares"]
    assert [share["class"] for share in shares] == ["<90%", "10%"]
    assert [share["observed"] for share in shares] == pytest.approx([90.0, 10.0], abs=1e-9)


def test_validate_accepts_pr6_on_101_untied_records(tmp_path, capsys):
    path = _write_table(tmp_path, "large.csv", [f"w{c},{c},CHEM,2005,Article" for c in range(101)])

    assert run(["validate", path, "--scheme", "pr6"]) == EXIT_OK
    assert "requested PR(6): feasible" in capsys.readouterr().out


def test_report_groups_in_lexicographic_order(tmp_path, capsys):
    rows = [f"b{c},{c},PHYS,2006,Article" for c in range(10)] + [f"a{c},{c},CHEM,2005,Article" for c in range(10)]
    path = _write_table(tmp_path, "two_fields.csv", rows)

    assert run(["report", path, "--assign", "fractional", "--output-format", "json"]) == EXIT_OK
    groups = [group["group"] for group in json.loads(capsys.readouterr().out)["groups"]]
    assert groups == ["CHEM/2005/Article", "PHYS/2006/Article"]


def test_help_lists_commands():
    text = build_parser().format_help()
    for name, description in get_command_list():
        assert name in text
        assert description in text
