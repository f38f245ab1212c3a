import os
from pathlib import Path

import pytest

from risfading import cli, codecs
from risfading.config.runconfig import RunConfig
from risfading.types import OutputFormat

from .golden import check_golden

DATA = Path(__file__).parent.joinpath("data")


def test_simulate_preset(tmp_path, capsys):
    out = tmp_path.joinpath("results")
    assert cli.main(["simulate", "--preset", "fig5", "--out", str(out), "--format", "csv,svg"]) == 0
    printed = capsys.readouterr().out.split()
    assert printed == [str(out.joinpath("fig5.csv")), str(out.joinpath("fig5.svg"))]
    lines = out.joinpath("fig5.csv").read_text().splitlines()
    assert len(lines) == 14
    assert lines[0] == "d2_m,ris0_dbm,ris1_dbm"
    assert out.joinpath("fig5.svg").read_bytes().startswith(b"<?xml")


def test_simulate_deterministic(tmp_path):
    for name in ("a", "b"):
        args = ["simulate", "--preset", "fig5", "--seed", "42", "--out", str(tmp_path.joinpath(name))]
        args += ["--strategy", "ris0,ris3-random", "--iterations", "100"]
        assert cli.main(args) == 0
    a = tmp_path.joinpath("a", "fig5.csv").read_bytes()
    assert a == tmp_path.joinpath("b", "fig5.csv").read_bytes()
    assert a.splitlines()[0] == b"d2_m,ris0_dbm,ris3_random_dbm"


def test_simulate_fig3a_twice(tmp_path):
    runs = []
    for name in ("a", "b"):
        out = tmp_path.joinpath(name)
        args = ["simulate", "--preset", "fig3a", "--seed", "42", "--out", str(out), "--workers", "4"]
        assert cli.main(args) == 0
        runs.append(out.joinpath("fig3a.csv").read_bytes())
    assert runs[0] == runs[1]
    lines = runs[0].splitlines()
    assert len(lines) == 201
    assert lines[0] == b"d2_m,ris0_dbm,ris1_dbm,ris2_analytic_dbm,ris3_random_dbm,ris4_dbm"
    check_golden("fig3a.csv", runs[0])


def test_vote_flag():
    parser = cli.build_parser()
    plain = cli._load(parser.parse_args(["simulate", "--preset", "fig3a"]))
    voted = cli._load(parser.parse_args(["simulate", "--preset", "fig3a", "--vote"]))
    assert plain.to_sweep_spec().params.vote is False
    assert voted.to_sweep_spec().params.vote is True


def test_simulate_workers_do_not_change_output(tmp_path):
    for name, workers in (("serial", "1"), ("parallel", "3")):
        args = ["simulate", "--preset", "fig5", "--out", str(tmp_path.joinpath(name))]
        assert cli.main(args + ["--workers", workers]) == 0
    assert (
        tmp_path.joinpath("serial", "fig5.csv").read_bytes()
        == tmp_path.joinpath("parallel", "fig5.csv").read_bytes()
    )


def test_simulate_config_with_overrides(tmp_path, capsys):
    out = tmp_path.joinpath("o")
    args = ["simulate", "--config", str(DATA.joinpath("small.yaml")), "--out", str(out)]
    args += ["--strategy", "ris3-greedy", "--format", "csv", "--calibration-offset", "-3"]
    assert cli.main(args) == 0
    assert os.listdir(out) == ["small.csv"]
    lines = out.joinpath("small.csv").read_text().splitlines()
    assert lines[0] == "d2_m,ris3_greedy_dbm"
    assert len(lines) == 6


def test_calibration_offset_shifts_output(tmp_path):
    base = ["simulate", "--preset", "fig5", "--strategy", "ris1"]
    assert cli.main(base + ["--out", str(tmp_path.joinpath("a"))]) == 0
    assert cli.main(base + ["--out", str(tmp_path.joinpath("b")), "--calibration-offset", "-10"]) == 0

    def values(name):
        lines = tmp_path.joinpath(name, "fig5.csv").read_text().splitlines()[1:]
        return [float(line.split(",")[1]) for line in lines]

    for a, b in zip(values("a"), values("b")):
        assert b == pytest.approx(a - 10, abs=1e-3)


def test_validate(capsys):
    assert cli.main(["validate", "--config", str(DATA.joinpath("fig5.yaml"))]) == 0
    printed = capsys.readouterr().out
    assert codecs.load_config(printed) == RunConfig.from_file(DATA.joinpath("fig5.yaml"))


def test_oracle(capsys):
    assert cli.main(["oracle", "--grid", "2x2", "--seed", "7"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split() == ["strategy", "dbm", "gap_db", "evaluations"]
    table = {line.split()[0]: line.split()[1:] for line in lines[1:]}
    assert list(table) == ["ris1", "ris3-random", "ris3-greedy", "exhaustive-binary"]
    assert float(table["exhaustive-binary"][1]) == 0.0
    assert float(table["ris3-random"][1]) == 0.0
    assert float(table["ris1"][1]) >= 0.0
    assert table["exhaustive-binary"][2] == "16"
    assert table["ris3-random"][2] == "502"


@pytest.mark.parametrize(
    "args",
    [
        ["validate", "--config", str(DATA.joinpath("bad_angle.yaml"))],
        ["simulate", "--config", str(DATA.joinpath("bad_angle.yaml"))],
        ["simulate", "--config", str(DATA.joinpath("missing.yaml"))],
        ["simulate", "--preset", "fig5", "--strategy", "ris9"],
        ["simulate", "--preset", "fig5", "--format", "png"],
        ["simulate", "--preset", "fig5", "--iterations", "0"],
        ["simulate", "--preset", "fig5", "--seed", "-1"],
        ["oracle", "--seed", "-1"],
        ["oracle", "--grid", "two-by-two"],
        ["oracle", "--grid", "0x2"],
    ],
)
def test_config_errors_exit_2(args, tmp_path, capsys):
    assert cli.main(args + (["--out", str(tmp_path)] if args[0] == "simulate" else [])) == 2
    assert capsys.readouterr().err.startswith("error: ")
    assert os.listdir(tmp_path) == []


def test_config_error_names_key(capsys):
    assert cli.main(["validate", "--config", str(DATA.joinpath("bad_angle.yaml"))]) == 2
    assert "geometry.theta_t_deg" in capsys.readouterr().err


def test_oracle_too_large(capsys):
    assert cli.main(["oracle", "--grid", "5x5"]) == 1
    assert "25" in capsys.readouterr().err


def test_failed_run_leaves_no_outputs(tmp_path):
    out = tmp_path.joinpath("o")
    args = ["simulate", "--config", str(DATA.joinpath("oversized_oracle.yaml")), "--out", str(out)]
    assert cli.main(args) == 1
    assert not out.exists()


def test_failed_emit_removes_written_files(tmp_path, monkeypatch):
    def broken(result, destination):
        raise OSError("disk full")

    monkeypatch.setitem(cli.EMITTERS, OutputFormat.SVG, broken)
    out = tmp_path.joinpath("o")
    args = ["simulate", "--preset", "fig5", "--out", str(out), "--format", "csv,svg"]
    assert cli.main(args) == 1
    assert os.listdir(out) == []


def test_command_required():
    with pytest.raises(SystemExit) as exc:
        cli.main([])
    assert exc.value.code == 2


def test_help_shows_builtin_defaults_once(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["simulate", "--help"])
    assert exc.value.code == 0
    text = capsys.readouterr().out
    assert "(built-in: 42)" in text
    assert "(default: None)" not in text

    with pytest.raises(SystemExit):
        cli.main(["oracle", "--help"])
    assert "random search seed (default: 0)" in capsys.readouterr().out
