from __future__ import annotations

from click.testing import CliRunner

from conftest import FIXTURES_DIR
from tagbrowse.cli import main

FIG1 = str(FIXTURES_DIR / "fig1.json")
BENCH_SMALL = str(FIXTURES_DIR / "bench_small.json")


def test_export_dfa_writes_transition_lines(tmp_path):
    out = tmp_path / "dfa.tsv"
    result = CliRunner().invoke(main, ["export-dfa", "--collection", FIG1, "--out", str(out)])
    assert result.exit_code == 0, result.output
    rows = out.read_text().splitlines()
    assert all(len(line.split("\t")) == 3 for line in rows)
    assert sum(1 for line in rows if line.startswith("s0\t")) == 11


def test_export_tree_after_selections(tmp_path):
    out = tmp_path / "tree.txt"
    result = CliRunner().invoke(
        main,
        ["export-tree", "--collection", FIG1, "--select", "Prehistoric", "--out", str(out)],
    )
    assert result.exit_code == 0, result.output
    text = out.read_text()
    assert text.startswith("root: 6 members [split on Prehistoric]")


def test_bench_with_embedded_workload(tmp_path):
    out = tmp_path / "bench.csv"
    result = CliRunner().invoke(
        main, ["bench", "--collection", BENCH_SMALL, "--out", str(out)]
    )
    assert result.exit_code == 0, result.output
    lines = out.read_text().splitlines()
    assert lines[0] == "op_index,engine,op_kind,cumulative_seconds,n_resources"
    engines = {line.split(",")[1] for line in lines[1:]}
    assert engines == {"automaton", "inverted"}
    # 75 inserts per engine plus browse/reconfig rounds
    assert len(lines) > 150


def test_bench_flag_overrides_and_validation(tmp_path):
    out = tmp_path / "bench.csv"
    result = CliRunner().invoke(
        main,
        [
            "bench",
            "--collection", BENCH_SMALL,
            "--round-size", "50",
            "--browse-factor", "0.2",
            "--seed", "3",
            "--validate",
            "--out", str(out),
        ],
    )
    assert result.exit_code == 0, result.output
    assert "lockstep validation passed" in result.output


def test_bench_synthetic_single_engine(tmp_path):
    out = tmp_path / "synth.csv"
    result = CliRunner().invoke(
        main,
        [
            "bench",
            "--synthetic", "40",
            "--vocab", "12",
            "--categories", "3",
            "--engine", "automaton",
            "--out", str(out),
        ],
    )
    assert result.exit_code == 0, result.output
    engines = {line.split(",")[1] for line in out.read_text().splitlines()[1:]}
    assert engines == {"automaton"}


def test_bench_requires_a_source():
    result = CliRunner().invoke(main, ["bench"])
    assert result.exit_code != 0
    assert "provide --collection or --synthetic" in result.output
