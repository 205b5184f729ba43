"""Console frontend tests: flags, exit codes, rendering, reproducibility."""

from __future__ import annotations

import subprocess
import sys

import pytest

from simplexity.cli import ExitStatus, main

TINY = ["--rows", "1", "--cols", "2", "--win", "3", "--squares", "1", "--rounds", "0"]


def run_cli(args: list[str]) -> int:
    try:
        return main(args)
    except SystemExit as exc:
        return int(exc.code)


def run_process(args: list[str], stdin: str | None = None) -> subprocess.CompletedProcess:
    return subprocess.run(
        [sys.executable, "-m", "simplexity.cli", *args],
        capture_output=True,
        text=True,
        input=stdin,
        timeout=120,
    )


class TestExitCodes:
    def test_white_win_exits_zero(self, capsys):
        code = run_cli(["match", "--white", "minimax", "--white-params", "depth=2",
                        "--red", "sequential", "--time-limit-ms", "500", "--render", "quiet"])
        assert code == ExitStatus.WHITE_WIN == 0
        assert "winner=White" in capsys.readouterr().out

    def test_red_win_exits_one(self, capsys):
        code = run_cli(["match", "--white", "sequential", "--red", "minimax",
                        "--red-params", "depth=2", "--time-limit-ms", "500", "--render", "quiet"])
        assert code == ExitStatus.RED_WIN == 1
        assert "winner=Red" in capsys.readouterr().out

    def test_draw_exits_two(self, capsys):
        code = run_cli(["match", "--white", "sequential", "--red", "sequential", *TINY, "--render", "quiet"])
        assert code == ExitStatus.DRAW == 2
        assert "winner=Draw reason=Draw moves=2" in capsys.readouterr().out

    def test_unknown_agent_exits_three(self, capsys):
        code = run_cli(["match", "--white", "nosuch", "--red", "random", "--render", "quiet"])
        assert code == ExitStatus.USAGE_ERROR == 3
        assert "available" in capsys.readouterr().err

    def test_bad_agent_params_exit_three(self):
        code = run_cli(["match", "--white", "minimax", "--white-params", "depth=banana",
                        "--red", "random", "--render", "quiet"])
        assert code == 3

    def test_bad_board_params_exit_three(self, capsys):
        code = run_cli(["match", "--white", "random", "--red", "random", "--rows", "0", "--render", "quiet"])
        assert code == 3
        assert "rows" in capsys.readouterr().err

    def test_usage_error_exits_three(self):
        assert run_cli(["match", "--white", "random"]) == 3  # missing --red
        assert run_cli(["nosuchcommand"]) == 3

    def test_harness_failure_exits_four(self, monkeypatch, capsys):
        from simplexity import cli
        from simplexity.match import HarnessError

        def boom(*args, **kwargs):
            raise HarnessError("wedged")

        monkeypatch.setattr(cli, "run_match", boom)
        code = run_cli(["match", "--white", "random", "--red", "sequential", "--render", "quiet"])
        assert code == ExitStatus.INTERNAL_ERROR == 4
        assert "internal error" in capsys.readouterr().err


class TestAsciiRenderer:
    def test_full_expected_output_for_tiny_draw(self, capsys):
        code = run_cli(["match", "--white", "sequential", "--red", "sequential", *TINY, "--render", "ascii"])
        assert code == 2
        expected = "\n".join(
            [
                "Sequential (White) vs Sequential (Red)",
                "01",
                "..",
                "01",
                "1. White 0s -> row 0",
                "01",
                "W.",
                "01",
                "2. Red 1s -> row 0",
                "01",
                "WR",
                "01",
                "winner=Draw reason=Draw moves=2",
                "",
            ]
        )
        assert capsys.readouterr().out == expected

    def test_quiet_result_line_matches_ascii(self, capsys):
        args = ["match", "--white", "random", "--white-params", "seed=4", "--red", "sequential"]
        run_cli([*args, "--render", "ascii"])
        ascii_last = capsys.readouterr().out.strip().splitlines()[-1]
        run_cli([*args, "--render", "quiet"])
        quiet_out = capsys.readouterr().out.strip()
        assert quiet_out == ascii_last
        assert quiet_out.startswith("winner=")


class TestSession:
    CONFIG = "sequential\nrandom seed=1\nminimax depth=2\n"

    def test_session_prints_records_then_table(self, tmp_path, capsys):
        config = tmp_path / "entrants.txt"
        config.write_text(self.CONFIG)
        code = run_cli(["session", str(config), "--time-limit-ms", "500"])
        assert code == 0
        out = capsys.readouterr().out.splitlines()
        records = [line for line in out if line.startswith("{")]
        assert len(records) == 6
        import json

        for line in records:
            record = json.loads(line)
            assert set(record) == {"white", "red", "winner", "reason", "moves"}
        table = [line for line in out if not line.startswith("{")]
        assert table[0].split() == ["#", "Name", "Pts", "W", "D", "L", "P"]
        assert len(table) == 4  # header + three entrants

    def test_empty_config_exits_three(self, tmp_path, capsys):
        config = tmp_path / "empty.txt"
        config.write_text("# nobody\n")
        assert run_cli(["session", str(config)]) == 3
        assert "at least 2" in capsys.readouterr().err

    def test_unknown_entrant_names_line(self, tmp_path, capsys):
        config = tmp_path / "bad.txt"
        config.write_text("sequential\nwho dares\n")
        assert run_cli(["session", str(config)]) == 3
        assert "line 2" in capsys.readouterr().err

    def test_missing_file_exits_three(self):
        assert run_cli(["session", "/nonexistent/config.txt"]) == 3

    def test_failing_entrant_forfeits_but_session_completes(self, tmp_path, capsys):
        config = tmp_path / "forfeit.txt"
        config.write_text("sequential\nrandom seed=1\nminimax depth=banana\n")
        code = run_cli(["session", str(config), "--time-limit-ms", "300"])
        assert code == 0
        out = capsys.readouterr().out
        assert "OpponentSetupFailure" in out


class TestSolve:
    def test_tiny_draw(self, capsys):
        assert run_cli(["solve", *TINY]) == 0
        assert capsys.readouterr().out.startswith("Draw 2")

    def test_degenerate_white_win(self, capsys):
        assert run_cli(["solve", "--rows", "1", "--cols", "1", "--win", "1"]) == 0
        assert capsys.readouterr().out.strip() == "WhiteWins 1 0r"

    def test_defaults_refused(self, capsys):
        assert run_cli(["solve"]) == 3
        assert "instance too large" in capsys.readouterr().err

    def test_raised_budget_allows_three_by_three(self, capsys):
        code = run_cli(["solve", "--rows", "3", "--cols", "3", "--win", "3",
                        "--squares", "3", "--rounds", "2"])
        assert code == 0
        out = capsys.readouterr().out
        assert out.startswith("RedWins 8")


class TestSubprocessContracts:
    def test_reproducible_transcripts_across_runs(self):
        args = ["match", "--white", "random", "--white-params", "seed=12",
                "--red", "sequential", "--render", "ascii"]
        runs = [run_process(args) for _ in range(3)]
        assert len({run.stdout for run in runs}) == 1
        assert len({run.returncode for run in runs}) == 1
        assert runs[0].returncode in (0, 1, 2)

    def test_human_seat_reads_move_notation(self):
        result = run_process(
            ["match", "--white", "human", "--red", "sequential", *TINY, "--render", "quiet"],
            stdin="0s\n",
        )
        assert "column shape>" in result.stdout
        assert result.returncode == 2  # both squares placed, draw

    def test_installed_script_matches_module_entry(self):
        script = subprocess.run(
            ["simplexity", "solve", *TINY], capture_output=True, text=True, timeout=60
        )
        module = run_process(["solve", *TINY])
        assert script.stdout == module.stdout
        assert script.returncode == module.returncode
