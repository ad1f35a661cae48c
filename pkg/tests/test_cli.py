"""Tests for the command-line surface."""

import json

import pytest

from scripts.cli import EXIT_FAILED, EXIT_INVALID, EXIT_OK, cli
from services.sym_characters import enumerate_p_prime
from services.verify_suite import CheckJob


def invoke(runner, config_dir, output, *args):
    return runner.invoke(cli, ["--config-dir", str(config_dir), "--output", str(output), *args])


def read_lines(path):
    return path.read_text().splitlines()


@pytest.mark.integration
class TestCommands:
    def test_core(self, runner, config_dir, tmp_path):
        out = tmp_path / "core.jsonl"
        result = invoke(runner, config_dir, out, "core", "--p", "5", "--partition", "8,5,3,3")
        assert result.exit_code == EXIT_OK
        record = json.loads(read_lines(out)[0])
        assert record["core"] == [1, 1, 1, 1]
        assert record["quotient"] == [[], [], [2], [1], []]
        assert record["partition"] == [8, 5, 3, 3]

    def test_enumerate_json(self, runner, config_dir, tmp_path):
        out = tmp_path / "enum.jsonl"
        result = invoke(runner, config_dir, out, "enumerate", "--n", "9", "--p", "3")
        assert result.exit_code == EXIT_OK
        records = [json.loads(line) for line in read_lines(out)]
        assert len(records) == len(enumerate_p_prime(9, 3))
        assert all(int(record["degree"]) % 3 for record in records)

    def test_enumerate_csv(self, runner, config_dir, tmp_path):
        out = tmp_path / "enum.csv"
        result = runner.invoke(cli, ["--config-dir", str(config_dir), "--format", "csv", "--output", str(out),
                                     "enumerate", "--n", "5", "--p", "5"])
        assert result.exit_code == EXIT_OK
        lines = read_lines(out)
        assert lines[0] == "n,p,side,label,degree"
        assert len(lines) == 1 + 5

    def test_normalizer(self, runner, config_dir, tmp_path):
        out = tmp_path / "norm.jsonl"
        result = invoke(runner, config_dir, out, "normalizer", "--n", "7", "--p", "5")
        assert result.exit_code == EXIT_OK
        assert len(read_lines(out)) == len(enumerate_p_prime(7, 5))

    def test_lr(self, runner, config_dir, tmp_path):
        out = tmp_path / "lr.jsonl"
        result = invoke(runner, config_dir, out, "lr", "--outer", "3,2,1", "--inner", "2,1", "--inner", "2,1")
        assert result.exit_code == EXIT_OK
        assert json.loads(read_lines(out)[0])["coefficient"] == 2

    def test_restrict_star(self, runner, config_dir, tmp_path):
        out = tmp_path / "restrict.jsonl"
        result = invoke(runner, config_dir, out, "restrict", "--partition", "4,1", "--p", "5")
        assert result.exit_code == EXIT_OK
        record = json.loads(read_lines(out)[0])
        assert set(record) == {"lambda", "s", "multiplicity", "degree"}
        assert record == {"lambda": [4, 1], "s": "star", "multiplicity": 1, "degree": "4"}

    def test_restrict_with_coordinates(self, runner, config_dir, tmp_path):
        out = tmp_path / "restrict.jsonl"
        result = invoke(runner, config_dir, out, "restrict", "--partition", "5", "--p", "5", "--coords", "0")
        assert result.exit_code == EXIT_OK
        record = json.loads(read_lines(out)[0])
        assert record["s"] == "0"
        assert record["multiplicity"] == 1

    def test_bijection(self, runner, config_dir, tmp_path):
        out = tmp_path / "bijection.jsonl"
        result = invoke(runner, config_dir, out, "bijection", "--n", "5", "--p", "5")
        assert result.exit_code == EXIT_OK
        assert len(read_lines(out)) == 5

    def test_divisibility_relation(self, runner, config_dir, tmp_path):
        out = tmp_path / "relation.jsonl"
        result = invoke(runner, config_dir, out, "relation", "--n", "7", "--p", "3", "--relation", "divisibility")
        assert result.exit_code == EXIT_OK
        assert json.loads(read_lines(out)[0])["exists"] is False

    def test_verify_selected_check(self, runner, config_dir, tmp_path):
        out = tmp_path / "verify.jsonl"
        result = invoke(runner, config_dir, out, "verify", "--n-max", "4", "--primes", "2,3",
                        "--check", "counting", "--no-progress")
        assert result.exit_code == EXIT_OK
        records = [json.loads(line) for line in read_lines(out)]
        assert len(records) == 2 * 12
        assert {record["status"] for record in records} == {"pass"}
        assert all("elapsed" not in record for record in records)


@pytest.mark.integration
class TestExitCodes:
    def test_malformed_partition(self, runner, config_dir, tmp_path):
        result = invoke(runner, config_dir, tmp_path / "x", "core", "--p", "5", "--partition", "3,x")
        assert result.exit_code == EXIT_INVALID

    def test_non_prime(self, runner, config_dir, tmp_path):
        result = invoke(runner, config_dir, tmp_path / "x", "enumerate", "--n", "6", "--p", "4")
        assert result.exit_code == EXIT_INVALID

    def test_csv_on_single_record_command(self, runner, config_dir, tmp_path):
        result = runner.invoke(cli, ["--config-dir", str(config_dir), "--format", "csv",
                                     "core", "--p", "5", "--partition", "4,1"])
        assert result.exit_code == EXIT_INVALID

    def test_missing_settings(self, runner, tmp_path):
        result = runner.invoke(cli, ["--config-dir", str(tmp_path / "nowhere"), "core", "--p", "2", "--partition", "1"])
        assert result.exit_code == EXIT_INVALID

    def test_out_of_range_n_max(self, runner, config_dir, tmp_path):
        result = invoke(runner, config_dir, tmp_path / "x", "verify", "--n-max", "500", "--check", "counting")
        assert result.exit_code == EXIT_INVALID

    def test_failed_bijection_exits_one(self, runner, config_dir, tmp_path, mocker):
        report = mocker.Mock(passed=False, failures=[{"reason": "dominance"}], notes=[])
        mocker.patch("scripts.cli.verify_bijection", return_value=report)
        result = invoke(runner, config_dir, tmp_path / "x", "--no-cache", "bijection", "--n", "5", "--p", "5")
        assert result.exit_code == EXIT_FAILED

    def test_all_skipped_verify_exits_one(self, runner, config_dir, tmp_path, mocker):
        mocker.patch("scripts.cli.default_plan", return_value=[CheckJob.of("composite_gl3", n=4, p=5)])
        out = tmp_path / "verify.jsonl"
        result = invoke(runner, config_dir, out, "--no-cache", "verify", "--no-progress")
        assert result.exit_code == EXIT_FAILED
        assert json.loads(read_lines(out)[0])["status"] == "skipped"


@pytest.mark.integration
class TestCache:
    def test_second_run_is_served_from_cache(self, runner, config_dir, tmp_path, mocker):
        first = tmp_path / "first.jsonl"
        second = tmp_path / "second.jsonl"
        assert invoke(runner, config_dir, first, "enumerate", "--n", "8", "--p", "3").exit_code == EXIT_OK
        compute = mocker.patch("scripts.cli.enumerate_p_prime")
        assert invoke(runner, config_dir, second, "enumerate", "--n", "8", "--p", "3").exit_code == EXIT_OK
        compute.assert_not_called()
        assert first.read_text() == second.read_text()

    def test_no_cache_recomputes(self, runner, config_dir, tmp_path, mocker):
        out = tmp_path / "out.jsonl"
        assert invoke(runner, config_dir, out, "enumerate", "--n", "8", "--p", "3").exit_code == EXIT_OK
        compute = mocker.patch("scripts.cli.enumerate_p_prime", return_value=[(8,)])
        result = runner.invoke(cli, ["--config-dir", str(config_dir), "--no-cache", "--output", str(out),
                                     "enumerate", "--n", "8", "--p", "3"])
        assert result.exit_code == EXIT_OK
        compute.assert_called_once()
        assert len(read_lines(out)) == 1
