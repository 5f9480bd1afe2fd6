"""End-to-end CLI coverage: commands, pipelines, formats, exit codes."""

import csv
import io
import json

import pytest
from click.testing import CliRunner

from sudogen import (
    SigmaMatrix,
    format_pi,
    format_sigma,
    format_sudoku,
    is_permutation,
    is_pi,
    is_sigma,
    is_sudoku,
    iter_sudoku,
    parse_binary_matrix,
    parse_cells,
    parse_perm,
    parse_pi,
    phi,
)
from sudogen.cli import main

EXAMPLE = [[1, 2, 3, 4], [3, 4, 1, 2], [2, 1, 4, 3], [4, 3, 2, 1]]

runner = CliRunner()


def run(*args, input=None):
    return runner.invoke(main, list(args), input=input)


def ok(*args, input=None):
    result = run(*args, input=input)
    assert result.exit_code == 0, result.stdout + result.stderr
    return result


class TestGenPerm:
    def test_text_output(self):
        result = ok("gen-perm", "--n", "5", "--seed", "42")
        values = parse_perm(result.stdout)
        assert is_permutation(values) and len(values) == 5
        assert "seed: 42" in result.stderr

    def test_deterministic(self):
        a = ok("gen-perm", "--n", "8", "--seed", "9")
        b = ok("gen-perm", "--n", "8", "--seed", "9")
        assert a.stdout == b.stdout

    def test_seeds_differ(self):
        a = ok("gen-perm", "--n", "8", "--seed", "1")
        b = ok("gen-perm", "--n", "8", "--seed", "2")
        assert a.stdout != b.stdout

    def test_entropy_seed_is_reported_and_replayable(self):
        first = ok("gen-perm", "--n", "6")
        seed_line = [l for l in first.stderr.splitlines() if l.startswith("seed: ")]
        assert len(seed_line) == 1
        seed = seed_line[0].split()[1]
        replay = ok("gen-perm", "--n", "6", "--seed", seed)
        assert replay.stdout == first.stdout

    def test_json_output(self):
        result = ok("gen-perm", "--n", "4", "--seed", "7", "--format", "json")
        payload = json.loads(result.stdout)
        assert payload["n"] == 4
        assert payload["seed"] == 7
        assert is_permutation(payload["values"])

    def test_rejection_reports_iterations(self):
        text = ok("gen-perm", "--n", "3", "--seed", "1", "--algorithm", "rejection")
        assert any(l.startswith("iterations: ") for l in text.stderr.splitlines())
        as_json = ok(
            "gen-perm", "--n", "3", "--seed", "1",
            "--algorithm", "rejection", "--format", "json",
        )
        payload = json.loads(as_json.stdout)
        assert payload["iterations"] >= 1

    def test_swap_variant_differs(self):
        shift = ok("gen-perm", "--n", "6", "--seed", "3", "--variant", "shift")
        swap = ok("gen-perm", "--n", "6", "--seed", "3", "--variant", "swap")
        assert is_permutation(parse_perm(swap.stdout))
        assert shift.stdout != swap.stdout

    def test_usage_errors(self):
        assert run("gen-perm").exit_code == 2  # missing --n
        assert run("gen-perm", "--n", "0").exit_code == 2
        assert run("gen-perm", "--n", "3", "--seed", "-1").exit_code == 2
        assert run("gen-perm", "--n", "3", "--algorithm", "magic").exit_code == 2

    def test_rejection_budget_exhausted(self):
        result = run(
            "gen-perm", "--n", "12", "--seed", "0",
            "--algorithm", "rejection", "--max-iterations", "1",
        )
        assert result.exit_code == 3
        assert "error:" in result.stderr


class TestGenPi:
    def test_text_output(self):
        result = ok("gen-pi", "--n", "3", "--seed", "5")
        rows = parse_pi(result.stdout)
        assert is_pi(rows)
        assert len(rows) == 6

    def test_json_round_trip(self):
        result = ok("gen-pi", "--n", "2", "--seed", "5", "--format", "json")
        payload = json.loads(result.stdout)
        assert payload["n"] == 2
        assert is_pi(payload["rows"])

    def test_rejection_algorithm(self):
        result = ok("gen-pi", "--n", "2", "--seed", "5", "--algorithm", "rejection")
        assert is_pi(parse_pi(result.stdout))


class TestGenSigma:
    def test_direct(self):
        result = ok("gen-sigma", "--n", "2", "--seed", "8")
        rows = parse_binary_matrix(result.stdout)
        assert is_sigma(rows)

    def test_json_ones(self):
        result = ok("gen-sigma", "--n", "2", "--seed", "8", "--format", "json")
        payload = json.loads(result.stdout)
        assert len(payload["ones"]) == 4
        assert payload["seed"] == 8

    def test_rejection_small_order(self):
        result = ok("gen-sigma", "--n", "1", "--seed", "8", "--algorithm", "rejection")
        assert parse_binary_matrix(result.stdout) == [[1]]

    def test_rejection_refused_large_order(self):
        result = run("gen-sigma", "--n", "3", "--seed", "8", "--algorithm", "rejection")
        assert result.exit_code == 3


class TestGenSudoku:
    def test_layered_text(self):
        result = ok("gen-sudoku", "--n", "2", "--seed", "21")
        assert is_sudoku(parse_cells(result.stdout))

    def test_deterministic(self):
        a = ok("gen-sudoku", "--n", "2", "--seed", "4")
        b = ok("gen-sudoku", "--n", "2", "--seed", "4")
        assert a.stdout == b.stdout

    def test_pretty_reparses_identically(self):
        plain = ok("gen-sudoku", "--n", "2", "--seed", "4")
        pretty = ok("gen-sudoku", "--n", "2", "--seed", "4", "--pretty")
        assert parse_cells(pretty.stdout) == parse_cells(plain.stdout)
        assert "" in pretty.stdout.splitlines()  # block separator present

    def test_stats_in_json_payload(self):
        result = ok(
            "gen-sudoku", "--n", "2", "--seed", "4", "--stats", "--format", "json"
        )
        payload = json.loads(result.stdout)
        stats = payload["stats"]
        assert stats["schema_version"] == 1
        assert stats["n"] == 2
        assert stats["seed"] == 4
        assert stats["candidates"] >= 4

    def test_stats_on_stderr_in_text_mode(self):
        result = ok("gen-sudoku", "--n", "2", "--seed", "4", "--stats")
        assert '"schema_version": 1' in result.stderr

    def test_rejection_algorithm(self):
        result = ok(
            "gen-sudoku", "--n", "2", "--seed", "3",
            "--algorithm", "rejection", "--stats", "--format", "json",
        )
        payload = json.loads(result.stdout)
        assert is_sudoku(payload["cells"])
        assert payload["stats"]["iterations"] >= 1

    def test_rejection_refused_large_order(self):
        result = run("gen-sudoku", "--n", "3", "--algorithm", "rejection")
        assert result.exit_code == 3
        assert "error:" in result.stderr

    def test_rejection_budget_exhausted(self):
        result = run(
            "gen-sudoku", "--n", "2", "--seed", "0",
            "--algorithm", "rejection", "--max-iterations", "1",
        )
        assert result.exit_code == 3

    def test_layered_restarts_exhausted(self):
        result = run(
            "gen-sudoku", "--n", "2", "--seed", "0",
            "--restart-budget", "1", "--max-restarts", "0",
        )
        assert result.exit_code == 3

    def test_parallel_deterministic(self):
        a = ok("gen-sudoku", "--n", "2", "--seed", "5", "--parallel", "2")
        b = ok("gen-sudoku", "--n", "2", "--seed", "5", "--parallel", "2")
        assert a.stdout == b.stdout
        assert is_sudoku(parse_cells(a.stdout))

    def test_parallel_stats_name_the_winner(self):
        result = ok(
            "gen-sudoku", "--n", "2", "--seed", "5", "--parallel", "2",
            "--stats", "--format", "json",
        )
        stats = json.loads(result.stdout)["stats"]
        assert stats["root_seed"] == 5
        assert stats["attempt_index"] in (0, 1)


class TestCheck:
    def test_valid_perm(self):
        result = run("check", "--kind", "perm", input="3,1,2\n")
        assert result.exit_code == 0
        assert result.stdout.strip() == "valid"

    def test_invalid_perm(self):
        result = run("check", "--kind", "perm", input="1,1,3\n")
        assert result.exit_code == 1
        assert result.stdout.strip() == "invalid"

    def test_out_of_range_gives_reason(self):
        result = run("check", "--kind", "perm", input="1,2,4\n")
        assert result.exit_code == 1
        assert result.stdout.strip() == "invalid"
        assert "reason:" in result.stderr

    def test_malformed_is_a_parse_error(self):
        result = run("check", "--kind", "perm", input="1,x,3\n")
        assert result.exit_code == 2
        assert "error:" in result.stderr

    def test_valid_pi(self):
        text = format_pi([[1, 2], [2, 1], [1, 2], [2, 1]])
        assert run("check", "--kind", "pi", input=text).exit_code == 0

    def test_invalid_pi(self):
        text = format_pi([[1, 1], [2, 1], [1, 2], [2, 1]])
        assert run("check", "--kind", "pi", input=text).exit_code == 1

    def test_valid_sigma(self):
        text = format_sigma(phi([[1, 2], [1, 2], [1, 2], [1, 2]]))
        assert run("check", "--kind", "sigma", input=text).exit_code == 0

    def test_invalid_sigma(self):
        identity = "\n".join(
            " ".join("1" if i == j else "0" for j in range(4)) for i in range(4)
        )
        assert run("check", "--kind", "sigma", input=identity).exit_code == 1

    def test_valid_sudoku(self):
        assert (
            run("check", "--kind", "sudoku", input=format_sudoku(EXAMPLE)).exit_code
            == 0
        )

    def test_invalid_sudoku(self):
        latin = "1 2 3 4\n2 3 4 1\n3 4 1 2\n4 1 2 3\n"
        assert run("check", "--kind", "sudoku", input=latin).exit_code == 1


class TestEnumerate:
    def test_count(self):
        assert ok("enumerate", "--n", "2").stdout.strip() == "288"
        assert ok("enumerate", "--n", "1").stdout.strip() == "1"

    def test_list_streams_every_matrix(self):
        result = ok("enumerate", "--n", "2", "--list")
        lines = [l for l in result.stdout.splitlines() if l.strip()]
        assert len(lines) == 288 * 4
        grids = [
            [[int(v) for v in line.split()] for line in lines[i : i + 4]]
            for i in range(0, len(lines), 4)
        ]
        assert grids[0] == next(iter_sudoku(2))
        assert all(is_sudoku(g) for g in grids[:10])

    def test_large_order_refused(self):
        assert run("enumerate", "--n", "3").exit_code == 3


class TestMapAndLayers:
    def test_phi_matches_library(self):
        rows = [[1, 2], [1, 2], [2, 1], [2, 1]]
        result = ok("map", "--phi", input=format_pi(rows))
        assert result.stdout.strip() == format_sigma(phi(rows))

    def test_phi_then_inverse_is_identity(self):
        pi_text = ok("gen-pi", "--n", "3", "--seed", "17").stdout
        sigma_text = ok("map", "--phi", input=pi_text).stdout
        back = ok("map", "--phi-inverse", input=sigma_text).stdout
        assert back.strip() == pi_text.strip()

    def test_direction_required(self):
        assert run("map", input="1\n").exit_code == 2

    def test_phi_rejects_invalid_pi(self):
        assert run("map", "--phi", input="1,1\n1,2\n1,2\n2,1\n").exit_code == 1

    def test_phi_inverse_rejects_non_block_matrix(self):
        identity = "\n".join(
            " ".join("1" if i == j else "0" for j in range(4)) for i in range(4)
        )
        assert run("map", "--phi-inverse", input=identity).exit_code == 1

    def test_decompose_compose_round_trip(self):
        grid = ok("gen-sudoku", "--n", "2", "--seed", "33").stdout
        layers = ok("decompose", input=grid).stdout
        rebuilt = ok("compose", input=layers).stdout
        assert rebuilt.strip() == grid.strip()

    def test_decompose_rejects_invalid(self):
        latin = "1 2 3 4\n2 3 4 1\n3 4 1 2\n4 1 2 3\n"
        assert run("decompose", input=latin).exit_code == 1

    def test_compose_rejects_overlap(self):
        layer = format_sigma(phi([[1, 2], [1, 2], [1, 2], [1, 2]]))
        text = "\n\n".join([layer] * 4)
        result = run("compose", input=text)
        assert result.exit_code == 1
        assert "error:" in result.stderr

    def test_compose_rejects_wrong_layer_count(self):
        layer = format_sigma(phi([[1, 2], [1, 2], [1, 2], [1, 2]]))
        assert run("compose", input=layer).exit_code == 1


class TestEstimate:
    def test_text_output(self):
        result = ok(
            "estimate", "--generator", "perm-rejection",
            "--n", "2", "--samples", "1000", "--seed", "3",
        )
        assert "empirical" in result.stdout
        assert "theoretical" in result.stdout
        assert "(1/2)" in result.stdout

    def test_json_output(self):
        result = ok(
            "estimate", "--generator", "perm-rejection",
            "--n", "2", "--samples", "1000", "--seed", "3", "--format", "json",
        )
        payload = json.loads(result.stdout)
        assert payload["theoretical_acceptance"] == {
            "numerator": "1",
            "denominator": "2",
            "float": 0.5,
        }
        assert 0 <= payload["successes"] <= 1000

    def test_csv_matches_json(self):
        common = [
            "--generator", "perm-rejection",
            "--n", "2", "--samples", "1000", "--seed", "3",
        ]
        payload = json.loads(ok("estimate", *common, "--format", "json").stdout)
        rows = list(csv.DictReader(io.StringIO(ok("estimate", *common, "--format", "csv").stdout)))
        assert len(rows) == 1
        assert int(rows[0]["successes"]) == payload["successes"]
        assert float(rows[0]["theoretical_p"]) == 0.5

    def test_deterministic(self):
        args = (
            "estimate", "--generator", "pi-rejection",
            "--n", "2", "--samples", "500", "--seed", "12", "--format", "json",
        )
        assert (
            json.loads(ok(*args).stdout)["successes"]
            == json.loads(ok(*args).stdout)["successes"]
        )

    def test_too_few_samples_is_usage_error(self):
        result = run(
            "estimate", "--generator", "perm-rejection",
            "--n", "2", "--samples", "50",
        )
        assert result.exit_code == 2

    def test_infeasible_combination(self):
        result = run(
            "estimate", "--generator", "sigma-rejection", "--n", "3",
            "--samples", "1000",
        )
        assert result.exit_code == 3

    def test_unknown_generator(self):
        assert run("estimate", "--generator", "magic", "--n", "2").exit_code == 2


class TestBench:
    def test_text_output(self):
        result = ok(
            "bench", "--generator", "perm-direct",
            "--sizes", "8,16", "--repetitions", "3", "--seed", "1",
        )
        assert "slope:" in result.stdout
        assert "median_s" in result.stdout

    def test_json_output(self):
        result = ok(
            "bench", "--generator", "perm-check",
            "--sizes", "16,32,64", "--repetitions", "3", "--seed", "1",
            "--format", "json",
        )
        payload = json.loads(result.stdout)
        assert [p["n"] for p in payload["points"]] == [16, 32, 64]
        assert payload["slope"] is not None
        assert payload["slope_ci95"] is not None

    def test_csv_output(self):
        result = ok(
            "bench", "--generator", "perm-direct",
            "--sizes", "8,16", "--repetitions", "2", "--seed", "1",
            "--format", "csv",
        )
        rows = list(csv.DictReader(io.StringIO(result.stdout)))
        assert [r["n"] for r in rows] == ["8", "16"]
        assert all(float(r["median_s"]) > 0 for r in rows)

    def test_bad_sizes(self):
        assert run("bench", "--generator", "perm-direct", "--sizes", "x").exit_code == 2
        assert run("bench", "--generator", "perm-direct", "--sizes", "0").exit_code == 2
        assert run("bench", "--generator", "perm-direct", "--sizes", "").exit_code == 2

    def test_unknown_generator(self):
        assert run("bench", "--generator", "magic", "--sizes", "8").exit_code == 2


class TestPipelinesViaShell:
    """In-process equivalents of documented shell pipelines."""

    def test_gen_pi_map_phi_check_sigma(self):
        pi_text = ok("gen-pi", "--n", "2", "--seed", "77").stdout
        sigma_text = ok("map", "--phi", input=pi_text).stdout
        verdict = run("check", "--kind", "sigma", input=sigma_text)
        assert verdict.exit_code == 0

    def test_gen_sudoku_check(self):
        grid = ok("gen-sudoku", "--n", "3", "--seed", "1").stdout
        assert run("check", "--kind", "sudoku", input=grid).exit_code == 0

    def test_pretty_output_feeds_check(self):
        grid = ok("gen-sudoku", "--n", "2", "--seed", "2", "--pretty").stdout
        assert run("check", "--kind", "sudoku", input=grid).exit_code == 0
