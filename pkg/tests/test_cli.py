import json
from fractions import Fraction

import pytest
from click.testing import CliRunner

from fairshare import (
    MatrixDocument,
    align_matrix_labels,
    parse_game,
    parse_matrix,
    scaled_rho_shapley,
    serialize_game,
    serialize_matrix,
    solve,
)
from fairshare.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


@pytest.fixture()
def c3_path(tmp_path, runner):
    path = tmp_path / "c3.json"
    result = runner.invoke(main, ["gen", "--family", "counterexample3", "-o", str(path)])
    assert result.exit_code == 0, result.output
    return path


@pytest.fixture()
def ex1_path(tmp_path, runner):
    path = tmp_path / "ex1.json"
    result = runner.invoke(main, ["gen", "--family", "example1", "-o", str(path)])
    assert result.exit_code == 0, result.output
    return path


class TestGen:
    def test_families_round_trip_through_files(self, runner, tmp_path):
        cases = [
            ["--family", "additive", "--weights", "1,2,3"],
            ["--family", "coverage", "--sets", "a,b;b,c", "--element-weights",
             "a=1,b=2,c=3"],
            ["--family", "example1"],
            ["--family", "counterexample3"],
            ["--family", "random-monotone", "--players", "4", "--seed", "7"],
            ["--family", "random-monotone", "--players", "3", "--seed", "1",
             "--max-increment", "5/2"],
        ]
        for extra in cases:
            result = runner.invoke(main, ["gen", *extra])
            assert result.exit_code == 0, (extra, result.output)
            doc = parse_game(result.output)
            assert doc.game.n_players >= 2

    def test_gen_is_byte_stable(self, runner):
        args = ["gen", "--family", "random-monotone", "--players", "5", "--seed", "3"]
        first = runner.invoke(main, args)
        second = runner.invoke(main, args)
        assert first.output == second.output
        different = runner.invoke(main, ["gen", "--family", "random-monotone",
                                         "--players", "5", "--seed", "4"])
        assert different.output != first.output

    def test_gen_output_is_canonical(self, runner, ex1_path):
        text = ex1_path.read_text()
        assert serialize_game(parse_game(text)) == text

    def test_missing_family_params_exit_1(self, runner):
        for args in (
            ["gen", "--family", "additive"],
            ["gen", "--family", "coverage", "--sets", "a;b"],
            ["gen", "--family", "random-monotone"],
            ["gen", "--family", "bogus"],
            ["gen", "--family", "additive", "--weights", "1,x"],
        ):
            result = runner.invoke(main, args)
            assert result.exit_code == 1, args
            assert "error:" in result.stderr


class TestSolve:
    def test_json_output_matches_library_exactly(self, runner, ex1_path):
        result = runner.invoke(main, ["solve", str(ex1_path), "--format", "json"])
        assert result.exit_code == 0
        doc = parse_game(ex1_path.read_text())
        expected_matrix, expected_efficient = solve(doc.game)
        parsed = parse_matrix(result.output)
        assert parsed.matrix == expected_matrix
        assert parsed.efficient_player == expected_efficient

    def test_table_output_shows_efficient_players(self, runner, c3_path):
        result = runner.invoke(main, ["solve", str(c3_path)])
        assert result.exit_code == 0
        assert "efficient player per coalition:" in result.output
        assert "{1,2,3} -> 3" in result.output

    def test_write_to_file(self, runner, c3_path, tmp_path):
        out = tmp_path / "rewards.csv"
        result = runner.invoke(main, ["solve", str(c3_path), "-o", str(out)])
        assert result.exit_code == 0
        assert f"wrote reward table to {out}" in result.output
        parsed = parse_matrix(out.read_text())
        assert parsed.matrix == solve(parse_game(c3_path.read_text()).game).matrix

    def test_missing_file_exits_1(self, runner, tmp_path):
        result = runner.invoke(main, ["solve", str(tmp_path / "absent.json")])
        assert result.exit_code == 1
        assert "error:" in result.stderr

    def test_malformed_game_exits_1(self, runner, tmp_path):
        path = tmp_path / "partial.json"
        path.write_text('{"players": 2, "values": {"1": 1, "2": 2}}')
        result = runner.invoke(main, ["solve", str(path)])
        assert result.exit_code == 1
        assert "missing coalition value '1,2'" in result.stderr

    def test_nonmonotone_game_exits_1_with_labels(self, runner, tmp_path):
        path = tmp_path / "drop.json"
        path.write_text('{"players": 2, "values": {"1": 5, "2": 0, "1,2": 3}}')
        result = runner.invoke(main, ["solve", str(path)])
        assert result.exit_code == 1
        assert "{1} is worth more than its superset {1,2}" in result.stderr

    def test_bad_format_exits_1(self, runner, c3_path):
        result = runner.invoke(main, ["solve", str(c3_path), "--format", "yaml"])
        assert result.exit_code == 1
        assert "unknown format" in result.stderr

    def test_unknown_flag_is_a_usage_error(self, runner, c3_path):
        # structural CLI misuse stays at click's exit code 2
        result = runner.invoke(main, ["solve", str(c3_path), "--bogus"])
        assert result.exit_code == 2


class TestCheck:
    def test_solver_output_passes(self, runner, ex1_path):
        result = runner.invoke(main, ["check", str(ex1_path)])
        assert result.exit_code == 0
        assert "R1 nonnegativity: pass" in result.output
        assert "F1 useless player: pass (vacuous)" in result.output
        assert "F5 balanced reciprocity: pass" in result.output

    def test_scaled_matrix_fails_reciprocity_with_witness(
        self, runner, c3_path, tmp_path
    ):
        doc = parse_game(c3_path.read_text())
        scaled = scaled_rho_shapley(doc.game, 1).matrix
        mpath = tmp_path / "scaled.json"
        mpath.write_text(
            serialize_matrix(MatrixDocument(scaled, doc.labels, "rational", None), "json")
        )
        result = runner.invoke(main, ["check", str(c3_path), "--matrix", str(mpath)])
        assert result.exit_code == 2
        assert "F5 balanced reciprocity: fail" in result.output
        assert "coalition={1,2}" in result.output
        assert "gain_i=1/2" in result.output and "gain_j=1" in result.output

    def test_matrix_with_permuted_labels_is_aligned(self, runner, tmp_path):
        game_text = json.dumps(
            {
                "players": ["a", "b"],
                "values": {"a": 1, "b": 2, "a,b": 3},
            }
        )
        gpath = tmp_path / "game.json"
        gpath.write_text(game_text)
        doc = parse_game(game_text)
        matrix = solve(doc.game).matrix
        flipped = align_matrix_labels(
            MatrixDocument(matrix, doc.labels, "rational", None), ("b", "a")
        )
        mpath = tmp_path / "flipped.json"
        mpath.write_text(serialize_matrix(flipped, "json"))
        result = runner.invoke(main, ["check", str(gpath), "--matrix", str(mpath)])
        assert result.exit_code == 0, result.output

    def test_tampered_matrix_fails_with_exit_2(self, runner, c3_path, tmp_path):
        doc = parse_game(c3_path.read_text())
        matrix = solve(doc.game).matrix.replace_entry(0, 0b011, Fraction(99))
        mpath = tmp_path / "bad.csv"
        mpath.write_text(
            serialize_matrix(MatrixDocument(matrix, doc.labels, "rational", None), "table")
        )
        result = runner.invoke(main, ["check", str(c3_path), "--matrix", str(mpath)])
        assert result.exit_code == 2
        assert "R2 feasibility: fail" in result.output

    def test_tolerance_flag(self, runner, tmp_path):
        game_text = json.dumps(
            {
                "players": 2,
                "number_mode": "float",
                "values": {"1": 1.0, "2": 2.0, "1,2": 3.5},
            }
        )
        gpath = tmp_path / "float.json"
        gpath.write_text(game_text)
        doc = parse_game(gpath.read_text())
        matrix = solve(doc.game).matrix
        nudged = matrix.replace_entry(0, 0b11, matrix.reward(0, 0b11) + 1e-8)
        mpath = tmp_path / "nudged.csv"
        mpath.write_text(
            serialize_matrix(MatrixDocument(nudged, doc.labels, "float", None), "table")
        )
        strict = runner.invoke(main, ["check", str(gpath), "--matrix", str(mpath)])
        assert strict.exit_code == 2
        loose = runner.invoke(
            main, ["check", str(gpath), "--matrix", str(mpath), "--tolerance", "1e-6"]
        )
        assert loose.exit_code == 0, loose.output

    def test_exact_tolerance_on_rational_game(self, runner, ex1_path):
        result = runner.invoke(main, ["check", str(ex1_path), "--tolerance", "exact"])
        assert result.exit_code == 0

    def test_bad_tolerance_exits_1(self, runner, ex1_path):
        result = runner.invoke(main, ["check", str(ex1_path), "--tolerance", "warm"])
        assert result.exit_code == 1
        assert "bad tolerance" in result.stderr


class TestShapley:
    def test_values_printed_per_coalition(self, runner, ex1_path):
        result = runner.invoke(main, ["shapley", str(ex1_path)])
        assert result.exit_code == 0
        assert "{1,3}: 1=2, 3=2" in result.output
        assert "{1,2,3,4}: 1=5/4, 2=19/12, 3=23/12, 4=17/4" in result.output

    def test_rho_table(self, runner, c3_path):
        result = runner.invoke(main, ["shapley", str(c3_path), "--rho", "1"])
        assert result.exit_code == 0
        assert "scaled reward table (rho = 1):" in result.output
        assert "10/3" in result.output

    def test_emit_matrix_round_trips(self, runner, c3_path, tmp_path):
        out = tmp_path / "scaled.json"
        result = runner.invoke(
            main,
            ["shapley", str(c3_path), "--rho", "1", "--emit-matrix", str(out),
             "--format", "json"],
        )
        assert result.exit_code == 0
        doc = parse_game(c3_path.read_text())
        expected = scaled_rho_shapley(doc.game, 1).matrix
        assert parse_matrix(out.read_text()).matrix == expected

    def test_emit_matrix_without_rho_exits_1(self, runner, c3_path, tmp_path):
        result = runner.invoke(
            main, ["shapley", str(c3_path), "--emit-matrix", str(tmp_path / "x.csv")]
        )
        assert result.exit_code == 1
        assert "--emit-matrix requires --rho" in result.stderr

    def test_rho_out_of_range_exits_1(self, runner, c3_path):
        for rho in ("0", "1.5", "-1"):
            result = runner.invoke(main, ["shapley", str(c3_path), "--rho", rho])
            assert result.exit_code == 1, rho
        result = runner.invoke(main, ["shapley", str(c3_path), "--rho", "elephants"])
        assert result.exit_code == 1
        assert "bad rho" in result.stderr


class TestCompare:
    def test_rho_one_report(self, runner, c3_path):
        result = runner.invoke(main, ["compare", str(c3_path), "--rho", "1"])
        assert result.exit_code == 0
        assert "unbalanced (coalition, pair) triples: 5 of 6" in result.output
        assert "max reciprocity residual: 1" in result.output
        assert "at coalition {1,2,3}, pair (2, 3)" in result.output

    def test_symbolic_rho(self, runner, c3_path):
        result = runner.invoke(main, ["compare", str(c3_path), "--rho", "log2(3)-1"])
        assert result.exit_code == 0
        assert "rho: log2(3)-1" in result.output

    def test_rho_is_required(self, runner, c3_path):
        result = runner.invoke(main, ["compare", str(c3_path)])
        assert result.exit_code == 2  # structural usage error


class TestVerify:
    def test_level_depth(self, runner, ex1_path):
        result = runner.invoke(main, ["verify", str(ex1_path)])
        assert result.exit_code == 0
        assert "matches solver: yes" in result.output
        assert "candidate rows unique: yes" in result.output

    def test_global_depth(self, runner, c3_path):
        result = runner.invoke(main, ["verify", str(c3_path), "--depth", "global"])
        assert result.exit_code == 0
        assert "surviving matrices: 1" in result.output

    def test_global_depth_size_limit_exits_3(self, runner, tmp_path):
        path = tmp_path / "g5.json"
        gen = CliRunner().invoke(
            main,
            ["gen", "--family", "random-monotone", "--players", "5", "--seed", "1",
             "-o", str(path)],
        )
        assert gen.exit_code == 0
        result = runner.invoke(main, ["verify", str(path), "--depth", "global"])
        assert result.exit_code == 3
        assert "error:" in result.stderr

    def test_bad_depth_exits_1(self, runner, c3_path):
        result = runner.invoke(main, ["verify", str(c3_path), "--depth", "sideways"])
        assert result.exit_code == 1


class TestPipelines:
    def test_gen_solve_check_verify_chain(self, runner, tmp_path):
        gpath = tmp_path / "g.json"
        mpath = tmp_path / "m.json"
        assert runner.invoke(
            main,
            ["gen", "--family", "random-monotone", "--players", "4", "--seed", "11",
             "-o", str(gpath)],
        ).exit_code == 0
        assert runner.invoke(
            main, ["solve", str(gpath), "--format", "json", "-o", str(mpath)]
        ).exit_code == 0
        assert runner.invoke(
            main, ["check", str(gpath), "--matrix", str(mpath)]
        ).exit_code == 0
        assert runner.invoke(main, ["verify", str(gpath)]).exit_code == 0
        assert runner.invoke(
            main, ["verify", str(gpath), "--depth", "global"]
        ).exit_code == 0

    def test_solve_output_identical_across_runs(self, runner, ex1_path):
        a = runner.invoke(main, ["solve", str(ex1_path), "--format", "json"])
        b = runner.invoke(main, ["solve", str(ex1_path), "--format", "json"])
        assert a.output == b.output
