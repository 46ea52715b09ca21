import json

import pytest
from click.testing import CliRunner

import golden
from metamatrix import cli
from metamatrix.cli import main
from metamatrix.engine import NTable
from metamatrix.typeb import metamatrix_typeb


@pytest.fixture
def runner():
    return CliRunner()


def matrix_of(json_text):
    return [[int(x) for x in row] for row in json.loads(json_text)["matrix"]]


class TestCompute:
    def test_b2_formula_csv(self, runner):
        res = runner.invoke(main, ["compute", "--family", "B", "--rank", "2", "--format", "csv"])
        assert res.exit_code == 0
        assert res.output.splitlines() == ["8,8,1", "8,10,2", "1,2,1"]

    def test_i2_closed_form_beyond_matrix_realization(self, runner):
        res = runner.invoke(
            main, ["compute", "--family", "I2", "--m", "7", "--format", "csv"]
        )
        assert res.exit_code == 0
        assert res.output.splitlines() == ["14,14,1", "14,16,2", "1,2,1"]

    def test_i2_requires_m(self, runner):
        res = runner.invoke(main, ["compute", "--family", "I2"])
        assert res.exit_code == 2

    def test_unknown_family(self, runner):
        res = runner.invoke(main, ["compute", "--family", "Q", "--rank", "3"])
        assert res.exit_code == 2

    def test_formula_unavailable_for_h(self, runner):
        res = runner.invoke(
            main, ["compute", "--family", "H", "--rank", "3", "--method", "formula"]
        )
        assert res.exit_code == 2

    def test_enumerate_json(self, runner, tmp_path):
        res = runner.invoke(
            main,
            [
                "compute", "--family", "B", "--rank", "3",
                "--method", "enumerate", "--format", "json",
                "--cache-dir", str(tmp_path),
            ],
        )
        assert res.exit_code == 0
        payload = json.loads(res.output)
        assert payload["pipeline"] == "enumeration"
        entries = [[int(x) for x in row] for row in payload["matrix"]]
        assert entries == [list(r) for r in metamatrix_typeb(3).entries]
        assert (tmp_path / "B3.ntable.json").exists()

    def test_h3_enumerate_pretty(self, runner, tmp_path):
        res = runner.invoke(
            main,
            ["compute", "--family", "H", "--rank", "3", "--cache-dir", str(tmp_path)],
        )
        assert res.exit_code == 0
        grid = [[int(x) for x in line.split()] for line in res.output.splitlines()]
        assert grid == golden.H3

    def test_e8_requires_long_running_flag(self, runner, tmp_path):
        res = runner.invoke(
            main,
            [
                "compute", "--family", "E", "--rank", "8",
                "--method", "enumerate", "--cache-dir", str(tmp_path),
            ],
        )
        assert res.exit_code == 3
        assert "--allow-long-running" in res.output

    def test_oracle_small_group(self, runner):
        res = runner.invoke(
            main,
            ["compute", "--family", "A", "--rank", "2", "--method", "oracle", "--format", "csv"],
        )
        assert res.exit_code == 0
        assert res.output.splitlines() == ["6,6,1", "6,8,2", "1,2,1"]

    def test_oracle_limit(self, runner):
        res = runner.invoke(
            main, ["compute", "--family", "B", "--rank", "6", "--method", "oracle"]
        )
        assert res.exit_code == 3


class TestCache:
    def args(self, cache):
        return [
            "compute", "--family", "B", "--rank", "3",
            "--method", "enumerate", "--format", "json", "--cache-dir", str(cache),
        ]

    def test_cache_hit_is_used(self, runner, tmp_path):
        fake = NTable(n=3, counts=((0,) * 4,) * 3 + ((0, 0, 0, 7),))
        payload = cli._ntable_payload("B", 3, None, 48, fake)
        (tmp_path / "B3.ntable.json").write_text(json.dumps(payload))
        res = runner.invoke(main, self.args(tmp_path))
        assert res.exit_code == 0
        # every metamatrix entry now comes from the single fake cell
        assert matrix_of(res.output)[0][0] == 7

    def test_corrupt_cache_recomputed(self, runner, tmp_path):
        path = tmp_path / "B3.ntable.json"
        path.write_text("{not json")
        res = runner.invoke(main, self.args(tmp_path))
        assert res.exit_code == 0
        assert matrix_of(res.output) == [list(r) for r in metamatrix_typeb(3).entries]
        restored = json.loads(path.read_text())
        assert restored["checksum"] == cli._checksum(restored)

    def test_bad_checksum_recomputed(self, runner, tmp_path):
        fake = NTable(n=3, counts=((0,) * 4,) * 3 + ((0, 0, 0, 7),))
        payload = cli._ntable_payload("B", 3, None, 48, fake)
        payload["checksum"] = "0" * 64
        (tmp_path / "B3.ntable.json").write_text(json.dumps(payload))
        res = runner.invoke(main, self.args(tmp_path))
        assert res.exit_code == 0
        assert matrix_of(res.output) == [list(r) for r in metamatrix_typeb(3).entries]

    def test_env_var_cache_dir(self, runner, tmp_path):
        args = [a for a in self.args(tmp_path) if a not in ("--cache-dir", str(tmp_path))]
        res = runner.invoke(main, args, env={"METAMATRIX_CACHE_DIR": str(tmp_path)})
        assert res.exit_code == 0
        assert (tmp_path / "B3.ntable.json").exists()


class TestCheckTp:
    def test_positive_grid(self, runner, tmp_path):
        src = tmp_path / "m.txt"
        src.write_text("2 1\n1 1\n")
        res = runner.invoke(main, ["check-tp", str(src)])
        assert res.exit_code == 0
        payload = json.loads(res.output)
        assert payload["verdict"] == "totally-positive"
        assert payload["witness"] is None

    def test_negative_grid_witness(self, runner, tmp_path):
        src = tmp_path / "m.txt"
        src.write_text("1 2\n3 4\n")
        res = runner.invoke(main, ["check-tp", str(src)])
        assert res.exit_code == 1
        payload = json.loads(res.output)
        assert payload["verdict"] == "not-totally-positive"
        assert payload["witness"] == {"rows": [0, 1], "cols": [0, 1], "minor": "-2"}

    def test_stdin(self, runner):
        res = runner.invoke(main, ["check-tp", "-"], input="2 1\n1 1\n")
        assert res.exit_code == 0

    def test_json_round_trip(self, runner, tmp_path):
        res = runner.invoke(
            main, ["compute", "--family", "B", "--rank", "4", "--format", "json"]
        )
        src = tmp_path / "b4.json"
        src.write_text(res.output)
        res = runner.invoke(main, ["check-tp", str(src)])
        assert res.exit_code == 0

    def test_rational_entries(self, runner, tmp_path):
        src = tmp_path / "m.txt"
        src.write_text("2/3 1/3\n1/3 1/3\n")
        assert runner.invoke(main, ["check-tp", str(src)]).exit_code == 0

    def test_ragged_grid_diagnostic(self, runner, tmp_path):
        src = tmp_path / "m.txt"
        src.write_text("1 2\n3\n")
        res = runner.invoke(main, ["check-tp", str(src)])
        assert res.exit_code == 2
        assert "line 2" in res.output

    def test_bad_token_diagnostic(self, runner, tmp_path):
        src = tmp_path / "m.txt"
        src.write_text("1 x\n3 4\n")
        res = runner.invoke(main, ["check-tp", str(src)])
        assert res.exit_code == 2
        assert "line 1, column 2" in res.output

    def test_non_square_rejected(self, runner, tmp_path):
        src = tmp_path / "m.txt"
        src.write_text("1 2 3\n4 5 6\n")
        assert runner.invoke(main, ["check-tp", str(src)]).exit_code == 2

    def test_missing_file(self, runner):
        assert runner.invoke(main, ["check-tp", "/nonexistent/m.txt"]).exit_code == 2

    def test_perturbed_table_deterministic_witness(self, runner, tmp_path):
        grid = [row[:] for row in golden.E7]
        grid[3][4] = -grid[3][4]
        src = tmp_path / "e7.txt"
        src.write_text("\n".join(" ".join(str(x) for x in row) for row in grid))
        first = runner.invoke(main, ["check-tp", str(src)])
        second = runner.invoke(main, ["check-tp", str(src)])
        assert first.exit_code == second.exit_code == 1
        assert first.output == second.output

    def test_fekete_method_selected(self, runner, tmp_path):
        src = tmp_path / "m.txt"
        src.write_text("2 1\n1 1\n")
        res = runner.invoke(main, ["check-tp", str(src), "--method", "fekete"])
        assert json.loads(res.output)["method"] == "fekete"


class TestVerify:
    def test_b3_all_legs_agree(self, runner, tmp_path):
        res = runner.invoke(
            main, ["verify", "--family", "B", "--rank", "3", "--cache-dir", str(tmp_path)]
        )
        assert res.exit_code == 0
        assert "B3: enumeration = formula = oracle (all legs agree)" in res.output

    def test_i2_6(self, runner, tmp_path):
        res = runner.invoke(
            main, ["verify", "--family", "I2", "--m", "6", "--cache-dir", str(tmp_path)]
        )
        assert res.exit_code == 0
        report = json.loads(res.output[: res.output.rindex("}") + 1])
        assert report["agree"] is True
        assert set(report["legs"]) == {"formula", "enumeration", "oracle"}


class TestNtableCommand:
    def test_b3_payload(self, runner, tmp_path):
        res = runner.invoke(
            main, ["ntable", "--family", "B", "--rank", "3", "--cache-dir", str(tmp_path)]
        )
        assert res.exit_code == 0
        payload = json.loads(res.output)
        assert payload["order"] == "48"
        assert payload["checksum"] == cli._checksum(payload)
        counts = [[int(x) for x in row] for row in payload["ntable"]]
        assert sum(map(sum, counts)) == 48


class TestScmCount:
    def test_scm(self, runner):
        res = runner.invoke(main, ["scm-count", "2", "1", "1"])
        assert res.exit_code == 0
        assert res.output.strip() == "10"

    def test_gscm(self, runner):
        res = runner.invoke(main, ["scm-count", "2", "1", "1", "--gscm"])
        assert res.output.strip() == "15"

    def test_brute_force_cap(self, runner):
        assert runner.invoke(main, ["scm-count", "6", "1", "1"]).exit_code == 3

    def test_out_of_range(self, runner):
        assert runner.invoke(main, ["scm-count", "2", "3", "1"]).exit_code == 2
