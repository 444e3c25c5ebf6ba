import csv
import io
import json
import subprocess
import sys

import pytest

from noise_eater.cli import EXIT_CONFIG, EXIT_NUMERICAL, run


def run_csv(capsys, *argv, with_err=False):
    assert run(list(argv)) == 0
    captured = capsys.readouterr()
    rows = list(csv.DictReader(io.StringIO(captured.out)))
    return (rows, captured.err) if with_err else rows


class TestMetrics:
    def test_fig4_point_balanced_bs(self, capsys):
        (row,) = run_csv(capsys, "metrics", "--preset", "fig4-point", "--tapoff", "0.5", "--model", "bs")
        assert float(row["v_s_out"]) == pytest.approx(5.5)

    def test_lossless_bs_ninety(self, capsys):
        (row,) = run_csv(capsys, "metrics", "--preset", "lossless", "--tapoff", "0.1", "--model", "bs")
        assert float(row["t_s"]) == pytest.approx(0.9)
        assert float(row["t_m"]) == pytest.approx(0.1)
        assert float(row["v_cond"]) == pytest.approx(5.2632, abs=5e-5)
        assert float(row["corr_sm"]) == pytest.approx(0.4216, abs=5e-5)

    def test_both_models_and_xi(self, capsys):
        rows = run_csv(capsys, "metrics", "--xi", "1.0")
        assert [r["model"] for r in rows] == ["bs", "shg"]
        assert rows[0]["xi"] == ""
        assert float(rows[0]["eta"]) == pytest.approx(0.4199743, abs=5e-8)
        assert float(rows[1]["xi"]) == 1.0

    def test_optimal_gain_flag(self, capsys):
        (row,) = run_csv(capsys, "metrics", "--tapoff", "0.1", "--model", "bs", "--optimal-gain")
        assert float(row["gain"]) == pytest.approx(-1.42105263)
        assert float(row["v_s_out"]) == pytest.approx(5.26315789)

    def test_json_mirror(self, capsys):
        argv = ["metrics", "--tapoff", "0.2"]
        rows = run_csv(capsys, *argv)
        assert run(argv + ["--format", "json"]) == 0
        records = json.loads(capsys.readouterr().out)
        assert [list(r) for r in records] == [list(r) for r in rows]
        assert records[1]["v_cond"] == float(rows[1]["v_cond"])
        assert records[0]["xi"] is None

    def test_config_file_and_flag_override(self, capsys, tmp_path):
        cfg = tmp_path / "run.json"
        cfg.write_text(json.dumps({"model": "bs", "tapoff": 0.5, "v_in": 3.0}))
        (row,) = run_csv(capsys, "metrics", "--config", str(cfg))
        assert float(row["v_s_out"]) == pytest.approx(2.0)
        (row,) = run_csv(capsys, "metrics", "--config", str(cfg), "--v-in", "10")
        assert float(row["v_s_out"]) == pytest.approx(5.5)

    def test_writes_out_file(self, capsys, tmp_path):
        out = tmp_path / "m.csv"
        assert run(["metrics", "--tapoff", "0.1", "--out", str(out)]) == 0
        assert out.read_text().startswith("model,tapoff,")
        assert capsys.readouterr().out == ""

    def test_global_flags_before_subcommand(self, capsys):
        assert run(["--format", "json", "metrics", "--tapoff", "0.1"]) == 0
        assert json.loads(capsys.readouterr().out)[0]["model"] == "bs"


class TestErrors:
    def test_malformed_config(self, capsys, tmp_path):
        cfg = tmp_path / "bad.json"
        cfg.write_text("{model: bs")
        out = tmp_path / "never.csv"
        assert run(["metrics", "--config", str(cfg), "--out", str(out)]) == EXIT_CONFIG
        err = capsys.readouterr().err
        assert err.count("\n") == 1 and "malformed config" in err
        assert not out.exists()

    @pytest.mark.parametrize("argv", [
        ["metrics"],
        ["metrics", "--tapoff", "0.1", "--xi", "1"],
        ["metrics", "--tapoff", "0.1", "--eta-m", "1.5"],
        ["metrics", "--tapoff", "1.2"],
        ["metrics", "--xi", "9"],
        ["metrics", "--tapoff", "0.1", "--v-in", "1"],
        ["metrics", "--tapoff", "0.1", "--preset", "nope"],
        ["sweep", "--tapoff", "0.1"],
        ["sweep", "--grid-min", "0.5", "--grid-max", "0.2"],
        ["figure", "7", "--steps", "2"],
        ["oracle", "--tapoff", "0.5"],
        ["oracle", "--tapoff", "0.5", "--seed", "1", "--samples", "10"],
    ])
    def test_invalid_configuration_exit_code(self, capsys, argv):
        assert run(argv) == EXIT_CONFIG
        assert capsys.readouterr().out == ""

    def test_unknown_config_key(self, tmp_path):
        cfg = tmp_path / "c.json"
        cfg.write_text(json.dumps({"tapof": 0.1}))
        assert run(["metrics", "--config", str(cfg)]) == EXIT_CONFIG

    def test_degenerate_numerics(self, capsys):
        # no signal arm: gain has no effect, optimum undefined
        code = run(["metrics", "--tapoff", "0.1", "--eta-insertion", "0", "--optimal-gain"])
        assert code == EXIT_NUMERICAL


def test_argparse_errors_exit_2(capsys):
    for argv in (["frobnicate"], ["figure", "9"], ["metrics", "--tapoff", "abc"]):
        with pytest.raises(SystemExit) as info:
            run(argv)
        assert info.value.code == EXIT_CONFIG


class TestOracle:
    def test_balanced_bs(self, capsys):
        rows, err = run_csv(capsys, "oracle", "--model", "bs", "--tapoff", "0.5",
                            "--seed", "1", "--samples", "1000000", with_err=True)
        assert [r["agree"] for r in rows] == ["true"] * 3
        assert "all agree" in err

    @pytest.mark.parametrize("argv", [
        ["--model", "bs", "--tapoff", "0.5"],
        ["--model", "shg", "--xi", "1", "--eta-m", "0.9", "--eta-insertion", "0.95",
         "--eta-modulator", "0.95", "--gain", "0.8"],
    ])
    def test_full_size_examples(self, capsys, argv):
        rows = run_csv(capsys, "oracle", *argv, "--seed", "2014", "--samples", "10000000")
        assert [r["agree"] for r in rows] == ["true"] * 3

    def test_deterministic(self, capsys):
        argv = ["oracle", "--xi", "1", "--eta-m", "0.8", "--gain", "0.5",
                "--seed", "9", "--samples", "200000"]
        assert run(argv) == 0
        first = capsys.readouterr().out
        assert run(argv) == 0
        assert capsys.readouterr().out == first


def test_sweep_columns(capsys):
    rows = run_csv(capsys, "sweep", "--grid-points", "5", "--preset", "fig8")
    assert len(rows) == 5
    assert set(rows[0]) >= {"tapoff", "g_star_bs", "v_star_shg", "diff_db", "t_total_shg"}
    assert all(float(r["diff_db"]) > 0 for r in rows)


def test_module_entry_point(tmp_path):
    out = tmp_path / "f6.csv"
    proc = subprocess.run([sys.executable, "-m", "noise_eater", "figure", "6",
                           "--grid-points", "3", "--out", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 0, proc.stderr
    assert out.read_text().splitlines()[0] == "tapoff,corr_bs,corr_shg"
