"""Command-line surface, exercised through real subprocesses."""

import json
import subprocess
import sys

import numpy as np
import pytest

from qlid import bin_count, fixture_path, load_fixture

FAST = ("--population", "16", "--generations", "12", "--restarts", "1")
HALF = fixture_path("halfline_n90")


def run_cli(*args):
    return subprocess.run(
        [sys.executable, "-m", "qlid", *map(str, args)],
        capture_output=True,
        text=True,
    )


def read_json(path):
    return json.loads(path.read_text())


class TestTopLevel:
    def test_version(self):
        proc = run_cli("--version")
        assert proc.returncode == 0
        assert "qlid" in proc.stdout

    def test_no_subcommand_is_usage_error(self):
        proc = run_cli()
        assert proc.returncode == 2

    def test_unknown_flag_is_usage_error(self):
        proc = run_cli("fit", "--no-such-flag")
        assert proc.returncode == 2


class TestFit:
    def test_flags_only_mle(self, tmp_path):
        out = tmp_path / "out"
        proc = run_cli(
            "fit",
            "--data",
            HALF,
            "--estimator",
            "mle",
            "--family0",
            "gamma",
            "--out-dir",
            out,
            "--seed",
            "5",
            *FAST,
        )
        assert proc.returncode == 0, proc.stderr
        for name in ("report.json", "comparison.txt", "comparison.csv", "meta.json"):
            assert (out / name).exists()
        report = read_json(out / "report.json")
        assert report["command"] == "fit"
        assert report["n"] == 90
        assert report["seed"] == 5
        (result,) = report["results"]
        assert result["kind"] == "mle"
        assert result["success"] is True
        assert set(result["theta"]) == {"a", "b"}
        assert set(result["criteria"]) == {"AIC", "BIC"}
        assert "label" in proc.stdout

    def test_missing_data_is_usage_error(self):
        proc = run_cli("fit", "--estimator", "mle", "--family0", "gamma")
        assert proc.returncode == 2
        assert "error:" in proc.stderr

    def test_unknown_family_is_usage_error(self, tmp_path):
        proc = run_cli(
            "fit",
            "--data",
            HALF,
            "--estimator",
            "mle",
            "--family0",
            "cauchy",
            "--out-dir",
            tmp_path / "out",
        )
        assert proc.returncode == 2
        assert "unknown family" in proc.stderr

    def test_missing_estimator_is_usage_error(self, tmp_path):
        proc = run_cli("fit", "--data", HALF, "--out-dir", tmp_path / "out")
        assert proc.returncode == 2
        assert "no estimator" in proc.stderr

    def test_outlier_toggle_pairs_rows(self, tmp_path):
        out = tmp_path / "out"
        proc = run_cli(
            "fit",
            "--data",
            HALF,
            "--estimator",
            "mle",
            "--family0",
            "gamma",
            "--outliers",
            "--out-dir",
            out,
            *FAST,
        )
        assert proc.returncode == 0, proc.stderr
        report = read_json(out / "report.json")
        conditions = [r["condition"] for r in report["results"]]
        assert conditions == ["clean", "1 outlier"]
        assert [r["n"] for r in report["results"]] == [90, 91]

    def test_degenerate_lid_is_reported(self, tmp_path):
        out = tmp_path / "out"
        proc = run_cli(
            "fit",
            "--data",
            HALF,
            "--estimator",
            "lid-logq",
            "--family0",
            "gamma",
            "--family1",
            "gamma",
            "--q",
            "0.5",
            "--out-dir",
            out,
            *FAST,
        )
        assert proc.returncode == 0, proc.stderr
        report = read_json(out / "report.json")
        (result,) = report["results"]
        assert result["degenerate"] is True
        assert result["objective"] == 0.0
        assert "degenerate" in proc.stderr

    def test_config_file_drives_the_run(self, tmp_path):
        out = tmp_path / "out"
        config = tmp_path / "run.toml"
        config.write_text(
            f'[run]\ndata = "{HALF}"\nout_dir = "{out}"\nseed = 3\n\n'
            "[optimizer]\npopulation = 16\ngenerations = 12\nrestarts = 1\n\n"
            '[[estimator]]\nkind = "mle"\nfamily0 = "gamma"\n\n'
            '[[estimator]]\nkind = "mqle"\nfamily0 = "gamma"\nq = 0.5\n'
        )
        proc = run_cli("fit", "--config", config)
        assert proc.returncode == 0, proc.stderr
        report = read_json(out / "report.json")
        assert len(report["results"]) == 2
        kinds = [r["kind"] for r in report["results"]]
        assert kinds == ["mle", "mqle"]
        assert len((out / "comparison.csv").read_text().strip().splitlines()) == 3

    def test_flag_overrides_config_seed(self, tmp_path):
        out = tmp_path / "out"
        config = tmp_path / "run.toml"
        config.write_text(
            f'[run]\ndata = "{HALF}"\nout_dir = "{out}"\nseed = 3\n\n'
            "[optimizer]\npopulation = 16\ngenerations = 12\nrestarts = 1\n\n"
            '[[estimator]]\nkind = "mle"\nfamily0 = "gamma"\n'
        )
        proc = run_cli("fit", "--config", config, "--seed", "11")
        assert proc.returncode == 0, proc.stderr
        assert read_json(out / "report.json")["seed"] == 11

    def test_bad_config_is_usage_error(self, tmp_path):
        config = tmp_path / "broken.toml"
        config.write_text("[run\n")
        proc = run_cli("fit", "--config", config, "--data", HALF)
        assert proc.returncode == 2

    def test_edges_emit_plot_data(self, tmp_path):
        out = tmp_path / "out"
        proc = run_cli(
            "fit",
            "--data",
            HALF,
            "--estimator",
            "mle",
            "--family0",
            "gamma",
            "--edges",
            "0,0.5,1.5,2.5,20",
            "--out-dir",
            out,
            *FAST,
        )
        assert proc.returncode == 0, proc.stderr
        plots = out / "plots"
        assert (plots / "histogram.csv").exists()
        assert (plots / "overlay.svg").exists()
        sample = load_fixture("halfline_n90")
        expected = bin_count(sample, [0.0, 0.5, 1.5, 2.5, 20.0]).to_csv()
        assert (plots / "histogram.csv").read_text() == expected


class TestSweep:
    def test_q_grid(self, tmp_path):
        out = tmp_path / "out"
        proc = run_cli(
            "sweep",
            "--data",
            HALF,
            "--estimator",
            "mqle",
            "--family0",
            "gamma",
            "--q-grid",
            "0.6,0.9",
            "--out-dir",
            out,
            *FAST,
        )
        assert proc.returncode == 0, proc.stderr
        report = read_json(out / "report.json")
        assert len(report["results"]) == 2
        labels = {r["label"] for r in report["results"]}
        assert any("q=0.6" in label for label in labels)
        assert any("q=0.9" in label for label in labels)
        lines = (out / "sweep.csv").read_text().strip().splitlines()
        assert len(lines) == 3

    def test_invalid_grid_point_marks_row_and_exit_code(self, tmp_path):
        out = tmp_path / "out"
        proc = run_cli(
            "sweep",
            "--data",
            HALF,
            "--estimator",
            "mqle",
            "--family0",
            "gamma",
            "--q-grid",
            "0,0.9",
            "--out-dir",
            out,
            *FAST,
        )
        assert proc.returncode == 1
        report = read_json(out / "report.json")
        errors = [r.get("error") for r in report["results"]]
        assert sum(e is not None and e != "" for e in errors) == 1
        fitted = [r for r in report["results"] if r.get("theta")]
        assert len(fitted) == 1

    def test_bins_column_with_edges(self, tmp_path):
        out = tmp_path / "out"
        proc = run_cli(
            "sweep",
            "--data",
            HALF,
            "--estimator",
            "mqle",
            "--family0",
            "gamma",
            "--q-grid",
            "0.9",
            "--edges",
            "0,0.5,1.5,2.5,20",
            "--out-dir",
            out,
            *FAST,
        )
        assert proc.returncode == 0, proc.stderr
        report = read_json(out / "report.json")
        bins = report["results"][0]["bins"]
        parts = bins.split("/")
        assert len(parts) == 5
        assert all(p.isdigit() for p in parts)


class TestSimulate:
    def test_mean_sample_roster(self, tmp_path):
        out = tmp_path / "out"
        proc = run_cli(
            "simulate",
            "--family0",
            "gamma",
            "--params",
            "a=3,b=0.25",
            "--n",
            "20",
            "--replications",
            "120",
            "--workers",
            "2",
            "--seed",
            "7",
            "--out-dir",
            out,
        )
        assert proc.returncode == 0, proc.stderr
        values = [float(v) for v in (out / "mean_sample.txt").read_text().split()]
        assert len(values) == 20
        assert values == sorted(values)
        report = read_json(out / "report.json")
        assert report["command"] == "simulate"
        assert report["replications"] == 120

    def test_edges_add_bin_counts(self, tmp_path):
        out = tmp_path / "out"
        proc = run_cli(
            "simulate",
            "--family0",
            "gamma",
            "--params",
            "a=3,b=0.25",
            "--n",
            "15",
            "--replications",
            "60",
            "--edges",
            "0,0.5,1,2",
            "--out-dir",
            out,
        )
        assert proc.returncode == 0, proc.stderr
        assert (out / "bins.csv").exists()
        report = read_json(out / "report.json")
        assert sum(report["bin_counts"]) + report["out_of_range"] == 15

    def test_missing_family_is_usage_error(self, tmp_path):
        proc = run_cli("simulate", "--out-dir", tmp_path / "out")
        assert proc.returncode == 2


class TestInject:
    def test_half_line_append(self, tmp_path):
        data = tmp_path / "data.txt"
        data.write_text("1.0\n2.0\n3.29865\n")
        out = tmp_path / "out"
        proc = run_cli("inject", "--data", data, "--out-dir", out)
        assert proc.returncode == 0, proc.stderr
        values = [float(v) for v in (out / "injected.txt").read_text().split()]
        assert len(values) == 4
        assert values[-1] == pytest.approx(6.5973, abs=1e-12)
        report = read_json(out / "report.json")
        assert report["n_before"] == 3
        assert report["n_after"] == 4

    def test_full_line_append(self, tmp_path):
        data = tmp_path / "data.txt"
        data.write_text("-1.0\n2.0\n")
        out = tmp_path / "out"
        proc = run_cli("inject", "--data", data, "--out-dir", out)
        assert proc.returncode == 0, proc.stderr
        report = read_json(out / "report.json")
        assert sorted(report["appended"]) == [-4.0, 4.0]


class TestBins:
    def test_counts_to_stdout_and_file(self, tmp_path):
        data = tmp_path / "data.txt"
        data.write_text("0.5\n1.5\n2.0\n")
        out = tmp_path / "out"
        proc = run_cli(
            "bins", "--data", data, "--edges", "0,1,2", "--out-dir", out
        )
        assert proc.returncode == 0, proc.stderr
        expected = bin_count(np.array([0.5, 1.5, 2.0]), [0.0, 1.0, 2.0]).to_csv()
        assert proc.stdout == expected
        assert (out / "bins.csv").read_text() == expected

    def test_missing_edges_is_usage_error(self, tmp_path):
        data = tmp_path / "data.txt"
        data.write_text("0.5\n")
        proc = run_cli("bins", "--data", data)
        assert proc.returncode == 2


class TestPlot:
    def test_plot_from_fit_report(self, tmp_path):
        out = tmp_path / "fit"
        proc = run_cli(
            "fit",
            "--data",
            HALF,
            "--estimator",
            "mle",
            "--family0",
            "gamma",
            "--out-dir",
            out,
            *FAST,
        )
        assert proc.returncode == 0, proc.stderr
        plot_dir = tmp_path / "plot"
        proc = run_cli(
            "plot",
            "--data",
            HALF,
            "--report",
            out / "report.json",
            "--edges",
            "0,0.5,1.5,2.5,20",
            "--out-dir",
            plot_dir,
        )
        assert proc.returncode == 0, proc.stderr
        plots = plot_dir / "plots"
        assert (plots / "histogram.csv").exists()
        assert (plots / "overlay.svg").exists()
        curves = list(plots.glob("curve_*.csv"))
        assert len(curves) == 1

    def test_missing_report_is_usage_error(self, tmp_path):
        proc = run_cli(
            "plot", "--data", HALF, "--edges", "0,1", "--out-dir", tmp_path / "p"
        )
        assert proc.returncode == 2
