import json

import pytest
from click.testing import CliRunner

from knotstats.cli import main


@pytest.fixture()
def runner():
    return CliRunner()


class TestImport:
    def test_ok(self, runner, synthetic_csv, tmp_path):
        result = runner.invoke(main, ["import", "--data", str(synthetic_csv),
                                      "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        report = json.loads((tmp_path / "import_report.json").read_text())
        assert report["loaded"] == 160
        assert "12a: 40" in result.output

    def test_missing_file(self, runner, tmp_path):
        result = runner.invoke(main, ["import", "--data",
                                      str(tmp_path / "nope.csv")])
        assert result.exit_code == 2

    def test_no_data_flag(self, runner):
        result = runner.invoke(main, ["import"])
        assert result.exit_code == 2

    def test_config_provides_defaults(self, runner, synthetic_csv, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text(f"data = {synthetic_csv}\nout = {tmp_path}\n")
        result = runner.invoke(main, ["import", "--config", str(cfg)])
        assert result.exit_code == 0, result.output
        assert (tmp_path / "import_report.json").exists()


class TestVerify:
    def test_families(self, runner, tmp_path):
        result = runner.invoke(main, [
            "verify", "--families", "twist:1..5",
            "--families", "pretzel:3,3,2..6:even", "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        assert "twist: 5/5" in result.output
        assert "pretzel33: 3/3" in result.output
        assert (tmp_path / "verify_twist.csv").exists()

    def test_sample(self, runner, synthetic_csv, tmp_path):
        result = runner.invoke(main, [
            "verify", "--data", str(synthetic_csv), "--sample", "4",
            "--seed", "3", "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        assert "4/4" in result.output

    def test_nothing_to_do(self, runner):
        result = runner.invoke(main, ["verify"])
        assert result.exit_code == 2

    def test_bad_family_spec(self, runner):
        result = runner.invoke(main, ["verify", "--families", "torus:1..5"])
        assert result.exit_code == 2


class TestFit:
    def test_table_shape(self, runner, synthetic_csv, tmp_path):
        result = runner.invoke(main, ["fit", "--data", str(synthetic_csv),
                                      "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        lines = (tmp_path / "fit_kfh_rank_all.csv").read_text().splitlines()
        assert lines[0] == ("group,r_squared,correlation,slope,slope_err,"
                            "intercept,intercept_err,n")
        assert len(lines) == 5  # header + 12a 12n 13a 13n

    def test_small_group_warns_not_fails(self, runner, tmp_path):
        import csv
        data = tmp_path / "tiny.csv"
        with data.open("w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["name", "crossings", "alternating", "dt",
                        "volume", "kfh_rank", "determinant"])
            w.writerow(["a", 12, 1, "", "4.0", 3, 3])
            w.writerow(["b", 12, 1, "", "5.0", 3, 3])
        result = runner.invoke(main, ["fit", "--data", str(data),
                                      "--out", str(tmp_path)])
        assert result.exit_code == 0
        assert "warning" in result.output

    def test_parallel_matches_serial(self, runner, synthetic_csv, tmp_path):
        out1, out2 = tmp_path / "s", tmp_path / "p"
        for out, jobs in ((out1, "1"), (out2, "4")):
            result = runner.invoke(main, ["fit", "--data", str(synthetic_csv),
                                          "--out", str(out), "--jobs", jobs])
            assert result.exit_code == 0
        assert ((out1 / "fit_kfh_rank_all.csv").read_bytes()
                == (out2 / "fit_kfh_rank_all.csv").read_bytes())

    def test_log_base_changes_slope(self, runner, synthetic_csv, tmp_path):
        import math
        slopes = {}
        for base in ("e", "10"):
            out = tmp_path / base
            runner.invoke(main, ["fit", "--data", str(synthetic_csv),
                                 "--out", str(out), "--log-base", base])
            fits = json.loads((out / "fit_kfh_rank_all.json").read_text())
            slopes[base] = fits["12n"]["slope"]
        assert slopes["10"] == pytest.approx(slopes["e"] / math.log(10))


class TestDensity:
    def test_outputs(self, runner, synthetic_csv, tmp_path):
        result = runner.invoke(main, ["density", "--data", str(synthetic_csv),
                                      "--out", str(tmp_path), "--d", "50"])
        assert result.exit_code == 0, result.output
        assert (tmp_path / "density_12n_d50.csv").exists()
        assert (tmp_path / "density_12n_d50.svg").exists()
        fits = json.loads((tmp_path / "density_fits_d50.json").read_text())
        assert set(fits) <= {"12n", "13n"}

    def test_degenerate_cutoff_warns(self, runner, synthetic_csv, tmp_path):
        # d = 1: no rank is below 1, the curve is flat zero
        result = runner.invoke(main, ["density", "--data", str(synthetic_csv),
                                      "--out", str(tmp_path), "--d", "1",
                                      "--no-plot"])
        assert result.exit_code == 0
        assert "warning" in result.output or json.loads(
            (tmp_path / "density_fits_d1.json").read_text()) == {}


class TestCheck:
    def test_rank_volume(self, runner, synthetic_csv, tmp_path):
        result = runner.invoke(main, ["check", "rank-volume", "--a", "5.0",
                                      "--data", str(synthetic_csv),
                                      "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        payload = json.loads((tmp_path / "check_rank-volume.json").read_text())
        assert all(g["fraction_strict"] == 1.0 for g in payload["groups"])

    def test_density_bound(self, runner, synthetic_csv, tmp_path):
        result = runner.invoke(main, ["check", "density", "--d", "50",
                                      "--margin", "0.05",
                                      "--data", str(synthetic_csv),
                                      "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        payload = json.loads((tmp_path / "check_density.json").read_text())
        assert payload["kind"] == "density-bound"


class TestPlot:
    def test_scatter(self, runner, synthetic_csv, tmp_path):
        result = runner.invoke(main, ["plot", "--data", str(synthetic_csv),
                                      "--kind", "scatter-rank",
                                      "--crossings", "12",
                                      "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        svg = (tmp_path / "scatter-rank_12.svg").read_text()
        assert svg.startswith("<?xml")

    def test_histogram(self, runner, synthetic_csv, tmp_path):
        result = runner.invoke(main, ["plot", "--data", str(synthetic_csv),
                                      "--kind", "hist-volume",
                                      "--out", str(tmp_path)])
        assert result.exit_code == 0, result.output
        assert (tmp_path / "hist-volume.svg").exists()


class TestDeterminism:
    def test_byte_identical_outputs(self, runner, synthetic_csv, tmp_path):
        outs = []
        for name in ("one", "two"):
            out = tmp_path / name
            for args in (["fit"], ["density", "--d", "50"],
                         ["plot", "--kind", "scatter-rank",
                          "--crossings", "12"]):
                result = runner.invoke(main, args + [
                    "--data", str(synthetic_csv), "--out", str(out)])
                assert result.exit_code == 0, result.output
            outs.append(out)
        for f1 in sorted(outs[0].iterdir()):
            f2 = outs[1] / f1.name
            assert f1.read_bytes() == f2.read_bytes(), f1.name
