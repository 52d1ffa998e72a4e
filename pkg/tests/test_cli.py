"""Command-line interface: output contracts, exit codes, determinism."""

import json

import pytest

from techknee.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


@pytest.fixture
def flat_csv(tmp_path):
    path = tmp_path / "flat.csv"
    path.write_text("year,value\n" + "".join(f"{y},42.0\n" for y in range(1990, 2000)))
    return str(path)


@pytest.fixture
def rising_csv(tmp_path):
    path = tmp_path / "rising.csv"
    rows = "".join(f"{y},{2.0 ** (y - 1990)}\n" for y in range(1990, 2000))
    path.write_text("year,value\n" + rows)
    return str(path)


@pytest.fixture
def share_csv(tmp_path):
    path = tmp_path / "share.csv"
    path.write_text("year,value\n1998,0.007\n1999,0.027\n2000,0.08\n2001,0.15\n")
    return str(path)


class TestFit:
    def test_flat_series_reports_zero_tir(self, capsys, flat_csv):
        code, out, _ = run(capsys, "fit", "--input", flat_csv)
        assert code == 0
        assert "TIR: 0.0% per year" in out
        assert flat_csv in out  # provenance

    def test_json_mode(self, capsys, rising_csv):
        code, out, _ = run(capsys, "fit", "--input", rising_csv, "--json")
        assert code == 0
        doc = json.loads(out)
        assert doc["tir_percent"] == pytest.approx(100.0, rel=1e-7)
        assert doc["window"] == [1990, 1999]

    def test_window_flags(self, capsys, rising_csv):
        code, out, _ = run(capsys, "fit", "--input", rising_csv, "--from", "1995", "--to", "1998", "--json")
        assert code == 0
        assert json.loads(out)["n_points"] == 4

    def test_missing_file_is_usage_error(self, capsys):
        code, _, err = run(capsys, "fit", "--input", "/nonexistent.csv")
        assert code == 2
        assert "no such file" in err


class TestCrossover:
    def test_empirical(self, capsys, tmp_path, flat_csv, rising_csv):
        code, out, _ = run(
            capsys, "crossover", "--replacement", rising_csv, "--target", flat_csv,
            "--unit", "count-per-year",
        )
        assert code == 0
        assert "crossover 1996" in out  # 2^6 = 64 >= 42

    def test_fitted_mode_reports_fraction(self, capsys, flat_csv, rising_csv):
        code, out, _ = run(
            capsys, "crossover", "--replacement", rising_csv, "--target", flat_csv,
            "--unit", "count-per-year", "--fitted",
        )
        assert code == 0
        assert "fractional" in out

    def test_require_crossover_exit_code(self, capsys, tmp_path, flat_csv):
        low = tmp_path / "low.csv"
        low.write_text("year,value\n" + "".join(f"{y},0.001\n" for y in range(1990, 2000)))
        code, out, err = run(
            capsys, "crossover", "--replacement", str(low), "--target", flat_csv,
            "--unit", "count-per-year", "--require-crossover",
        )
        assert code == 1
        assert "no crossover" in out
        assert "no crossover" in err


class TestKnee:
    def test_knee_year(self, capsys, share_csv):
        code, out, _ = run(capsys, "knee", "--input", share_csv, "--threshold", "0.10")
        assert code == 0
        assert "knee(10%) = 2001" in out

    def test_never_reached(self, capsys, share_csv):
        code, out, _ = run(capsys, "knee", "--input", share_csv, "--threshold", "0.9")
        assert code == 0
        assert "never reaches" in out


class TestCase:
    def test_audio_case_published_years(self, capsys):
        code, out, _ = run(capsys, "case", "audio")
        assert code == 0
        assert "crossover: 1998, knee(1%): 1999" in out
        assert "a1_bandwidth_cost" in out  # provenance

    def test_video_case_published_years(self, capsys):
        code, out, _ = run(capsys, "case", "video")
        assert code == 0
        assert "crossover: 2002, knee(1%): 2001" in out

    def test_json_mode(self, capsys):
        code, out, _ = run(capsys, "case", "audio", "--json")
        doc = json.loads(out)
        assert (doc["crossover"], doc["knee"]) == (1998, 1999)

    def test_scenario_override(self, capsys):
        # Song reference vs two-ounce cassette target: the cheap-postage-era
        # crossing holds from 1988 on (1.0999 vs 0.952 songs per dollar).
        code, out, _ = run(
            capsys, "case", "audio", "--scenario", "mail_cassette|song|minutes|empirical|0.1"
        )
        assert code == 0
        assert "crossover: 1988, knee(10%): 2001" in out

    def test_scenario_override_json(self, capsys):
        code, out, _ = run(
            capsys, "case", "audio", "--json",
            "--scenario", "mail_cd|album|minutes|fitted:1995-|0.01",
        )
        doc = json.loads(out)
        assert doc["crossover"] == 1998  # from-1995 regression intersection
        assert doc["scenario"] == "audio|mail_cd|album|minutes|fitted:1995-|0.01"

    def test_bad_scenario_id(self, capsys):
        code, _, err = run(capsys, "case", "audio", "--scenario", "just|two")
        assert code == 2
        assert "scenario id" in err

    def test_plot_emission_and_determinism(self, capsys, tmp_path):
        out1, out2 = tmp_path / "a", tmp_path / "b"
        assert run(capsys, "case", "audio", "--out", str(out1))[0] == 0
        assert run(capsys, "case", "audio", "--out", str(out2))[0] == 0
        for name in ("audio_curves.csv", "audio.svg"):
            first, second = (out1 / name).read_bytes(), (out2 / name).read_bytes()
            assert first == second
        header = (out1 / "audio_curves.csv").read_text().splitlines()[0]
        assert header == "year,series,value,unit"

    def test_tidy_rows_carry_units(self, capsys, tmp_path):
        run(capsys, "case", "video", "--out", str(tmp_path))
        body = (tmp_path / "video_curves.csv").read_text()
        assert "media-units-per-real-dollar" in body
        assert "dimensionless-share" in body


class TestSweep:
    def test_end_to_end(self, capsys, tmp_path):
        config = {
            "case": "audio",
            "targets": ["mail_cd"],
            "reference_media": ["album", "song"],
            "usage_metrics": ["minutes"],
            "detection": ["empirical"],
            "knee_thresholds": [0.01],
        }
        config_path = tmp_path / "sweep.json"
        config_path.write_text(json.dumps(config))
        out_dir = tmp_path / "out"
        code, out, _ = run(capsys, "sweep", "--config", str(config_path), "--out", str(out_dir))
        assert code == 0
        rows = (out_dir / "results.csv").read_text().splitlines()
        assert len(rows) == 3  # header + 2 scenarios
        assert rows[1].split(",")[7] == "1998"  # album crossover
        assert rows[2].split(",")[7] == "1992"  # song crossover
        summary = json.loads((out_dir / "feasibility.json").read_text())
        all_range = [r for r in summary["ranges"] if r["label"] == "all"][0]
        assert all_range["crossover"] == [1992, 1998]

    def test_custom_series_target(self, capsys, tmp_path):
        drive = tmp_path / "drive.csv"
        drive.write_text("year,value\n" + "".join(f"{y},0.9\n" for y in range(1983, 2016)))
        config = {
            "case": "audio",
            "targets": ["drive"],
            "reference_media": ["album"],
            "usage_metrics": ["minutes"],
            "detection": ["empirical"],
            "knee_thresholds": [0.01],
            "custom_series": {"drive": {"path": str(drive), "unit": "media-units-per-real-dollar"}},
        }
        config_path = tmp_path / "sweep.json"
        config_path.write_text(json.dumps(config))
        code, _, _ = run(capsys, "sweep", "--config", str(config_path), "--out", str(tmp_path / "out"))
        assert code == 0

    def test_missing_config(self, capsys, tmp_path):
        code, _, err = run(capsys, "sweep", "--config", str(tmp_path / "nope.json"), "--out", str(tmp_path))
        assert code == 2
        assert "config" in err


class TestReproduce:
    def test_report_lists_every_cell(self, capsys):
        code, out, _ = run(capsys, "reproduce")
        assert code == 0  # non-strict never fails on deviations
        assert "t2_audio_mail_cd" in out
        assert "UNSUPPORTED" in out and "no published cost model" in out
        assert "deviations: 2" in out

    def test_strict_flags_known_deviation(self, capsys):
        # The audio from-1995 regression cell is irreproducible from the
        # bundled data (see decisions ledger); strict mode must say so.
        code, out, err = run(capsys, "reproduce", "--strict")
        assert code == 1
        assert "t5_audio_fit_from1995" in out
        assert "deviate" in err

    def test_json_and_files(self, capsys, tmp_path):
        code, out, _ = run(capsys, "reproduce", "--json", "--out", str(tmp_path))
        assert code == 0
        doc = json.loads(out)
        assert doc["deviations"] == ["t5_audio_fit_from1995", "fig4_audio_crossover_range"]
        for name in ("cells.csv", "report.json", "fig3_audio.csv", "fig3_audio.svg",
                     "fig3_video.csv", "fig3_video.svg"):
            assert (tmp_path / name).exists(), name
        assert (tmp_path / "fig3_audio.svg").read_text().startswith("<svg")

    def test_output_files_are_byte_deterministic(self, capsys, tmp_path):
        first, second = tmp_path / "one", tmp_path / "two"
        run(capsys, "reproduce", "--out", str(first))
        run(capsys, "reproduce", "--out", str(second))
        for path in sorted(first.iterdir()):
            assert path.read_bytes() == (second / path.name).read_bytes(), path.name


class TestExportData:
    def test_exports_all_tables(self, capsys, tmp_path):
        code, out, _ = run(capsys, "export-data", "--out", str(tmp_path / "dump"))
        assert code == 0
        assert "exported 16 files" in out


class TestUsageErrors:
    def test_unknown_command(self, capsys):
        assert run(capsys, "frobnicate")[0] == 2

    def test_no_command(self, capsys):
        assert run(capsys)[0] == 2

    def test_version(self, capsys):
        code, out, _ = run(capsys, "--version")
        assert code == 0
