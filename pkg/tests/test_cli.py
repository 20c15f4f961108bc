import math

import numpy as np
import pytest

from gausschannel.cli import (ConfigError, RunConfig, build_parser, fmt,
                              load_config, main, parse_config_text)


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def csv_body(text):
    """Data rows (list of cell lists) and comment lines of a CSV dump."""
    comments, rows = [], []
    for line in text.strip().splitlines():
        if line.startswith("#"):
            comments.append(line)
        elif line:
            rows.append(line.split(","))
    return rows[0], rows[1:], comments


class TestConfigParsing:
    def test_round_trip_echo(self):
        cfg = RunConfig(alpha2=0.02, x=5.0, theta=50.0, r=0.3, mode="markovian",
                        tau_max=2.0, step=0.01, rotation=True).validate()
        parsed = parse_config_text(cfg.echo_lines())
        assert parsed == cfg

    def test_file_with_comments(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("# reference run\nalpha2 = 0.01\nx = 10\n"
                        "theta = 100\nr = 0.1\nmode = high_T\n")
        cfg = load_config(path)
        assert cfg.x == 10.0 and cfg.mode == "high_T"

    def test_unknown_key(self):
        with pytest.raises(ConfigError):
            parse_config_text(["coupling = 3"])

    def test_validation(self):
        with pytest.raises(ConfigError):
            RunConfig(alpha2=-1.0).validate()
        with pytest.raises(ConfigError):
            RunConfig(mode="bogus").validate()
        with pytest.raises(ConfigError):
            RunConfig(step=2.0, tau_max=1.0).validate()

    def test_fmt_has_12_significant_digits(self):
        assert fmt(1.0 / 3.0) == "0.333333333333"
        assert fmt(math.inf) == "inf"


class TestCoeffs:
    def test_row_count_and_zero_row(self, capsys):
        code, out, _ = run_cli(capsys, "coeffs", "--mode", "high_T",
                               "--tau-max", "1", "--step", "0.01")
        assert code == 0
        header, rows, _ = csv_body(out)
        assert header == list(("tau", "gamma", "delta", "big_gamma",
                               "delta_gamma", "s_nm", "s_markov"))
        assert len(rows) == 101           # floor(tau_max/step) + 1
        assert rows[0][0] == "0"
        assert all(cell == "0" for cell in rows[0][1:5])
        assert rows[0][5] == "" and rows[0][6] == ""

    def test_markovian_gamma_constant(self, capsys):
        code, out, _ = run_cli(capsys, "coeffs", "--mode", "markovian",
                               "--tau-max", "0.5", "--step", "0.01")
        assert code == 0
        _, rows, _ = csv_body(out)
        gammas = {row[1] for row in rows}
        assert gammas == {fmt(0.005 * 10 / 101)}

    def test_high_T_delta_plateau(self, capsys):
        code, out, _ = run_cli(capsys, "coeffs", "--mode", "high_T",
                               "--tau-max", "30", "--step", "0.02")
        assert code == 0
        _, rows, _ = csv_body(out)
        d_m = 0.01 * 100 * 100 / 101
        assert float(rows[-1][2]) == pytest.approx(d_m, rel=1e-6)

    def test_determinism(self, capsys):
        args = ("coeffs", "--mode", "high_T", "--tau-max", "0.3", "--step", "0.001")
        _, first, _ = run_cli(capsys, *args)
        _, second, _ = run_cli(capsys, *args)
        assert first == second

    def test_bad_config_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "coeffs", "--alpha2", "-3")
        assert code == 2
        assert "alpha2" in err


class TestTrace:
    def test_reference_band_resonant_summary(self, capsys, tmp_path):
        out_file = tmp_path / "trace.csv"
        code, _, _ = run_cli(capsys, "trace", "--mode", "high_T",
                             "--tau-max", "1", "--step", "0.001",
                             "--out", str(out_file))
        assert code == 0
        text = out_file.read_text()
        header, rows, comments = csv_body(text)
        assert len(rows) == 1001
        # first row: S = e^{-0.2} - 1 in both columns
        assert float(rows[0][5]) == pytest.approx(math.exp(-0.2) - 1, abs=1e-12)
        assert float(rows[0][6]) == pytest.approx(math.exp(-0.2) - 1, abs=1e-12)
        nm_line = next(c for c in comments if c.startswith("# s_nm_separability_time"))
        t_nm = float(nm_line.split(":", 1)[1])
        assert 0.61 < t_nm < 0.71
        mk_line = next(c for c in comments if c.startswith("# s_markov_separability_time"))
        t_mk = float(mk_line.split(":", 1)[1])
        assert t_mk == pytest.approx(0.183, abs=2e-3)

    def test_detuned_no_crossing_many_extrema(self, capsys, tmp_path):
        out_file = tmp_path / "trace.csv"
        code, _, _ = run_cli(capsys, "trace", "--mode", "high_T", "--x", "0.01",
                             "--tau-max", "1", "--step", "0.0005",
                             "--out", str(out_file))
        assert code == 0
        comments = [l for l in out_file.read_text().splitlines() if l.startswith("#")]
        nm_line = next(c for c in comments if "s_nm_separability_time" in c)
        assert "none in window" in nm_line
        extrema_line = next(c for c in comments if "s_nm_local_extrema" in c)
        assert int(extrema_line.split(":", 1)[1]) >= 10

    def test_round_trip_config_echo(self, capsys, tmp_path):
        out_file = tmp_path / "trace.csv"
        code, _, _ = run_cli(capsys, "trace", "--mode", "markovian",
                             "--tau-max", "0.4", "--step", "0.002",
                             "--theta", "55", "--out", str(out_file))
        assert code == 0
        echo = [line[2:] for line in out_file.read_text().splitlines()
                if line.startswith("# ") and " = " in line]
        cfg = parse_config_text(echo)
        assert cfg.theta == 55.0 and cfg.mode == "markovian"
        assert cfg.tau_max == 0.4 and cfg.step == 0.002

    def test_r_zero_boundary_start(self, capsys):
        code, out, _ = run_cli(capsys, "trace", "--mode", "markovian",
                               "--r", "0", "--tau-max", "0.1", "--step", "0.001")
        assert code == 0
        _, rows, _ = csv_body(out)
        assert float(rows[0][5]) == 0.0


class TestSepTime:
    def test_reference_pair(self, capsys):
        code, out, _ = run_cli(capsys, "septime", "--mode", "high_T",
                               "--tau-max", "1", "--step", "0.001")
        assert code == 0
        lines = dict(l.split(" = ") for l in out.strip().splitlines())
        assert float(lines["separability_time_nm"]) == pytest.approx(0.669, abs=0.01)
        assert float(lines["separability_time_markov"]) == pytest.approx(0.1832, abs=1e-3)

    def test_zero_temperature_markov_infinite(self, capsys):
        code, out, _ = run_cli(capsys, "septime", "--mode", "high_T",
                               "--theta", "0", "--tau-max", "1", "--step", "0.001")
        assert code == 0
        assert "separability_time_markov = infinite" in out

    def test_no_separation_is_success(self, capsys):
        code, out, _ = run_cli(capsys, "septime", "--mode", "high_T",
                               "--x", "0.01", "--tau-max", "1", "--step", "0.0005")
        assert code == 0
        assert "no separation before tau_max" in out

    def test_monotone_in_r(self, capsys):
        def times(r):
            _, out, _ = run_cli(capsys, "septime", "--mode", "high_T",
                                "--r", str(r), "--tau-max", "8", "--step", "0.002")
            lines = dict(l.split(" = ") for l in out.strip().splitlines())
            return (float(lines["separability_time_nm"]),
                    float(lines["separability_time_markov"]))
        small, large = times(0.1), times(2.0)
        assert large[0] > small[0] and large[1] > small[1]

    def test_requires_entanglement(self, capsys):
        code, _, err = run_cli(capsys, "septime", "--r", "0")
        assert code == 2
        assert "r > 0" in err


class TestSweep:
    def test_single_point_matches_septime(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--axis", "x", "--values", "10",
                               "--mode", "high_T", "--tau-max", "1",
                               "--step", "0.001")
        assert code == 0
        header, rows, _ = csv_body(out)
        assert header == ["x", "tau_s_nm", "tau_s_markov", "ratio", "status"]
        assert len(rows) == 1
        assert float(rows[0][1]) == pytest.approx(0.669, abs=0.01)
        assert float(rows[0][2]) == pytest.approx(0.1832, abs=1e-3)
        assert rows[0][4] == "ok"

    def test_ratio_large_for_band_resonant(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--axis", "x",
                               "--values", "0.01,10", "--mode", "high_T",
                               "--tau-max", "1", "--step", "0.0005")
        assert code == 0
        _, rows, _ = csv_body(out)
        assert rows[0][4] == "no-crossing"   # detuned: no separation in window
        assert float(rows[1][3]) > 1.0       # memoryful time exceeds Markovian

    def test_temperature_sweep_persists_longer(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--axis", "theta",
                               "--values", "50,100,200", "--mode", "high_T",
                               "--tau-max", "3", "--step", "0.001")
        assert code == 0
        _, rows, _ = csv_body(out)
        assert len(rows) == 3
        for row in rows:
            assert row[4] == "ok"
            assert float(row[1]) > float(row[2])

    def test_invalid_point_flagged_run_continues(self, capsys):
        code, out, _ = run_cli(capsys, "sweep", "--axis", "theta",
                               "--values=-5,100", "--mode", "high_T",
                               "--tau-max", "1", "--step", "0.001")
        assert code == 0
        _, rows, _ = csv_body(out)
        assert rows[0][4].startswith("error")
        assert rows[1][4] == "ok"


class TestFig1:
    def test_files_and_first_rows(self, capsys, tmp_path):
        code, out, _ = run_cli(capsys, "fig1", "--dir", str(tmp_path))
        assert code == 0
        top = (tmp_path / "fig1_top.csv").read_text()
        bottom = (tmp_path / "fig1_bottom.csv").read_text()
        for text in (top, bottom):
            header, rows, _ = csv_body(text)
            assert header == ["tau", "s_nm_highT", "s_markov"]
            assert len(rows) == 1001
            assert float(rows[0][1]) == pytest.approx(math.exp(-0.2) - 1, abs=1e-12)
            assert float(rows[0][2]) == pytest.approx(math.exp(-0.2) - 1, abs=1e-12)

    def test_top_sign_change_bottom_none(self, capsys, tmp_path):
        run_cli(capsys, "fig1", "--dir", str(tmp_path))
        _, top_rows, _ = csv_body((tmp_path / "fig1_top.csv").read_text())
        _, bot_rows, _ = csv_body((tmp_path / "fig1_bottom.csv").read_text())
        top_nm = np.array([float(r[1]) for r in top_rows])
        bot_nm = np.array([float(r[1]) for r in bot_rows])
        flips = np.where(np.diff(np.sign(top_nm)) != 0)[0]
        assert len(flips) == 1
        tau_flip = float(top_rows[flips[0]][0])
        assert tau_flip == pytest.approx(0.669, abs=2e-3)
        assert np.all(bot_nm < 0)

    def test_io_error_reports_path(self, capsys):
        code, _, err = run_cli(capsys, "fig1", "--dir", "/nonexistent-dir-xyz")
        assert code == 1
        assert "fig1_top.csv" in err


class TestParser:
    def test_unknown_command(self):
        with pytest.raises(SystemExit):
            build_parser().parse_args(["frobnicate"])
