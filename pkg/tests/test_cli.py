"""CLI surface: subcommand output, exit codes, config handling."""

import json

import pytest

from rstirling.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestExact:
    def test_recurrence(self, capsys):
        code, out, _ = run(capsys, "exact", "--r", "2", "--p", "6", "--q", "2")
        assert code == 0
        assert out.strip() == "25"

    def test_alekseyev_agrees(self, capsys):
        code, out, _ = run(capsys, "exact", "--r", "2", "--p", "6", "--q", "2",
                           "--method", "alekseyev")
        assert code == 0 and out.strip() == "25"

    def test_partition_sum(self, capsys):
        code, out, _ = run(capsys, "exact", "--r", "1", "--p", "4", "--q", "2",
                           "--method", "partition-sum")
        assert code == 0 and out.strip() == "7"

    def test_contour_prints_log_value(self, capsys):
        code, out, _ = run(capsys, "exact", "--r", "2", "--p", "6", "--q", "2",
                           "--method", "contour")
        assert code == 0
        assert abs(float(out.split()[-1]) - 3.2188758248682007) < 1e-12

    def test_q_above_admissible_range_is_domain_error(self, capsys):
        code, _, err = run(capsys, "exact", "--r", "2", "--p", "5", "--q", "3")
        assert code == 2
        assert "q=3" in err

    def test_alekseyev_requires_r2(self, capsys):
        code, _, err = run(capsys, "exact", "--r", "3", "--p", "6", "--q", "2",
                           "--method", "alekseyev")
        assert code == 2 and "r=2" in err


class TestApprox:
    def test_hennecart_with_rel_err(self, capsys):
        code, out, _ = run(capsys, "approx", "--r", "2", "--p", "50", "--q", "20",
                           "--formula", "hennecart")
        assert code == 0
        lines = dict(line.split() for line in out.strip().splitlines())
        assert "log_value" in lines and "rel_err" in lines
        assert abs(50 * float(lines["rel_err"])) < 0.16

    def test_degenerate_boundary_is_domain_error(self, capsys):
        code, _, err = run(capsys, "approx", "--r", "2", "--p", "40", "--q", "20",
                           "--formula", "hennecart")
        assert code == 2 and "p - r*q" in err

    def test_largeq_with_a_flag(self, capsys):
        code, out, _ = run(capsys, "approx", "--r", "2", "--q", "1000", "--a", "5",
                           "--formula", "largeq")
        assert code == 0
        lines = dict(line.split() for line in out.strip().splitlines())
        assert abs(float(lines["rel_err"])) <= 5e-3

    def test_scientific_notation_17_digits(self, capsys):
        _, out, _ = run(capsys, "approx", "--r", "2", "--p", "50", "--q", "20")
        value = out.strip().splitlines()[0].split()[1]
        mantissa = value.split("e")[0]
        assert len(mantissa.lstrip("-").replace(".", "")) == 17


class TestGrid:
    def test_csv_row_count(self, capsys, tmp_path):
        path = tmp_path / "g.csv"
        code, out, _ = run(capsys, "grid", "--r", "2", "--p", "50",
                           "--output", str(path))
        assert code == 0
        assert "24 rows" in out
        assert len(path.read_text().splitlines()) == 25

    def test_json_format(self, capsys, tmp_path):
        path = tmp_path / "g.json"
        code, _, _ = run(capsys, "grid", "--r", "2", "--p", "20",
                         "--format", "json", "--output", str(path))
        assert code == 0
        assert len(json.loads(path.read_text())) == 9

    def test_missing_output_is_domain_error(self, capsys):
        code, _, err = run(capsys, "grid", "--r", "2", "--p", "20")
        assert code == 2 and "--output" in err

    def test_unwritable_path_is_io_error(self, capsys, tmp_path):
        code, _, _ = run(capsys, "grid", "--r", "2", "--p", "20",
                         "--output", str(tmp_path / "no" / "g.csv"))
        assert code == 4


class TestVerify:
    def test_nonneg_coeffs_json(self, capsys):
        code, out, _ = run(capsys, "verify", "nonneg-coeffs", "--r", "3", "--N", "60")
        assert code == 0
        payload = json.loads(out)
        assert payload["verdict"] == "AllPass"

    def test_report_to_file(self, capsys, tmp_path):
        path = tmp_path / "report.json"
        code, _, _ = run(capsys, "verify", "q-derivative-bounds",
                         "--r-list", "1,2", "--output", str(path))
        assert code == 0
        assert json.loads(path.read_text())["verdict"] == "AllPass"

    def test_scaled_error_bound(self, capsys):
        code, out, _ = run(capsys, "verify", "scaled-error-bound", "--r", "2",
                           "--p-list", "30", "--bound", "0.16")
        assert code == 0
        assert json.loads(out)["verdict"] == "AllPass"


class TestConfigAndCodes:
    def test_capacity_exit_code(self, capsys):
        code, _, err = run(capsys, "--max-p", "10", "exact", "--r", "2",
                           "--p", "20", "--q", "2")
        assert code == 3 and "cap" in err

    def test_config_file_applies(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("max_a = 1   # tight partition cap\n")
        code, _, _ = run(capsys, "--config", str(cfg), "exact", "--r", "2",
                         "--p", "8", "--q", "3", "--method", "partition-sum")
        assert code == 3

    def test_flag_overrides_config(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("max_a = 1\n")
        code, out, _ = run(capsys, "--config", str(cfg), "--max-a", "64",
                           "exact", "--r", "2", "--p", "8", "--q", "3",
                           "--method", "partition-sum")
        # S_2(8,3): sizes (2,2,4) give 210, (2,3,3) give 280
        assert code == 0 and out.strip() == "490"

    def test_bad_config_line(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("nonsense\n")
        code, _, err = run(capsys, "--config", str(cfg), "selftest")
        assert code == 2 and "key=value" in err

    def test_precision_floor(self, capsys):
        code, _, err = run(capsys, "--precision-bits", "32", "selftest")
        assert code == 2 and "precision_bits" in err


class TestSelftest:
    def test_selftest_passes(self, capsys):
        code, out, _ = run(capsys, "selftest")
        assert code == 0
        assert "FAIL" not in out
        assert out.strip().splitlines()[-1].startswith("OK")
