"""Error grids, regime labels, derived statistics, and file round-trips."""

import json
import re

import pytest
from mpmath import mp, mpf

from rstirling.analysis import (EXPORT_COLUMNS, REGIME_HIGH_Q, REGIME_LOW_Q,
                                ErrorRecord, classify_regime, envelope_constant,
                                error_grid, export, high_q_asymptote_gap,
                                max_scaled_error, qz0_profile, read_records,
                                same_curve_deviation)
from rstirling.approx import ratio_CF
from rstirling.errors import DomainError


@pytest.fixture(scope="module")
def grid50():
    return error_grid(2, 50)


@pytest.fixture(scope="module")
def grid100():
    return error_grid(2, 100)


class TestGrid:
    def test_row_count_and_order(self, grid50):
        assert len(grid50) == 24
        assert [rec.q for rec in grid50] == list(range(1, 25))
        assert all(rec.a == 50 - 2 * rec.q for rec in grid50)

    def test_no_flagged_cells_in_default_range(self, grid50):
        assert not any(rec.flagged for rec in grid50)

    def test_regime_labels(self, grid50):
        # 50^(1/5) = 2.187...: only a in {1, 2} is HighQ; a is even here
        for rec in grid50:
            expected = REGIME_HIGH_Q if rec.a <= 2 else REGIME_LOW_Q
            assert rec.regime == expected
        assert classify_regime(100, 2) == REGIME_HIGH_Q
        assert classify_regime(100, 3) == REGIME_LOW_Q

    def test_out_of_domain_cells_are_flagged_not_fatal(self):
        records = error_grid(2, 50, q_range=[24, 25, 26])
        assert not records[0].flagged
        assert records[1].flagged and records[2].flagged  # a = 0, a < 0
        assert records[1].error

    def test_scaled_error_bound(self, grid50, grid100):
        assert max_scaled_error(grid50) < mpf("0.16")
        assert max_scaled_error(grid100) < mpf("0.16")

    def test_cd_gap_is_the_stirling_correction(self, grid50):
        # rel_C - rel_F = (ratio_CF - 1)(1 + rel_F) exactly
        for rec in grid50:
            with mp.workprec(128):
                lhs = rec.rel_err_C - rec.rel_err_F
                rhs = (ratio_CF(rec.a) - 1) * (1 + rec.rel_err_F)
                assert abs(lhs - rhs) < mpf("1e-12"), rec.q

    def test_same_curve(self, grid50, grid100):
        assert same_curve_deviation(grid50, grid100, exclude=3) < 0.05

    def test_envelope_constant_reported(self, grid50):
        k = envelope_constant(grid50)
        assert 0 < k < 1

    def test_parallel_map_matches_serial(self, grid50):
        parallel = error_grid(2, 50, parallelism=4)
        assert [rec.q for rec in parallel] == [rec.q for rec in grid50]
        for a, b in zip(parallel, grid50):
            assert a.scaled_err_F == b.scaled_err_F
            assert a.log_exact == b.log_exact


class TestQz0Profile:
    def test_high_q_asymptote(self):
        # qz0 = (r+1)(p - rq)(1 + O(..)) near the boundary
        gap = high_q_asymptote_gap(2, 1000, 499)
        assert mpf("0.9") <= gap <= mpf("1.1")

    def test_low_q_theta_p(self):
        rows = qz0_profile(1, 1000, q_range=[1])
        q, qz0, ok = rows[0]
        assert abs(qz0 / 1000 - 1) < mpf("0.01")
        assert ok

    def test_interior_point_positive(self):
        rows = qz0_profile(2, 100, q_range=[25])
        _, qz0, ok = rows[0]
        assert qz0 > 0 and ok

    def test_growth_floor_holds_on_default_grid(self):
        rows = qz0_profile(2, 200)
        assert all(ok for (_, _, ok) in rows)


class TestExport:
    def test_csv_round_trip(self, grid50, tmp_path):
        path = tmp_path / "grid.csv"
        export(grid50, "csv", path)
        lines = path.read_text().splitlines()
        assert len(lines) == 25
        assert lines[0] == ",".join(EXPORT_COLUMNS)
        # every float cell in 17-significant-digit scientific notation
        assert re.match(r"^2,50,1,48,-?\d\.\d{16}e[+-]\d+,", lines[1])
        parsed = read_records(path)
        for orig, back in zip(grid50, parsed):
            assert (orig.r, orig.p, orig.q, orig.a) == (back.r, back.p, back.q, back.a)
            assert back.regime == orig.regime
            for name in ("z0", "qz0", "log_exact", "rel_err_F", "rel_err_C",
                         "rel_err_W", "scaled_err_F"):
                assert float(getattr(orig, name)) == float(getattr(back, name))

    def test_single_record_file(self, grid50, tmp_path):
        path = tmp_path / "one.csv"
        export(grid50[:1], "csv", path)
        assert len(path.read_text().splitlines()) == 2

    def test_json_round_trip(self, grid50, tmp_path):
        path = tmp_path / "grid.json"
        export(grid50, "json", path)
        payload = json.loads(path.read_text())
        assert len(payload) == 24
        assert list(payload[0].keys()) == list(EXPORT_COLUMNS)
        parsed = read_records(path)
        assert [rec.q for rec in parsed] == [rec.q for rec in grid50]
        assert float(parsed[3].scaled_err_F) == float(grid50[3].scaled_err_F)

    def test_flagged_cells_export_as_gaps(self, tmp_path):
        records = error_grid(2, 50, q_range=[24, 25])
        path = tmp_path / "flagged.csv"
        export(records, "csv", path)
        parsed = read_records(path)
        assert parsed[1].z0 is None and parsed[1].regime is None

    def test_errors(self, grid50, tmp_path):
        with pytest.raises(DomainError):
            export([], "csv", tmp_path / "empty.csv")
        with pytest.raises(DomainError):
            export(grid50, "xml", tmp_path / "grid.xml")
        with pytest.raises(OSError):
            export(grid50, "csv", tmp_path / "missing" / "grid.csv")
        bad = tmp_path / "bad.csv"
        bad.write_text("not,the,expected,header\n1,2,3,4\n")
        with pytest.raises(DomainError):
            read_records(bad)


class TestErrorRecordShape:
    def test_flagged_property(self):
        rec = ErrorRecord(r=2, p=10, q=5, a=0, error="boundary")
        assert rec.flagged
        assert not ErrorRecord(r=2, p=10, q=4, a=2).flagged
