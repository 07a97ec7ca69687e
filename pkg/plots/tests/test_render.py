import pytest

from mzplots import render
from mzplots.cli import main
from mzplots.io import MissingColumn, NoRows

HEADER = ("experiment,family,spec,n,N,lower_ratio,upper_ratio,bound_low,"
          "bound_high,violations,trials,seed,wall_ms")


def _write(tmp_path, name, rows):
    path = tmp_path / name
    path.write_text("\n".join([HEADER] + rows) + "\n")
    return str(path)


@pytest.fixture
def ratio_csv(tmp_path):
    rows = [f"demo,trig,lp:2,{n},{10 * n},{1 - 0.01 * n},{1 + 0.01 * n},"
            f"0.5,1.5,0,100,7,1.0" for n in (2, 4, 8, 16)]
    return _write(tmp_path, "ratio.csv", rows)


@pytest.fixture
def decay_csv(tmp_path):
    # exact power law n^{-1.25}; harness slope recorded in bound_low
    rows = [f"decay,target,lp:2,{n},,{(n / 8) ** -1.25 * 0.04},"
            f"{0.2},-1.25,4,0,5,7,1.0" for n in (8, 16, 32, 64)]
    return _write(tmp_path, "decay.csv", rows)


class TestRatioEnvelope:
    def test_renders(self, ratio_csv, tmp_path):
        out = tmp_path / "r.png"
        info = render.ratio_envelope(ratio_csv, str(out))
        assert out.exists() and out.stat().st_size > 1000
        assert info["rows"] == 4

    def test_idempotent(self, ratio_csv, tmp_path):
        out1, out2 = tmp_path / "a.png", tmp_path / "b.png"
        render.ratio_envelope(ratio_csv, str(out1))
        before = open(ratio_csv).read()
        render.ratio_envelope(ratio_csv, str(out2))
        assert open(ratio_csv).read() == before
        assert out1.read_bytes() == out2.read_bytes()

    def test_missing_column(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("experiment,n\na,1\n")
        with pytest.raises(MissingColumn) as err:
            render.ratio_envelope(str(path), str(tmp_path / "x.png"))
        assert "lower_ratio" in str(err.value)

    def test_empty_rows(self, tmp_path):
        path = tmp_path / "empty.csv"
        path.write_text(HEADER + "\n")
        with pytest.raises(NoRows):
            render.ratio_envelope(str(path), str(tmp_path / "x.png"))


class TestLoglogDecay:
    def test_refit_matches_synthetic_slope(self, decay_csv, tmp_path):
        info = render.loglog_decay(decay_csv, str(tmp_path / "d.png"))
        # least-squares refit oracle on an exact power law
        assert info["slope"] == pytest.approx(-1.25, abs=1e-9)
        assert info["harness_slope"] == -1.25
        assert info["slope_gap"] < 1e-9

    def test_needs_positive_values(self, tmp_path):
        rows = ["d,t,lp:2,2,,0.0,,,,0,1,7,1.0", "d,t,lp:2,4,,0.1,,,,0,1,7,1.0"]
        path = _write(tmp_path, "zero.csv", rows)
        with pytest.raises(Exception):
            render.loglog_decay(path, str(tmp_path / "x.png"))


class TestMarginHist:
    def test_renders_and_reports_min(self, ratio_csv, tmp_path):
        info = render.margin_hist(ratio_csv, str(tmp_path / "m.png"))
        assert info["count"] == 8            # both bound sides present
        assert info["min_margin"] > 0

    def test_requires_bounds(self, tmp_path):
        rows = ["a,t,lp:2,2,,0.5,1.5,,,0,1,7,1.0"]
        path = _write(tmp_path, "nob.csv", rows)
        with pytest.raises(MissingColumn):
            render.margin_hist(path, str(tmp_path / "x.png"))


class TestCli:
    def test_exit_codes(self, ratio_csv, tmp_path):
        assert main(["ratio-envelope", ratio_csv,
                     str(tmp_path / "ok.png")]) == 0
        bad = tmp_path / "bad.csv"
        bad.write_text("experiment,n\na,1\n")
        assert main(["ratio-envelope", str(bad),
                     str(tmp_path / "no.png")]) == 2

    def test_empty_csv_exit(self, tmp_path, capsys):
        empty = tmp_path / "empty.csv"
        empty.write_text(HEADER + "\n")
        assert main(["margin-hist", str(empty), str(tmp_path / "x.png")]) == 2
        assert "no rows" in capsys.readouterr().err

    def test_loglog_cli(self, decay_csv, tmp_path, capsys):
        assert main(["loglog-decay", decay_csv, str(tmp_path / "d.png")]) == 0
        out = capsys.readouterr().out
        assert "slope" in out
