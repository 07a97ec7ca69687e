import subprocess
import sys

import pytest

from mzlab import experiments
from mzlab.cli import main
from mzlab.experiments import ConfigError, parse_config

CONFIG_OK = """
# fast deterministic demo plan
[mz_l2_small]
experiment = mz_l2_exact
n = 2, 4
trials = 20
seed = 11

[quad_small]
experiment = quad_exactness_trig
n = 3
trials = 10
"""


def _strip_wall(path):
    with open(path) as fh:
        lines = fh.read().splitlines()
    head = lines[0].split(",")
    keep = [i for i, c in enumerate(head) if c != "wall_ms"]
    return "\n".join(",".join(ln.split(",")[i] for i in keep) for ln in lines)


class TestConfigParsing:
    def test_sections_and_values(self):
        cfg = parse_config(CONFIG_OK)
        assert cfg["mz_l2_small"]["n"] == [2, 4]
        assert cfg["quad_small"]["trials"] == 10

    def test_error_has_line_and_column(self):
        with pytest.raises(ConfigError) as err:
            parse_config("[a]\nkey value\n")
        assert err.value.line == 2

    def test_key_outside_section(self):
        with pytest.raises(ConfigError):
            parse_config("x = 1\n")


class TestRun:
    def test_run_writes_deterministic_csv(self, tmp_path):
        cfg_path = tmp_path / "plan.cfg"
        cfg_path.write_text(CONFIG_OK)
        out1, out2 = tmp_path / "o1", tmp_path / "o2"
        assert main(["run", "--config", str(cfg_path), "--out", str(out1)]) == 0
        assert main(["run", "--config", str(cfg_path), "--out", str(out2)]) == 0
        for name in ("mz_l2_small", "quad_small"):
            a = _strip_wall(out1 / f"{name}.csv")
            b = _strip_wall(out2 / f"{name}.csv")
            assert a == b
        summary = (out1 / "summary.txt").read_text()
        assert "mz_l2_small: PASS" in summary

    def test_seed_override_changes_rows(self, tmp_path):
        cfg_path = tmp_path / "plan.cfg"
        cfg_path.write_text(CONFIG_OK)
        out1, out2 = tmp_path / "s1", tmp_path / "s2"
        main(["run", "--config", str(cfg_path), "--out", str(out1)])
        main(["run", "--config", str(cfg_path), "--out", str(out2),
              "--seed", "99"])
        assert (_strip_wall(out1 / "mz_l2_small.csv")
                != _strip_wall(out2 / "mz_l2_small.csv"))

    def test_bad_spec_exits_2(self, tmp_path):
        cfg_path = tmp_path / "bad.cfg"
        cfg_path.write_text("[x]\nexperiment = mz_orlicz_3d\n"
                            "specs = lp:-1\nn = 2\ntrials = 2\n")
        assert main(["run", "--config", str(cfg_path),
                     "--out", str(tmp_path / "o")]) == 2

    def test_unknown_experiment_exits_2(self, tmp_path):
        cfg_path = tmp_path / "bad.cfg"
        cfg_path.write_text("[x]\nexperiment = nope\n")
        assert main(["run", "--config", str(cfg_path),
                     "--out", str(tmp_path / "o")]) == 2

    def test_filter_selects_subset(self, tmp_path):
        cfg_path = tmp_path / "plan.cfg"
        cfg_path.write_text(CONFIG_OK)
        out = tmp_path / "f"
        main(["run", "--config", str(cfg_path), "--out", str(out),
              "--filter", "quad*"])
        assert not (out / "mz_l2_small.csv").exists()
        assert (out / "quad_small.csv").exists()

    def test_parallel_jobs_match_serial(self, tmp_path):
        cfg_path = tmp_path / "plan.cfg"
        cfg_path.write_text("[mm]\nexperiment = maxmin_sandwich\n"
                            "n = 2, 4\ntrials = 8\ngrid = 512\n")
        out1, out2 = tmp_path / "j1", tmp_path / "j2"
        assert main(["run", "--config", str(cfg_path), "--out", str(out1)]) == 0
        assert main(["run", "--config", str(cfg_path), "--out", str(out2),
                     "--jobs", "2"]) == 0
        assert _strip_wall(out1 / "mm.csv") == _strip_wall(out2 / "mm.csv")


class TestListAndTools:
    def test_list_contains_catalog(self, capsys):
        assert main(["list"]) == 0
        out = capsys.readouterr().out
        assert "mz_orlicz_3d" in out
        assert "nikolskii" in out
        assert len(out.strip()) > 0

    def test_constants_subcommand(self, capsys):
        assert main(["constants", "--id", "orlicz_jitter_upper"]) == 0
        out = capsys.readouterr().out
        assert "factor" in out

    def test_constants_unknown_id(self, capsys):
        assert main(["constants", "--id", "bogus"]) == 2

    def test_nodes_subcommand(self, tmp_path):
        path = tmp_path / "nodes.csv"
        assert main(["nodes", "--kind", "minimal_trig", "--n", "2",
                     "--out", str(path)]) == 0
        lines = path.read_text().splitlines()
        assert lines[0] == "k,x_k,cell_lo,cell_hi,weight"
        assert len(lines) == 6

    def test_console_script_entrypoint(self):
        proc = subprocess.run([sys.executable, "-m", "mzlab.cli", "list"],
                              capture_output=True, text=True)
        assert proc.returncode == 0
        assert "available experiments" in proc.stdout


class TestSchema:
    def test_registry_covers_acceptance_experiments(self):
        needed = {"quad_exactness_trig", "mz_l2_exact", "mz_orlicz_3d",
                  "zygmund_node_bound", "orlicz_sharp_upper",
                  "extremal_equalities", "maxmin_sandwich",
                  "grid_mz_constants", "gauss_jacobi_cms", "stechkin_boas",
                  "nikolskii", "spline_bernstein", "lagrange_error",
                  "expsum_bernstein"}
        assert needed <= set(experiments.REGISTRY)

    def test_csv_columns_fixed(self):
        assert experiments.CSV_COLUMNS == (
            "experiment", "family", "spec", "n", "N", "lower_ratio",
            "upper_ratio", "bound_low", "bound_high", "violations", "trials",
            "seed", "wall_ms")
