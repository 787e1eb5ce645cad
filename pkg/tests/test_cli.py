import csv
import json

import pytest

from hqz.cli import main, parse_args
from hqz.errors import ConfigError


def run_cli(args, tmp_path, name):
    out = tmp_path / name
    code = main(list(args) + ["--out", str(out)])
    return code, out


class TestParsing:
    def test_unknown_scenario(self):
        with pytest.raises(ConfigError):
            parse_args(["no-such-scenario"])

    def test_unknown_key(self):
        with pytest.raises(ConfigError):
            parse_args(["fuzz", "--bogus=3"])

    def test_bad_value(self):
        with pytest.raises(ConfigError):
            parse_args(["fuzz", "--seeds=abc"])

    def test_bad_format(self):
        with pytest.raises(ConfigError):
            parse_args(["fuzz", "--format=xml"])

    def test_equals_and_space_forms(self):
        cfg = parse_args(["fuzz", "--seeds=7", "--format", "jsonl"])
        assert cfg.seeds == 7
        assert cfg.format == "jsonl"

    def test_config_file(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("# comment\nseeds = 9\nk = 0.25\n")
        cfg = parse_args(["fuzz", "--config", str(path)])
        assert cfg.seeds == 9
        assert cfg.k == 0.25

    def test_config_file_unknown_key(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("mystery = 1\n")
        with pytest.raises(ConfigError):
            parse_args(["fuzz", "--config", str(path)])

    def test_cli_overrides_config(self, tmp_path):
        path = tmp_path / "run.cfg"
        path.write_text("seeds = 9\n")
        cfg = parse_args(["fuzz", "--config", str(path), "--seeds=3"])
        assert cfg.seeds == 3

    def test_env_seed_override(self, tmp_path, monkeypatch):
        path = tmp_path / "run.cfg"
        path.write_text("seeds = 9\n")
        monkeypatch.setenv("HQZ_SEED", "4")
        cfg = parse_args(["fuzz", "--config", str(path)])
        assert cfg.seeds == 4
        # explicit flag still wins over the environment
        cfg = parse_args(["fuzz", "--config", str(path), "--seeds=2"])
        assert cfg.seeds == 2


class TestExitCodes:
    def test_unknown_scenario_exits_2(self, capsys):
        assert main(["nope"]) == 2

    def test_unwritable_path_exits_3(self, capsys):
        assert main(["fuzz", "--seeds=0", "--out", "/no/such/dir/x.csv"]) == 3

    def test_vacuous_fuzz_passes(self, tmp_path, capsys):
        code, out = run_cli(["fuzz", "--seeds=0"], tmp_path, "f.csv")
        assert code == 0
        assert "[PASS]" in capsys.readouterr().out
        assert out.exists()


class TestScenarioRuns:
    def test_sharpness(self, tmp_path, capsys):
        code, out = run_cli(["reproduce-sharpness-3d"], tmp_path, "s.csv")
        assert code == 0
        with open(out) as fh:
            rows = list(csv.DictReader(fh))
        assert [r["m"] for r in rows] == ["2", "5", "10", "20", "50", "100"]
        assert abs(float(rows[0]["X"]) - 1.0 / 3.0) < 1e-8

    def test_ratio_limit_n5(self, tmp_path, capsys):
        code, out = run_cli(["reproduce-ratio-limit", "--n=5"], tmp_path, "r.csv")
        assert code == 0
        with open(out) as fh:
            reader = csv.DictReader(fh)
            assert reader.fieldnames == ["n", "a", "X", "Y", "ratio",
                                         "target", "deviation"]
            rows = list(reader)
        assert abs(float(rows[-1]["ratio"]) - 4.0) / 4.0 < 0.05

    def test_fuzz_csv_reruns_byte_identical(self, tmp_path, capsys):
        _, out1 = run_cli(["fuzz", "--seeds=3", "--k=0.3"], tmp_path, "a.csv")
        _, out2 = run_cli(["fuzz", "--seeds=3", "--k=0.3"], tmp_path, "b.csv")
        assert out1.read_bytes() == out2.read_bytes()

    def test_fuzz_jsonl_records(self, tmp_path, capsys):
        code, out = run_cli(["fuzz", "--seeds=2", "--k=0.1", "--format=jsonl"],
                            tmp_path, "f.jsonl")
        assert code == 0
        lines = out.read_text().splitlines()
        assert len(lines) == 1
        record = json.loads(lines[0])
        assert record["seeds"] == 2
        assert record["worst_margin"] >= -1e-9

    def test_green_audit(self, tmp_path, capsys):
        code, out = run_cli(["green-audit"], tmp_path, "g.csv")
        assert code == 0
        with open(out) as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 4
        for r in rows:
            assert abs(float(r["residual"])) < float(r["threshold"])

    def test_laplacian_audit_small(self, tmp_path, capsys):
        code, out = run_cli(["laplacian-audit", "--seeds=3"], tmp_path, "l.csv")
        assert code == 0
        with open(out) as fh:
            rows = list(csv.DictReader(fh))
        assert len(rows) == 3
        for r in rows:
            assert float(r["max_rel_abs_f"]) < 1e-5
            assert float(r["max_rel_ulogu"]) < 1e-5

    def test_calderon_small(self, tmp_path, capsys):
        code, out = run_cli(["calderon-estimate", "--seeds=5"], tmp_path, "c.csv")
        assert code == 0
        with open(out) as fh:
            rows = list(csv.DictReader(fh))
        assert rows[0]["member"] == "z"
        assert rows[-1]["member"] == "max"

    def test_csv_header_row_present(self, tmp_path, capsys):
        _, out = run_cli(["fuzz", "--seeds=0"], tmp_path, "h.csv")
        first = out.read_text().splitlines()[0]
        assert first == "seeds,k,worst_margin,best_ratio,witness"
