"""Command-line interface: records, formats, config resolution, exit codes."""

import json
import math

import pytest

import barneszeta.cli as cli
from barneszeta import Regime, VerificationReport

ZETA15 = 2.6123753486854883
PI2_6 = math.pi**2 / 6.0


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestEval:
    def test_basel_json_record(self, capsys):
        code, out, _ = run(capsys, "eval", "--a", "1", "--w", "1",
                           "--sigma", "2", "--t", "0")
        assert code == 0
        d = json.loads(out)
        assert abs(d["re"] - PI2_6) < 1e-7
        assert abs(d["im"]) < 1e-12
        assert d["err_kind"] in ("rigorous_bound", "heuristic_estimate")
        assert d["terms_used"] >= 1
        assert d["config"]["command"] == "eval"
        assert d["config"]["w"] == "1"

    def test_text_and_csv_formats(self, capsys):
        code, out, _ = run(capsys, "eval", "--a", "1", "--w", "1",
                           "--sigma", "3", "--t", "0", "--format", "text")
        assert code == 0
        assert "re" in out and "# command=eval" in out
        code, out, _ = run(capsys, "eval", "--a", "1", "--w", "1,1.41421356",
                           "--sigma", "1.5", "--t", "0.5", "--format", "csv")
        assert code == 0
        lines = [l for l in out.splitlines() if not l.startswith("#")]
        assert lines[0].startswith("re,im,err_estimate")
        assert len(lines[1].split(",")) == len(lines[0].split(","))

    def test_method_selection(self, capsys):
        code, out, _ = run(capsys, "eval", "--a", "1", "--w", "1", "--sigma",
                           "4", "--t", "0", "--method", "direct",
                           "--rel-tol", "1e-9")
        assert code == 0 and json.loads(out)["method"] == "direct_series"
        code, out, _ = run(capsys, "eval", "--a", "1", "--w", "1", "--sigma",
                           "1.5", "--t", "30", "--method", "approx",
                           "--x", "400")
        assert code == 0 and json.loads(out)["method"] == "approx_formula"

    def test_domain_exit_codes(self, capsys):
        assert run(capsys, "eval", "--a", "-1", "--w", "1", "--sigma", "2")[0] == 2
        assert run(capsys, "eval", "--a", "1", "--w", "1,1",
                   "--sigma", "0.5")[0] == 2
        # near-pole refusal
        assert run(capsys, "eval", "--a", "1", "--w", "1", "--sigma", "1",
                   "--t", "0", "--method", "approx")[0] == 2
        # diagnostics go to standard error
        _, out, err = run(capsys, "eval", "--a", "-1", "--w", "1",
                          "--sigma", "2")
        assert out == "" and "NonPositiveShift" in err

    def test_budget_exit_code(self, capsys):
        code, _, err = run(capsys, "eval", "--a", "1", "--w", "1", "--sigma",
                           "1.05", "--t", "0", "--method", "direct",
                           "--rel-tol", "1e-10")
        assert code == 3 and "BudgetExceeded" in err

    def test_usage_error(self, capsys):
        assert run(capsys, "eval", "--a", "1", "--w", "1", "--sigma", "2",
                   "--method", "bogus")[0] == 2
        assert run(capsys, "nonsense")[0] == 2

    def test_missing_required_flag(self, capsys):
        code, _, err = run(capsys, "eval", "--a", "1", "--sigma", "2")
        assert code == 2 and "--w" in err

    def test_reruns_bit_identical(self, capsys):
        argv = ("eval", "--a", "1", "--w", "1,2", "--sigma", "2.5",
                "--t", "7")
        _, out1, _ = run(capsys, *argv)
        _, out2, _ = run(capsys, *argv)
        assert out1 == out2

    def test_term_cap_env(self, capsys, monkeypatch):
        monkeypatch.setenv("BARNES_TERM_CAP", "1000")
        code, _, err = run(capsys, "eval", "--a", "1", "--w", "1", "--sigma",
                           "4", "--t", "0", "--method", "direct",
                           "--rel-tol", "1e-9")
        assert code == 3 and "BudgetExceeded" in err
        # explicit flag overrides the environment
        code, out, _ = run(capsys, "eval", "--a", "1", "--w", "1", "--sigma",
                           "4", "--t", "0", "--method", "direct",
                           "--rel-tol", "1e-9", "--term-cap", "10000000")
        assert code == 0


class TestTilde:
    def test_rational_value(self, capsys):
        code, out, _ = run(capsys, "tilde", "--a", "1", "--w", "1/1,1/1",
                           "--sigma", "1.75", "--weights-mode", "rational")
        assert code == 0
        d = json.loads(out)
        assert d["path"] == "rational_series"
        assert abs(d["value"] - ZETA15) < 1e-8 * ZETA15
        assert d["warnings"] == []

    def test_independent_warns(self, capsys):
        code, out, _ = run(capsys, "tilde", "--a", "1", "--w", "1,1",
                           "--sigma", "1.75", "--weights-mode", "independent",
                           "--rel-tol", "1e-4")
        assert code == 0
        d = json.loads(out)
        assert d["path"] == "independent_reduction"
        assert len(d["warnings"]) >= 1
        assert any("assumed" in w for w in d["warnings"])

    def test_float_weights_cannot_be_rational(self, capsys):
        code, _, err = run(capsys, "tilde", "--a", "1", "--w", "1,1.41421356",
                           "--sigma", "1.75", "--weights-mode", "rational")
        assert code == 2 and "ConflictingDeclaration" in err

    def test_sigma_range(self, capsys):
        assert run(capsys, "tilde", "--a", "1", "--w", "1,1", "--sigma",
                   "1.4", "--weights-mode", "rational")[0] == 2


class TestMeanSquare:
    def test_csv_trace(self, capsys):
        code, out, _ = run(capsys, "meansquare", "--a", "1", "--w", "1",
                           "--sigma", "2", "--T", "50",
                           "--checkpoints", "25,50")
        assert code == 0
        lines = out.strip().splitlines()
        assert "T,I,evals" in lines
        data = [l for l in lines if l and not l.startswith("#")
                and l != "T,I,evals"]
        assert len(data) == 2
        i_vals = [float(l.split(",")[1]) for l in data]
        assert 0.0 <= i_vals[0] <= i_vals[1]

    def test_appends_final_T(self, capsys):
        code, out, _ = run(capsys, "meansquare", "--a", "1", "--w", "1",
                           "--sigma", "2", "--T", "50", "--checkpoints", "25")
        assert code == 0
        data = [l for l in out.strip().splitlines()
                if l and not l.startswith("#") and l != "T,I,evals"]
        assert len(data) == 2 and data[-1].startswith("50,")

    def test_T_must_exceed_one(self, capsys):
        assert run(capsys, "meansquare", "--a", "1", "--w", "1", "--sigma",
                   "2", "--T", "0.5")[0] == 2

    def test_out_file(self, capsys, tmp_path):
        path = tmp_path / "trace.csv"
        code, out, _ = run(capsys, "meansquare", "--a", "1", "--w", "1",
                           "--sigma", "2", "--T", "20", "--out", str(path))
        assert code == 0 and out == ""
        assert "T,I,evals" in path.read_text()


class TestVerify:
    def test_self_test(self, capsys):
        code, out, _ = run(capsys, "verify", "--self-test")
        assert code == 0
        d = json.loads(out)
        assert d["pass"] is True
        assert d["max_relative_error"] <= 1e-12
        assert d["config"]["cases"] == 100

    def test_report_and_exit_zero(self, capsys):
        code, out, _ = run(capsys, "verify", "--a", "1", "--w", "1",
                           "--sigma", "1.25", "--T-grid", "50,100,200,400",
                           "--weights-mode", "rational")
        assert code == 0
        d = json.loads(out)
        assert d["pass"] is True and d["regime"] == "sigma_above_r"
        assert d["config"]["command"] == "verify"

    def test_exit_one_on_failed_verification(self, capsys, monkeypatch):
        fake = VerificationReport(
            sigma=1.25, regime=Regime.SIGMA_ABOVE_R, tilde_value=ZETA15,
            residuals=((50.0, 1.0), (100.0, 4.0), (200.0, 16.0), (400.0, 64.0)),
            fitted_slope=2.0, predicted_slope_bound=0.0, passed=False,
        )
        monkeypatch.setattr(cli, "verify_theorems",
                            lambda *a, **k: fake)
        code, out, _ = run(capsys, "verify", "--a", "1", "--w", "1",
                           "--sigma", "1.25", "--T-grid", "50,100,200,400",
                           "--weights-mode", "rational")
        assert code == 1
        assert json.loads(out)["pass"] is False

    def test_domain_exit(self, capsys):
        assert run(capsys, "verify", "--a", "1", "--w", "1", "--sigma",
                   "-0.5", "--T-grid", "10,20,40,80",
                   "--weights-mode", "rational")[0] == 2


class TestConfigResolution:
    def test_config_file_supplies_defaults(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("# comment\na=1\nw=1\nsigma=2\nrel-tol=1e-6\n")
        code, out, _ = run(capsys, "eval", "--config", str(cfg), "--t", "0")
        assert code == 0
        d = json.loads(out)
        assert d["config"]["rel_tol"] == cli._fmt(1e-6)

    def test_flags_override_config(self, capsys, tmp_path):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("a=1\nw=1\nsigma=2\nrel-tol=1e-6\n")
        code, out, _ = run(capsys, "eval", "--config", str(cfg), "--t", "0",
                           "--rel-tol", "1e-4")
        assert code == 0
        assert json.loads(out)["config"]["rel_tol"] == cli._fmt(1e-4)

    def test_unknown_or_malformed_config(self, capsys, tmp_path):
        bad = tmp_path / "bad.cfg"
        bad.write_text("bogus_key=1\n")
        assert run(capsys, "eval", "--config", str(bad), "--a", "1", "--w",
                   "1", "--sigma", "2")[0] == 2
        bad.write_text("not a pair\n")
        assert run(capsys, "eval", "--config", str(bad), "--a", "1", "--w",
                   "1", "--sigma", "2")[0] == 2
        assert run(capsys, "eval", "--config", str(tmp_path / "missing.cfg"),
                   "--a", "1", "--w", "1", "--sigma", "2")[0] == 2


class TestWeightParsing:
    def test_tokens(self):
        from fractions import Fraction

        assert cli.parse_weight_token("3/4") == Fraction(3, 4)
        assert cli.parse_weight_token(" 2 ") == Fraction(2)
        assert isinstance(cli.parse_weight_token("0.75"), float)
        with pytest.raises(Exception):
            cli.parse_weight_token("1/0")
        with pytest.raises(Exception):
            cli.parse_weight_token("abc")

    def test_exactness_drives_structure(self, capsys):
        # '2' is exact, so the rational path accepts it
        code, out, _ = run(capsys, "tilde", "--a", "1", "--w", "2",
                           "--sigma", "0.8", "--weights-mode", "rational")
        assert code == 0
        assert json.loads(out)["path"] == "rational_series"
