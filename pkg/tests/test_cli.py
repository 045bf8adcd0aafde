import csv
import io
import json
import subprocess
import sys

import pytest

from besselpd import __version__
from besselpd.cli import main, manifest_argv, read_manifest


def run(argv, capsys):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def csv_rows(text):
    lines = text.splitlines()
    assert lines[0].startswith("# manifest: ")
    return list(csv.DictReader(io.StringIO("\n".join(lines[1:]))))


def payload(path):
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.startswith("# manifest: "):
        return text.split("\n", 1)[1]
    data = json.loads(text)
    return data["reports"]


class TestEval:
    def test_k_half(self, capsys):
        code, out, _ = run(["eval", "K", "--alpha", "0.5", "--x", "1"], capsys)
        assert code == 0
        (row,) = csv_rows(out)
        assert abs(float(row["value"]) - 0.46106850444789454) < 1e-15
        assert set(row) == {"x", "value", "abs_err"}

    def test_j_at_zero(self, capsys):
        code, out, _ = run(["eval", "j", "--alpha", "1", "--x", "0"], capsys)
        assert code == 0 and float(csv_rows(out)[0]["value"]) == 1.0

    def test_negative_x(self, capsys):
        code, _, err = run(["eval", "K", "--alpha", "1", "--x", "-1"], capsys)
        assert code == 2 and "x must be positive" in err

    def test_range(self, capsys):
        code, out, _ = run(["eval", "scaledK", "--alpha", "1", "--range", "-2,2", "--num", "5"], capsys)
        rows = csv_rows(out)
        assert code == 0 and [float(r["x"]) for r in rows] == [-2.0, -1.0, 0.0, 1.0, 2.0]

    def test_kummer(self, capsys):
        code, out, _ = run(["eval", "1F1", "--a", "1", "--b", "2", "--x", "1"], capsys)
        assert code == 0 and abs(float(csv_rows(out)[0]["value"]) - 1.718281828459045) < 1e-14

    def test_manifest(self, capsys):
        _, out, _ = run(["eval", "I", "--alpha", "2", "--x", "1,2", "--seed", "5"], capsys)
        man = json.loads(out.splitlines()[0][len("# manifest: "):])
        assert man["command"] == "eval" and man["seed"] == 5
        assert man["tool_version"] == __version__ and man["timestamp"]
        assert man["parameters"]["fn"] == "I"

    @pytest.mark.parametrize(
        "argv",
        [["eval", "K", "--alpha", "1"], ["eval", "K", "--x", "1", "--range", "0,1"], ["eval", "K", "--x", "one"]],
    )
    def test_configuration_errors(self, argv, capsys):
        assert run(argv, capsys)[0] == 4

    def test_unknown_function(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["eval", "Z", "--x", "1"])
        assert exc.value.code == 4


class TestTransform:
    def test_gauss_self_reciprocal(self, capsys):
        code, out, _ = run(["transform", "gauss", "--alpha", "1", "--s", "0.5", "--x", "0,1,3"], capsys)
        vals = [float(r["value"]) for r in csv_rows(out)]
        assert code == 0
        assert vals == pytest.approx([1.0, 0.6065306597126334, 0.011108996538242306], rel=1e-9)

    def test_rational(self, capsys):
        code, out, _ = run(
            ["transform", "rational", "--alpha", "0.5", "--beta", "1.5", "--a", "1", "--x", "2"], capsys
        )
        assert code == 0 and float(csv_rows(out)[0]["value"]) == pytest.approx(0.0743978851229876, rel=1e-9)


class TestGram:
    def test_scaled_k_spd(self, capsys):
        code, out, _ = run(["gram", "--kernel", "scaledK", "--alpha", "1", "--n", "8", "--range", "-5,5", "--seed", "42"], capsys)
        data = json.loads(out)
        assert code == 0 and data["reports"][0]["verdict"] == "SPD"
        assert data["manifest"]["parameters"]["range"] == [-5.0, 5.0]

    def test_square_indefinite(self, capsys):
        code, out, _ = run(["gram", "--kernel", "square"], capsys)
        assert code == 3
        rep = json.loads(out)["reports"][0]
        assert rep["verdict"] == "indefinite" and rep["counterexample"]["min_eig"] < 0

    def test_constant_psd(self, capsys):
        code, out, _ = run(["gram", "--kernel", "constant", "--trials", "2"], capsys)
        assert code == 0 and json.loads(out)["reports"][0]["verdict"] == "PSD_only"


class TestMonotone:
    def test_cm_scaled_k(self, capsys):
        code, out, _ = run(["cm", "--fn", "scaledK_sqrt", "--alpha", "1", "--interval", "0.2,10", "--max-order", "6"], capsys)
        assert code == 0 and json.loads(out)["reports"][0]["verdict"] == "pass"

    def test_lcm_inverse_weighted_k_fails(self, capsys):
        # the claimed LCM property does not hold numerically; see TestLCM in test_monotonicity
        code, out, _ = run(["lcm", "--fn", "inv_x_k", "--alpha", "1", "--interval", "0.2,10", "--max-order", "6"], capsys)
        rep = json.loads(out)["reports"][0]
        assert code == 3 and rep["verdict"] == "fail"
        assert rep["violations"][0]["n"] == 1

    @pytest.mark.parametrize("cmd, fn", [("cm", "x"), ("lcm", "one_plus_x")])
    def test_controls_fail(self, cmd, fn, capsys):
        assert run([cmd, "--fn", fn], capsys)[0] == 3

    def test_cm_exp_default_interval(self, capsys):
        assert run(["cm", "--fn", "exp"], capsys)[0] == 0

    def test_records_flag(self, capsys):
        _, out, _ = run(["cm", "--fn", "inv", "--grid-size", "3", "--max-order", "2", "--records"], capsys)
        assert len(json.loads(out)["reports"][0]["records"]) == 9

    def test_neg_inv_log_k_above_root(self, capsys):
        code, out, _ = run(["lcm", "--fn", "neg_inv_log_k", "--alpha", "1", "--interval", "0.7,20"], capsys)
        assert code == 0

    def test_bad_order(self, capsys):
        assert run(["cm", "--fn", "exp", "--max-order", "12"], capsys)[0] == 2


class TestVerify:
    def test_nonsense(self, capsys):
        code, _, err = run(["verify", "--scenario", "nonsense"], capsys)
        assert code == 4 and "nonsense" in err

    def test_watson(self, capsys):
        code, out, _ = run(["verify", "--scenario", "watson"], capsys)
        data = json.loads(out)
        assert code == 0
        rep = data["reports"][0]
        assert set(rep) >= {"scenario_id", "citation", "parameters", "residuals", "verdict"}
        assert data["manifest"]["parameters"]["scenario"] == ["watson"]

    def test_agm_failure_exit(self, capsys):
        code, out, _ = run(["verify", "--scenario", "thm13_agm", "--alpha", "1", "--pairs", "500", "--seed", "7"], capsys)
        assert code == 3
        assert json.loads(out)["reports"][0]["verdict"] == "fail"

    def test_comma_and_repeat(self, capsys):
        code, out, _ = run(["verify", "--scenario", "watson,ismail", "--scenario", "k_derivative"], capsys)
        ids = [r["scenario_id"] for r in json.loads(out)["reports"]]
        assert code == 0 and ids == ["watson", "ismail", "k_derivative"]

    def test_bad_tolerance(self, capsys):
        assert run(["verify", "--scenario", "watson", "--tol", "-1"], capsys)[0] == 4


class TestFiles:
    @pytest.mark.parametrize(
        "argv",
        [
            ["eval", "K", "--alpha", "1.5", "--range", "0.1,3", "--num", "7"],
            ["transform", "gauss_power", "--alpha", "0.5", "--gamma", "0.5", "--x", "1,2"],
            ["gram", "--kernel", "example1", "--alpha", "0.5", "--trials", "3", "--range", "-5,5"],
            ["lcm", "--fn", "k_sqrt", "--alpha", "2", "--grid-size", "6", "--records"],
            ["verify", "--scenario", "thm13_log", "--pairs", "100", "--seed", "11"],
        ],
    )
    def test_round_trip(self, argv, tmp_path, capsys):
        first, second = tmp_path / "a.out", tmp_path / "b.out"
        code = main(argv + ["--out", str(first)])
        replay = manifest_argv(read_manifest(first))
        assert main(replay + ["--out", str(second)]) == code
        assert payload(first) == payload(second)
        assert read_manifest(first)["parameters"] == read_manifest(second)["parameters"]

    def test_no_temporary_left(self, tmp_path):
        main(["eval", "K", "--alpha", "1", "--x", "1", "--out", str(tmp_path / "k.csv")])
        assert [p.name for p in tmp_path.iterdir()] == ["k.csv"]

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "besselpd", "eval", "K", "--alpha", "0.5", "--x", "2"],
            capture_output=True, text=True, timeout=120,
        )
        assert proc.returncode == 0 and "value" in proc.stdout

    def test_version(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["--version"])
        assert exc.value.code == 0 and __version__ in capsys.readouterr().out
